#pragma once

// The five guess generators shared by the learning agent and the advisor,
// and the knowledge accumulated from feedback that drives them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wordlab/engine.hpp"
#include "wordlab/rng.hpp"

namespace wordlab {

struct Knowledge {
  std::array<char, kWordLength> greens{};               // 0 where unknown
  std::array<std::uint8_t, kAlphabetSize> excluded{};  // per letter: positions it is known not to occupy
  std::uint32_t yellows = 0;                            // letters known present from yellow tiles
  std::uint32_t absents = 0;
  std::vector<Word> guessed;                            // sorted, unique

  bool has_green(int pos) const { return greens[pos] != 0; }
  bool is_yellow(int letter) const { return (yellows >> letter) & 1u; }
  bool is_absent(int letter) const { return (absents >> letter) & 1u; }
  bool was_guessed(const Word& w) const { return std::binary_search(guessed.begin(), guessed.end(), w); }

  std::uint32_t green_letters() const {
    std::uint32_t m = 0;
    for (char c : greens) {
      if (c) m |= 1u << (c - 'a');
    }
    return m;
  }

  bool operator==(const Knowledge&) const = default;
};

inline Knowledge update_knowledge(Knowledge k, const Word& guess, const Feedback& fb) {
  auto contradiction = [&](int pos, const char* why) {
    return Error(ErrorCode::Contradiction, "position " + std::to_string(pos + 1) + " of '" + guess.str() + "' " +
                                               fb.str() + ": " + why);
  };

  // Letters shown green or yellow somewhere in this guess.
  std::uint32_t hit = 0;
  for (int i = 0; i < kWordLength; ++i) {
    if (fb[i] != TileColor::Gray) hit |= 1u << guess.index(i);
  }

  for (int i = 0; i < kWordLength; ++i) {
    const int l = guess.index(i);
    const char c = guess[i];
    switch (fb[i]) {
      case TileColor::Green:
        if (k.greens[i] && k.greens[i] != c) throw contradiction(i, "a different letter is already green here");
        if (k.is_absent(l)) throw contradiction(i, "letter was previously reported absent");
        if ((k.excluded[l] >> i) & 1u) throw contradiction(i, "letter was previously ruled out at this position");
        k.greens[i] = c;
        break;
      case TileColor::Yellow:
        if (k.greens[i] == c) throw contradiction(i, "letter is already green at this position");
        if (k.is_absent(l)) throw contradiction(i, "letter was previously reported absent");
        k.yellows |= 1u << l;
        k.excluded[l] |= static_cast<std::uint8_t>(1u << i);
        break;
      case TileColor::Gray:
        if (k.greens[i] == c) throw contradiction(i, "letter is already green at this position");
        if ((hit >> l) & 1u) break;  // duplicate of a letter that did score
        if (k.is_yellow(l) || ((k.green_letters() >> l) & 1u)) {
          throw contradiction(i, "letter is known to be present");
        }
        k.absents |= 1u << l;
        break;
    }
  }

  for (int l = 0; l < kAlphabetSize; ++l) {
    const bool green_somewhere = (k.green_letters() >> l) & 1u;
    if (k.is_yellow(l) && k.excluded[l] == 0x1f && !green_somewhere) {
      throw Error(ErrorCode::Contradiction, std::string("letter '") + static_cast<char>('a' + l) +
                                                "' is present but excluded from every position");
    }
  }

  auto pos = std::lower_bound(k.guessed.begin(), k.guessed.end(), guess);
  if (pos == k.guessed.end() || *pos != guess) k.guessed.insert(pos, guess);
  return k;
}

// Greens, yellows (present, not at excluded spots) and absents all hold.
inline bool matches_smart(const Knowledge& k, const Word& w) {
  if (w.letter_mask() & k.absents) return false;
  for (int i = 0; i < kWordLength; ++i) {
    if (k.greens[i] && w[i] != k.greens[i]) return false;
  }
  std::uint32_t need = k.yellows;
  if (need & ~w.letter_mask()) return false;
  for (int i = 0; i < kWordLength; ++i) {
    const int l = w.index(i);
    if ((need >> l) & 1u && (k.excluded[l] >> i) & 1u) return false;
  }
  return true;
}

inline bool matches_exclude(const Knowledge& k, const Word& w) { return (w.letter_mask() & k.absents) == 0; }

inline std::vector<Word> candidates_smart(const Knowledge& k, std::span<const Word> pool) {
  std::vector<Word> out;
  for (const auto& w : pool) {
    if (matches_smart(k, w)) out.push_back(w);
  }
  return out;
}

inline std::vector<Word> candidates_exclude(const Knowledge& k, std::span<const Word> pool) {
  std::vector<Word> out;
  for (const auto& w : pool) {
    if (matches_exclude(k, w)) out.push_back(w);
  }
  return out;
}

enum class ActionKind : std::uint8_t { Random = 0, Probs1 = 1, Probs2 = 2, Smart = 3, Exclude = 4 };
inline constexpr int kActionCount = 5;
inline constexpr std::array<ActionKind, kActionCount> kAllActions{ActionKind::Random, ActionKind::Probs1,
                                                                  ActionKind::Probs2, ActionKind::Smart,
                                                                  ActionKind::Exclude};

inline std::string_view to_string(ActionKind a) {
  switch (a) {
    case ActionKind::Random: return "random";
    case ActionKind::Probs1: return "probs1";
    case ActionKind::Probs2: return "probs2";
    case ActionKind::Smart: return "smart";
    case ActionKind::Exclude: return "exclude";
  }
  return "random";
}

inline std::optional<ActionKind> parse_action(std::string_view s) {
  for (auto a : kAllActions) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

// Fixed opener scripts: probs1 from the log-likelihood search, probs2 from the
// green-probability search.
struct OpenerLists {
  std::vector<Word> probs1 = {"bowne"_w, "slaty"_w, "prick"_w, "faugh"_w, "meved"_w};
  std::vector<Word> probs2 = {"looie"_w, "saury"_w, "chant"_w, "bided"_w, "primp"_w};
};

struct GuessContext {
  std::shared_ptr<const std::vector<Word>> pool;
  std::shared_ptr<const OpenerLists> openers;
  int probs1_cursor = 0;
  int probs2_cursor = 0;
  Knowledge knowledge;
  Rng rng;

  static GuessContext fresh(std::shared_ptr<const std::vector<Word>> pool, std::shared_ptr<const OpenerLists> openers,
                            std::uint64_t seed) {
    return GuessContext{std::move(pool), std::move(openers), 0, 0, Knowledge{}, Rng(seed)};
  }
};

namespace detail {

template <class Pred>
std::optional<Word> draw_uniform(const std::vector<Word>& pool, const Knowledge& k, Rng& rng, Pred keep) {
  std::vector<std::uint32_t> idx;
  for (std::uint32_t i = 0; i < pool.size(); ++i) {
    if (keep(pool[i]) && !k.was_guessed(pool[i])) idx.push_back(i);
  }
  if (idx.empty()) return std::nullopt;
  return pool[idx[rng.index(idx.size())]];
}

inline Word draw_remaining(GuessContext& ctx) {
  auto w = draw_uniform(*ctx.pool, ctx.knowledge, ctx.rng, [](const Word&) { return true; });
  if (!w) throw Error(ErrorCode::PoolEmpty, "every word in the pool has been guessed");
  return *w;
}

}  // namespace detail

// Produces the next guess for an action, advancing opener cursors and the
// random stream. Filtered draws that come up empty degrade to a random
// remaining word.
inline Word next_guess(ActionKind action, GuessContext& ctx) {
  switch (action) {
    case ActionKind::Random:
      return detail::draw_remaining(ctx);
    case ActionKind::Probs1:
    case ActionKind::Probs2: {
      const auto& list = action == ActionKind::Probs1 ? ctx.openers->probs1 : ctx.openers->probs2;
      int& cursor = action == ActionKind::Probs1 ? ctx.probs1_cursor : ctx.probs2_cursor;
      const int at = cursor++;
      if (at < static_cast<int>(list.size())) return list[static_cast<std::size_t>(at)];
      return detail::draw_remaining(ctx);
    }
    case ActionKind::Smart: {
      auto w = detail::draw_uniform(*ctx.pool, ctx.knowledge, ctx.rng,
                                    [&](const Word& c) { return matches_smart(ctx.knowledge, c); });
      return w ? *w : detail::draw_remaining(ctx);
    }
    case ActionKind::Exclude: {
      auto w = detail::draw_uniform(*ctx.pool, ctx.knowledge, ctx.rng,
                                    [&](const Word& c) { return matches_exclude(ctx.knowledge, c); });
      return w ? *w : detail::draw_remaining(ctx);
    }
  }
  return detail::draw_remaining(ctx);
}

}  // namespace wordlab
