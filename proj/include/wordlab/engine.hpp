#pragma once

// Core game model: words, word lists, tile feedback and game progression.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wordlab/error.hpp"

namespace wordlab {

inline constexpr int kWordLength = 5;
inline constexpr int kAlphabetSize = 26;
inline constexpr int kMaxRounds = 6;
inline constexpr std::size_t kCanonicalAnswerCount = 2315;
inline constexpr std::size_t kCanonicalGuessCount = 12972;

// A five-letter lowercase word. Construct through parse() or the checked
// constructor; a default Word is "aaaaa" only so it can live in containers.
class Word {
 public:
  constexpr Word() { letters_.fill('a'); }

  explicit Word(std::string_view text) {
    auto parsed = parse(text);
    if (!parsed) {
      throw Error(ErrorCode::MalformedWord, "'" + std::string(text) + "' is not a five-letter word");
    }
    *this = *parsed;
  }

  // Accepts upper or lower case ASCII letters only.
  static std::optional<Word> parse(std::string_view text) {
    if (text.size() != kWordLength) return std::nullopt;
    Word w;
    for (int i = 0; i < kWordLength; ++i) {
      unsigned char c = static_cast<unsigned char>(text[i]);
      if (c >= 'A' && c <= 'Z') c = static_cast<unsigned char>(c - 'A' + 'a');
      if (c < 'a' || c > 'z') return std::nullopt;
      w.letters_[i] = static_cast<char>(c);
    }
    return w;
  }

  constexpr char operator[](int i) const { return letters_[i]; }
  // Letter index 0..25 at position i.
  constexpr int index(int i) const { return letters_[i] - 'a'; }
  std::string str() const { return std::string(letters_.data(), letters_.size()); }

  // Bit L set iff the word contains letter L.
  constexpr std::uint32_t letter_mask() const {
    std::uint32_t m = 0;
    for (char c : letters_) m |= 1u << (c - 'a');
    return m;
  }

  int unique_letters() const { return std::popcount(letter_mask()); }

  constexpr auto operator<=>(const Word&) const = default;

 private:
  std::array<char, kWordLength> letters_;
};

inline namespace literals {
inline Word operator""_w(const char* s, std::size_t n) { return Word(std::string_view(s, n)); }
}  // namespace literals

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 0;
    for (int i = 0; i < kWordLength; ++i) h = h * 31 + static_cast<std::size_t>(w[i]);
    return h;
  }
};

enum class TileColor : std::uint8_t { Gray = 0, Yellow = 1, Green = 2 };

inline std::string_view to_string(TileColor c) {
  switch (c) {
    case TileColor::Gray: return "gray";
    case TileColor::Yellow: return "yellow";
    case TileColor::Green: return "green";
  }
  return "gray";
}

inline std::optional<TileColor> parse_color(std::string_view s) {
  if (s == "gray") return TileColor::Gray;
  if (s == "yellow") return TileColor::Yellow;
  if (s == "green") return TileColor::Green;
  return std::nullopt;
}

class Feedback {
 public:
  constexpr Feedback() { tiles_.fill(TileColor::Gray); }
  constexpr explicit Feedback(std::array<TileColor, kWordLength> tiles) : tiles_(tiles) {}

  // Compact form: 'G' green, 'Y' yellow, '.' or '-' or 'B' gray.
  static std::optional<Feedback> parse(std::string_view s) {
    if (s.size() != kWordLength) return std::nullopt;
    Feedback f;
    for (int i = 0; i < kWordLength; ++i) {
      switch (s[i]) {
        case 'G': case 'g': f.tiles_[i] = TileColor::Green; break;
        case 'Y': case 'y': f.tiles_[i] = TileColor::Yellow; break;
        case '.': case '-': case 'B': case 'b': f.tiles_[i] = TileColor::Gray; break;
        default: return std::nullopt;
      }
    }
    return f;
  }

  static constexpr Feedback all_green() {
    Feedback f;
    f.tiles_.fill(TileColor::Green);
    return f;
  }

  constexpr TileColor operator[](int i) const { return tiles_[i]; }
  constexpr const std::array<TileColor, kWordLength>& tiles() const { return tiles_; }

  constexpr int green_count() const { return count(TileColor::Green); }
  constexpr int yellow_count() const { return count(TileColor::Yellow); }
  constexpr bool is_win() const { return green_count() == kWordLength; }

  std::string str() const {
    std::string s(kWordLength, '.');
    for (int i = 0; i < kWordLength; ++i) {
      if (tiles_[i] == TileColor::Green) s[i] = 'G';
      if (tiles_[i] == TileColor::Yellow) s[i] = 'Y';
    }
    return s;
  }

  constexpr auto operator<=>(const Feedback&) const = default;

 private:
  constexpr int count(TileColor c) const {
    int n = 0;
    for (auto t : tiles_) n += (t == c);
    return n;
  }

  std::array<TileColor, kWordLength> tiles_;
};

// Two-pass scoring: greens consume their secret letters first, then yellows
// are assigned left to right against whatever multiplicity remains.
constexpr Feedback score_guess(const Word& guess, const Word& secret) {
  std::array<int, kAlphabetSize> remaining{};
  std::array<TileColor, kWordLength> tiles{};
  for (int i = 0; i < kWordLength; ++i) {
    if (guess[i] == secret[i]) {
      tiles[i] = TileColor::Green;
    } else {
      tiles[i] = TileColor::Gray;
      ++remaining[secret.index(i)];
    }
  }
  for (int i = 0; i < kWordLength; ++i) {
    if (tiles[i] == TileColor::Green) continue;
    int& left = remaining[guess.index(i)];
    if (left > 0) {
      tiles[i] = TileColor::Yellow;
      --left;
    }
  }
  return Feedback(tiles);
}

class WordLists {
 public:
  WordLists() = default;

  WordLists(std::vector<Word> answers, std::vector<Word> guesses)
      : answers_(std::move(answers)), guesses_(std::move(guesses)) {
    guess_index_.reserve(guesses_.size());
    for (const auto& w : guesses_) guess_index_.insert(w);
  }

  const std::vector<Word>& answers() const { return answers_; }
  const std::vector<Word>& guesses() const { return guesses_; }
  bool is_legal(const Word& w) const { return guess_index_.contains(w); }

 private:
  std::vector<Word> answers_;
  std::vector<Word> guesses_;
  std::unordered_set<Word, WordHash> guess_index_;
};

struct LoadOptions {
  // Require exactly the canonical total.
  bool strict = true;
  std::size_t answer_count = kCanonicalAnswerCount;
  std::size_t expected_total = kCanonicalGuessCount;
};

// One word per line, answers first. Blank lines are skipped, a trailing CR is
// tolerated, and line numbers in diagnostics are 1-based.
inline WordLists load_word_lists(std::istream& in, const LoadOptions& opts = {}) {
  std::vector<Word> all;
  std::unordered_map<Word, std::size_t, WordHash> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto w = Word::parse(line);
    if (!w) {
      throw Error(ErrorCode::MalformedWord,
                  "line " + std::to_string(line_no) + ": '" + line + "' is not a five-letter word");
    }
    auto [it, inserted] = seen.emplace(*w, line_no);
    if (!inserted) {
      throw Error(ErrorCode::DuplicateWord, "line " + std::to_string(line_no) + ": '" + w->str() +
                                                "' already appeared on line " + std::to_string(it->second));
    }
    all.push_back(*w);
  }
  if (opts.strict && all.size() != opts.expected_total) {
    throw Error(ErrorCode::WrongCount, "expected " + std::to_string(opts.expected_total) + " words, found " +
                                           std::to_string(all.size()));
  }
  if (all.empty()) throw Error(ErrorCode::WrongCount, "word list is empty");
  std::size_t n_answers = std::min(opts.answer_count, all.size());
  std::vector<Word> answers(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_answers));
  return WordLists(std::move(answers), std::move(all));
}

enum class GameStatus { InProgress, Won, Lost };

struct GuessRecord {
  Word guess;
  Feedback feedback;

  bool operator==(const GuessRecord&) const = default;
};

struct GameState {
  Word secret;
  std::vector<GuessRecord> history;
  GameStatus status = GameStatus::InProgress;

  static GameState start(const Word& secret) { return GameState{secret, {}, GameStatus::InProgress}; }

  int round() const { return static_cast<int>(history.size()); }
};

struct TryOptions {
  // Unit tests may turn this off to guess arbitrary words.
  bool enforce_legal = true;
};

inline std::pair<Feedback, GameState> try_word(const GameState& state, const Word& guess, const WordLists& legal,
                                               const TryOptions& opts = {}) {
  if (state.status != GameStatus::InProgress) throw Error(ErrorCode::GameOver, "game already finished");
  if (opts.enforce_legal && !legal.is_legal(guess)) {
    throw Error(ErrorCode::IllegalGuess, "'" + guess.str() + "' is not in the guess list");
  }
  Feedback fb = score_guess(guess, state.secret);
  GameState next = state;
  next.history.push_back({guess, fb});
  if (fb.is_win()) {
    next.status = GameStatus::Won;
  } else if (next.round() >= kMaxRounds) {
    next.status = GameStatus::Lost;
  }
  return {fb, std::move(next)};
}

}  // namespace wordlab
