#pragma once

// Greedy construction of opener sequences. Word k+1 is the best-scoring
// candidate whose letter overlap with words 1..k is at most r, where r climbs
// a ladder (0, 1, 2, ...) until some candidate qualifies.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "wordlab/letter_stats.hpp"

namespace wordlab {

enum class Objective { Tglp, LogLikelihood };

inline std::string_view to_string(Objective o) { return o == Objective::Tglp ? "tglp" : "ll"; }

inline std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "tglp") return Objective::Tglp;
  if (s == "ll") return Objective::LogLikelihood;
  return std::nullopt;
}

// How letter overlap with previously used letters is counted.
enum class OverlapCount {
  Multiset,  // every position whose letter was already used counts once
  Distinct,  // each reused letter counts once however often it appears
};

struct RepeatPolicy {
  std::vector<int> ladder{0, 1, 2, 3, 4, 5};
  bool forbid_same_position_repeat = true;
  OverlapCount overlap = OverlapCount::Multiset;

  void validate() const {
    if (ladder.empty() || ladder.front() != 0) {
      throw Error(ErrorCode::InvalidConfig, "repeat ladder must start at 0");
    }
    for (std::size_t i = 1; i < ladder.size(); ++i) {
      if (ladder[i] <= ladder[i - 1]) throw Error(ErrorCode::InvalidConfig, "repeat ladder must be strictly increasing");
    }
  }
};

struct SearchResult {
  Objective objective = Objective::Tglp;
  int requested_n = 0;
  std::vector<Word> sequence;
  std::vector<double> per_word_scores;
  std::vector<int> ladder_levels;  // overlap level admitted at each step; 0 for the first word
  double objective_value = 0.0;
  std::uint32_t letters_used = 0;
  bool exhausted = false;

  int unique_letter_count() const { return std::popcount(letters_used); }
};

inline double word_score(Objective objective, const LetterModel& model, const Word& w) {
  return objective == Objective::Tglp ? green_probability(w, model.raw) : word_log_likelihood(w, model.smoothed);
}

inline int letter_overlap(const Word& w, std::uint32_t used, OverlapCount mode) {
  if (mode == OverlapCount::Distinct) return std::popcount(w.letter_mask() & used);
  int n = 0;
  for (int i = 0; i < kWordLength; ++i) n += (used >> w.index(i)) & 1u;
  return n;
}

inline double per_letter_contribution(const SearchResult& result) {
  if (result.sequence.empty()) throw Error(ErrorCode::EmptyCandidates, "empty sequence has no per-letter contribution");
  return result.objective_value / static_cast<double>(result.unique_letter_count());
}

struct RankedWord {
  Word word;
  double score;
};

// Descending by green probability; equal scores keep candidate-list order.
inline std::vector<RankedWord> rank_by_green_probability(const FrequencyTable& table, std::span<const Word> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "nothing to rank");
  std::vector<RankedWord> out;
  out.reserve(candidates.size());
  for (const auto& w : candidates) out.push_back({w, green_probability(w, table)});
  std::stable_sort(out.begin(), out.end(), [](const RankedWord& a, const RankedWord& b) { return a.score > b.score; });
  return out;
}

struct LetterProfile {
  Word word;
  int unique_letters;
  double green_probability;
};

inline std::vector<LetterProfile> unique_letter_profile(std::span<const Word> candidates, const FrequencyTable& table) {
  std::vector<LetterProfile> out;
  out.reserve(candidates.size());
  for (const auto& w : candidates) out.push_back({w, w.unique_letters(), green_probability(w, table)});
  return out;
}

// Precomputes per-candidate scores and a stable descending order so each
// greedy step is a scan for the first admissible word.
class SequenceSearcher {
 public:
  SequenceSearcher(Objective objective, const LetterModel& model, std::span<const Word> candidates,
                   RepeatPolicy policy = {})
      : objective_(objective), candidates_(candidates.begin(), candidates.end()), policy_(std::move(policy)) {
    policy_.validate();
    if (candidates_.empty()) throw Error(ErrorCode::EmptyCandidates, "no candidate words");
    scores_.reserve(candidates_.size());
    for (const auto& w : candidates_) scores_.push_back(word_score(objective_, model, w));
    order_.resize(candidates_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return scores_[a] > scores_[b]; });
  }

  Objective objective() const { return objective_; }
  const RepeatPolicy& policy() const { return policy_; }
  std::span<const Word> candidates() const { return candidates_; }
  double score_of(std::size_t candidate_index) const { return scores_[candidate_index]; }

  SearchResult greedy(int n) const { return run(n, std::nullopt); }

  // Same greedy completion but with the first word fixed to candidates[start].
  SearchResult greedy_from(int n, std::size_t start) const { return run(n, start); }

  // One greedy completion per possible starting word.
  std::vector<SearchResult> sweep(int n) const {
    std::vector<SearchResult> out;
    out.reserve(candidates_.size());
    for (std::size_t s = 0; s < candidates_.size(); ++s) out.push_back(run(n, s));
    return out;
  }

 private:
  struct Partial {
    std::uint32_t used = 0;
    std::array<std::uint32_t, kWordLength> used_at{};
    std::vector<std::size_t> chosen;
  };

  bool admissible(std::size_t idx, const Partial& p, int level) const {
    const Word& w = candidates_[idx];
    if (std::find(p.chosen.begin(), p.chosen.end(), idx) != p.chosen.end()) return false;
    if (policy_.forbid_same_position_repeat) {
      for (int i = 0; i < kWordLength; ++i) {
        if ((p.used_at[i] >> w.index(i)) & 1u) return false;
      }
    }
    return letter_overlap(w, p.used, policy_.overlap) <= level;
  }

  static void add(Partial& p, std::size_t idx, const Word& w) {
    p.chosen.push_back(idx);
    p.used |= w.letter_mask();
    for (int i = 0; i < kWordLength; ++i) p.used_at[i] |= 1u << w.index(i);
  }

  SearchResult run(int n, std::optional<std::size_t> start) const {
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "sequence length must be at least 1");
    SearchResult res;
    res.objective = objective_;
    res.requested_n = n;
    Partial p;
    auto push = [&](std::size_t idx, int level) {
      const Word& w = candidates_[idx];
      add(p, idx, w);
      res.sequence.push_back(w);
      res.per_word_scores.push_back(scores_[idx]);
      res.ladder_levels.push_back(level);
      res.objective_value += scores_[idx];
    };
    push(start.value_or(order_.front()), 0);
    while (static_cast<int>(res.sequence.size()) < n) {
      std::optional<std::size_t> pick;
      int picked_level = 0;
      for (int level : policy_.ladder) {
        for (std::size_t idx : order_) {
          if (admissible(idx, p, level)) {
            pick = idx;
            break;
          }
        }
        if (pick) {
          picked_level = level;
          break;
        }
      }
      if (!pick) {
        res.exhausted = true;
        break;
      }
      push(*pick, picked_level);
    }
    res.letters_used = p.used;
    return res;
  }

  Objective objective_;
  std::vector<Word> candidates_;
  RepeatPolicy policy_;
  std::vector<double> scores_;
  std::vector<std::size_t> order_;
};

inline SearchResult greedy_sequence(int n, Objective objective, const LetterModel& model,
                                    std::span<const Word> candidates, const RepeatPolicy& policy = {}) {
  return SequenceSearcher(objective, model, candidates, policy).greedy(n);
}

}  // namespace wordlab
