#pragma once

// Positional letter statistics over the answer corpus and the two word
// scores built on them: green probability (summed cells) and log-likelihood
// (summed log cells of the add-one smoothed table).

#include <array>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <vector>

#include "wordlab/engine.hpp"

namespace wordlab {

using LetterCounts = std::array<std::array<std::size_t, kAlphabetSize>, kWordLength>;
using LetterProbs = std::array<std::array<double, kAlphabetSize>, kWordLength>;

class FrequencyTable {
 public:
  FrequencyTable() = default;

  FrequencyTable(const LetterCounts& counts, std::size_t source_count)
      : counts_(counts), source_count_(source_count) {
    for (int i = 0; i < kWordLength; ++i) {
      for (int l = 0; l < kAlphabetSize; ++l) {
        probs_[i][l] = static_cast<double>(counts_[i][l]) / static_cast<double>(source_count_);
      }
    }
  }

  double prob(int position, int letter) const { return probs_[position][letter]; }
  std::size_t count(int position, int letter) const { return counts_[position][letter]; }
  std::size_t source_count() const { return source_count_; }
  const LetterProbs& probs() const { return probs_; }
  const LetterCounts& counts() const { return counts_; }

  bool operator==(const FrequencyTable&) const = default;

 private:
  LetterCounts counts_{};
  LetterProbs probs_{};
  std::size_t source_count_ = 0;
};

// Add-one smoothed probabilities: (count + 1) / (N + 26). Every cell > 0.
class SmoothedTable {
 public:
  SmoothedTable() = default;

  explicit SmoothedTable(const FrequencyTable& raw) : source_count_(raw.source_count()) {
    const double denom = static_cast<double>(raw.source_count() + kAlphabetSize);
    for (int i = 0; i < kWordLength; ++i) {
      for (int l = 0; l < kAlphabetSize; ++l) {
        probs_[i][l] = static_cast<double>(raw.count(i, l) + 1) / denom;
        log_probs_[i][l] = std::log(probs_[i][l]);
      }
    }
  }

  double prob(int position, int letter) const { return probs_[position][letter]; }
  double log_prob(int position, int letter) const { return log_probs_[position][letter]; }
  std::size_t source_count() const { return source_count_; }
  const LetterProbs& probs() const { return probs_; }

 private:
  LetterProbs probs_{};
  LetterProbs log_probs_{};
  std::size_t source_count_ = 0;
};

inline FrequencyTable build_frequency_table(std::span<const Word> answers) {
  if (answers.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot build a letter table from zero words");
  LetterCounts counts{};
  for (const auto& w : answers) {
    for (int i = 0; i < kWordLength; ++i) ++counts[i][w.index(i)];
  }
  return FrequencyTable(counts, answers.size());
}

inline SmoothedTable smooth(const FrequencyTable& table) { return SmoothedTable(table); }

// Sum over positions of Pr(letter at that position); repeated letters each count.
inline double green_probability(const Word& word, const FrequencyTable& table) {
  double s = 0.0;
  for (int i = 0; i < kWordLength; ++i) s += table.prob(i, word.index(i));
  return s;
}

// Natural-log likelihood of the word under five independent positional draws.
inline double word_log_likelihood(const Word& word, const SmoothedTable& table) {
  double s = 0.0;
  for (int i = 0; i < kWordLength; ++i) s += table.log_prob(i, word.index(i));
  return s;
}

inline double sequence_tglp(std::span<const Word> seq, const FrequencyTable& table) {
  double total = 0.0;
  for (const auto& w : seq) total += green_probability(w, table);
  return total;
}

// Both tables built from one corpus; what the search and the strategies share.
struct LetterModel {
  FrequencyTable raw;
  SmoothedTable smoothed;

  static LetterModel from_answers(std::span<const Word> answers) {
    auto raw = build_frequency_table(answers);
    return LetterModel{raw, smooth(raw)};
  }
};

// 26 rows (a..z) by 5 position columns, 17 significant digits.
inline void write_table_csv(std::ostream& out, const LetterProbs& probs) {
  std::ostringstream buf;
  buf << std::setprecision(17);
  buf << "letter,pos1,pos2,pos3,pos4,pos5\n";
  for (int l = 0; l < kAlphabetSize; ++l) {
    buf << static_cast<char>('a' + l);
    for (int i = 0; i < kWordLength; ++i) buf << ',' << probs[i][l];
    buf << '\n';
  }
  out << buf.str();
}

}  // namespace wordlab
