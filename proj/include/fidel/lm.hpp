//
//   Copyright 2026 The Fidel Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//

#ifndef FIDEL_LM_HPP_
#define FIDEL_LM_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fidel/chart.hpp"
#include "fidel/codec.hpp"

namespace fidel {

// Words are keyed by their syllable sequence, so "naw" and "nawe" (two
// spellings of the same sixth-order syllables) are one entry. The display
// spelling is the lexicographically smallest observed one, which keeps the
// model independent of corpus line order.
class Lexicon {
 public:
  struct Word {
    std::vector<Syllable> syllables;
    std::string spelling;
    std::int64_t count = 0;
  };

  static std::string key_of(std::span<const Syllable> syllables);

  int add_or_get(std::vector<Syllable> syllables, const std::string& spelling);
  std::optional<int> find(std::span<const Syllable> syllables) const;

  const Word& word(int id) const { return words_[static_cast<std::size_t>(id)]; }
  Word& word_mut(int id) { return words_[static_cast<std::size_t>(id)]; }
  int size() const { return static_cast<int>(words_.size()); }
  int max_word_syllables() const { return max_word_syllables_; }

  // Reorders words by spelling and returns old-id -> new-id. Called once
  // after counting so ids are deterministic.
  std::vector<int> finalize();

 private:
  std::vector<Word> words_;
  std::unordered_map<std::string, int> by_key_;
  int max_word_syllables_ = 0;
};

// Word contexts for conditional probabilities.
struct LmContext {
  static constexpr int kBos = -2;
  static constexpr int kOov = -1;
  int word = kBos;  // >= 0: lexicon word id
};

// Add-k smoothed unigram/bigram model over lexicon words plus a single
// out-of-vocabulary class. P(w|ctx) sums to 1 over vocabulary ∪ {OOV} for
// every context. OOV words additionally pay a per-syllable log penalty.
class NGramModel {
 public:
  int order = 2;
  double smoothing_k = 0.05;
  double oov_syllable_logprob = -6.0;

  std::int64_t sentences = 0;
  std::vector<std::int64_t> unigram;         // by word id
  std::int64_t unigram_total = 0;
  // bigram counts keyed by (context, word); context kBos included
  std::unordered_map<std::uint64_t, std::int64_t> bigram;
  std::vector<std::int64_t> context_total;   // index 0 = BOS, 1 + id = word
  int vocab_size = 0;

  static std::uint64_t pack(int context, int word);

  // log P(word | context); word == LmContext::kOov scores the OOV class
  // (without the per-syllable penalty).
  double logp(int word, LmContext context) const;
  // OOV class probability plus the length penalty.
  double oov_logp(std::size_t syllables, LmContext context) const;
};

struct TrainResult {
  Lexicon lexicon;
  NGramModel lm;
  std::size_t skipped_lines = 0;
};

// Throws EmptyCorpusError when no line parses; order must be 1 or 2.
TrainResult train_lm(std::span<const std::string> corpus, int order, const Chart& chart,
                     double smoothing_k = 0.05, double oov_syllable_logprob = -6.0);

// Text model format: header, then a lexicon section with unigram counts and
// a counts section with bigram counts (diffable, no binary).
void save_model(std::ostream& out, const Lexicon& lexicon, const NGramModel& lm);
void save_model_file(const std::string& path, const Lexicon& lexicon, const NGramModel& lm);
std::pair<Lexicon, NGramModel> load_model(std::istream& in, const Chart& chart);
std::pair<Lexicon, NGramModel> load_model_file(const std::string& path, const Chart& chart);

}  // namespace fidel

#endif  // FIDEL_LM_HPP_
