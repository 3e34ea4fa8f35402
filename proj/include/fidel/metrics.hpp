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

#ifndef FIDEL_METRICS_HPP_
#define FIDEL_METRICS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fidel/chart.hpp"

namespace fidel {

struct AlignmentReport {
  std::int64_t substitutions = 0;
  std::int64_t deletions = 0;   // reference tokens missing from the hypothesis
  std::int64_t insertions = 0;  // hypothesis tokens not in the reference
  std::int64_t ref_len = 0;

  std::int64_t edits() const { return substitutions + deletions + insertions; }
  // May exceed 1 when insertions dominate.
  double rate() const { return static_cast<double>(edits()) / static_cast<double>(ref_len); }
};

// Minimum-edit alignment (unit costs). Ties between a substitution and an
// insert+delete pair resolve to the substitution.
AlignmentReport edit_align(std::span<const std::string> ref, std::span<const std::string> hyp);

// Syllable tokens with spaces kept as tokens, so spacing errors show up in
// CER as well as WER. Scheme auto-detected.
std::vector<std::string> char_tokens(std::string_view text, const Chart& chart);
std::vector<std::string> word_tokens(std::string_view text);

// Throw EmptyReferenceError when the reference has no tokens.
AlignmentReport char_align(std::string_view ref, std::string_view hyp, const Chart& chart);
AlignmentReport word_align(std::string_view ref, std::string_view hyp);
double cer(std::string_view ref, std::string_view hyp, const Chart& chart);
double wer(std::string_view ref, std::string_view hyp);

struct ScoredPair {
  std::string id;
  std::string ref;
  std::string hyp;
};

struct SentenceScore {
  std::string id;
  AlignmentReport chars;
  AlignmentReport words;
};

// Micro (pooled) aggregation: total edits over total reference length, not a
// mean of per-sentence rates.
struct CorpusScore {
  std::vector<SentenceScore> per_sentence;
  std::int64_t char_edits = 0, char_ref_len = 0;
  std::int64_t word_edits = 0, word_ref_len = 0;

  double micro_cer() const { return static_cast<double>(char_edits) / static_cast<double>(char_ref_len); }
  double micro_wer() const { return static_cast<double>(word_edits) / static_cast<double>(word_ref_len); }
};

// Pairs must be id-matched; throws IdMismatchError otherwise.
CorpusScore score_corpus(std::span<const ScoredPair> pairs, const Chart& chart, int jobs = 1);

}  // namespace fidel

#endif  // FIDEL_METRICS_HPP_
