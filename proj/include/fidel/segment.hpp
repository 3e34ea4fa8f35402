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

#ifndef FIDEL_SEGMENT_HPP_
#define FIDEL_SEGMENT_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fidel/chart.hpp"
#include "fidel/lm.hpp"
#include "fidel/manifest.hpp"
#include "fidel/normalize.hpp"

namespace fidel {

enum class SpacePolicy {
  kIgnore,  // strip input spaces before the search
  kSoft,    // input spaces add a boundary bonus
  kHard,    // word boundaries are exactly the input spaces
};

struct CorrectionConfig {
  int edit_budget = 1;  // max syllable edits per word
  SpacePolicy spaces = SpacePolicy::kSoft;
  int beam_width = 64;  // contexts kept per lattice position; exact DP when it covers them all
  double space_bonus_logprob = 0.5;  // soft mode: bonus per boundary on an input space
  // Typed edit penalties. Recovering a syllable the recognizer dropped
  // (edit_ins) is cheap; discarding an input syllable as hallucinated
  // (edit_del) is not: recognizers drop far more than they invent.
  double edit_sub_logprob = -2.0;
  double edit_ins_logprob = -2.0;  // input is missing a syllable of the word
  double edit_del_logprob = -4.0;  // input has a syllable the word lacks

  // Cost of matching a word against a span with `edits` total syllable
  // edits, where len_diff = word length - span length. The length gap fixes
  // the insert/delete mix; the rest are substitutions.
  double edit_cost(int edits, int len_diff) const {
    int ins = len_diff > 0 ? len_diff : 0;
    int del = len_diff < 0 ? -len_diff : 0;
    int sub = edits - ins - del;
    return edit_ins_logprob * ins + edit_del_logprob * del + edit_sub_logprob * sub;
  }

  // Nothing to search: keep the line untouched.
  bool passthrough() const { return spaces == SpacePolicy::kHard && edit_budget == 0; }
};

// One consumed span of the input syllable stream.
struct SegmentPiece {
  std::size_t from = 0;
  std::size_t to = 0;
  int word_id = -1;  // lexicon word id, or -1 for an OOV run
  int edits = 0;
};

struct SegmentResult {
  std::string text;
  double score = 0.0;  // total log score under the model and config
  std::vector<SegmentPiece> pieces;
};

// Maximum-likelihood resegmentation: splits the input syllable stream into
// lexicon words (allowing up to edit_budget syllable edits per word) and OOV
// runs, scored by the n-gram model. Ties break to the earlier boundary, then
// the lexicographically smaller spelling. Matched words render with their
// lexicon spelling; OOV runs keep the input spelling.
class Segmenter {
 public:
  Segmenter(const Lexicon& lexicon, const NGramModel& lm, const Chart& chart);

  std::string segment(std::string_view input, const CorrectionConfig& cfg) const;
  SegmentResult segment_scored(std::string_view input, const CorrectionConfig& cfg) const;

  // Lexicon words within `budget` syllable edits of the span (min edits per
  // word). Exposed for the search; candidate generation for budget <= 1 uses
  // a deletion-neighborhood index.
  struct Candidate {
    int word_id;
    int edits;
  };
  std::vector<Candidate> candidates(std::span<const Syllable> span, int budget) const;

 private:
  const Lexicon& lexicon_;
  const NGramModel& lm_;
  const Chart& chart_;
  std::unordered_map<std::string, std::vector<int>> delete1_;  // key (or 1-deletion) -> words
};

struct CorrectionStats {
  std::size_t lines = 0;
  std::size_t failed = 0;  // left unchanged
};

// normalize -> segment per record; ids preserved; failing lines pass through
// unchanged and are counted.
std::vector<HypRecord> correct_records(std::span<const HypRecord> records, const Segmenter& seg,
                                       const CorrectionConfig& cfg,
                                       const NormalizationConfig& norm, const Chart& chart,
                                       CorrectionStats* stats = nullptr, int jobs = 1);

}  // namespace fidel

#endif  // FIDEL_SEGMENT_HPP_
