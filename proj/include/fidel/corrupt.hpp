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

#ifndef FIDEL_CORRUPT_HPP_
#define FIDEL_CORRUPT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fidel/chart.hpp"
#include "fidel/manifest.hpp"
#include "fidel/normalize.hpp"

namespace fidel {

// Probabilities of the synthetic ASR error model. The defaults put a vanilla
// hypothesis deep into the broken-spacing regime that correction is meant to
// recover from; they are configuration, not constants.
struct CorruptionConfig {
  double p_space_insert = 0.15;  // per syllable boundary without a space
  double p_space_delete = 0.30;  // per existing space
  double p_syll_delete = 0.03;
  double p_syll_insert = 0.03;
  double p_syll_substitute = 0.03;
  // Probability that a substitution stays in the syllable's homophone group
  // (same vowel, confusable consonant) instead of drawing uniformly from the
  // whole chart.
  double homophone_bias = 0.5;
  std::uint64_t seed = 0;

  void validate() const;  // throws FormatError when a probability is out of [0,1]
};

// Deterministic error injector. Output is a pure function of
// (sentence, config, stream_index); per-line streams are independent, so a
// parallel map over lines equals sequential execution.
class Corruptor {
 public:
  Corruptor(CorruptionConfig cfg, const Chart& chart, HomophoneTable table);

  // Applies space edits first, then per-syllable edits, in left-to-right
  // draw order.
  std::string corrupt(std::string_view sentence, std::uint64_t stream_index) const;

  struct PairsResult {
    std::vector<PairRecord> records;
    std::size_t skipped = 0;  // lines that failed to parse
  };

  // One record per parseable line; id = 1-based input line number,
  // stream_index = that same number.
  PairsResult generate_pairs(std::span<const std::string> lines, int jobs = 1) const;

  const CorruptionConfig& config() const { return cfg_; }

 private:
  CorruptionConfig cfg_;
  const Chart& chart_;
  HomophoneTable table_;
};

}  // namespace fidel

#endif  // FIDEL_CORRUPT_HPP_
