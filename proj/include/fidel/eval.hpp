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

#ifndef FIDEL_EVAL_HPP_
#define FIDEL_EVAL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fidel/chart.hpp"
#include "fidel/lm.hpp"
#include "fidel/manifest.hpp"
#include "fidel/metrics.hpp"
#include "fidel/normalize.hpp"
#include "fidel/segment.hpp"

namespace fidel {

struct EvalConfig {
  NormalizationConfig norm;
  CorrectionConfig correction;
  bool normalize_before_scoring = true;
  int jobs = 1;
};

struct EvalBlock {
  std::string name;
  std::size_t sentences = 0;
  double cer = 0.0;
  double wer = 0.0;
};

struct EvalReport {
  std::vector<EvalBlock> blocks;
  bool normalize_before_scoring = true;
  std::string config_json;   // effective config, for provenance
  std::uint64_t config_hash = 0;

  std::string to_json() const;
  std::string to_table() const;
};

// The three-condition comparison: raw hypotheses against the original
// references, raw against the corrected references, and corrected
// hypotheses against the corrected references. Hypothesis ids must all
// resolve in the manifest (IdMismatchError otherwise) and every correction
// id must resolve (UnknownIdError).
EvalReport run_eval_pipeline(std::span<const ManifestRecord> refs,
                             std::span<const CorrectionRecord> corrections,
                             std::span<const HypRecord> hyps, const Lexicon& lexicon,
                             const NGramModel& lm, const EvalConfig& cfg, const Chart& chart);

}  // namespace fidel

#endif  // FIDEL_EVAL_HPP_
