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

#include <doctest.h>

#include "fidel/errors.hpp"
#include "fidel/eval.hpp"
#include "support.hpp"

using namespace fidel;

namespace {

struct Fixture {
  const Chart& chart = Chart::builtin();
  TrainResult trained;
  std::vector<ManifestRecord> refs;
  std::vector<CorrectionRecord> corrections;
  std::vector<HypRecord> hyps;
  EvalConfig cfg;

  Fixture() {
    std::vector<std::string> corpus = {"hagar nawe", "salAme hagar", "hagar nawe salAme"};
    trained = train_lm(corpus, 2, chart);
    cfg.norm.table = HomophoneTable::builtin(chart);
    // original (flawed) refs, corrected refs and raw hypotheses
    refs = {
        {"1", "ha gar nawe", "", "test"},
        {"2", "salAme ha gar", "", "test"},
    };
    corrections = {{"1", "hagar nawe", ""}, {"2", "salAme hagar", ""}};
    hyps = {{"1", "ha gar na we"}, {"2", "sa lAme hagar"}};
  }
};

}  // namespace

TEST_CASE("eval: identical hyps and refs score zero") {
  Fixture f;
  std::vector<HypRecord> perfect = {{"1", "ha gar nawe"}, {"2", "salAme ha gar"}};
  // disable correction so the third block compares raw text too
  f.cfg.correction.spaces = SpacePolicy::kHard;
  f.cfg.correction.edit_budget = 0;
  std::vector<CorrectionRecord> none;
  EvalReport report =
      run_eval_pipeline(f.refs, none, perfect, f.trained.lexicon, f.trained.lm, f.cfg, f.chart);
  REQUIRE(report.blocks.size() == 3);
  CHECK(report.blocks[0].cer == 0.0);
  CHECK(report.blocks[0].wer == 0.0);
  CHECK(report.blocks[2].wer == 0.0);
}

TEST_CASE("eval: three blocks, corrected block improves") {
  Fixture f;
  EvalReport report = run_eval_pipeline(f.refs, f.corrections, f.hyps, f.trained.lexicon,
                                        f.trained.lm, f.cfg, f.chart);
  REQUIRE(report.blocks.size() == 3);
  CHECK(report.blocks[0].name == "raw vs original refs");
  CHECK(report.blocks[1].name == "raw vs corrected refs");
  CHECK(report.blocks[2].name == "corrected vs corrected refs");
  CHECK(report.blocks[1].wer > 0.0);
  CHECK(report.blocks[2].wer < report.blocks[1].wer);
  CHECK(report.blocks[2].wer == 0.0);  // tiny closed-lexicon example corrects exactly
}

TEST_CASE("eval: byte-identical reruns and config hash") {
  Fixture f;
  EvalReport a = run_eval_pipeline(f.refs, f.corrections, f.hyps, f.trained.lexicon, f.trained.lm,
                                   f.cfg, f.chart);
  EvalReport b = run_eval_pipeline(f.refs, f.corrections, f.hyps, f.trained.lexicon, f.trained.lm,
                                   f.cfg, f.chart);
  CHECK(a.to_json() == b.to_json());
  CHECK(a.config_hash == b.config_hash);
  CHECK(a.to_json().find("config_hash") != std::string::npos);

  EvalConfig other = f.cfg;
  other.correction.edit_budget = 2;
  EvalReport c = run_eval_pipeline(f.refs, f.corrections, f.hyps, f.trained.lexicon, f.trained.lm,
                                   other, f.chart);
  CHECK(c.config_hash != a.config_hash);
}

TEST_CASE("eval: id mismatches are errors") {
  Fixture f;
  std::vector<HypRecord> stray = {{"zz", "ha"}};
  CHECK_THROWS_AS(run_eval_pipeline(f.refs, f.corrections, stray, f.trained.lexicon, f.trained.lm,
                                    f.cfg, f.chart),
                  IdMismatchError);
  std::vector<CorrectionRecord> stray_fix = {{"zz", "ha", ""}};
  CHECK_THROWS_AS(run_eval_pipeline(f.refs, stray_fix, f.hyps, f.trained.lexicon, f.trained.lm,
                                    f.cfg, f.chart),
                  UnknownIdError);
}

TEST_CASE("eval: normalization flag is recorded") {
  Fixture f;
  f.cfg.normalize_before_scoring = false;
  EvalReport report = run_eval_pipeline(f.refs, f.corrections, f.hyps, f.trained.lexicon,
                                        f.trained.lm, f.cfg, f.chart);
  CHECK(report.to_json().find("\"normalize_before_scoring\": false") != std::string::npos);
}
