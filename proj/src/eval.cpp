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

#include "fidel/eval.hpp"

#include <cstdio>
#include <unordered_map>

#include <json.hpp>

#include "fidel/errors.hpp"
#include "fidel/rng.hpp"

namespace fidel {

namespace {

std::string format_rate(double rate) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", rate);
  return buf;
}

EvalBlock score_block(const std::string& name, std::span<const ScoredPair> pairs,
                      const EvalConfig& cfg, const Chart& chart) {
  std::vector<ScoredPair> scored(pairs.begin(), pairs.end());
  if (cfg.normalize_before_scoring) {
    for (ScoredPair& p : scored) {
      p.ref = normalize(p.ref, cfg.norm, chart);
      p.hyp = normalize(p.hyp, cfg.norm, chart);
    }
  }
  CorpusScore corpus = score_corpus(scored, chart, cfg.jobs);
  EvalBlock block;
  block.name = name;
  block.sentences = scored.size();
  block.cer = corpus.micro_cer();
  block.wer = corpus.micro_wer();
  return block;
}

}  // namespace

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["normalize_before_scoring"] = normalize_before_scoring;
  j["config_hash"] = config_hash;
  j["config"] = nlohmann::ordered_json::parse(config_json);
  j["blocks"] = nlohmann::ordered_json::array();
  for (const EvalBlock& b : blocks) {
    nlohmann::ordered_json row;
    row["name"] = b.name;
    row["sentences"] = b.sentences;
    row["cer"] = format_rate(b.cer);
    row["wer"] = format_rate(b.wer);
    j["blocks"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::string EvalReport::to_table() const {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-34s %10s %8s %8s\n", "condition", "sentences", "CER", "WER");
  out += line;
  for (const EvalBlock& b : blocks) {
    std::snprintf(line, sizeof line, "%-34s %10zu %7.1f%% %7.1f%%\n", b.name.c_str(), b.sentences,
                  100.0 * b.cer, 100.0 * b.wer);
    out += line;
  }
  return out;
}

EvalReport run_eval_pipeline(std::span<const ManifestRecord> refs,
                             std::span<const CorrectionRecord> corrections,
                             std::span<const HypRecord> hyps, const Lexicon& lexicon,
                             const NGramModel& lm, const EvalConfig& cfg, const Chart& chart) {
  ApplyResult corrected_refs = apply_corrections(refs, corrections, chart);

  std::unordered_map<std::string, const ManifestRecord*> raw_by_id, corrected_by_id;
  for (const ManifestRecord& r : refs) raw_by_id[r.id] = &r;
  for (const ManifestRecord& r : corrected_refs.manifest) corrected_by_id[r.id] = &r;

  Segmenter segmenter(lexicon, lm, chart);
  CorrectionStats stats;
  std::vector<HypRecord> corrected_hyps =
      correct_records(hyps, segmenter, cfg.correction, cfg.norm, chart, &stats, cfg.jobs);

  std::vector<ScoredPair> raw_vs_raw, raw_vs_corrected, corrected_vs_corrected;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const HypRecord& h = hyps[i];
    auto raw = raw_by_id.find(h.id);
    if (raw == raw_by_id.end())
      throw IdMismatchError("hypothesis id '" + h.id + "' not in the reference manifest");
    const ManifestRecord* cor = corrected_by_id.at(h.id);
    raw_vs_raw.push_back({h.id, raw->second->text, h.text});
    raw_vs_corrected.push_back({h.id, cor->text, h.text});
    corrected_vs_corrected.push_back({h.id, cor->text, corrected_hyps[i].text});
  }

  EvalReport report;
  report.normalize_before_scoring = cfg.normalize_before_scoring;
  report.blocks.push_back(score_block("raw vs original refs", raw_vs_raw, cfg, chart));
  report.blocks.push_back(score_block("raw vs corrected refs", raw_vs_corrected, cfg, chart));
  report.blocks.push_back(
      score_block("corrected vs corrected refs", corrected_vs_corrected, cfg, chart));

  nlohmann::ordered_json cfgj;
  cfgj["normalize_before_scoring"] = cfg.normalize_before_scoring;
  cfgj["strip_nonscript"] = cfg.norm.strip_nonscript;
  cfgj["collapse_whitespace"] = cfg.norm.collapse_whitespace;
  cfgj["edit_budget"] = cfg.correction.edit_budget;
  cfgj["spaces"] = cfg.correction.spaces == SpacePolicy::kIgnore ? "ignore"
                   : cfg.correction.spaces == SpacePolicy::kSoft ? "soft"
                                                                 : "hard";
  cfgj["beam_width"] = cfg.correction.beam_width;
  cfgj["space_bonus_logprob"] = cfg.correction.space_bonus_logprob;
  cfgj["edit_sub_logprob"] = cfg.correction.edit_sub_logprob;
  cfgj["edit_ins_logprob"] = cfg.correction.edit_ins_logprob;
  cfgj["edit_del_logprob"] = cfg.correction.edit_del_logprob;
  cfgj["lm_order"] = lm.order;
  cfgj["smoothing_k"] = lm.smoothing_k;
  cfgj["oov_syllable_logprob"] = lm.oov_syllable_logprob;
  report.config_json = cfgj.dump();
  report.config_hash = fnv1a64(report.config_json.data(), report.config_json.size());
  return report;
}

}  // namespace fidel
