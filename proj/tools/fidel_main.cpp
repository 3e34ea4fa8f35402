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

// Command-line front end: dataset construction (normalize -> corrupt ->
// vocab / train-lm) and evaluation (correct -> score / eval) over the
// Ethiopic-script processing library.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fidel/audio.hpp"
#include "fidel/chart.hpp"
#include "fidel/codec.hpp"
#include "fidel/corrupt.hpp"
#include "fidel/errors.hpp"
#include "fidel/eval.hpp"
#include "fidel/lm.hpp"
#include "fidel/manifest.hpp"
#include "fidel/metrics.hpp"
#include "fidel/normalize.hpp"
#include "fidel/segment.hpp"
#include "fidel/vocab.hpp"

namespace {

using fidel::Chart;
using fidel::Scheme;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

struct LineIo {
  std::string in_path;   // empty = stdin
  std::string out_path;  // empty = stdout

  std::vector<std::string> read_lines() const {
    std::vector<std::string> lines;
    std::string line;
    if (in_path.empty()) {
      while (std::getline(std::cin, line)) lines.push_back(line);
    } else {
      std::ifstream in(in_path, std::ios::binary);
      if (!in) throw fidel::IoError("cannot open for reading: " + in_path);
      while (std::getline(in, line)) lines.push_back(line);
    }
    return lines;
  }

  void write_lines(const std::vector<std::string>& lines) const {
    if (out_path.empty()) {
      for (const std::string& l : lines) std::cout << l << '\n';
      return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fidel::IoError("cannot open for writing: " + out_path);
    for (const std::string& l : lines) out << l << '\n';
  }
};

void add_io_options(CLI::App* cmd, LineIo* io) {
  cmd->add_option("--in", io->in_path, "Input file (default: stdin)");
  cmd->add_option("--out", io->out_path, "Output file (default: stdout)");
}

struct ChartOption {
  std::string path;
  mutable std::unique_ptr<Chart> custom;

  const Chart& get() const {
    if (path.empty()) return Chart::builtin();
    if (!custom) custom = std::make_unique<Chart>(Chart::load(path));
    return *custom;
  }
};

Scheme parse_scheme_or_throw(const std::string& name) {
  std::optional<Scheme> s = fidel::scheme_from_string(name);
  if (!s) throw fidel::FormatError("unknown scheme '" + name + "' (unicode|ascii|phoneme)");
  return *s;
}

fidel::SpacePolicy parse_spaces(const std::string& name) {
  if (name == "ignore") return fidel::SpacePolicy::kIgnore;
  if (name == "soft") return fidel::SpacePolicy::kSoft;
  if (name == "hard") return fidel::SpacePolicy::kHard;
  throw fidel::FormatError("unknown space policy '" + name + "' (ignore|soft|hard)");
}

fidel::HomophoneTable load_table(const std::string& path, const Chart& chart) {
  return path.empty() ? fidel::HomophoneTable::builtin(chart)
                      : fidel::HomophoneTable::load(path, chart);
}

std::vector<std::string> read_file_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fidel::IoError("cannot open for reading: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// Strict config-file reader: every key must be consumed.
class ConfigFile {
 public:
  explicit ConfigFile(const std::string& path) {
    if (path.empty()) return;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fidel::IoError("cannot open config: " + path);
    try {
      json_ = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw fidel::FormatError(std::string("config: ") + e.what());
    }
    if (!json_.is_object()) throw fidel::FormatError("config must be a JSON object");
  }

  template <typename T>
  void get(const char* key, T& value) {
    if (!json_.is_object() || !json_.contains(key)) return;
    try {
      value = json_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw fidel::FormatError(std::string("config key '") + key + "': " + e.what());
    }
    consumed_.push_back(key);
  }

  void finish() const {
    if (!json_.is_object()) return;
    for (const auto& [key, value] : json_.items()) {
      (void)value;
      bool known = false;
      for (const std::string& c : consumed_)
        if (c == key) known = true;
      if (!known) throw fidel::FormatError("config: unknown key '" + key + "'");
    }
  }

 private:
  nlohmann::json json_;
  std::vector<std::string> consumed_;
};

std::string default_config_path() {
  const char* env = std::getenv("FIDEL_CONFIG");
  return env ? env : "";
}

// ---- subcommand argument bags ----

struct TranslitArgs {
  std::string from, to;
  LineIo io;
  ChartOption chart;
};

struct NormalizeArgs {
  std::string table;
  bool keep_symbols = false;
  bool keep_space = false;
  bool strict = false;
  LineIo io;
  ChartOption chart;
};

struct CorruptArgs {
  std::string config = default_config_path();
  fidel::CorruptionConfig cfg;
  std::string in_path, out_path, table;
  int jobs = 1;
  ChartOption chart;
};

struct VocabArgs {
  std::string corpus, vocab_path, merges_path, out, out_vocab, out_merges, scheme = "ascii";
  std::size_t size = 0;
  LineIo io;
  ChartOption chart;
};

struct TrainLmArgs {
  std::string corpus, out;
  int order = 2;
  double smoothing_k = 0.05;
  double oov_syllable_logprob = -6.0;
  ChartOption chart;
};

struct SegmentArgs {
  std::string model, spaces = "soft";
  fidel::CorrectionConfig cfg;
  LineIo io;
  ChartOption chart;
};

struct CorrectArgs {
  std::string hyp, model, out, table, spaces = "soft";
  fidel::CorrectionConfig cfg;
  int jobs = 1;
  ChartOption chart;
};

struct ScoreArgs {
  std::string ref, hyp, report, table;
  bool normalize_before_scoring = true;
  int jobs = 1;
  ChartOption chart;
};

struct AugmentArgs {
  std::string manifest, out_manifest;
  fidel::AugmentConfig cfg;
  std::int64_t count = -1;
};

struct ApplyCorrectionsArgs {
  std::string manifest, corrections, out, audit, format = "jsonl";
  ChartOption chart;
};

struct SplitArgs {
  std::string pairs, out_prefix, ratios = "0.98,0.01,0.01";
  std::uint64_t seed = 0;
};

struct EvalArgs {
  std::string manifest, corrections, hyp, model, report, format = "jsonl", table;
  std::string config = default_config_path();
  std::string spaces = "soft";
  fidel::EvalConfig cfg;
  ChartOption chart;
};

fidel::CorrectionFormat parse_corrections_format(const std::string& name) {
  if (name == "jsonl") return fidel::CorrectionFormat::kJsonl;
  if (name == "tsv") return fidel::CorrectionFormat::kTsv;
  throw fidel::FormatError("unknown corrections format '" + name + "' (jsonl|tsv)");
}

void run_translit(const TranslitArgs& args) {
  const Chart& chart = args.chart.get();
  Scheme from = parse_scheme_or_throw(args.from);
  Scheme to = parse_scheme_or_throw(args.to);
  std::vector<std::string> lines = args.io.read_lines();
  std::vector<std::string> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(fidel::render(fidel::parse_surface(lines[i], from, chart), to, chart));
    } catch (const fidel::Error& e) {
      throw fidel::FormatError("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  args.io.write_lines(out);
}

void run_normalize(const NormalizeArgs& args) {
  const Chart& chart = args.chart.get();
  fidel::NormalizationConfig cfg;
  cfg.table = load_table(args.table, chart);
  cfg.strip_nonscript = !args.keep_symbols;
  cfg.collapse_whitespace = !args.keep_space;
  cfg.strict = args.strict;
  fidel::NormalizeStats stats;
  std::vector<std::string> out;
  for (const std::string& line : args.io.read_lines())
    out.push_back(fidel::normalize(line, cfg, chart, &stats));
  args.io.write_lines(out);
  if (stats.dropped_tokens || stats.passed_through)
    std::cerr << "normalize: dropped " << stats.dropped_tokens << " token(s), passed through "
              << stats.passed_through << "\n";
}

void run_corrupt(CorruptArgs& args) {
  ConfigFile config(args.config);
  config.get("p_space_insert", args.cfg.p_space_insert);
  config.get("p_space_delete", args.cfg.p_space_delete);
  config.get("p_syll_delete", args.cfg.p_syll_delete);
  config.get("p_syll_insert", args.cfg.p_syll_insert);
  config.get("p_syll_substitute", args.cfg.p_syll_substitute);
  config.get("homophone_bias", args.cfg.homophone_bias);
  config.get("seed", args.cfg.seed);
  config.finish();

  const Chart& chart = args.chart.get();
  fidel::Corruptor corruptor(args.cfg, chart, load_table(args.table, chart));
  fidel::Corruptor::PairsResult result =
      corruptor.generate_pairs(read_file_lines(args.in_path), args.jobs);
  fidel::save_pairs_file(args.out_path, result.records);
  if (result.skipped)
    std::cerr << "corrupt: skipped " << result.skipped << " unparseable line(s)\n";
}

void run_train_lm(const TrainLmArgs& args) {
  const Chart& chart = args.chart.get();
  fidel::TrainResult result = fidel::train_lm(read_file_lines(args.corpus), args.order, chart,
                                              args.smoothing_k, args.oov_syllable_logprob);
  fidel::save_model_file(args.out, result.lexicon, result.lm);
  if (result.skipped_lines)
    std::cerr << "train-lm: skipped " << result.skipped_lines << " unparseable line(s)\n";
  std::cerr << "train-lm: " << result.lexicon.size() << " words, " << result.lm.sentences
            << " sentences\n";
}

void run_segment(SegmentArgs& args) {
  const Chart& chart = args.chart.get();
  args.cfg.spaces = parse_spaces(args.spaces);
  auto [lexicon, lm] = fidel::load_model_file(args.model, chart);
  fidel::Segmenter segmenter(lexicon, lm, chart);
  std::vector<std::string> out;
  for (const std::string& line : args.io.read_lines())
    out.push_back(segmenter.segment(line, args.cfg));
  args.io.write_lines(out);
}

void run_correct(CorrectArgs& args) {
  const Chart& chart = args.chart.get();
  args.cfg.spaces = parse_spaces(args.spaces);
  auto [lexicon, lm] = fidel::load_model_file(args.model, chart);
  fidel::Segmenter segmenter(lexicon, lm, chart);
  fidel::NormalizationConfig norm;
  norm.table = load_table(args.table, chart);
  std::vector<fidel::HypRecord> hyps = fidel::load_hyp_file(args.hyp);
  fidel::CorrectionStats stats;
  std::vector<fidel::HypRecord> corrected =
      fidel::correct_records(hyps, segmenter, args.cfg, norm, chart, &stats, args.jobs);
  fidel::save_hyp_file(args.out, corrected);
  if (stats.failed) std::cerr << "correct: " << stats.failed << " line(s) left unchanged\n";
}

void run_score(const ScoreArgs& args) {
  const Chart& chart = args.chart.get();
  std::vector<fidel::HypRecord> refs = fidel::load_hyp_file(args.ref);
  std::vector<fidel::HypRecord> hyps = fidel::load_hyp_file(args.hyp);
  if (refs.size() != hyps.size())
    throw fidel::IdMismatchError("reference has " + std::to_string(refs.size()) +
                                 " rows, hypothesis has " + std::to_string(hyps.size()));
  fidel::NormalizationConfig norm;
  norm.table = load_table(args.table, chart);
  std::vector<fidel::ScoredPair> pairs;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].id != hyps[i].id)
      throw fidel::IdMismatchError("row " + std::to_string(i + 1) + ": reference id '" +
                                   refs[i].id + "' vs hypothesis id '" + hyps[i].id + "'");
    std::string r = refs[i].text, h = hyps[i].text;
    if (args.normalize_before_scoring) {
      r = fidel::normalize(r, norm, chart);
      h = fidel::normalize(h, norm, chart);
    }
    pairs.push_back({refs[i].id, r, h});
  }
  fidel::CorpusScore score = fidel::score_corpus(pairs, chart, args.jobs);

  char buf[160];
  std::snprintf(buf, sizeof buf, "sentences %zu  CER %.2f%%  WER %.2f%%  (normalized: %s)\n",
                score.per_sentence.size(), 100.0 * score.micro_cer(), 100.0 * score.micro_wer(),
                args.normalize_before_scoring ? "yes" : "no");
  std::cout << buf;

  if (!args.report.empty()) {
    nlohmann::ordered_json j;
    j["normalize_before_scoring"] = args.normalize_before_scoring;
    j["totals"] = {{"sentences", score.per_sentence.size()},
                   {"char_edits", score.char_edits},
                   {"char_ref_len", score.char_ref_len},
                   {"word_edits", score.word_edits},
                   {"word_ref_len", score.word_ref_len},
                   {"cer", score.micro_cer()},
                   {"wer", score.micro_wer()}};
    j["sentences"] = nlohmann::ordered_json::array();
    for (const fidel::SentenceScore& s : score.per_sentence) {
      j["sentences"].push_back({{"id", s.id},
                                {"char_sub", s.chars.substitutions},
                                {"char_del", s.chars.deletions},
                                {"char_ins", s.chars.insertions},
                                {"char_ref_len", s.chars.ref_len},
                                {"word_sub", s.words.substitutions},
                                {"word_del", s.words.deletions},
                                {"word_ins", s.words.insertions},
                                {"word_ref_len", s.words.ref_len},
                                {"cer", s.chars.rate()},
                                {"wer", s.words.rate()}});
    }
    std::ofstream out(args.report, std::ios::binary);
    if (!out) throw fidel::IoError("cannot open for writing: " + args.report);
    out << j.dump(2) << '\n';
  }
}

void run_augment(AugmentArgs& args) {
  if (args.count >= 0) args.cfg.exact_count = args.count;
  std::vector<fidel::ManifestRecord> manifest = fidel::load_manifest_file(args.manifest);
  fidel::AugmentResult result = fidel::augment_manifest(manifest, args.cfg);
  fidel::save_manifest_file(args.out_manifest, result.manifest);
  std::cerr << "augment: " << manifest.size() << " rows + " << result.augmented
            << " augmented = " << result.manifest.size() << " total";
  if (result.io_failures) std::cerr << " (" << result.io_failures << " I/O failure(s))";
  std::cerr << "\n";
}

void run_apply_corrections(const ApplyCorrectionsArgs& args) {
  const Chart& chart = args.chart.get();
  std::vector<fidel::ManifestRecord> manifest = fidel::load_manifest_file(args.manifest);
  std::vector<fidel::CorrectionRecord> corrections =
      fidel::load_corrections_file(args.corrections, parse_corrections_format(args.format));
  fidel::ApplyResult result = fidel::apply_corrections(manifest, corrections, chart);
  fidel::save_manifest_file(args.out, result.manifest);
  if (!args.audit.empty()) {
    std::ofstream out(args.audit, std::ios::binary);
    if (!out) throw fidel::IoError("cannot open for writing: " + args.audit);
    fidel::save_audit(out, result.audit);
  }
  std::cerr << "apply-corrections: " << result.audit.size() << " row(s) corrected\n";
}

void run_split(const SplitArgs& args) {
  fidel::SplitRatios ratios;
  if (std::sscanf(args.ratios.c_str(), "%lf,%lf,%lf", &ratios.train, &ratios.dev,
                  &ratios.test) != 3)
    throw fidel::FormatError("ratios must be three comma-separated numbers");
  std::vector<fidel::PairRecord> records = fidel::load_pairs_file(args.pairs);
  fidel::SplitResult split = fidel::split_pairs(records, ratios, args.seed);
  fidel::save_pairs_file(args.out_prefix + ".train.tsv", split.train);
  fidel::save_pairs_file(args.out_prefix + ".dev.tsv", split.dev);
  fidel::save_pairs_file(args.out_prefix + ".test.tsv", split.test);
  std::cerr << "split: " << split.train.size() << " train, " << split.dev.size() << " dev, "
            << split.test.size() << " test\n";
}

void run_eval(EvalArgs& args) {
  ConfigFile config(args.config);
  config.get("edit_budget", args.cfg.correction.edit_budget);
  config.get("beam_width", args.cfg.correction.beam_width);
  config.get("spaces", args.spaces);
  config.get("space_bonus_logprob", args.cfg.correction.space_bonus_logprob);
  config.get("edit_sub_logprob", args.cfg.correction.edit_sub_logprob);
  config.get("edit_ins_logprob", args.cfg.correction.edit_ins_logprob);
  config.get("edit_del_logprob", args.cfg.correction.edit_del_logprob);
  config.get("normalize_before_scoring", args.cfg.normalize_before_scoring);
  config.get("jobs", args.cfg.jobs);
  config.finish();
  args.cfg.correction.spaces = parse_spaces(args.spaces);

  const Chart& chart = args.chart.get();
  args.cfg.norm.table = load_table(args.table, chart);
  std::vector<fidel::ManifestRecord> refs = fidel::load_manifest_file(args.manifest);
  std::vector<fidel::CorrectionRecord> corrections;
  if (!args.corrections.empty())
    corrections =
        fidel::load_corrections_file(args.corrections, parse_corrections_format(args.format));
  std::vector<fidel::HypRecord> hyps = fidel::load_hyp_file(args.hyp);
  auto [lexicon, lm] = fidel::load_model_file(args.model, chart);

  fidel::EvalReport report =
      fidel::run_eval_pipeline(refs, corrections, hyps, lexicon, lm, args.cfg, chart);
  std::cout << report.to_table();
  if (!args.report.empty()) {
    std::ofstream out(args.report, std::ios::binary);
    if (!out) throw fidel::IoError("cannot open for writing: " + args.report);
    out << report.to_json();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fidel: Ethiopic-script text processing and ASR post-processing toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fidel 0.1.0");

  TranslitArgs translit;
  CLI::App* cmd = app.add_subcommand("translit", "Convert between surface schemes");
  cmd->add_option("--from", translit.from, "Source scheme: unicode|ascii|phoneme")->required();
  cmd->add_option("--to", translit.to, "Target scheme: unicode|ascii|phoneme")->required();
  cmd->add_option("--chart", translit.chart.path, "Chart table file (default: built-in)");
  add_io_options(cmd, &translit.io);
  cmd->callback([&] { run_translit(translit); });

  NormalizeArgs normalize;
  cmd = app.add_subcommand("normalize", "Canonicalize homophones, symbols and whitespace");
  cmd->add_option("--table", normalize.table, "Homophone table file (default: built-in)");
  cmd->add_flag("--keep-symbols", normalize.keep_symbols, "Do not strip non-script symbols");
  cmd->add_flag("--keep-space", normalize.keep_space, "Do not collapse whitespace");
  cmd->add_flag("--strict", normalize.strict, "Fail on unparseable tokens");
  cmd->add_option("--chart", normalize.chart.path, "Chart table file");
  add_io_options(cmd, &normalize.io);
  cmd->callback([&] { run_normalize(normalize); });

  CorruptArgs corrupt;
  cmd = app.add_subcommand("corrupt", "Generate (corrupted, clean) sentence pairs");
  cmd->add_option("--in", corrupt.in_path, "Normalized corpus, one sentence per line")->required();
  cmd->add_option("--out", corrupt.out_path, "Pair file (TSV: id, corrupted, clean)")->required();
  cmd->add_option("--seed", corrupt.cfg.seed, "Random seed");
  cmd->add_option("--config", corrupt.config, "JSON config file (default: $FIDEL_CONFIG)");
  cmd->add_option("--p-space-insert", corrupt.cfg.p_space_insert,
                  "Per-boundary insert probability");
  cmd->add_option("--p-space-delete", corrupt.cfg.p_space_delete, "Per-space delete probability");
  cmd->add_option("--p-syll-delete", corrupt.cfg.p_syll_delete, "Per-syllable delete probability");
  cmd->add_option("--p-syll-insert", corrupt.cfg.p_syll_insert, "Per-syllable insert probability");
  cmd->add_option("--p-syll-substitute", corrupt.cfg.p_syll_substitute,
                  "Per-syllable substitute probability");
  cmd->add_option("--homophone-bias", corrupt.cfg.homophone_bias,
                  "Probability a substitution stays in the homophone group");
  cmd->add_option("--table", corrupt.table, "Homophone table file");
  cmd->add_option("--jobs", corrupt.jobs, "Worker threads (output is order-stable)");
  cmd->add_option("--chart", corrupt.chart.path, "Chart table file");
  cmd->callback([&] { run_corrupt(corrupt); });

  VocabArgs vocab;
  CLI::App* vocab_cmd = app.add_subcommand("vocab", "Build and apply vocabularies");
  vocab_cmd->require_subcommand(1);
  CLI::App* sub = vocab_cmd->add_subcommand("build-char", "Chart-closed character vocabulary");
  sub->add_option("--corpus", vocab.corpus, "Corpus to validate (optional)");
  sub->add_option("--out", vocab.out, "Vocabulary file")->required();
  sub->add_option("--chart", vocab.chart.path, "Chart table file");
  sub->callback([&] {
    const Chart& chart = vocab.chart.get();
    std::vector<std::string> lines;
    if (!vocab.corpus.empty()) lines = read_file_lines(vocab.corpus);
    fidel::Vocabulary v = fidel::build_char_vocab(lines, chart);
    std::ofstream out(vocab.out, std::ios::binary);
    if (!out) throw fidel::IoError("cannot open for writing: " + vocab.out);
    fidel::save_vocab(out, v);
  });
  sub = vocab_cmd->add_subcommand("train-subword", "Pair-merge subword training");
  sub->add_option("--corpus", vocab.corpus, "Normalized corpus")->required();
  sub->add_option("--size", vocab.size, "Target vocabulary size")->required();
  sub->add_option("--out-vocab", vocab.out_vocab, "Vocabulary file")->required();
  sub->add_option("--out-merges", vocab.out_merges, "Merge rules file")->required();
  sub->add_option("--chart", vocab.chart.path, "Chart table file");
  sub->callback([&] {
    const Chart& chart = vocab.chart.get();
    fidel::SubwordModel model =
        fidel::train_subword(read_file_lines(vocab.corpus), vocab.size, chart);
    std::ofstream vout(vocab.out_vocab, std::ios::binary);
    if (!vout) throw fidel::IoError("cannot open for writing: " + vocab.out_vocab);
    fidel::save_vocab(vout, model.vocab);
    std::ofstream mout(vocab.out_merges, std::ios::binary);
    if (!mout) throw fidel::IoError("cannot open for writing: " + vocab.out_merges);
    fidel::save_merges(mout, model.merges);
    std::cerr << "train-subword: " << model.merges.size() << " merges, vocabulary "
              << model.vocab.size() << "\n";
  });
  sub = vocab_cmd->add_subcommand("encode", "Text lines to id lines");
  sub->add_option("--vocab", vocab.vocab_path, "Vocabulary file")->required();
  sub->add_option("--merges", vocab.merges_path, "Merge rules file (subword mode)");
  sub->add_option("--chart", vocab.chart.path, "Chart table file");
  add_io_options(sub, &vocab.io);
  sub->callback([&] {
    const Chart& chart = vocab.chart.get();
    std::ifstream vin(vocab.vocab_path, std::ios::binary);
    if (!vin) throw fidel::IoError("cannot open vocab: " + vocab.vocab_path);
    fidel::Vocabulary v = fidel::load_vocab(vin, vocab.merges_path.empty()
                                                     ? fidel::Vocabulary::Kind::kCharLevel
                                                     : fidel::Vocabulary::Kind::kSubword);
    std::vector<fidel::MergeRule> merges;
    if (!vocab.merges_path.empty()) {
      std::ifstream min(vocab.merges_path, std::ios::binary);
      if (!min) throw fidel::IoError("cannot open merges: " + vocab.merges_path);
      merges = fidel::load_merges(min);
    }
    std::vector<std::string> out;
    for (const std::string& line : vocab.io.read_lines()) {
      std::string ids;
      for (int id : fidel::encode(line, v, merges, chart)) {
        if (!ids.empty()) ids.push_back(' ');
        ids += std::to_string(id);
      }
      out.push_back(std::move(ids));
    }
    vocab.io.write_lines(out);
  });
  sub = vocab_cmd->add_subcommand("decode", "Id lines back to text");
  sub->add_option("--vocab", vocab.vocab_path, "Vocabulary file")->required();
  sub->add_option("--scheme", vocab.scheme, "Output scheme (default ascii)");
  sub->add_option("--chart", vocab.chart.path, "Chart table file");
  add_io_options(sub, &vocab.io);
  sub->callback([&] {
    const Chart& chart = vocab.chart.get();
    std::ifstream vin(vocab.vocab_path, std::ios::binary);
    if (!vin) throw fidel::IoError("cannot open vocab: " + vocab.vocab_path);
    fidel::Vocabulary v = fidel::load_vocab(vin, fidel::Vocabulary::Kind::kCharLevel);
    Scheme scheme = parse_scheme_or_throw(vocab.scheme);
    std::vector<std::string> out;
    for (const std::string& line : vocab.io.read_lines()) {
      std::vector<int> ids;
      std::istringstream fields(line);
      int id;
      while (fields >> id) ids.push_back(id);
      out.push_back(fidel::decode(ids, v, scheme, chart));
    }
    vocab.io.write_lines(out);
  });

  TrainLmArgs train_lm_args;
  cmd = app.add_subcommand("train-lm", "Train the lexicon and n-gram model");
  cmd->add_option("--corpus", train_lm_args.corpus, "Normalized corpus")->required();
  cmd->add_option("--out", train_lm_args.out, "Model file")->required();
  cmd->add_option("--order", train_lm_args.order, "N-gram order: 1 or 2");
  cmd->add_option("--smoothing-k", train_lm_args.smoothing_k, "Add-k smoothing constant");
  cmd->add_option("--oov-syllable-logprob", train_lm_args.oov_syllable_logprob,
                  "Per-syllable OOV log penalty");
  cmd->add_option("--chart", train_lm_args.chart.path, "Chart table file");
  cmd->callback([&] { run_train_lm(train_lm_args); });

  SegmentArgs segment;
  cmd = app.add_subcommand("segment", "Resegment lines with the lexicon and model");
  cmd->add_option("--model", segment.model, "Model file from train-lm")->required();
  cmd->add_option("--edit-budget", segment.cfg.edit_budget, "Max syllable edits per word");
  cmd->add_option("--spaces", segment.spaces, "Input space policy: ignore|soft|hard");
  cmd->add_option("--beam", segment.cfg.beam_width, "Beam width (contexts per position)");
  cmd->add_option("--chart", segment.chart.path, "Chart table file");
  add_io_options(cmd, &segment.io);
  cmd->callback([&] { run_segment(segment); });

  CorrectArgs correct;
  cmd = app.add_subcommand("correct", "Normalize and resegment a hypothesis file");
  cmd->add_option("--hyp", correct.hyp, "Hypothesis TSV (id, text)")->required();
  cmd->add_option("--model", correct.model, "Model file from train-lm")->required();
  cmd->add_option("--out", correct.out, "Corrected hypothesis TSV")->required();
  cmd->add_option("--edit-budget", correct.cfg.edit_budget, "Max syllable edits per word");
  cmd->add_option("--spaces", correct.spaces, "Input space policy: ignore|soft|hard");
  cmd->add_option("--beam", correct.cfg.beam_width, "Beam width");
  cmd->add_option("--table", correct.table, "Homophone table file");
  cmd->add_option("--jobs", correct.jobs, "Worker threads (output is order-stable)");
  cmd->add_option("--chart", correct.chart.path, "Chart table file");
  cmd->callback([&] { run_correct(correct); });

  ScoreArgs score;
  cmd = app.add_subcommand("score", "CER/WER against a reference");
  cmd->add_option("--ref", score.ref, "Reference TSV (id, text)")->required();
  cmd->add_option("--hyp", score.hyp, "Hypothesis TSV (id, text)")->required();
  cmd->add_option("--report", score.report, "Machine-readable report (JSON)");
  cmd->add_flag("--normalize-before-scoring,!--no-normalize", score.normalize_before_scoring,
                "Normalize both sides before scoring (default on)");
  cmd->add_option("--table", score.table, "Homophone table file");
  cmd->add_option("--jobs", score.jobs, "Worker threads");
  cmd->add_option("--chart", score.chart.path, "Chart table file");
  cmd->callback([&] { run_score(score); });

  AugmentArgs augment;
  cmd = app.add_subcommand("augment", "White noise and background mixing over a manifest");
  cmd->add_option("--manifest", augment.manifest, "Input manifest (JSON lines)")->required();
  cmd->add_option("--out-manifest", augment.out_manifest, "Output manifest")->required();
  cmd->add_option("--out-dir", augment.cfg.out_dir, "Directory for augmented wave files");
  cmd->add_option("--seed", augment.cfg.seed, "Random seed");
  double snr_fixed = 0.0;
  CLI::Option* snr_opt =
      cmd->add_option("--snr-db", snr_fixed, "Fixed SNR in dB (sets both ends of the range)");
  cmd->add_option("--snr-db-low", augment.cfg.snr_low_db, "Lowest SNR in dB");
  cmd->add_option("--snr-db-high", augment.cfg.snr_high_db, "Highest SNR in dB");
  cmd->add_option("--max-backgrounds", augment.cfg.max_backgrounds,
                  "At most this many background mixes (0..3)");
  cmd->add_option("--gain", augment.cfg.background_gain, "Background gain");
  cmd->add_option("--multiplier", augment.cfg.multiplier,
                  "Augmented copies per row (fraction is probabilistic)");
  cmd->add_option("--count", augment.count,
                  "Exact number of augmented rows (overrides multiplier)");
  cmd->callback([&] {
    if (snr_opt->count()) augment.cfg.snr_low_db = augment.cfg.snr_high_db = snr_fixed;
    run_augment(augment);
  });

  CLI::App* dataset = app.add_subcommand("dataset", "Manifest and pair-file plumbing");
  dataset->require_subcommand(1);
  ApplyCorrectionsArgs apply;
  sub = dataset->add_subcommand("apply-corrections", "Replace flawed reference transcripts");
  sub->add_option("--manifest", apply.manifest, "Input manifest")->required();
  sub->add_option("--corrections", apply.corrections, "Corrections file")->required();
  sub->add_option("--out", apply.out, "Output manifest")->required();
  sub->add_option("--audit", apply.audit, "Audit diff (JSON lines: id, before, after, cer)");
  sub->add_option("--format", apply.format, "Corrections format: jsonl|tsv");
  sub->add_option("--chart", apply.chart.path, "Chart table file");
  sub->callback([&] { run_apply_corrections(apply); });
  SplitArgs split;
  sub = dataset->add_subcommand("split", "Seeded train/dev/test split of a pair file");
  sub->add_option("--pairs", split.pairs, "Pair file")->required();
  sub->add_option("--out-prefix", split.out_prefix, "Output prefix")->required();
  sub->add_option("--ratios", split.ratios, "train,dev,test (default 0.98,0.01,0.01)");
  sub->add_option("--seed", split.seed, "Shuffle seed");
  sub->callback([&] { run_split(split); });

  EvalArgs eval;
  cmd = app.add_subcommand("eval", "Three-condition evaluation report");
  cmd->add_option("--manifest", eval.manifest, "Reference manifest (original text)")->required();
  cmd->add_option("--corrections", eval.corrections, "Corrections producing the corrected refs");
  cmd->add_option("--hyp", eval.hyp, "Raw hypothesis TSV (id, text)")->required();
  cmd->add_option("--model", eval.model, "Model file from train-lm")->required();
  cmd->add_option("--report", eval.report, "Report file (JSON)");
  cmd->add_option("--config", eval.config, "JSON config file (default: $FIDEL_CONFIG)");
  cmd->add_option("--format", eval.format, "Corrections format: jsonl|tsv");
  cmd->add_option("--edit-budget", eval.cfg.correction.edit_budget, "Max syllable edits per word");
  cmd->add_option("--spaces", eval.spaces, "Input space policy: ignore|soft|hard");
  cmd->add_option("--beam", eval.cfg.correction.beam_width, "Beam width");
  cmd->add_option("--table", eval.table, "Homophone table file");
  cmd->add_option("--jobs", eval.cfg.jobs, "Worker threads");
  cmd->add_option("--chart", eval.chart.path, "Chart table file");
  cmd->callback([&] { run_eval(eval); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const fidel::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fidel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
