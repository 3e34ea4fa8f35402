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

#include <cmath>
#include <sstream>

#include "fidel/corrupt.hpp"
#include "fidel/lm.hpp"
#include "fidel/metrics.hpp"
#include "fidel/segment.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fidel;

namespace {

std::vector<std::string> lines(std::initializer_list<const char*> list) {
  std::vector<std::string> out;
  for (const char* s : list) out.emplace_back(s);
  return out;
}

}  // namespace

TEST_CASE("segment: single lexicon word passes through") {
  const Chart& chart = Chart::builtin();
  TrainResult r = train_lm(lines({"hagar nawe"}), 2, chart);
  Segmenter seg(r.lexicon, r.lm, chart);
  CorrectionConfig cfg;
  CHECK(seg.segment("hagar", cfg) == "hagar");
  CHECK(seg.segment("", cfg) == "");
}

TEST_CASE("segment: spacing example recovers the clean sentence") {
  const Chart& chart = Chart::builtin();
  // the five-word lexicon; uniform unigram via training one line per word
  std::vector<std::string> corpus = {"hagarA^cen", "salAme", "nawe", "garA", "lAme"};
  TrainResult r = train_lm(corpus, 1, chart);
  Segmenter seg(r.lexicon, r.lm, chart);

  CorrectionConfig cfg;
  cfg.edit_budget = 1;
  cfg.beam_width = 256;

  // spacing-only errors need no edits
  CHECK(seg.segment("ha garA ^cen sa lAme nawe", cfg) == "hagarA^cen salAme nawe");
  // the full example needs one insertion ("we" missing at the end)
  CHECK(seg.segment("ha garA ^cen sa lAme na", cfg) == "hagarA^cen salAme nawe");
  // and the oracle agrees that the segmenter's score is optimal
  for (const char* input : {"ha garA ^cen sa lAme nawe", "ha garA ^cen sa lAme na"}) {
    SegmentResult res = seg.segment_scored(input, cfg);
    double rescored = 0.0;
    REQUIRE(test::rescore_pieces(res, input, r.lexicon, r.lm, cfg, chart, &rescored));
    CHECK(rescored == doctest::Approx(res.score).epsilon(1e-12));
    double want = test::oracle_best_score(input, r.lexicon, r.lm, cfg, chart);
    CHECK(res.score == doctest::Approx(want).epsilon(1e-9));
  }
}

TEST_CASE("segment: space policies") {
  const Chart& chart = Chart::builtin();
  TrainResult r = train_lm(lines({"hagar nawe", "hagar nawe", "ha gar"}), 2, chart);
  Segmenter seg(r.lexicon, r.lm, chart);

  CorrectionConfig cfg;
  cfg.edit_budget = 0;

  cfg.spaces = SpacePolicy::kIgnore;
  CHECK(seg.segment("hagarnawe", cfg) == "hagar nawe");
  CHECK(seg.segment("ha gar na we", cfg) == "hagar nawe");

  cfg.spaces = SpacePolicy::kHard;
  CHECK(seg.segment("hagar nawe", cfg) == "hagar nawe");
  // hard mode keeps the given boundaries even when they are wrong
  CHECK(word_tokens(seg.segment("hag arnawe", cfg)).size() == 2);

  cfg.spaces = SpacePolicy::kSoft;
  CHECK(seg.segment("hagarnawe", cfg) == "hagar nawe");
  CHECK(seg.segment("hagar nawe", cfg) == "hagar nawe");
}

TEST_CASE("segment: passthrough config returns input verbatim") {
  const Chart& chart = Chart::builtin();
  TrainResult r = train_lm(lines({"hagar"}), 1, chart);
  Segmenter seg(r.lexicon, r.lm, chart);
  CorrectionConfig cfg;
  cfg.spaces = SpacePolicy::kHard;
  cfg.edit_budget = 0;
  CHECK(cfg.passthrough());
  CHECK(seg.segment("anything at all ??", cfg) == "anything at all ??");

  // an external hypothesis file moves through the pipeline untouched
  NormalizationConfig norm;
  norm.table = HomophoneTable::builtin(chart);
  std::vector<HypRecord> hyps = {{"x", ".ha  gar !!"}, {"y", "whatever"}};
  std::vector<HypRecord> out = correct_records(hyps, seg, cfg, norm, chart);
  REQUIRE(out.size() == 2);
  CHECK(out[0].text == ".ha  gar !!");
  CHECK(out[1].text == "whatever");
}

TEST_CASE("segment: space-only corruption over a closed lexicon recovers exactly") {
  const Chart& chart = Chart::builtin();
  test::ToyCorpus corpus = test::make_toy_corpus(2000, 555, 150);
  TrainResult r = train_lm(corpus.sentences, 2, chart);
  Segmenter seg(r.lexicon, r.lm, chart);
  CorruptionConfig ccfg;
  ccfg.p_syll_delete = ccfg.p_syll_insert = ccfg.p_syll_substitute = 0.0;
  ccfg.seed = 1234;
  Corruptor corruptor(ccfg, chart, HomophoneTable::builtin(chart));
  CorrectionConfig cfg;  // defaults
  int exact = 0, total = 0;
  for (int i = 0; i < 500; ++i) {
    const std::string& clean = corpus.sentences[static_cast<std::size_t>(i)];
    std::string corrupted = corruptor.corrupt(clean, static_cast<std::uint64_t>(i));
    if (corrupted.empty()) continue;
    ++total;
    if (seg.segment(corrupted, cfg) == clean) ++exact;
  }
  CHECK(total >= 490);
  CHECK(exact * 100 >= total * 99);
}

TEST_CASE("segment: OOV runs keep their input spelling") {
  const Chart& chart = Chart::builtin();
  TrainResult r = train_lm(lines({"hagar nawe"}), 2, chart);
  Segmenter seg(r.lexicon, r.lm, chart);
  CorrectionConfig cfg;
  cfg.edit_budget = 0;
  // "batAme" is not in the lexicon; it must come back untouched
  std::string out = seg.segment("hagar batAme nawe", cfg);
  CHECK(out.find("batAme") != std::string::npos);
  // chart closure: output parses
  parse_surface(out, Scheme::kAscii, chart);
}

TEST_CASE("segment: matches the exhaustive oracle on random despaced inputs") {
  const Chart& chart = Chart::builtin();
  test::ToyCorpus corpus = test::make_toy_corpus(120, 67, 40, 2, 4);
  TrainResult r = train_lm(corpus.sentences, 2, chart);

  CorrectionConfig cfg;
  cfg.edit_budget = 1;
  cfg.beam_width = 4096;
  cfg.spaces = SpacePolicy::kIgnore;

  Segmenter seg(r.lexicon, r.lm, chart);
  SplitMix64 rng(71);
  int checked = 0;
  for (int iter = 0; iter < 40; ++iter) {
    // 1-3 corpus words, despaced, sometimes with a syllable chopped
    std::string text = corpus.words[rng.next_below(corpus.words.size())];
    std::size_t extra = rng.next_below(3);
    for (std::size_t k = 0; k < extra; ++k)
      text += corpus.words[rng.next_below(corpus.words.size())];
    if (test::despaced_syllables(text, chart).size() > 12) continue;
    ++checked;
    SegmentResult res = seg.segment_scored(text, cfg);
    double rescored = 0.0;
    REQUIRE(test::rescore_pieces(res, text, r.lexicon, r.lm, cfg, chart, &rescored));
    CHECK(rescored == doctest::Approx(res.score).epsilon(1e-12));
    double want = test::oracle_best_score(text, r.lexicon, r.lm, cfg, chart);
    CHECK(res.score == doctest::Approx(want).epsilon(1e-9));
  }
  CHECK(checked >= 20);
}

TEST_CASE("segment: deterministic output") {
  const Chart& chart = Chart::builtin();
  test::ToyCorpus corpus = test::make_toy_corpus(100, 73, 30);
  TrainResult r = train_lm(corpus.sentences, 2, chart);
  Segmenter seg(r.lexicon, r.lm, chart);
  CorrectionConfig cfg;
  std::string input = "ha gar na we ba da";
  std::string first = seg.segment(input, cfg);
  for (int i = 0; i < 10; ++i) CHECK(seg.segment(input, cfg) == first);
}

TEST_CASE("correct_records: pipeline behavior") {
  const Chart& chart = Chart::builtin();
  TrainResult r = train_lm(lines({"hagar nawe", "salAme"}), 2, chart);
  Segmenter seg(r.lexicon, r.lm, chart);
  CorrectionConfig cfg;
  NormalizationConfig norm;
  norm.table = HomophoneTable::builtin(chart);

  // empty in, empty out
  CorrectionStats stats;
  CHECK(correct_records({}, seg, cfg, norm, chart, &stats).empty());
  CHECK(stats.lines == 0);

  std::vector<HypRecord> hyps = {
      {"a", "ha gar"},
      {"b", ".ha gar"},   // variant consonant normalizes, then joins
      {"c", "salAme !!"}, // junk stripped by normalization
  };
  std::vector<HypRecord> out = correct_records(hyps, seg, cfg, norm, chart, &stats);
  REQUIRE(out.size() == 3);
  CHECK(out[0].id == "a");
  CHECK(out[0].text == "hagar");
  CHECK(out[1].text == "hagar");
  CHECK(out[2].text == "salAme");
  CHECK(stats.failed == 0);

  // parallel equals sequential
  std::vector<HypRecord> par = correct_records(hyps, seg, cfg, norm, chart, nullptr, 4);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(par[i].text == out[i].text);
}

TEST_CASE("segment: directional improvement on space-corrupted text") {
  const Chart& chart = Chart::builtin();
  test::ToyCorpus corpus = test::make_toy_corpus(400, 79, 100);
  TrainResult r = train_lm(corpus.sentences, 2, chart);
  Segmenter seg(r.lexicon, r.lm, chart);

  CorruptionConfig ccfg;
  ccfg.p_space_insert = 0.3;
  ccfg.p_space_delete = 0.5;
  ccfg.p_syll_delete = ccfg.p_syll_insert = ccfg.p_syll_substitute = 0.0;
  ccfg.seed = 83;
  Corruptor corruptor(ccfg, chart, HomophoneTable::builtin(chart));

  CorrectionConfig cfg;
  cfg.edit_budget = 0;

  std::int64_t word_edits_before = 0, word_edits_after = 0, ref_words = 0;
  std::int64_t char_edits_before = 0, char_edits_after = 0, exact = 0, total = 0;
  for (std::size_t i = 0; i < 60; ++i) {
    const std::string& clean = corpus.sentences[i];
    std::string corrupted = corruptor.corrupt(clean, i);
    if (corrupted.empty()) continue;
    std::string corrected = seg.segment(corrupted, cfg);
    AlignmentReport wb = word_align(clean, corrupted);
    AlignmentReport wa = word_align(clean, corrected);
    AlignmentReport cb = char_align(clean, corrupted, chart);
    AlignmentReport ca = char_align(clean, corrected, chart);
    word_edits_before += wb.edits();
    word_edits_after += wa.edits();
    char_edits_before += cb.edits();
    char_edits_after += ca.edits();
    ref_words += wb.ref_len;
    if (corrected == clean) ++exact;
    ++total;
  }
  // space-only corruption over a closed lexicon: correction nearly always
  // restores the exact sentence
  CHECK(exact >= total * 9 / 10);
  CHECK(word_edits_after * 2 < word_edits_before);
  CHECK(char_edits_after <= char_edits_before);
}
