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

#include <set>
#include <sstream>

#include "fidel/codec.hpp"
#include "fidel/corrupt.hpp"
#include "fidel/metrics.hpp"
#include "fidel/rng.hpp"
#include "support.hpp"

using namespace fidel;

namespace {

Corruptor make_corruptor(CorruptionConfig cfg) {
  const Chart& chart = Chart::builtin();
  return Corruptor(cfg, chart, HomophoneTable::builtin(chart));
}

CorruptionConfig zero_config() {
  CorruptionConfig cfg;
  cfg.p_space_insert = cfg.p_space_delete = 0.0;
  cfg.p_syll_delete = cfg.p_syll_insert = cfg.p_syll_substitute = 0.0;
  return cfg;
}

}  // namespace

TEST_CASE("corrupt: all probabilities zero is the identity") {
  Corruptor c = make_corruptor(zero_config());
  for (const char* text : {"hagarA^cen salAme nawe", "mn^Co^cA^cn", "ha"}) {
    CHECK(c.corrupt(text, 0) == text);
    CHECK(c.corrupt(text, 12345) == text);
  }
}

TEST_CASE("corrupt: the spacing-error example is reachable") {
  // clean "hagarA^cen salAme nawe" can corrupt to "ha garA ^cen sa lAme na"
  // with space inserts plus one syllable deletion; search stream indexes
  // until the exact output appears.
  CorruptionConfig cfg = zero_config();
  cfg.p_space_insert = 0.4;
  cfg.p_syll_delete = 0.1;
  cfg.seed = 1;
  Corruptor c = make_corruptor(cfg);
  const std::string clean = "hagarA^cen salAme nawe";
  const std::string target = "ha garA ^cen sa lAme na";
  bool found = false;
  for (std::uint64_t stream = 0; stream < 200000 && !found; ++stream)
    found = c.corrupt(clean, stream) == target;
  CHECK(found);
}

TEST_CASE("corrupt: deletion-only configs never grow the text") {
  const Chart& chart = Chart::builtin();
  CorruptionConfig cfg = zero_config();
  cfg.p_syll_delete = 0.5;
  cfg.seed = 7;
  Corruptor c = make_corruptor(cfg);

  // exhaustive over one- and two-word sentences of up to 5 syllables
  std::vector<std::string> sylls = {"ha", "lu", "mi", "rA", "sE"};
  std::vector<std::string> sentences;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t split = 0; split <= n; ++split) {
      std::string s;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == split) s.push_back(' ');
        s += sylls[i];
      }
      if (!s.empty() && s.front() != ' ' && s.back() != ' ') sentences.push_back(s);
    }
  }
  for (const std::string& s : sentences) {
    std::size_t before = parse_surface(s, Scheme::kAscii, chart).syllable_count();
    for (std::uint64_t stream = 0; stream < 50; ++stream) {
      std::string out = c.corrupt(s, stream);
      CHECK(out.size() <= s.size());
      CHECK(parse_surface(out, Scheme::kAscii, chart).syllable_count() <= before);
    }
  }

  cfg.p_syll_delete = 1.0;
  Corruptor wipe = make_corruptor(cfg);
  CHECK(wipe.corrupt("ha lu mi", 3) == "");
}

TEST_CASE("corrupt: vocabulary closure and scheme preservation") {
  const Chart& chart = Chart::builtin();
  CorruptionConfig cfg;  // defaults enable everything
  cfg.seed = 11;
  Corruptor c = make_corruptor(cfg);
  SplitMix64 rng(5);
  for (int iter = 0; iter < 200; ++iter) {
    SyllableSequence seq = test::random_sequence(rng, chart);
    std::string ascii = render(seq, Scheme::kAscii, chart);
    // corrupted output must parse under the same scheme (closure over the chart)
    std::string out = c.corrupt(ascii, static_cast<std::uint64_t>(iter));
    parse_surface(out, Scheme::kAscii, chart);
    CHECK(out.find("  ") == std::string::npos);
    if (!out.empty()) {
      CHECK(out.front() != ' ');
      CHECK(out.back() != ' ');
    }
  }
}

TEST_CASE("corrupt: error-type isolation") {
  const Chart& chart = Chart::builtin();
  const std::string clean = "hagarA salAme nawe batAme";

  auto despaced_syllables = [&](const std::string& text) {
    std::vector<Syllable> out;
    for (const SyllableToken& t : parse_surface(text, Scheme::kAscii, chart).items)
      if (!t.is_space) out.push_back(t.syl);
    return out;
  };

  // space edits only: the syllable stream is untouched
  CorruptionConfig cfg = zero_config();
  cfg.p_space_insert = 0.5;
  cfg.p_space_delete = 0.5;
  cfg.seed = 3;
  Corruptor spaces = make_corruptor(cfg);
  for (std::uint64_t stream = 0; stream < 100; ++stream) {
    std::string out = spaces.corrupt(clean, stream);
    CHECK(despaced_syllables(out) == despaced_syllables(clean));
  }

  // substitution only: token count and spacing pattern are untouched
  cfg = zero_config();
  cfg.p_syll_substitute = 0.5;
  cfg.seed = 4;
  Corruptor subs = make_corruptor(cfg);
  for (std::uint64_t stream = 0; stream < 100; ++stream) {
    std::string out = subs.corrupt(clean, stream);
    CHECK(word_tokens(out).size() == word_tokens(clean).size());
    CHECK(despaced_syllables(out).size() == despaced_syllables(clean).size());
  }

  // homophone-biased substitution keeps vowels in place (every consonant
  // here belongs to a group)
  cfg.homophone_bias = 1.0;
  cfg.p_syll_substitute = 1.0;
  Corruptor homo = make_corruptor(cfg);
  std::string out = homo.corrupt("hAsi.se", 9);
  std::vector<Syllable> before = despaced_syllables("hAsi.se");
  std::vector<Syllable> after = despaced_syllables(out);
  REQUIRE(after.size() == before.size());
  for (std::size_t i = 0; i < after.size(); ++i) {
    CHECK(after[i].vowel == before[i].vowel);
    CHECK(after[i].consonant != before[i].consonant);
  }
}

TEST_CASE("generate_pairs: ids, determinism, skip accounting") {
  CorruptionConfig cfg;
  cfg.seed = 21;
  Corruptor c = make_corruptor(cfg);
  std::vector<std::string> lines = {"ha gar", "salAme nawe", "??", "batAme"};
  Corruptor::PairsResult r = c.generate_pairs(lines);
  REQUIRE(r.records.size() == 3);
  CHECK(r.skipped == 1);
  CHECK(r.records[0].id == "1");
  CHECK(r.records[1].id == "2");
  CHECK(r.records[2].id == "4");  // line numbers, not record numbers
  CHECK(r.records[0].clean == "ha gar");

  // byte-identical serialization across runs and job counts
  auto serialize = [](const Corruptor::PairsResult& res) {
    std::ostringstream out;
    save_pairs(out, res.records);
    return out.str();
  };
  CHECK(serialize(c.generate_pairs(lines)) == serialize(c.generate_pairs(lines)));
  CHECK(serialize(c.generate_pairs(lines, 4)) == serialize(r));

  Corruptor c2 = make_corruptor([&] {
    CorruptionConfig other = cfg;
    other.seed = 22;
    return other;
  }());
  CHECK(serialize(c2.generate_pairs(lines)) != serialize(r));
}

TEST_CASE("corrupt: space-insert rate within 3-sigma binomial bounds") {
  const Chart& chart = Chart::builtin();
  CorruptionConfig cfg = zero_config();
  cfg.p_space_insert = 0.5;
  cfg.seed = 31;
  Corruptor c = make_corruptor(cfg);

  // 1000 lines x 11 spaceless gaps = 11000 boundaries
  std::string word;
  for (int i = 0; i < 12; ++i) word += "ba";
  std::int64_t boundaries = 0, inserted = 0;
  for (std::uint64_t stream = 0; stream < 1000; ++stream) {
    std::string out = c.corrupt(word, stream);
    boundaries += 11;
    inserted += static_cast<std::int64_t>(word_tokens(out).size()) - 1;
  }
  (void)chart;
  double p = cfg.p_space_insert;
  double mean = static_cast<double>(boundaries) * p;
  double sigma = std::sqrt(static_cast<double>(boundaries) * p * (1 - p));
  CHECK(std::abs(static_cast<double>(inserted) - mean) <= 3.0 * sigma);
}
