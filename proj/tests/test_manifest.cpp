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

#include "fidel/errors.hpp"
#include "fidel/manifest.hpp"
#include "fidel/metrics.hpp"

using namespace fidel;

TEST_CASE("manifest: load/save round trip is byte-identical when canonical") {
  std::string canonical =
      "{\"id\":\"a1\",\"text\":\"ha gar\",\"split\":\"train\"}\n"
      "{\"id\":\"a2\",\"text\":\"salAme\",\"audio_path\":\"x/a2.wav\",\"split\":\"test\"}\n";
  std::istringstream in(canonical);
  std::vector<ManifestRecord> records = load_manifest(in);
  REQUIRE(records.size() == 2);
  CHECK(records[0].id == "a1");
  CHECK(records[1].audio_path == "x/a2.wav");
  std::ostringstream out;
  save_manifest(out, records);
  CHECK(out.str() == canonical);
}

TEST_CASE("manifest: save orders rows by id") {
  std::vector<ManifestRecord> records = {{"b", "x", "", "train"}, {"a", "y", "", "train"}};
  std::ostringstream out;
  save_manifest(out, records);
  CHECK(out.str().find("\"a\"") < out.str().find("\"b\""));
}

TEST_CASE("manifest: duplicate id names both lines") {
  std::istringstream in(
      "{\"id\":\"a\",\"text\":\"x\"}\n"
      "{\"id\":\"b\",\"text\":\"y\"}\n"
      "{\"id\":\"a\",\"text\":\"z\"}\n");
  try {
    load_manifest(in);
    FAIL("expected DuplicateIdError");
  } catch (const DuplicateIdError& e) {
    std::string msg = e.what();
    CHECK(msg.find("'a'") != std::string::npos);
    CHECK(msg.find("1") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }
}

TEST_CASE("manifest: malformed rows carry line numbers") {
  std::istringstream in("{\"id\":\"a\",\"text\":\"x\"}\nnot json\n");
  try {
    load_manifest(in);
    FAIL("expected MalformedRowError");
  } catch (const MalformedRowError& e) {
    CHECK(e.line == 2);
  }
  std::istringstream missing("{\"id\":\"a\"}\n");
  CHECK_THROWS_AS(load_manifest(missing), MalformedRowError);
}

TEST_CASE("manifest: a 359-record test manifest loads intact") {
  std::ostringstream built;
  for (int i = 0; i < 359; ++i)
    built << "{\"id\":\"t" << i << "\",\"text\":\"ha gar\",\"split\":\"test\"}\n";
  std::istringstream in(built.str());
  CHECK(load_manifest(in).size() == 359);
}

TEST_CASE("apply_corrections: replacement plus audit") {
  const Chart& chart = Chart::builtin();
  std::vector<ManifestRecord> manifest = {
      {"a", "ha gar", "", "test"},
      {"b", "sa lAme", "", "test"},
  };

  // empty corrections: identity, no audit rows
  ApplyResult none = apply_corrections(manifest, {}, chart);
  CHECK(none.audit.empty());
  CHECK(none.manifest[0].text == "ha gar");

  std::vector<CorrectionRecord> fix = {{"b", "salAme", "joined"}};
  ApplyResult one = apply_corrections(manifest, fix, chart);
  REQUIRE(one.audit.size() == 1);
  CHECK(one.manifest[0].text == "ha gar");
  CHECK(one.manifest[1].text == "salAme");
  CHECK(one.audit[0].id == "b");
  CHECK(one.audit[0].before == "sa lAme");
  CHECK(one.audit[0].after == "salAme");
  // audit CER equals the metric recomputed independently
  CHECK(one.audit[0].cer == doctest::Approx(cer("sa lAme", "salAme", chart)));

  std::vector<CorrectionRecord> bad = {{"zz", "x", ""}};
  CHECK_THROWS_AS(apply_corrections(manifest, bad, chart), UnknownIdError);
}

TEST_CASE("corrections: jsonl and tsv adapters") {
  std::istringstream jsonl("{\"id\":\"a\",\"corrected_text\":\"ha\",\"note\":\"n\"}\n");
  std::vector<CorrectionRecord> a = load_corrections(jsonl, CorrectionFormat::kJsonl);
  REQUIRE(a.size() == 1);
  CHECK(a[0].id == "a");
  CHECK(a[0].corrected_text == "ha");
  CHECK(a[0].note == "n");

  std::istringstream tsv("a\tha gar\n");
  std::vector<CorrectionRecord> b = load_corrections(tsv, CorrectionFormat::kTsv);
  REQUIRE(b.size() == 1);
  CHECK(b[0].corrected_text == "ha gar");
}

TEST_CASE("pair files: tsv round trip") {
  std::vector<PairRecord> records = {{"1", "ha ga", "haga"}, {"2", "x", "y"}};
  std::ostringstream out;
  save_pairs(out, records);
  CHECK(out.str() == "1\tha ga\thaga\n2\tx\ty\n");
  std::istringstream in(out.str());
  std::vector<PairRecord> back = load_pairs(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].corrupted == "ha ga");
  CHECK(back[1].clean == "y");

  std::istringstream bad("1\tonly two\n");
  CHECK_THROWS_AS(load_pairs(bad), MalformedRowError);
}

TEST_CASE("split_pairs: ratios, determinism, coverage") {
  std::vector<PairRecord> records;
  for (int i = 0; i < 1000; ++i)
    records.push_back({std::to_string(i), "c" + std::to_string(i), "k" + std::to_string(i)});

  CHECK_THROWS_AS(split_pairs(records, {0.5, 0.1, 0.1}, 1), BadRatiosError);
  CHECK_THROWS_AS(split_pairs(records, {1.2, -0.1, -0.1}, 1), BadRatiosError);

  // everything to train
  SplitResult all_train = split_pairs(records, {1.0, 0.0, 0.0}, 5);
  CHECK(all_train.train.size() == 1000);
  CHECK(all_train.dev.empty());
  CHECK(all_train.test.empty());

  SplitResult split = split_pairs(records, {0.8, 0.1, 0.1}, 5);
  CHECK(split.train.size() == 800);
  CHECK(split.dev.size() == 100);
  CHECK(split.test.size() == 100);

  // same seed: identical; different seed: different membership
  SplitResult again = split_pairs(records, {0.8, 0.1, 0.1}, 5);
  CHECK(again.train.size() == split.train.size());
  for (std::size_t i = 0; i < split.train.size(); ++i)
    CHECK(again.train[i].id == split.train[i].id);

  // disjoint and exhaustive
  std::set<std::string> seen;
  for (const auto* part : {&split.train, &split.dev, &split.test})
    for (const PairRecord& r : *part) CHECK(seen.insert(r.id).second);
  CHECK(seen.size() == 1000);
}

TEST_CASE("split_pairs: floor/remainder rule at the corpus scale") {
  // 90,927 records at (0.98, 0.01, 0.01): floor gives 89108 and 909,
  // remainder 910 to test
  std::vector<PairRecord> records(90927);
  for (std::size_t i = 0; i < records.size(); ++i) records[i].id = std::to_string(i);
  SplitResult split = split_pairs(records, {0.98, 0.01, 0.01}, 42);
  CHECK(split.train.size() == 89108);
  CHECK(split.dev.size() == 909);
  CHECK(split.test.size() == 910);
}

TEST_CASE("hyp files: tsv round trip") {
  std::vector<HypRecord> records = {{"1", "ha gar"}, {"2", ""}};
  std::ostringstream out;
  save_hyp(out, records);
  std::istringstream in(out.str());
  std::vector<HypRecord> back = load_hyp(in);
  REQUIRE(back.size() == 2);
  CHECK(back[0].text == "ha gar");
  CHECK(back[1].text == "");
}
