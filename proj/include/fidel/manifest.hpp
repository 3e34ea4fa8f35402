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

#ifndef FIDEL_MANIFEST_HPP_
#define FIDEL_MANIFEST_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fidel/chart.hpp"

namespace fidel {

// One dataset row. Serialized as JSON lines with keys id, text, audio_path
// (omitted when empty) and split.
struct ManifestRecord {
  std::string id;
  std::string text;
  std::string audio_path;
  std::string split = "train";
};

// Throws DuplicateIdError (naming both lines) and MalformedRowError.
std::vector<ManifestRecord> load_manifest(std::istream& in);
std::vector<ManifestRecord> load_manifest_file(const std::string& path);
// Canonical form: sorted by id, fixed key order. save(load(f)) is
// byte-identical for canonicalized files.
void save_manifest(std::ostream& out, std::span<const ManifestRecord> records);
void save_manifest_file(const std::string& path, std::span<const ManifestRecord> records);

struct CorrectionRecord {
  std::string id;
  std::string corrected_text;
  std::string note;
};

// JSON lines {id, corrected_text, note?} or TSV (id <TAB> corrected_text);
// the format adapter keeps externally published correction sets importable.
enum class CorrectionFormat { kJsonl, kTsv };
std::vector<CorrectionRecord> load_corrections(std::istream& in, CorrectionFormat format);
std::vector<CorrectionRecord> load_corrections_file(const std::string& path, CorrectionFormat format);

struct CorrectionAuditRow {
  std::string id;
  std::string before;
  std::string after;
  double cer = 0.0;  // char_align(before, after).rate()
};

struct ApplyResult {
  std::vector<ManifestRecord> manifest;
  std::vector<CorrectionAuditRow> audit;
};

// Replaces the text of matching rows. Every correction id must resolve
// (UnknownIdError otherwise).
ApplyResult apply_corrections(std::span<const ManifestRecord> manifest,
                              std::span<const CorrectionRecord> corrections, const Chart& chart);
void save_audit(std::ostream& out, std::span<const CorrectionAuditRow> audit);

// (corrupted, clean) sentence pair, TSV: id <TAB> corrupted <TAB> clean.
struct PairRecord {
  std::string id;
  std::string corrupted;
  std::string clean;
};

std::vector<PairRecord> load_pairs(std::istream& in);
std::vector<PairRecord> load_pairs_file(const std::string& path);
void save_pairs(std::ostream& out, std::span<const PairRecord> records);
void save_pairs_file(const std::string& path, std::span<const PairRecord> records);

// Hypothesis/reference line, TSV: id <TAB> text.
struct HypRecord {
  std::string id;
  std::string text;
};

std::vector<HypRecord> load_hyp(std::istream& in);
std::vector<HypRecord> load_hyp_file(const std::string& path);
void save_hyp(std::ostream& out, std::span<const HypRecord> records);
void save_hyp_file(const std::string& path, std::span<const HypRecord> records);

struct SplitRatios {
  double train = 0.98;
  double dev = 0.01;
  double test = 0.01;
};

struct SplitResult {
  std::vector<PairRecord> train;
  std::vector<PairRecord> dev;
  std::vector<PairRecord> test;
};

// Deterministic, disjoint, exhaustive partition by seeded shuffle.
// Sizes: floor(train*N) and floor(dev*N); the remainder goes to test.
// Throws BadRatiosError unless ratios are nonnegative and sum to 1.
SplitResult split_pairs(std::span<const PairRecord> records, SplitRatios ratios, std::uint64_t seed);

}  // namespace fidel

#endif  // FIDEL_MANIFEST_HPP_
