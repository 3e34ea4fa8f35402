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

#include "fidel/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "fidel/errors.hpp"
#include "fidel/metrics.hpp"
#include "fidel/rng.hpp"

namespace fidel {

namespace {

using OrderedJson = nlohmann::ordered_json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::vector<std::string> tsv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

void check_no_tab(const std::string& value, const char* what) {
  if (value.find('\t') != std::string::npos)
    throw FormatError(std::string(what) + " may not contain tabs: '" + value + "'");
}

}  // namespace

std::vector<ManifestRecord> load_manifest(std::istream& in) {
  std::vector<ManifestRecord> records;
  std::unordered_map<std::string, std::size_t> seen;  // id -> line number
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    OrderedJson row;
    try {
      row = OrderedJson::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedRowError("manifest line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
    if (!row.is_object() || !row.contains("id") || !row.contains("text"))
      throw MalformedRowError("manifest line " + std::to_string(lineno) + ": need id and text",
                              lineno);
    ManifestRecord rec;
    try {
      rec.id = row.at("id").get<std::string>();
      rec.text = row.at("text").get<std::string>();
      if (row.contains("audio_path")) rec.audio_path = row.at("audio_path").get<std::string>();
      if (row.contains("split")) rec.split = row.at("split").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw MalformedRowError("manifest line " + std::to_string(lineno) + ": " + e.what(), lineno);
    }
    auto [it, inserted] = seen.emplace(rec.id, lineno);
    if (!inserted)
      throw DuplicateIdError("duplicate id '" + rec.id + "' at lines " +
                             std::to_string(it->second) + " and " + std::to_string(lineno));
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ManifestRecord> load_manifest_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return load_manifest(in);
}

void save_manifest(std::ostream& out, std::span<const ManifestRecord> records) {
  std::vector<const ManifestRecord*> sorted;
  sorted.reserve(records.size());
  for (const ManifestRecord& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ManifestRecord* a, const ManifestRecord* b) { return a->id < b->id; });
  for (const ManifestRecord* r : sorted) {
    OrderedJson row;
    row["id"] = r->id;
    row["text"] = r->text;
    if (!r->audio_path.empty()) row["audio_path"] = r->audio_path;
    row["split"] = r->split;
    out << row.dump() << '\n';
  }
}

void save_manifest_file(const std::string& path, std::span<const ManifestRecord> records) {
  std::ofstream out = open_out(path);
  save_manifest(out, records);
}

std::vector<CorrectionRecord> load_corrections(std::istream& in, CorrectionFormat format) {
  std::vector<CorrectionRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CorrectionRecord rec;
    if (format == CorrectionFormat::kJsonl) {
      OrderedJson row;
      try {
        row = OrderedJson::parse(line);
        rec.id = row.at("id").get<std::string>();
        rec.corrected_text = row.at("corrected_text").get<std::string>();
        if (row.contains("note")) rec.note = row.at("note").get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw MalformedRowError("corrections line " + std::to_string(lineno) + ": " + e.what(),
                                lineno);
      }
    } else {
      std::vector<std::string> fields = tsv_fields(line);
      if (fields.size() < 2)
        throw MalformedRowError("corrections line " + std::to_string(lineno) +
                                    ": expected id<TAB>text",
                                lineno);
      rec.id = fields[0];
      rec.corrected_text = fields[1];
      if (fields.size() > 2) rec.note = fields[2];
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<CorrectionRecord> load_corrections_file(const std::string& path,
                                                    CorrectionFormat format) {
  std::ifstream in = open_in(path);
  return load_corrections(in, format);
}

ApplyResult apply_corrections(std::span<const ManifestRecord> manifest,
                              std::span<const CorrectionRecord> corrections, const Chart& chart) {
  ApplyResult result;
  result.manifest.assign(manifest.begin(), manifest.end());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < result.manifest.size(); ++i) index[result.manifest[i].id] = i;
  for (const CorrectionRecord& c : corrections) {
    auto it = index.find(c.id);
    if (it == index.end()) throw UnknownIdError("correction id '" + c.id + "' not in manifest");
    ManifestRecord& row = result.manifest[it->second];
    CorrectionAuditRow audit;
    audit.id = c.id;
    audit.before = row.text;
    audit.after = c.corrected_text;
    audit.cer = char_align(audit.before, audit.after, chart).rate();
    result.audit.push_back(std::move(audit));
    row.text = c.corrected_text;
  }
  return result;
}

void save_audit(std::ostream& out, std::span<const CorrectionAuditRow> audit) {
  for (const CorrectionAuditRow& row : audit) {
    OrderedJson j;
    j["id"] = row.id;
    j["before"] = row.before;
    j["after"] = row.after;
    j["cer"] = row.cer;
    out << j.dump() << '\n';
  }
}

std::vector<PairRecord> load_pairs(std::istream& in) {
  std::vector<PairRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = tsv_fields(line);
    if (fields.size() != 3)
      throw MalformedRowError("pair line " + std::to_string(lineno) +
                                  ": expected id<TAB>corrupted<TAB>clean",
                              lineno);
    records.push_back({fields[0], fields[1], fields[2]});
  }
  return records;
}

std::vector<PairRecord> load_pairs_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return load_pairs(in);
}

void save_pairs(std::ostream& out, std::span<const PairRecord> records) {
  for (const PairRecord& r : records) {
    check_no_tab(r.id, "pair id");
    check_no_tab(r.corrupted, "pair text");
    check_no_tab(r.clean, "pair text");
    out << r.id << '\t' << r.corrupted << '\t' << r.clean << '\n';
  }
}

void save_pairs_file(const std::string& path, std::span<const PairRecord> records) {
  std::ofstream out = open_out(path);
  save_pairs(out, records);
}

std::vector<HypRecord> load_hyp(std::istream& in) {
  std::vector<HypRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields = tsv_fields(line);
    if (fields.size() != 2)
      throw MalformedRowError("line " + std::to_string(lineno) + ": expected id<TAB>text", lineno);
    records.push_back({fields[0], fields[1]});
  }
  return records;
}

std::vector<HypRecord> load_hyp_file(const std::string& path) {
  std::ifstream in = open_in(path);
  return load_hyp(in);
}

void save_hyp(std::ostream& out, std::span<const HypRecord> records) {
  for (const HypRecord& r : records) {
    check_no_tab(r.id, "id");
    check_no_tab(r.text, "text");
    out << r.id << '\t' << r.text << '\n';
  }
}

void save_hyp_file(const std::string& path, std::span<const HypRecord> records) {
  std::ofstream out = open_out(path);
  save_hyp(out, records);
}

SplitResult split_pairs(std::span<const PairRecord> records, SplitRatios ratios,
                        std::uint64_t seed) {
  if (ratios.train < 0 || ratios.dev < 0 || ratios.test < 0)
    throw BadRatiosError("split ratios must be nonnegative");
  double sum = ratios.train + ratios.dev + ratios.test;
  if (sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9)
    throw BadRatiosError("split ratios must sum to 1, got " + std::to_string(sum));

  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(seed);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.next_below(i)]);

  std::size_t n = records.size();
  std::size_t n_train = static_cast<std::size_t>(ratios.train * static_cast<double>(n));
  std::size_t n_dev = static_cast<std::size_t>(ratios.dev * static_cast<double>(n));
  if (n_train + n_dev > n) n_dev = n - n_train;

  SplitResult result;
  for (std::size_t i = 0; i < n; ++i) {
    const PairRecord& rec = records[order[i]];
    if (i < n_train) result.train.push_back(rec);
    else if (i < n_train + n_dev) result.dev.push_back(rec);
    else result.test.push_back(rec);
  }
  return result;
}

}  // namespace fidel
