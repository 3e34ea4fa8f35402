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

#include "fidel/chart.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fidel/errors.hpp"
#include "fidel/chart_data.inc"

namespace fidel {

namespace {

// Second vowels of a velar labiovelar series and their offsets in the
// W block: C+u+a, C+u+i, C+u+A, C+u+E, C+u+e at wbase + {0,2,3,4,5}.
constexpr int kVelarSecond[5] = {1, 3, 4, 5, 6};
constexpr int kVelarOffset[5] = {0, 2, 3, 4, 5};

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '\t' || c == ' ') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

char32_t parse_hex(const std::string& s, std::size_t lineno) {
  char32_t v = 0;
  if (s.empty()) throw FormatError("chart line " + std::to_string(lineno) + ": empty codepoint");
  for (char c : s) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw FormatError("chart line " + std::to_string(lineno) + ": bad hex '" + s + "'");
    v = v * 16 + static_cast<char32_t>(d);
  }
  return v;
}

}  // namespace

Chart Chart::from_text(std::string_view table) {
  Chart chart;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= table.size()) {
    std::size_t eol = table.find('\n', pos);
    std::string_view line = table.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? table.size() + 1 : eol + 1;
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3)
      throw FormatError("chart line " + std::to_string(lineno) + ": expected 3 fields, got " +
                        std::to_string(fields.size()));

    ConsonantRow row;
    row.ascii = fields[0];
    row.base = parse_hex(fields[1], lineno);
    const std::string& flags = fields[2];
    if (flags == "wa") {
      row.derived.push_back({4, row.base + 7});
    } else if (flags == "wa:none") {
      row.derived.push_back({4, 0});
    } else if (flags.rfind("velar:", 0) == 0) {
      char32_t wbase = parse_hex(flags.substr(6), lineno);
      for (int k = 0; k < 5; ++k)
        row.derived.push_back({static_cast<std::uint8_t>(kVelarSecond[k]),
                               wbase + static_cast<char32_t>(kVelarOffset[k])});
    } else if (flags.rfind("ua:", 0) == 0) {
      row.derived.push_back({1, parse_hex(flags.substr(3), lineno)});
    } else if (flags != "-") {
      throw FormatError("chart line " + std::to_string(lineno) + ": unknown flags '" + flags + "'");
    }

    std::size_t idx = chart.rows_.size();
    if (!chart.by_ascii_.emplace(row.ascii, idx).second)
      throw FormatError("chart line " + std::to_string(lineno) + ": duplicate symbol '" + row.ascii + "'");
    chart.max_symbol_len_ = std::max(chart.max_symbol_len_, row.ascii.size());
    chart.rows_.push_back(std::move(row));
  }
  if (chart.rows_.empty()) throw FormatError("chart table has no rows");

  for (std::size_t idx = 0; idx < chart.rows_.size(); ++idx) {
    const ConsonantRow& row = chart.rows_[idx];
    for (int order = 1; order <= kVowelCount; ++order) {
      Syllable s{static_cast<std::uint16_t>(idx), static_cast<std::uint8_t>(order), 0};
      char32_t cp = row.base + static_cast<char32_t>(order - 1);
      if (!chart.by_codepoint_.emplace(cp, s).second)
        throw FormatError("chart: codepoint collision in row '" + row.ascii + "'");
      chart.all_.push_back(s);
    }
  }
  for (std::size_t idx = 0; idx < chart.rows_.size(); ++idx) {
    for (const DerivedForm& d : chart.rows_[idx].derived) {
      Syllable s{static_cast<std::uint16_t>(idx), 2, d.second_vowel};
      if (d.codepoint != 0 && !chart.by_codepoint_.emplace(d.codepoint, s).second)
        throw FormatError("chart: codepoint collision in derived row '" + chart.rows_[idx].ascii + "'");
      chart.all_.push_back(s);
      ++chart.derived_count_;
    }
  }

  for (const ConsonantRow& row : chart.rows_)
    for (char c : row.ascii)
      if (chart.ascii_chars_.find(c) == std::string::npos) chart.ascii_chars_.push_back(c);
  for (char c : kVowelAscii)
    if (chart.ascii_chars_.find(c) == std::string::npos) chart.ascii_chars_.push_back(c);

  return chart;
}

Chart Chart::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open chart file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

const Chart& Chart::builtin() {
  static const Chart chart = from_text(detail::kChartTable);
  return chart;
}

std::optional<std::size_t> Chart::consonant_by_ascii(std::string_view symbol) const {
  auto it = by_ascii_.find(std::string(symbol));
  if (it == by_ascii_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<std::size_t, std::size_t>> Chart::match_consonant(std::string_view text) const {
  std::size_t max_len = std::min(max_symbol_len_, text.size());
  for (std::size_t len = max_len; len >= 1; --len) {
    auto it = by_ascii_.find(std::string(text.substr(0, len)));
    if (it != by_ascii_.end()) return std::make_pair(it->second, len);
  }
  return std::nullopt;
}

bool Chart::derived_allowed(std::size_t consonant, int second_vowel) const {
  for (const DerivedForm& d : rows_[consonant].derived)
    if (d.second_vowel == second_vowel) return true;
  return false;
}

std::optional<char32_t> Chart::codepoint(const Syllable& s) const {
  const ConsonantRow& row = rows_[s.consonant];
  if (!s.derived()) return row.base + static_cast<char32_t>(s.vowel - 1);
  for (const DerivedForm& d : row.derived) {
    if (d.second_vowel != s.second_vowel) continue;
    if (d.codepoint == 0) return std::nullopt;
    return d.codepoint;
  }
  return std::nullopt;
}

std::optional<Syllable> Chart::syllable_of(char32_t cp) const {
  auto it = by_codepoint_.find(cp);
  if (it == by_codepoint_.end()) return std::nullopt;
  return it->second;
}

std::string Chart::canonical_ascii(const Syllable& s) const {
  const ConsonantRow& row = rows_[s.consonant];
  std::string out = row.ascii;
  if (s.derived()) {
    out.push_back('u');
    out.push_back(kVowelAscii[s.second_vowel - 1]);
    return out;
  }
  if (s.vowel == 6) {
    // Bare consonant reads as sixth order. The one symbol that could glue
    // onto a following unit ("`" + "s"/"S") always gets the explicit vowel.
    if (row.ascii == "`") out.push_back('e');
    return out;
  }
  out.push_back(kVowelAscii[s.vowel - 1]);
  return out;
}

}  // namespace fidel
