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

#ifndef FIDEL_NORMALIZE_HPP_
#define FIDEL_NORMALIZE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fidel/chart.hpp"

namespace fidel {

// Homophone consonant groups: graphically distinct rows with the same sound.
// Applying the table is idempotent; a variant belongs to at most one group
// and a canonical member is never itself a variant.
class HomophoneTable {
 public:
  static HomophoneTable from_text(std::string_view table, const Chart& chart);
  static HomophoneTable load(const std::string& path, const Chart& chart);
  // Table embedded from the shipped data file, resolved against `chart`.
  static HomophoneTable builtin(const Chart& chart);
  static HomophoneTable empty(const Chart& chart);

  // Canonical consonant for `consonant` (identity when not a variant).
  std::size_t canonical_of(std::size_t consonant) const { return canonical_[consonant]; }
  bool is_variant(std::size_t consonant) const { return canonical_[consonant] != consonant; }

  // Groups as listed in the table file, canonical member first.
  const std::vector<std::vector<std::size_t>>& groups() const { return groups_; }
  // Group containing `consonant`, or nullopt.
  std::optional<std::size_t> group_of(std::size_t consonant) const;

 private:
  std::vector<std::size_t> canonical_;          // per chart row
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::optional<std::size_t>> group_index_;
};

struct NormalizationConfig {
  HomophoneTable table;
  bool strip_nonscript = true;
  bool collapse_whitespace = true;
  // Fail on unparseable tokens instead of passing them through (or dropping
  // them, when strip_nonscript is on).
  bool strict = false;
};

struct NormalizeStats {
  std::size_t dropped_tokens = 0;
  std::size_t passed_through = 0;
};

// Canonicalizes homophone consonants (vowel orders untouched), optionally
// strips non-script symbols and collapses whitespace. Scheme is
// auto-detected per line (Unicode if any Ethiopic codepoint). Idempotent.
std::string normalize(std::string_view text, const NormalizationConfig& cfg, const Chart& chart,
                      NormalizeStats* stats = nullptr);

// Canonical consonant inventory after merging: every chart row that is not a
// variant, as transliteration symbols in chart order.
std::vector<std::string> reduced_phoneme_alphabet(const HomophoneTable& table, const Chart& chart);

}  // namespace fidel

#endif  // FIDEL_NORMALIZE_HPP_
