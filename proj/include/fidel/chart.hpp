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

#ifndef FIDEL_CHART_HPP_
#define FIDEL_CHART_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fidel {

// The seven vowel orders. Order k is the k-th column of the grapheme chart.
inline constexpr int kVowelCount = 7;
inline constexpr char kVowelAscii[kVowelCount] = {'a', 'u', 'i', 'A', 'E', 'e', 'o'};
inline constexpr const char* kVowelSound[kVowelCount] = {"ə", "u", "i", "a", "e", "ɨ", "o"};
// Phoneme-scheme vowel symbols; the first order has its own carrier glyph.
inline constexpr const char* kVowelPhoneme[kVowelCount] = {"'ua", "'u", "'i", "'A", "'E", "'e", "'o"};

// 1..7 for a vowel letter, 0 otherwise.
constexpr int vowel_order_of(char c) {
  for (int k = 0; k < kVowelCount; ++k)
    if (kVowelAscii[k] == c) return k + 1;
  return 0;
}

// One consonant+vowel unit. `second_vowel` is 0 for the 238 basic syllables;
// derived (labiovelar) forms always have first vowel order 2 ("u") and a
// nonzero second vowel.
struct Syllable {
  std::uint16_t consonant = 0;  // chart row index
  std::uint8_t vowel = 0;       // 1..7
  std::uint8_t second_vowel = 0;

  bool derived() const { return second_vowel != 0; }
  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

struct DerivedForm {
  std::uint8_t second_vowel = 0;
  char32_t codepoint = 0;  // 0 = not representable in the Unicode scheme
};

struct ConsonantRow {
  std::string ascii;       // transliteration symbol, e.g. "h", ".t", "^s"
  char32_t base = 0;       // codepoint of the first-order syllable
  std::vector<DerivedForm> derived;
};

// Immutable grapheme chart: consonant rows, their Unicode blocks and derived
// forms, loaded from the shipped table file (or a user-provided one).
class Chart {
 public:
  static Chart from_text(std::string_view table);
  static Chart load(const std::string& path);
  // Chart built from the table embedded at compile time from the shipped
  // data file.
  static const Chart& builtin();

  std::size_t consonant_count() const { return rows_.size(); }
  const ConsonantRow& row(std::size_t idx) const { return rows_[idx]; }

  std::optional<std::size_t> consonant_by_ascii(std::string_view symbol) const;

  // Longest consonant symbol at the head of `text`; (row index, symbol length).
  std::optional<std::pair<std::size_t, std::size_t>> match_consonant(std::string_view text) const;

  bool derived_allowed(std::size_t consonant, int second_vowel) const;

  // Unicode codepoint of a syllable, or nullopt when the form is
  // transliteration-only.
  std::optional<char32_t> codepoint(const Syllable& s) const;
  std::optional<Syllable> syllable_of(char32_t cp) const;

  // Canonical transliteration of one syllable. Sixth-order syllables render
  // as the bare consonant except where that would glue onto the next unit;
  // see render() in codec.hpp for the sequence-level rule.
  std::string canonical_ascii(const Syllable& s) const;

  std::size_t basic_count() const { return rows_.size() * kVowelCount; }
  std::size_t derived_count() const { return derived_count_; }
  std::size_t total_count() const { return basic_count() + derived_count(); }

  // Every syllable of the chart: basic forms row by row, then derived forms.
  const std::vector<Syllable>& enumerate() const { return all_; }

  // Characters that may appear inside ASCII-scheme text (used by the
  // normalizer's symbol stripper).
  bool ascii_char(char c) const { return ascii_chars_.find(c) != std::string::npos; }

 private:
  std::vector<ConsonantRow> rows_;
  std::unordered_map<std::string, std::size_t> by_ascii_;
  std::unordered_map<char32_t, Syllable> by_codepoint_;
  std::vector<Syllable> all_;
  std::size_t derived_count_ = 0;
  std::size_t max_symbol_len_ = 1;
  std::string ascii_chars_;
};

}  // namespace fidel

#endif  // FIDEL_CHART_HPP_
