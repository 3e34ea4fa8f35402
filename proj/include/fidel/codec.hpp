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

#ifndef FIDEL_CODEC_HPP_
#define FIDEL_CODEC_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fidel/chart.hpp"

namespace fidel {

enum class Scheme { kUnicode, kAscii, kPhoneme };

std::optional<Scheme> scheme_from_string(std::string_view name);
std::string_view scheme_name(Scheme s);

// Unicode text if it contains Ethiopic codepoints, ASCII transliteration
// otherwise. The phoneme scheme is never auto-detected.
Scheme detect_scheme(std::string_view text);

// A syllable or a word boundary. `src` keeps the spelling the token had in
// the surface text it was parsed from (the transliteration writes
// sixth-order syllables in more than one way); rendering back to the same
// scheme reproduces it. Logical comparisons ignore spellings.
struct SyllableToken {
  bool is_space = false;
  Syllable syl;
  std::string src;

  static SyllableToken space() { return SyllableToken{true, {}, {}}; }
  static SyllableToken of(Syllable s, std::string spelling = {}) {
    return SyllableToken{false, s, std::move(spelling)};
  }
};

inline bool same_token(const SyllableToken& a, const SyllableToken& b) {
  return a.is_space == b.is_space && (a.is_space || a.syl == b.syl);
}

struct SyllableSequence {
  std::vector<SyllableToken> items;
  Scheme src_scheme = Scheme::kAscii;  // scheme the src spellings belong to

  std::size_t syllable_count() const;
  bool empty() const { return items.empty(); }

  // Logical equality: spellings and source scheme are ignored.
  friend bool operator==(const SyllableSequence& a, const SyllableSequence& b) {
    if (a.items.size() != b.items.size()) return false;
    for (std::size_t i = 0; i < a.items.size(); ++i)
      if (!same_token(a.items[i], b.items[i])) return false;
    return true;
  }
};

// Canonicalizes spaces: collapses runs, strips leading/trailing.
SyllableSequence make_sequence(std::vector<SyllableToken> items, Scheme src_scheme);

struct Phoneme {
  enum class Kind : std::uint8_t { kConsonant, kVowel, kBoundary };
  Kind kind = Kind::kBoundary;
  std::uint16_t consonant = 0;  // chart row, for kConsonant
  std::uint8_t vowel = 0;       // 1..7, for kVowel

  static Phoneme boundary() { return Phoneme{}; }
  static Phoneme cons(std::uint16_t c) { return Phoneme{Kind::kConsonant, c, 0}; }
  static Phoneme vow(std::uint8_t v) { return Phoneme{Kind::kVowel, 0, v}; }
  friend bool operator==(const Phoneme&, const Phoneme&) = default;
};

using PhonemeSequence = std::vector<Phoneme>;

inline constexpr std::string_view kBoundarySymbol = "|";

std::string phoneme_symbol(const Phoneme& p, const Chart& chart);

// text -> syllables. Longest-match tokenization for the ASCII scheme; a
// consonant with no following vowel letter reads as sixth order. Whitespace
// runs become single word boundaries.
// Throws UnknownGraphemeError / AmbiguousTransliterationError.
SyllableSequence parse_surface(std::string_view text, Scheme scheme, const Chart& chart);

// syllables -> text; inverse of parse_surface under the same scheme.
// Throws UnrepresentableSyllableError for transliteration-only derived forms
// in the Unicode scheme.
std::string render(const SyllableSequence& seq, Scheme scheme, const Chart& chart);

PhonemeSequence phonemize(const SyllableSequence& seq, const Chart& chart);

// Greedy consonant-vowel(-vowel) grouping; inverse of phonemize.
// Throws DanglingVowelError / DanglingConsonantError.
SyllableSequence dephonemize(const PhonemeSequence& phonemes, const Chart& chart);

}  // namespace fidel

#endif  // FIDEL_CODEC_HPP_
