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

#include "fidel/codec.hpp"

#include <cctype>

#include "fidel/errors.hpp"
#include "fidel/utf8.hpp"

namespace fidel {

namespace {

bool is_space_char(char c) { return c == ' ' || c == '\t'; }

// Prefix marks that start multi-character consonant symbols. A lone mark in
// ASCII text is a transliteration fragment, not an unknown character.
bool is_prefix_mark(char c) { return c == '.' || c == '^' || c == '_' || c == '~' || c == '`'; }

void push_space(std::vector<SyllableToken>& items) {
  if (!items.empty() && !items.back().is_space) items.push_back(SyllableToken::space());
}

SyllableSequence parse_ascii(std::string_view text, const Chart& chart) {
  std::vector<SyllableToken> items;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (is_space_char(c)) {
      push_space(items);
      ++i;
      continue;
    }
    auto match = chart.match_consonant(text.substr(i));
    if (!match) {
      if (is_prefix_mark(c))
        throw AmbiguousTransliterationError(
            "no transliteration unit starts with '" + std::string(text.substr(i, 2)) +
                "' at offset " + std::to_string(i),
            i);
      throw UnknownGraphemeError(
          "character '" + std::string(1, c) + "' at offset " + std::to_string(i) +
              " is not in the chart",
          i);
    }
    auto [cons, len] = *match;
    std::size_t j = i + len;
    Syllable syl{static_cast<std::uint16_t>(cons), 6, 0};
    if (j < text.size() && text[j] == 'u' && j + 1 < text.size()) {
      int second = vowel_order_of(text[j + 1]);
      if (second != 0 && chart.derived_allowed(cons, second)) {
        syl.vowel = 2;
        syl.second_vowel = static_cast<std::uint8_t>(second);
        j += 2;
      }
    }
    if (!syl.derived()) {
      int order = j < text.size() ? vowel_order_of(text[j]) : 0;
      if (order != 0) {
        syl.vowel = static_cast<std::uint8_t>(order);
        ++j;
      }  // else: bare consonant, sixth order
    }
    items.push_back(SyllableToken::of(syl, std::string(text.substr(i, j - i))));
    i = j;
  }
  return make_sequence(std::move(items), Scheme::kAscii);
}

SyllableSequence parse_unicode(std::string_view text, const Chart& chart) {
  std::vector<SyllableToken> items;
  std::vector<char32_t> cps = decode_utf8(text);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    if (cp == U' ' || cp == U'\t') {
      push_space(items);
      continue;
    }
    std::optional<Syllable> syl = chart.syllable_of(cp);
    if (!syl)
      throw UnknownGraphemeError(
          "codepoint U+" + std::to_string(static_cast<std::uint32_t>(cp)) + " at index " +
              std::to_string(i) + " is not in the chart",
          i);
    items.push_back(SyllableToken::of(*syl, to_utf8(cp)));
  }
  return make_sequence(std::move(items), Scheme::kUnicode);
}

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (is_space_char(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

SyllableSequence parse_phoneme(std::string_view text, const Chart& chart) {
  PhonemeSequence phonemes;
  std::vector<std::string> tokens = split_tokens(text);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const std::string& tok = tokens[t];
    if (tok == kBoundarySymbol) {
      phonemes.push_back(Phoneme::boundary());
      continue;
    }
    bool vowel = false;
    for (int k = 0; k < kVowelCount; ++k) {
      if (tok == kVowelPhoneme[k]) {
        phonemes.push_back(Phoneme::vow(static_cast<std::uint8_t>(k + 1)));
        vowel = true;
        break;
      }
    }
    if (vowel) continue;
    std::optional<std::size_t> cons = chart.consonant_by_ascii(tok);
    if (!cons)
      throw UnknownGraphemeError("phoneme token '" + tok + "' at index " + std::to_string(t) +
                                     " is not in the chart",
                                 t);
    phonemes.push_back(Phoneme::cons(static_cast<std::uint16_t>(*cons)));
  }
  return dephonemize(phonemes, chart);
}

std::string render_ascii(const SyllableSequence& seq, const Chart& chart) {
  bool use_src = seq.src_scheme == Scheme::kAscii;
  std::string out;
  for (const SyllableToken& tok : seq.items) {
    if (tok.is_space) {
      out.push_back(' ');
    } else if (use_src && !tok.src.empty()) {
      out += tok.src;
    } else {
      out += chart.canonical_ascii(tok.syl);
    }
  }
  return out;
}

std::string render_unicode(const SyllableSequence& seq, const Chart& chart) {
  bool use_src = seq.src_scheme == Scheme::kUnicode;
  std::string out;
  for (const SyllableToken& tok : seq.items) {
    if (tok.is_space) {
      out.push_back(' ');
      continue;
    }
    if (use_src && !tok.src.empty()) {
      out += tok.src;
      continue;
    }
    std::optional<char32_t> cp = chart.codepoint(tok.syl);
    if (!cp)
      throw UnrepresentableSyllableError("syllable '" + chart.canonical_ascii(tok.syl) +
                                         "' has no codepoint in the Unicode scheme");
    append_utf8(out, *cp);
  }
  return out;
}

std::string render_phoneme(const SyllableSequence& seq, const Chart& chart) {
  PhonemeSequence phonemes = phonemize(seq, chart);
  std::string out;
  for (std::size_t i = 0; i < phonemes.size(); ++i) {
    if (i != 0) out.push_back(' ');
    out += phoneme_symbol(phonemes[i], chart);
  }
  return out;
}

}  // namespace

std::optional<Scheme> scheme_from_string(std::string_view name) {
  if (name == "unicode" || name == "unicode_ethiopic" || name == "ethiopic") return Scheme::kUnicode;
  if (name == "ascii" || name == "ascii_translit" || name == "translit") return Scheme::kAscii;
  if (name == "phoneme" || name == "phonemes") return Scheme::kPhoneme;
  return std::nullopt;
}

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kUnicode: return "unicode";
    case Scheme::kAscii: return "ascii";
    case Scheme::kPhoneme: return "phoneme";
  }
  return "?";
}

Scheme detect_scheme(std::string_view text) {
  return contains_ethiopic(text) ? Scheme::kUnicode : Scheme::kAscii;
}

std::size_t SyllableSequence::syllable_count() const {
  std::size_t n = 0;
  for (const SyllableToken& t : items)
    if (!t.is_space) ++n;
  return n;
}

SyllableSequence make_sequence(std::vector<SyllableToken> items, Scheme src_scheme) {
  SyllableSequence seq;
  seq.src_scheme = src_scheme;
  for (SyllableToken& tok : items) {
    if (tok.is_space) {
      if (seq.items.empty() || seq.items.back().is_space) continue;
      seq.items.push_back(SyllableToken::space());
    } else {
      seq.items.push_back(std::move(tok));
    }
  }
  while (!seq.items.empty() && seq.items.back().is_space) seq.items.pop_back();
  return seq;
}

std::string phoneme_symbol(const Phoneme& p, const Chart& chart) {
  switch (p.kind) {
    case Phoneme::Kind::kBoundary: return std::string(kBoundarySymbol);
    case Phoneme::Kind::kConsonant: return chart.row(p.consonant).ascii;
    case Phoneme::Kind::kVowel: return kVowelPhoneme[p.vowel - 1];
  }
  return {};
}

SyllableSequence parse_surface(std::string_view text, Scheme scheme, const Chart& chart) {
  switch (scheme) {
    case Scheme::kAscii: return parse_ascii(text, chart);
    case Scheme::kUnicode: return parse_unicode(text, chart);
    case Scheme::kPhoneme: return parse_phoneme(text, chart);
  }
  return {};
}

std::string render(const SyllableSequence& seq, Scheme scheme, const Chart& chart) {
  switch (scheme) {
    case Scheme::kAscii: return render_ascii(seq, chart);
    case Scheme::kUnicode: return render_unicode(seq, chart);
    case Scheme::kPhoneme: return render_phoneme(seq, chart);
  }
  return {};
}

PhonemeSequence phonemize(const SyllableSequence& seq, const Chart& chart) {
  (void)chart;
  PhonemeSequence out;
  for (const SyllableToken& tok : seq.items) {
    if (tok.is_space) {
      out.push_back(Phoneme::boundary());
      continue;
    }
    out.push_back(Phoneme::cons(tok.syl.consonant));
    out.push_back(Phoneme::vow(tok.syl.vowel));
    if (tok.syl.derived()) out.push_back(Phoneme::vow(tok.syl.second_vowel));
  }
  return out;
}

SyllableSequence dephonemize(const PhonemeSequence& phonemes, const Chart& chart) {
  std::vector<SyllableToken> items;
  std::size_t i = 0;
  while (i < phonemes.size()) {
    const Phoneme& p = phonemes[i];
    if (p.kind == Phoneme::Kind::kBoundary) {
      push_space(items);
      ++i;
      continue;
    }
    if (p.kind == Phoneme::Kind::kVowel)
      throw DanglingVowelError("vowel symbol at index " + std::to_string(i) +
                                   " has no preceding consonant",
                               i);
    if (i + 1 >= phonemes.size() || phonemes[i + 1].kind != Phoneme::Kind::kVowel)
      throw DanglingConsonantError("consonant symbol at index " + std::to_string(i) +
                                       " has no following vowel",
                                   i);
    Syllable syl{p.consonant, phonemes[i + 1].vowel, 0};
    i += 2;
    if (syl.vowel == 2 && i < phonemes.size() && phonemes[i].kind == Phoneme::Kind::kVowel &&
        chart.derived_allowed(syl.consonant, phonemes[i].vowel)) {
      syl.second_vowel = phonemes[i].vowel;
      ++i;
    }
    items.push_back(SyllableToken::of(syl));
  }
  return make_sequence(std::move(items), Scheme::kPhoneme);
}

}  // namespace fidel
