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

#include "fidel/normalize.hpp"

#include <fstream>
#include <sstream>

#include "fidel/codec.hpp"
#include "fidel/errors.hpp"
#include "fidel/utf8.hpp"
#include "fidel/homophone_data.inc"

namespace fidel {

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace

HomophoneTable HomophoneTable::from_text(std::string_view table, const Chart& chart) {
  HomophoneTable t = HomophoneTable::empty(chart);
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= table.size()) {
    std::size_t eol = table.find('\n', pos);
    std::string_view line =
        table.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? table.size() + 1 : eol + 1;
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> symbols = split_ws(line);
    if (symbols.empty()) continue;
    if (symbols.size() < 2)
      throw FormatError("homophone line " + std::to_string(lineno) + ": group needs >= 2 members");
    std::vector<std::size_t> group;
    for (const std::string& sym : symbols) {
      std::optional<std::size_t> cons = chart.consonant_by_ascii(sym);
      if (!cons)
        throw FormatError("homophone line " + std::to_string(lineno) + ": unknown consonant '" +
                          sym + "'");
      group.push_back(*cons);
    }
    std::size_t canonical = group[0];
    if (t.group_index_[canonical])
      throw FormatError("homophone line " + std::to_string(lineno) + ": '" + symbols[0] +
                        "' already appears in a group");
    for (std::size_t k = 1; k < group.size(); ++k) {
      std::size_t variant = group[k];
      if (t.group_index_[variant] || variant == canonical)
        throw FormatError("homophone line " + std::to_string(lineno) + ": '" + symbols[k] +
                          "' appears in more than one group");
      t.canonical_[variant] = canonical;
    }
    std::size_t gi = t.groups_.size();
    for (std::size_t member : group) t.group_index_[member] = gi;
    t.groups_.push_back(std::move(group));
  }
  // A canonical member must not be some other group's variant.
  for (const std::vector<std::size_t>& g : t.groups_)
    if (t.canonical_[g[0]] != g[0])
      throw FormatError("homophone table: canonical '" + chart.row(g[0]).ascii +
                        "' is a variant of another group");
  return t;
}

HomophoneTable HomophoneTable::load(const std::string& path, const Chart& chart) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open homophone table: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), chart);
}

HomophoneTable HomophoneTable::builtin(const Chart& chart) {
  return from_text(detail::kHomophoneTable, chart);
}

HomophoneTable HomophoneTable::empty(const Chart& chart) {
  HomophoneTable t;
  t.canonical_.resize(chart.consonant_count());
  for (std::size_t i = 0; i < t.canonical_.size(); ++i) t.canonical_[i] = i;
  t.group_index_.resize(chart.consonant_count());
  return t;
}

std::optional<std::size_t> HomophoneTable::group_of(std::size_t consonant) const {
  return group_index_[consonant];
}

namespace {

// Keep only characters that can occur in the scheme (chart graphemes for
// Unicode, the transliteration alphabet for ASCII).
std::string filter_chars(const std::string& token, Scheme scheme, const Chart& chart) {
  std::string out;
  if (scheme == Scheme::kUnicode) {
    for (char32_t cp : decode_utf8(token))
      if (chart.syllable_of(cp)) append_utf8(out, cp);
  } else {
    for (char c : token)
      if (chart.ascii_char(c)) out.push_back(c);
  }
  return out;
}

// Swap variant consonants for their canonical row, patching the recorded
// spelling so surrounding text is preserved byte for byte.
void apply_table(SyllableSequence& seq, const HomophoneTable& table, const Chart& chart) {
  for (SyllableToken& tok : seq.items) {
    if (tok.is_space) continue;
    std::size_t canonical = table.canonical_of(tok.syl.consonant);
    if (canonical == tok.syl.consonant) continue;
    // A derived form the canonical row lacks (e.g. a velar labiovelar under
    // the h-family merge) stays on its variant row: sound preservation wins.
    if (tok.syl.derived() && !chart.derived_allowed(canonical, tok.syl.second_vowel)) continue;
    Syllable swapped{static_cast<std::uint16_t>(canonical), tok.syl.vowel, tok.syl.second_vowel};
    // Same rule for forms the Unicode scheme cannot write back.
    if (seq.src_scheme == Scheme::kUnicode && !chart.codepoint(swapped)) continue;
    const std::string& old_sym = chart.row(tok.syl.consonant).ascii;
    const std::string& new_sym = chart.row(canonical).ascii;
    if (!tok.src.empty()) {
      if (seq.src_scheme == Scheme::kAscii) {
        tok.src = new_sym + tok.src.substr(old_sym.size());
      } else {
        tok.src.clear();  // re-render canonically
      }
    }
    tok.syl.consonant = static_cast<std::uint16_t>(canonical);
  }
}

std::string render_token(const SyllableSequence& seq, Scheme scheme, const Chart& chart) {
  std::string out = render(seq, scheme, chart);
  // Spelling patches keep the original bytes except for the swapped
  // consonant symbol; with a pathological custom table the patched spelling
  // could re-tokenize differently, so verify and fall back to canonical.
  bool ok = true;
  try {
    ok = parse_surface(out, scheme, chart) == seq;
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) {
    SyllableSequence plain = seq;
    for (SyllableToken& t : plain.items) t.src.clear();
    out = render(plain, scheme, chart);
  }
  return out;
}

}  // namespace

std::string normalize(std::string_view text, const NormalizationConfig& cfg, const Chart& chart,
                      NormalizeStats* stats) {
  Scheme scheme = detect_scheme(text);

  // Alternating whitespace runs and tokens, keeping the runs so that word
  // boundaries survive when collapse_whitespace is off:
  // runs[0] token[0] runs[1] token[1] ... token[n-1] runs[n]
  std::vector<std::string> runs(1);
  std::vector<std::string> tokens;
  bool in_token = false;
  for (char c : text) {
    if (c == ' ' || c == '\t') {
      if (in_token) {
        runs.emplace_back();
        in_token = false;
      }
      runs.back().push_back(c);
    } else {
      if (!in_token) {
        tokens.emplace_back();
        in_token = true;
      }
      tokens.back().push_back(c);
    }
  }
  if (in_token) runs.emplace_back();

  std::vector<std::string> out_tokens;
  std::vector<std::string> out_runs;
  out_runs.push_back(runs[0]);

  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const std::string& token = tokens[t];
    std::optional<SyllableSequence> seq;
    try {
      seq = parse_surface(token, scheme, chart);
    } catch (const Error&) {
      if (cfg.strip_nonscript) {
        std::string filtered = filter_chars(token, scheme, chart);
        if (!filtered.empty()) {
          try {
            seq = parse_surface(filtered, scheme, chart);
          } catch (const Error&) {
            seq.reset();
          }
        }
      } else if (cfg.strict) {
        throw;
      }
    }
    if (!seq || seq->empty()) {
      if (cfg.strip_nonscript) {
        // Token has no script content; drop it (the run after it merges
        // into the pending run boundary).
        if (stats) ++stats->dropped_tokens;
        continue;
      }
      out_tokens.push_back(token);
      out_runs.push_back(runs[t + 1]);
      if (stats) ++stats->passed_through;
      continue;
    }
    apply_table(*seq, cfg.table, chart);
    out_tokens.push_back(render_token(*seq, scheme, chart));
    out_runs.push_back(runs[t + 1]);
  }

  std::string out;
  if (cfg.collapse_whitespace) {
    for (std::size_t i = 0; i < out_tokens.size(); ++i) {
      if (i) out.push_back(' ');
      out += out_tokens[i];
    }
  } else {
    out = out_runs[0];
    for (std::size_t i = 0; i < out_tokens.size(); ++i) {
      out += out_tokens[i];
      out += out_runs[i + 1];
    }
  }
  return out;
}

std::vector<std::string> reduced_phoneme_alphabet(const HomophoneTable& table, const Chart& chart) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < chart.consonant_count(); ++i)
    if (!table.is_variant(i)) out.push_back(chart.row(i).ascii);
  return out;
}

}  // namespace fidel
