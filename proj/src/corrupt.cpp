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

#include "fidel/corrupt.hpp"

#include <atomic>

#include "fidel/codec.hpp"
#include "fidel/errors.hpp"
#include "fidel/parallel.hpp"
#include "fidel/rng.hpp"

namespace fidel {

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw FormatError(std::string(name) + " must be in [0,1], got " + std::to_string(p));
}

}  // namespace

void CorruptionConfig::validate() const {
  check_prob(p_space_insert, "p_space_insert");
  check_prob(p_space_delete, "p_space_delete");
  check_prob(p_syll_delete, "p_syll_delete");
  check_prob(p_syll_insert, "p_syll_insert");
  check_prob(p_syll_substitute, "p_syll_substitute");
  check_prob(homophone_bias, "homophone_bias");
}

Corruptor::Corruptor(CorruptionConfig cfg, const Chart& chart, HomophoneTable table)
    : cfg_(cfg), chart_(chart), table_(std::move(table)) {
  cfg_.validate();
}

std::string Corruptor::corrupt(std::string_view sentence, std::uint64_t stream_index) const {
  Scheme scheme = detect_scheme(sentence);
  SyllableSequence seq = parse_surface(sentence, scheme, chart_);

  std::vector<SyllableToken> sylls;
  std::vector<bool> space_after;  // space_after[i]: between syllable i and i+1
  for (const SyllableToken& tok : seq.items) {
    if (tok.is_space) {
      if (!space_after.empty()) space_after.back() = true;
    } else {
      sylls.push_back(tok);
      space_after.push_back(false);
    }
  }
  if (!space_after.empty()) space_after.pop_back();  // gaps are between syllables only

  SplitMix64 rng = SplitMix64::for_stream(cfg_.seed, stream_index);

  // Phase 1: space edits, one draw per gap, left to right.
  for (std::size_t g = 0; g < space_after.size(); ++g) {
    double u = rng.next_double();
    if (space_after[g]) {
      if (u < cfg_.p_space_delete) space_after[g] = false;
    } else {
      if (u < cfg_.p_space_insert) space_after[g] = true;
    }
  }

  const std::vector<Syllable>& chart_all = chart_.enumerate();

  auto uniform_syllable = [&](SplitMix64& r) {
    return SyllableToken::of(chart_all[r.next_below(chart_all.size())]);
  };

  // Phase 2: per-syllable edits; draw order per syllable is substitute,
  // delete, insert. Secondary draws happen only when an edit fires, after
  // its decision draw. Each emitted token remembers which source syllable it
  // sits after so surviving spaces land between the right tokens.
  struct Emitted {
    SyllableToken tok;
    std::size_t orig;
  };
  std::vector<Emitted> emitted;
  for (std::size_t i = 0; i < sylls.size(); ++i) {
    SyllableToken tok = sylls[i];

    double u_sub = rng.next_double();
    if (u_sub < cfg_.p_syll_substitute) {
      double u_mode = rng.next_double();
      std::optional<std::size_t> group = table_.group_of(tok.syl.consonant);
      if (u_mode < cfg_.homophone_bias && group) {
        const std::vector<std::size_t>& members = table_.groups()[*group];
        // another member of the group; vowels stay put
        std::size_t pick = rng.next_below(members.size() - 1);
        std::size_t chosen = 0, seen = 0;
        for (std::size_t m : members) {
          if (m == tok.syl.consonant) continue;
          if (seen++ == pick) chosen = m;
        }
        const std::string& old_sym = chart_.row(tok.syl.consonant).ascii;
        const std::string& new_sym = chart_.row(chosen).ascii;
        if (!tok.src.empty() && seq.src_scheme == Scheme::kAscii)
          tok.src = new_sym + tok.src.substr(old_sym.size());
        else
          tok.src.clear();
        tok.syl.consonant = static_cast<std::uint16_t>(chosen);
        if (tok.syl.derived() && !chart_.derived_allowed(tok.syl.consonant, tok.syl.second_vowel)) {
          // target row lacks this derived form; fall back to plain order 2
          tok.syl.second_vowel = 0;
          tok.src.clear();
        }
      } else {
        tok = uniform_syllable(rng);
      }
    }

    double u_del = rng.next_double();
    bool dead = u_del < cfg_.p_syll_delete;

    double u_ins = rng.next_double();
    bool ins = u_ins < cfg_.p_syll_insert;

    if (!dead) emitted.push_back({std::move(tok), i});
    if (ins) emitted.push_back({uniform_syllable(rng), i});
  }

  std::vector<SyllableToken> items;
  for (std::size_t k = 0; k < emitted.size(); ++k) {
    items.push_back(std::move(emitted[k].tok));
    if (k + 1 == emitted.size()) break;
    for (std::size_t g = emitted[k].orig; g < emitted[k + 1].orig; ++g) {
      if (space_after[g]) {
        items.push_back(SyllableToken::space());
        break;
      }
    }
  }
  SyllableSequence corrupted = make_sequence(std::move(items), seq.src_scheme);
  std::string out = render(corrupted, scheme, chart_);
  if (scheme == Scheme::kAscii) {
    // Deleted spaces can glue spellings into a different tokenization (a
    // bare "`" onto a following "s"); re-render canonically when that
    // happens so the output parses back to exactly the edited syllables.
    bool ok = true;
    try {
      ok = parse_surface(out, scheme, chart_) == corrupted;
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      for (SyllableToken& t : corrupted.items) t.src.clear();
      out = render(corrupted, scheme, chart_);
    }
  }
  return out;
}

Corruptor::PairsResult Corruptor::generate_pairs(std::span<const std::string> lines,
                                                 int jobs) const {
  PairsResult result;
  std::vector<PairRecord> records(lines.size());
  std::vector<char> ok(lines.size(), 0);
  std::atomic<std::size_t> skipped{0};
  parallel_for(lines.size(), jobs, [&](std::size_t i) {
    std::uint64_t line_no = static_cast<std::uint64_t>(i) + 1;
    try {
      records[i] = PairRecord{std::to_string(line_no), corrupt(lines[i], line_no), lines[i]};
      ok[i] = 1;
    } catch (const Error&) {
      skipped.fetch_add(1);
    }
  });
  for (std::size_t i = 0; i < records.size(); ++i)
    if (ok[i]) result.records.push_back(std::move(records[i]));
  result.skipped = skipped.load();
  return result;
}

}  // namespace fidel
