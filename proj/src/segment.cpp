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

#include "fidel/segment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "fidel/codec.hpp"
#include "fidel/errors.hpp"
#include "fidel/parallel.hpp"

namespace fidel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Syllable-level Levenshtein with early exit; used to verify candidates.
int syllable_edit_distance(std::span<const Syllable> a, std::span<const Syllable> b, int cap) {
  int n = static_cast<int>(a.size()), m = static_cast<int>(b.size());
  if (std::abs(n - m) > cap) return cap + 1;
  std::vector<int> prev(static_cast<std::size_t>(m) + 1), cur(static_cast<std::size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) prev[static_cast<std::size_t>(j)] = j;
  for (int i = 1; i <= n; ++i) {
    cur[0] = i;
    int row_min = cur[0];
    for (int j = 1; j <= m; ++j) {
      int diag = prev[static_cast<std::size_t>(j - 1)] +
                 (a[static_cast<std::size_t>(i - 1)] == b[static_cast<std::size_t>(j - 1)] ? 0 : 1);
      cur[static_cast<std::size_t>(j)] =
          std::min({diag, prev[static_cast<std::size_t>(j)] + 1,
                    cur[static_cast<std::size_t>(j - 1)] + 1});
      row_min = std::min(row_min, cur[static_cast<std::size_t>(j)]);
    }
    if (row_min > cap) return cap + 1;
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(m)];
}

std::vector<std::string> delete1_keys(std::span<const Syllable> sylls) {
  std::vector<std::string> keys;
  keys.push_back(Lexicon::key_of(sylls));
  if (sylls.size() < 2) return keys;  // a 1-syllable word does not shrink to nothing
  std::vector<Syllable> buf;
  buf.reserve(sylls.size() - 1);
  for (std::size_t drop = 0; drop < sylls.size(); ++drop) {
    buf.clear();
    for (std::size_t i = 0; i < sylls.size(); ++i)
      if (i != drop) buf.push_back(sylls[i]);
    keys.push_back(Lexicon::key_of(buf));
  }
  return keys;
}

}  // namespace

Segmenter::Segmenter(const Lexicon& lexicon, const NGramModel& lm, const Chart& chart)
    : lexicon_(lexicon), lm_(lm), chart_(chart) {
  for (int id = 0; id < lexicon_.size(); ++id) {
    for (std::string& key : delete1_keys(lexicon_.word(id).syllables)) {
      std::vector<int>& bucket = delete1_[std::move(key)];
      if (bucket.empty() || bucket.back() != id) bucket.push_back(id);
    }
  }
}

std::vector<Segmenter::Candidate> Segmenter::candidates(std::span<const Syllable> span,
                                                        int budget) const {
  std::vector<Candidate> out;
  if (budget <= 0) {
    std::optional<int> id = lexicon_.find(span);
    if (id) out.push_back({*id, 0});
    return out;
  }
  if (budget == 1) {
    std::vector<int> seen;
    for (const std::string& key : delete1_keys(span)) {
      auto it = delete1_.find(key);
      if (it == delete1_.end()) continue;
      for (int id : it->second) {
        if (std::find(seen.begin(), seen.end(), id) != seen.end()) continue;
        seen.push_back(id);
        int d = syllable_edit_distance(span, lexicon_.word(id).syllables, 1);
        if (d <= 1) out.push_back({id, d});
      }
    }
    std::sort(out.begin(), out.end(),
              [](const Candidate& a, const Candidate& b) { return a.word_id < b.word_id; });
    return out;
  }
  // Rare configuration; scan words of comparable length.
  for (int id = 0; id < lexicon_.size(); ++id) {
    const std::vector<Syllable>& w = lexicon_.word(id).syllables;
    if (std::abs(static_cast<int>(w.size()) - static_cast<int>(span.size())) > budget) continue;
    int d = syllable_edit_distance(span, w, budget);
    if (d <= budget) out.push_back({id, d});
  }
  return out;
}

std::string Segmenter::segment(std::string_view input, const CorrectionConfig& cfg) const {
  return segment_scored(input, cfg).text;
}

SegmentResult Segmenter::segment_scored(std::string_view input, const CorrectionConfig& cfg) const {
  if (cfg.passthrough()) return {std::string(input), 0.0, {}};

  Scheme scheme = detect_scheme(input);
  SyllableSequence seq = parse_surface(input, scheme, chart_);

  std::vector<Syllable> sylls;
  std::vector<std::string> spell;  // input spelling per syllable
  for (const SyllableToken& tok : seq.items) {
    if (tok.is_space) continue;
    sylls.push_back(tok.syl);
    spell.push_back(tok.src.empty() ? chart_.canonical_ascii(tok.syl) : tok.src);
  }
  const std::size_t n = sylls.size();
  if (n == 0) return {"", 0.0, {}};

  // boundary positions 0..n; input_space[i] = input had a space at i
  std::vector<bool> input_space(n + 1, false);
  {
    std::size_t idx = 0;
    for (const SyllableToken& tok : seq.items) {
      if (tok.is_space) input_space[idx] = true;
      else ++idx;
    }
  }

  // Hard mode: only space-to-space spans are words.
  std::vector<std::size_t> hard_bounds;
  if (cfg.spaces == SpacePolicy::kHard) {
    hard_bounds.push_back(0);
    for (std::size_t i = 1; i < n; ++i)
      if (input_space[i]) hard_bounds.push_back(i);
    hard_bounds.push_back(n);
  }

  const bool soft = cfg.spaces == SpacePolicy::kSoft;
  const int max_lex_span = lexicon_.max_word_syllables() + std::max(0, cfg.edit_budget);

  // Lattice node: (end position, context = last word or OOV).
  struct Arc {
    double score = kNegInf;
    std::size_t from = 0;
    int prev_ctx = 0;
    int word_id = LmContext::kOov;  // >=0 lexicon word, kOov = OOV span
    int edits = 0;
  };
  // per position: context -> best arc (context kOov stored under key -1)
  std::vector<std::map<int, Arc>> best(n + 1);
  best[0][LmContext::kBos] = Arc{0.0, 0, LmContext::kBos, LmContext::kBos, 0};

  auto consider = [&](std::size_t j, int ctx, const Arc& arc) {
    auto it = best[j].find(ctx);
    if (it == best[j].end()) {
      best[j][ctx] = arc;
      return;
    }
    Arc& cur = it->second;
    if (arc.score > cur.score) {
      cur = arc;
    } else if (arc.score == cur.score) {
      // deterministic tie-break: earlier start boundary, then spelling
      if (arc.from < cur.from) {
        cur = arc;
      } else if (arc.from == cur.from && arc.word_id >= 0 && cur.word_id >= 0 &&
                 lexicon_.word(arc.word_id).spelling < lexicon_.word(cur.word_id).spelling) {
        cur = arc;
      }
    }
  };

  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (cfg.spaces == SpacePolicy::kHard) {
        bool ok = std::binary_search(hard_bounds.begin(), hard_bounds.end(), i) &&
                  std::binary_search(hard_bounds.begin(), hard_bounds.end(), j);
        // words are single space-to-space cells, not unions
        if (!ok) continue;
        auto next = std::upper_bound(hard_bounds.begin(), hard_bounds.end(), i);
        if (next == hard_bounds.end() || *next != j) continue;
      }
      if (best[i].empty()) continue;
      std::span<const Syllable> span(sylls.data() + i, j - i);
      double bonus = (soft && i > 0 && input_space[i]) ? cfg.space_bonus_logprob : 0.0;

      std::vector<Candidate> cands;
      if (j - i <= static_cast<std::size_t>(max_lex_span)) cands = candidates(span, cfg.edit_budget);

      for (const auto& [ctx, prev_arc] : best[i]) {
        LmContext context{ctx};
        double base = prev_arc.score + bonus;
        for (const Candidate& cand : cands) {
          int len_diff = static_cast<int>(lexicon_.word(cand.word_id).syllables.size()) -
                         static_cast<int>(j - i);
          Arc arc;
          arc.score = base + lm_.logp(cand.word_id, context) +
                      cfg.edit_cost(cand.edits, len_diff);
          arc.from = i;
          arc.prev_ctx = ctx;
          arc.word_id = cand.word_id;
          arc.edits = cand.edits;
          consider(j, cand.word_id, arc);
        }
        Arc oov;
        oov.score = base + lm_.oov_logp(j - i, context);
        oov.from = i;
        oov.prev_ctx = ctx;
        oov.word_id = LmContext::kOov;
        consider(j, LmContext::kOov, oov);
      }
    }
    // beam prune
    if (best[j].size() > static_cast<std::size_t>(std::max(1, cfg.beam_width))) {
      std::vector<std::pair<int, Arc>> entries(best[j].begin(), best[j].end());
      std::stable_sort(entries.begin(), entries.end(),
                       [](const auto& a, const auto& b) { return a.second.score > b.second.score; });
      entries.resize(static_cast<std::size_t>(std::max(1, cfg.beam_width)));
      best[j] = std::map<int, Arc>(entries.begin(), entries.end());
    }
  }

  // best final state
  const Arc* final_arc = nullptr;
  for (const auto& [ctx, arc] : best[n]) {
    (void)ctx;
    if (!final_arc || arc.score > final_arc->score ||
        (arc.score == final_arc->score && arc.from < final_arc->from)) {
      final_arc = &arc;
    }
  }
  if (!final_arc) return {std::string(input), 0.0, {}};  // cannot happen: OOV spans are total

  SegmentResult result;
  result.score = final_arc->score;
  std::size_t pos = n;
  const Arc* arc = final_arc;
  for (;;) {
    result.pieces.push_back({arc->from, pos, arc->word_id, arc->edits});
    if (arc->from == 0) break;
    std::size_t prev_pos = arc->from;
    int prev_ctx = arc->prev_ctx;
    pos = prev_pos;
    arc = &best[prev_pos].at(prev_ctx);
  }
  std::reverse(result.pieces.begin(), result.pieces.end());

  std::string out;
  for (std::size_t k = 0; k < result.pieces.size(); ++k) {
    if (k) out.push_back(' ');
    const SegmentPiece& p = result.pieces[k];
    if (p.word_id >= 0) {
      out += lexicon_.word(p.word_id).spelling;
      continue;
    }
    // OOV run: keep input spellings. Pieces can join syllables that were
    // separated in the input, which may re-tokenize differently in ASCII
    // (a bare "`" glued onto "s"); verify and fall back to canonical.
    std::string run;
    for (std::size_t i = p.from; i < p.to; ++i) run += spell[i];
    if (scheme == Scheme::kAscii) {
      bool ok = true;
      try {
        SyllableSequence check = parse_surface(run, Scheme::kAscii, chart_);
        ok = check.syllable_count() == p.to - p.from;
        if (ok) {
          std::size_t i = p.from;
          for (const SyllableToken& tok : check.items)
            if (!tok.is_space && !(tok.syl == sylls[i++])) ok = false;
        }
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        run.clear();
        for (std::size_t i = p.from; i < p.to; ++i) run += chart_.canonical_ascii(sylls[i]);
      }
    }
    out += run;
  }
  result.text = std::move(out);
  return result;
}

std::vector<HypRecord> correct_records(std::span<const HypRecord> records, const Segmenter& seg,
                                       const CorrectionConfig& cfg,
                                       const NormalizationConfig& norm, const Chart& chart,
                                       CorrectionStats* stats, int jobs) {
  std::vector<HypRecord> out(records.size());
  std::vector<char> failed(records.size(), 0);
  parallel_for(records.size(), jobs, [&](std::size_t i) {
    out[i].id = records[i].id;
    if (cfg.passthrough()) {
      // correction disabled: lines pass through verbatim
      out[i].text = records[i].text;
      return;
    }
    try {
      std::string normalized = normalize(records[i].text, norm, chart);
      out[i].text = seg.segment(normalized, cfg);
    } catch (const Error&) {
      out[i].text = records[i].text;
      failed[i] = 1;
    }
  });
  if (stats) {
    stats->lines = records.size();
    for (char f : failed)
      if (f) ++stats->failed;
  }
  return out;
}

}  // namespace fidel
