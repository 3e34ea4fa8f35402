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

#include "fidel/metrics.hpp"

#include <algorithm>

#include "fidel/codec.hpp"
#include "fidel/errors.hpp"
#include "fidel/parallel.hpp"

namespace fidel {

AlignmentReport edit_align(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // dist[i][j]: edits between ref[0..i) and hyp[0..j)
  std::vector<std::vector<std::int32_t>> dist(n + 1, std::vector<std::int32_t>(m + 1));
  for (std::size_t i = 0; i <= n; ++i) dist[i][0] = static_cast<std::int32_t>(i);
  for (std::size_t j = 0; j <= m; ++j) dist[0][j] = static_cast<std::int32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::int32_t diag = dist[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      std::int32_t del = dist[i - 1][j] + 1;
      std::int32_t ins = dist[i][j - 1] + 1;
      dist[i][j] = std::min({diag, del, ins});
    }
  }

  // Backtrace, preferring the diagonal so that ties between a substitution
  // and an insert+delete pair report as substitutions.
  AlignmentReport rep;
  rep.ref_len = static_cast<std::int64_t>(n);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      bool match = ref[i - 1] == hyp[j - 1];
      if (dist[i][j] == dist[i - 1][j - 1] + (match ? 0 : 1)) {
        if (!match) ++rep.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && dist[i][j] == dist[i - 1][j] + 1) {
      ++rep.deletions;
      --i;
      continue;
    }
    ++rep.insertions;
    --j;
  }
  return rep;
}

std::vector<std::string> char_tokens(std::string_view text, const Chart& chart) {
  SyllableSequence seq = parse_surface(text, detect_scheme(text), chart);
  std::vector<std::string> out;
  out.reserve(seq.items.size());
  for (const SyllableToken& tok : seq.items)
    out.push_back(tok.is_space ? std::string(kBoundarySymbol) : chart.canonical_ascii(tok.syl));
  return out;
}

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
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

AlignmentReport char_align(std::string_view ref, std::string_view hyp, const Chart& chart) {
  std::vector<std::string> r = char_tokens(ref, chart);
  if (r.empty()) throw EmptyReferenceError("reference has no syllables");
  return edit_align(r, char_tokens(hyp, chart));
}

AlignmentReport word_align(std::string_view ref, std::string_view hyp) {
  std::vector<std::string> r = word_tokens(ref);
  if (r.empty()) throw EmptyReferenceError("reference has no words");
  return edit_align(r, word_tokens(hyp));
}

double cer(std::string_view ref, std::string_view hyp, const Chart& chart) {
  return char_align(ref, hyp, chart).rate();
}

double wer(std::string_view ref, std::string_view hyp) { return word_align(ref, hyp).rate(); }

CorpusScore score_corpus(std::span<const ScoredPair> pairs, const Chart& chart, int jobs) {
  CorpusScore score;
  score.per_sentence.resize(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    const ScoredPair& p = pairs[i];
    SentenceScore& s = score.per_sentence[i];
    s.id = p.id;
    s.chars = char_align(p.ref, p.hyp, chart);
    s.words = word_align(p.ref, p.hyp);
  });
  for (const SentenceScore& s : score.per_sentence) {
    score.char_edits += s.chars.edits();
    score.char_ref_len += s.chars.ref_len;
    score.word_edits += s.words.edits();
    score.word_ref_len += s.words.ref_len;
  }
  return score;
}

}  // namespace fidel
