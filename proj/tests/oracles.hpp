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

// Brute-force oracles shared by the unit and acceptance suites. Everything
// here is deliberately simple and independent of the library's search and
// alignment code paths; only the scoring model itself is shared, because it
// defines the objective being optimized.

#ifndef FIDEL_TESTS_ORACLES_HPP_
#define FIDEL_TESTS_ORACLES_HPP_

#include <algorithm>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fidel/chart.hpp"
#include "fidel/codec.hpp"
#include "fidel/lm.hpp"
#include "fidel/segment.hpp"

namespace fidel::test {

// Plain recursive minimum edit count, no memoization.
inline int brute_force_edits(std::span<const std::string> ref, std::span<const std::string> hyp) {
  if (ref.empty()) return static_cast<int>(hyp.size());
  if (hyp.empty()) return static_cast<int>(ref.size());
  int match = brute_force_edits(ref.subspan(1), hyp.subspan(1)) + (ref[0] == hyp[0] ? 0 : 1);
  int del = brute_force_edits(ref.subspan(1), hyp) + 1;
  int ins = brute_force_edits(ref, hyp.subspan(1)) + 1;
  return std::min({match, del, ins});
}

// Simple quadratic syllable edit distance (independent of the segmenter's).
inline int syllable_edits(std::span<const Syllable> a, std::span<const Syllable> b) {
  std::vector<std::vector<int>> d(a.size() + 1, std::vector<int>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      d[i][j] = std::min({d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1), d[i - 1][j] + 1,
                          d[i][j - 1] + 1});
  return d[a.size()][b.size()];
}

inline std::vector<Syllable> despaced_syllables(std::string_view text, const Chart& chart) {
  std::vector<Syllable> out;
  for (const SyllableToken& t : parse_surface(text, detect_scheme(text), chart).items)
    if (!t.is_space) out.push_back(t.syl);
  return out;
}

inline std::vector<bool> input_space_marks(std::string_view text, const Chart& chart) {
  SyllableSequence seq = parse_surface(text, detect_scheme(text), chart);
  std::vector<bool> spaces(seq.syllable_count() + 1, false);
  std::size_t idx = 0;
  for (const SyllableToken& t : seq.items) {
    if (t.is_space) spaces[idx] = true;
    else ++idx;
  }
  return spaces;
}

// Exhaustive search over every segmentation of the syllable stream and every
// word choice per span (lexicon words within the edit budget, plus the OOV
// option), scored with the same objective the segmenter maximizes.
class SegmentationOracle {
 public:
  SegmentationOracle(const Lexicon& lexicon, const NGramModel& lm, const CorrectionConfig& cfg,
                     std::span<const Syllable> sylls, std::vector<bool> input_space)
      : lexicon_(lexicon), lm_(lm), cfg_(cfg), sylls_(sylls), input_space_(std::move(input_space)) {
    std::size_t n = sylls_.size();
    choices_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      choices_[i].resize(n - i);
      for (std::size_t len = 1; i + len <= n; ++len) {
        std::vector<Choice>& c = choices_[i][len - 1];
        c.push_back({-1, 0});  // OOV is always possible
        for (int w = 0; w < lexicon_.size(); ++w) {
          int d = syllable_edits(sylls_.subspan(i, len), lexicon_.word(w).syllables);
          if (d <= cfg_.edit_budget) c.push_back({w, d});
        }
      }
    }
  }

  double best() const { return best_from(0, LmContext::kBos); }

 private:
  struct Choice {
    int word_id;
    int edits;
  };

  double best_from(std::size_t i, int ctx) const {
    if (i == sylls_.size()) return 0.0;
    double best_score = -std::numeric_limits<double>::infinity();
    double bonus = (cfg_.spaces == SpacePolicy::kSoft && i > 0 && input_space_[i])
                       ? cfg_.space_bonus_logprob
                       : 0.0;
    for (std::size_t len = 1; i + len <= sylls_.size(); ++len) {
      for (const Choice& c : choices_[i][len - 1]) {
        double word_score;
        if (c.word_id < 0) {
          word_score = lm_.oov_logp(len, LmContext{ctx});
        } else {
          int len_diff = static_cast<int>(lexicon_.word(c.word_id).syllables.size()) -
                         static_cast<int>(len);
          word_score = lm_.logp(c.word_id, LmContext{ctx}) + cfg_.edit_cost(c.edits, len_diff);
        }
        double rest = best_from(i + len, c.word_id < 0 ? LmContext::kOov : c.word_id);
        best_score = std::max(best_score, bonus + word_score + rest);
      }
    }
    return best_score;
  }

  const Lexicon& lexicon_;
  const NGramModel& lm_;
  const CorrectionConfig& cfg_;
  std::span<const Syllable> sylls_;
  std::vector<bool> input_space_;
  std::vector<std::vector<std::vector<Choice>>> choices_;
};

inline double oracle_best_score(std::string_view input, const Lexicon& lex, const NGramModel& lm,
                                const CorrectionConfig& cfg, const Chart& chart) {
  std::vector<Syllable> sylls = despaced_syllables(input, chart);
  SegmentationOracle oracle(lex, lm, cfg, sylls, input_space_marks(input, chart));
  return oracle.best();
}

// Rescores the segmenter's pieces under the same objective; returns false
// when the pieces are inconsistent with the input.
inline bool rescore_pieces(const SegmentResult& res, std::string_view input, const Lexicon& lex,
                           const NGramModel& lm, const CorrectionConfig& cfg, const Chart& chart,
                           double* score_out) {
  std::vector<Syllable> sylls = despaced_syllables(input, chart);
  std::vector<bool> spaces = input_space_marks(input, chart);
  if (res.pieces.empty() || res.pieces.front().from != 0 || res.pieces.back().to != sylls.size())
    return false;
  double total = 0.0;
  int ctx = LmContext::kBos;
  for (std::size_t k = 0; k < res.pieces.size(); ++k) {
    const SegmentPiece& p = res.pieces[k];
    if (k && p.from != res.pieces[k - 1].to) return false;
    if (cfg.spaces == SpacePolicy::kSoft && p.from > 0 && spaces[p.from])
      total += cfg.space_bonus_logprob;
    std::span<const Syllable> span(sylls.data() + p.from, p.to - p.from);
    if (p.word_id >= 0) {
      int d = syllable_edits(span, lex.word(p.word_id).syllables);
      if (d != p.edits || d > cfg.edit_budget) return false;
      int len_diff =
          static_cast<int>(lex.word(p.word_id).syllables.size()) - static_cast<int>(span.size());
      total += lm.logp(p.word_id, LmContext{ctx}) + cfg.edit_cost(d, len_diff);
      ctx = p.word_id;
    } else {
      total += lm.oov_logp(span.size(), LmContext{ctx});
      ctx = LmContext::kOov;
    }
  }
  *score_out = total;
  return true;
}

}  // namespace fidel::test

#endif  // FIDEL_TESTS_ORACLES_HPP_
