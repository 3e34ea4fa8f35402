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

// Shared test helpers: random syllable sequences and a synthetic toy corpus
// with a Zipf-ish word distribution. Everything is seeded and deterministic.

#ifndef FIDEL_TESTS_SUPPORT_HPP_
#define FIDEL_TESTS_SUPPORT_HPP_

#include <string>
#include <vector>

#include "fidel/chart.hpp"
#include "fidel/codec.hpp"
#include "fidel/normalize.hpp"
#include "fidel/rng.hpp"

namespace fidel::test {

// Random valid sequence; may include derived syllables and spaces.
inline SyllableSequence random_sequence(SplitMix64& rng, const Chart& chart,
                                        std::size_t max_syllables = 12) {
  const std::vector<Syllable>& all = chart.enumerate();
  std::vector<SyllableToken> items;
  std::size_t n = 1 + rng.next_below(max_syllables);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && rng.next_double() < 0.25) items.push_back(SyllableToken::space());
    items.push_back(SyllableToken::of(all[rng.next_below(all.size())]));
  }
  return make_sequence(std::move(items), Scheme::kAscii);
}

struct ToyCorpus {
  std::vector<std::string> words;      // canonical spellings
  std::vector<std::string> sentences;  // space-joined words
};

// Synthetic sentences built from basic syllables over canonical consonants,
// so the text is already normalized. Word frequencies fall off as 1/(r+1).
inline ToyCorpus make_toy_corpus(std::size_t n_sentences, std::uint64_t seed,
                                 std::size_t n_words = 600, std::size_t min_word_syllables = 2,
                                 std::size_t max_word_syllables = 5) {
  const Chart& chart = Chart::builtin();
  HomophoneTable table = HomophoneTable::builtin(chart);
  std::vector<Syllable> pool;
  for (const Syllable& s : chart.enumerate())
    if (!s.derived() && !table.is_variant(s.consonant)) pool.push_back(s);

  SplitMix64 rng(seed);
  ToyCorpus corpus;
  std::vector<std::string> seen;
  while (corpus.words.size() < n_words) {
    std::size_t len =
        min_word_syllables + rng.next_below(max_word_syllables - min_word_syllables + 1);
    std::string w;
    for (std::size_t i = 0; i < len; ++i)
      w += chart.canonical_ascii(pool[rng.next_below(pool.size())]);
    bool dup = false;
    for (const std::string& s : corpus.words)
      if (s == w) dup = true;
    if (!dup) corpus.words.push_back(std::move(w));
  }

  std::vector<double> cumulative(n_words);
  double total = 0.0;
  for (std::size_t r = 0; r < n_words; ++r) {
    total += 1.0 / static_cast<double>(r + 1);
    cumulative[r] = total;
  }
  auto draw_word = [&]() -> const std::string& {
    double u = rng.next_double() * total;
    std::size_t lo = 0, hi = n_words - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] < u) lo = mid + 1;
      else hi = mid;
    }
    return corpus.words[lo];
  };

  for (std::size_t s = 0; s < n_sentences; ++s) {
    std::size_t len = 4 + rng.next_below(6);
    std::string line;
    for (std::size_t w = 0; w < len; ++w) {
      if (w) line.push_back(' ');
      line += draw_word();
    }
    corpus.sentences.push_back(std::move(line));
  }
  return corpus;
}

}  // namespace fidel::test

#endif  // FIDEL_TESTS_SUPPORT_HPP_
