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

#ifndef FIDEL_VOCAB_HPP_
#define FIDEL_VOCAB_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fidel/chart.hpp"
#include "fidel/codec.hpp"

namespace fidel {

// Token table. Tokens are canonical transliteration strings regardless of
// the corpus scheme, so one vocabulary serves Unicode and ASCII text alike.
struct Vocabulary {
  enum class Kind { kCharLevel, kSubword };

  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;
  static constexpr int kSpace = 4;
  static constexpr int kSpecials = 5;

  Kind kind = Kind::kCharLevel;
  std::vector<std::string> tokens;  // index = id; specials first
  std::unordered_map<std::string, int> ids;

  int id_of(std::string_view token) const;
  std::size_t size() const { return tokens.size(); }
  void add(std::string token);
};

struct MergeRule {
  std::string left;
  std::string right;
  int rank = 0;
};

struct SubwordModel {
  Vocabulary vocab;
  std::vector<MergeRule> merges;
};

// Character-level vocabulary: the five specials plus every chart syllable,
// so any valid sequence encodes no matter what the corpus contained. The
// corpus is only validated, never required for coverage.
Vocabulary build_char_vocab(std::span<const std::string> corpus, const Chart& chart);

// Pair-merge training on top of the character vocabulary. Merges never cross
// word boundaries. Ties on pair frequency break to the lexicographically
// smallest (left, right), so training is deterministic for fixed bytes.
// Stops at target_size or when no pair occurs at least twice.
// Throws TargetTooSmallError when target_size is below the base size.
SubwordModel train_subword(std::span<const std::string> corpus, std::size_t target_size,
                           const Chart& chart);

// Greedy merge application in rank order. Lossless on canonically spelled
// normalized text.
std::vector<int> encode(std::string_view text, const Vocabulary& vocab,
                        std::span<const MergeRule> merges, const Chart& chart);
std::string decode(std::span<const int> ids, const Vocabulary& vocab, Scheme scheme,
                   const Chart& chart);

// One token per line, line number = id.
void save_vocab(std::ostream& out, const Vocabulary& vocab);
Vocabulary load_vocab(std::istream& in, Vocabulary::Kind kind);
// "left right" per line in rank order.
void save_merges(std::ostream& out, std::span<const MergeRule> merges);
std::vector<MergeRule> load_merges(std::istream& in);

}  // namespace fidel

#endif  // FIDEL_VOCAB_HPP_
