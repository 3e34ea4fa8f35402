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

#include "fidel/vocab.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>

#include "fidel/errors.hpp"

namespace fidel {

namespace {

constexpr const char* kSpecialTokens[Vocabulary::kSpecials] = {"<pad>", "<unk>", "<s>", "</s>",
                                                               "|"};

Vocabulary base_vocab(const Chart& chart) {
  Vocabulary v;
  v.kind = Vocabulary::Kind::kCharLevel;
  for (const char* s : kSpecialTokens) v.add(s);
  for (const Syllable& syl : chart.enumerate()) v.add(chart.canonical_ascii(syl));
  return v;
}

// Words of a line as canonical syllable token ids.
std::vector<std::vector<int>> line_words(std::string_view line, const Vocabulary& vocab,
                                         const Chart& chart) {
  SyllableSequence seq = parse_surface(line, detect_scheme(line), chart);
  std::vector<std::vector<int>> words;
  std::vector<int> cur;
  for (const SyllableToken& tok : seq.items) {
    if (tok.is_space) {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(vocab.id_of(chart.canonical_ascii(tok.syl)));
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

void merge_in_place(std::vector<int>& word, int left, int right, int merged) {
  std::size_t w = 0;
  for (std::size_t r = 0; r < word.size();) {
    if (r + 1 < word.size() && word[r] == left && word[r + 1] == right) {
      word[w++] = merged;
      r += 2;
    } else {
      word[w++] = word[r++];
    }
  }
  word.resize(w);
}

}  // namespace

int Vocabulary::id_of(std::string_view token) const {
  auto it = ids.find(std::string(token));
  return it == ids.end() ? kUnk : it->second;
}

void Vocabulary::add(std::string token) {
  if (ids.count(token)) throw FormatError("duplicate vocabulary token '" + token + "'");
  ids.emplace(token, static_cast<int>(tokens.size()));
  tokens.push_back(std::move(token));
}

Vocabulary build_char_vocab(std::span<const std::string> corpus, const Chart& chart) {
  Vocabulary v = base_vocab(chart);
  // The chart already closes the vocabulary; walking the corpus only
  // validates that it parses.
  for (const std::string& line : corpus) parse_surface(line, detect_scheme(line), chart);
  return v;
}

SubwordModel train_subword(std::span<const std::string> corpus, std::size_t target_size,
                           const Chart& chart) {
  SubwordModel model;
  model.vocab = base_vocab(chart);
  model.vocab.kind = Vocabulary::Kind::kSubword;
  if (target_size < model.vocab.size())
    throw TargetTooSmallError("target size " + std::to_string(target_size) +
                              " is below the base vocabulary size " +
                              std::to_string(model.vocab.size()));

  // Word types with multiplicities; pair statistics are over types weighted
  // by count.
  std::map<std::vector<int>, std::int64_t> type_counts;
  for (const std::string& line : corpus)
    for (std::vector<int>& w : line_words(line, model.vocab, chart)) ++type_counts[std::move(w)];

  std::vector<std::vector<int>> types;
  std::vector<std::int64_t> counts;
  for (auto& [word, count] : type_counts) {
    types.push_back(word);
    counts.push_back(count);
  }

  using Pair = std::pair<int, int>;
  std::map<Pair, std::int64_t> pair_counts;
  std::map<Pair, std::set<std::size_t>> where;  // pair -> word type indexes
  for (std::size_t t = 0; t < types.size(); ++t) {
    const std::vector<int>& w = types[t];
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      pair_counts[{w[i], w[i + 1]}] += counts[t];
      where[{w[i], w[i + 1]}].insert(t);
    }
  }

  // Max-heap on count with lazy invalidation; ties go to the
  // lexicographically smallest (left, right) token strings.
  struct HeapItem {
    std::int64_t count;
    std::string left, right;
    Pair pair;
  };
  auto cmp = [](const HeapItem& a, const HeapItem& b) {
    if (a.count != b.count) return a.count < b.count;
    if (a.left != b.left) return a.left > b.left;
    return a.right > b.right;
  };
  std::priority_queue<HeapItem, std::vector<HeapItem>, decltype(cmp)> heap(cmp);
  auto push_pair = [&](const Pair& p, std::int64_t count) {
    heap.push({count, model.vocab.tokens[p.first], model.vocab.tokens[p.second], p});
  };
  for (const auto& [p, c] : pair_counts) push_pair(p, c);

  auto bump = [&](const Pair& p, std::int64_t delta, std::size_t type_idx) {
    std::int64_t& c = pair_counts[p];
    c += delta;
    if (c <= 0) {
      pair_counts.erase(p);
      return;
    }
    if (delta > 0) where[p].insert(type_idx);
    // push the current count in either direction; stale entries are skipped
    if (c >= 2) push_pair(p, c);
  };

  auto has_pair = [](const std::vector<int>& w, const Pair& p) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == p.first && w[i + 1] == p.second) return true;
    return false;
  };

  while (model.vocab.size() < target_size && !heap.empty()) {
    HeapItem top = heap.top();
    heap.pop();
    auto it = pair_counts.find(top.pair);
    if (it == pair_counts.end() || it->second != top.count) continue;  // stale
    if (top.count < 2) break;

    int merged = static_cast<int>(model.vocab.size());
    model.vocab.add(top.left + top.right);
    model.merges.push_back({top.left, top.right, static_cast<int>(model.merges.size())});

    const Pair pair = top.pair;
    std::set<std::size_t> sites = where[pair];
    for (std::size_t t : sites) {
      std::vector<int>& w = types[t];
      if (!has_pair(w, pair)) continue;
      std::int64_t c = counts[t];
      // exact update: retract the word's pair stats, merge, restate them
      for (std::size_t i = 0; i + 1 < w.size(); ++i) bump({w[i], w[i + 1]}, -c, t);
      merge_in_place(w, pair.first, pair.second, merged);
      for (std::size_t i = 0; i + 1 < w.size(); ++i) bump({w[i], w[i + 1]}, c, t);
    }
    pair_counts.erase(pair);
    where.erase(pair);
  }
  return model;
}

std::vector<int> encode(std::string_view text, const Vocabulary& vocab,
                        std::span<const MergeRule> merges, const Chart& chart) {
  std::unordered_map<std::string, int> rank;
  for (const MergeRule& m : merges) rank.emplace(m.left + "\x01" + m.right, m.rank);

  std::vector<int> out;
  std::vector<std::vector<int>> words = line_words(text, vocab, chart);
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    std::vector<int>& w = words[wi];
    if (!merges.empty()) {
      for (;;) {
        int best_rank = -1;
        int best_left = 0, best_right = 0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          auto it = rank.find(vocab.tokens[w[i]] + "\x01" + vocab.tokens[w[i + 1]]);
          if (it != rank.end() && (best_rank < 0 || it->second < best_rank)) {
            best_rank = it->second;
            best_left = w[i];
            best_right = w[i + 1];
          }
        }
        if (best_rank < 0) break;
        std::string joined = vocab.tokens[best_left] + vocab.tokens[best_right];
        int merged = vocab.id_of(joined);
        if (merged == Vocabulary::kUnk)
          throw FormatError("merge result '" + joined + "' is missing from the vocabulary");
        merge_in_place(w, best_left, best_right, merged);
      }
    }
    if (wi) out.push_back(Vocabulary::kSpace);
    out.insert(out.end(), w.begin(), w.end());
  }
  return out;
}

std::string decode(std::span<const int> ids, const Vocabulary& vocab, Scheme scheme,
                   const Chart& chart) {
  std::string ascii;
  for (int id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab.size())
      throw FormatError("token id " + std::to_string(id) + " out of range");
    if (id == Vocabulary::kSpace) {
      ascii.push_back(' ');
      continue;
    }
    if (id < Vocabulary::kSpecials) continue;  // pad/unk/bos/eos render as nothing
    ascii += vocab.tokens[id];
  }
  if (scheme == Scheme::kAscii) return ascii;
  return render(parse_surface(ascii, Scheme::kAscii, chart), scheme, chart);
}

void save_vocab(std::ostream& out, const Vocabulary& vocab) {
  for (const std::string& t : vocab.tokens) out << t << '\n';
}

Vocabulary load_vocab(std::istream& in, Vocabulary::Kind kind) {
  Vocabulary v;
  v.kind = kind;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) v.add(line);
  for (int i = 0; i < Vocabulary::kSpecials; ++i) {
    if (static_cast<std::size_t>(i) >= v.size() || v.tokens[i] != kSpecialTokens[i])
      throw FormatError("vocabulary file does not start with the reserved special tokens");
  }
  return v;
}

void save_merges(std::ostream& out, std::span<const MergeRule> merges) {
  for (const MergeRule& m : merges) out << m.left << ' ' << m.right << '\n';
}

std::vector<MergeRule> load_merges(std::istream& in) {
  std::vector<MergeRule> merges;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::size_t sp = line.find(' ');
    if (sp == std::string::npos || sp == 0 || sp + 1 >= line.size())
      throw FormatError("merge rule line '" + line + "' is not 'left right'");
    merges.push_back({line.substr(0, sp), line.substr(sp + 1), static_cast<int>(merges.size())});
  }
  return merges;
}

}  // namespace fidel
