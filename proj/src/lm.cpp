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

#include "fidel/lm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fidel/errors.hpp"

namespace fidel {

std::string Lexicon::key_of(std::span<const Syllable> syllables) {
  std::string key;
  key.reserve(syllables.size() * 4);
  for (const Syllable& s : syllables) {
    key.push_back(static_cast<char>(s.consonant & 0xFF));
    key.push_back(static_cast<char>((s.consonant >> 8) & 0xFF));
    key.push_back(static_cast<char>(s.vowel));
    key.push_back(static_cast<char>(s.second_vowel));
  }
  return key;
}

int Lexicon::add_or_get(std::vector<Syllable> syllables, const std::string& spelling) {
  std::string key = key_of(syllables);
  auto it = by_key_.find(key);
  if (it != by_key_.end()) {
    Word& w = words_[static_cast<std::size_t>(it->second)];
    if (!spelling.empty() && (w.spelling.empty() || spelling < w.spelling)) w.spelling = spelling;
    return it->second;
  }
  int id = static_cast<int>(words_.size());
  max_word_syllables_ = std::max(max_word_syllables_, static_cast<int>(syllables.size()));
  words_.push_back({std::move(syllables), spelling, 0});
  by_key_.emplace(std::move(key), id);
  return id;
}

std::optional<int> Lexicon::find(std::span<const Syllable> syllables) const {
  auto it = by_key_.find(key_of(syllables));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Lexicon::finalize() {
  std::vector<int> order(words_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Word& wa = words_[static_cast<std::size_t>(a)];
    const Word& wb = words_[static_cast<std::size_t>(b)];
    if (wa.spelling != wb.spelling) return wa.spelling < wb.spelling;
    return key_of(wa.syllables) < key_of(wb.syllables);
  });
  std::vector<int> remap(words_.size());
  std::vector<Word> sorted;
  sorted.reserve(words_.size());
  for (std::size_t new_id = 0; new_id < order.size(); ++new_id) {
    remap[static_cast<std::size_t>(order[new_id])] = static_cast<int>(new_id);
    sorted.push_back(std::move(words_[static_cast<std::size_t>(order[new_id])]));
  }
  words_ = std::move(sorted);
  by_key_.clear();
  for (std::size_t i = 0; i < words_.size(); ++i)
    by_key_.emplace(key_of(words_[i].syllables), static_cast<int>(i));
  return remap;
}

std::uint64_t NGramModel::pack(int context, int word) {
  // context: 0 = BOS, 1+id = word; OOV never occurs in training counts
  std::uint64_t c = context == LmContext::kBos ? 0 : static_cast<std::uint64_t>(context) + 1;
  return (c << 32) | static_cast<std::uint64_t>(static_cast<std::uint32_t>(word));
}

double NGramModel::logp(int word, LmContext context) const {
  double k = smoothing_k;
  double outcomes = static_cast<double>(vocab_size) + 1.0;  // vocabulary ∪ OOV
  double num_count = 0.0, denom_count = 0.0;
  if (order == 1 || context.word == LmContext::kOov) {
    // OOV contexts carry no counts; add-k makes them uniform.
    if (order == 1) {
      if (word >= 0) num_count = static_cast<double>(unigram[static_cast<std::size_t>(word)]);
      denom_count = static_cast<double>(unigram_total);
    }
  } else {
    std::size_t ctx_index = context.word == LmContext::kBos
                                ? 0
                                : static_cast<std::size_t>(context.word) + 1;
    denom_count = static_cast<double>(context_total[ctx_index]);
    if (word >= 0) {
      auto it = bigram.find(pack(context.word, word));
      if (it != bigram.end()) num_count = static_cast<double>(it->second);
    }
  }
  return std::log((num_count + k) / (denom_count + k * outcomes));
}

double NGramModel::oov_logp(std::size_t syllables, LmContext context) const {
  return logp(LmContext::kOov, context) +
         oov_syllable_logprob * static_cast<double>(syllables);
}

TrainResult train_lm(std::span<const std::string> corpus, int order, const Chart& chart,
                     double smoothing_k, double oov_syllable_logprob) {
  if (order != 1 && order != 2) throw FormatError("ngram order must be 1 or 2");
  if (smoothing_k <= 0) throw FormatError("smoothing_k must be > 0");

  TrainResult result;
  result.lm.order = order;
  result.lm.smoothing_k = smoothing_k;
  result.lm.oov_syllable_logprob = oov_syllable_logprob;

  // First pass: lexicon and raw id sequences.
  std::vector<std::vector<int>> sentences;
  for (const std::string& line : corpus) {
    SyllableSequence seq;
    try {
      seq = parse_surface(line, detect_scheme(line), chart);
    } catch (const Error&) {
      ++result.skipped_lines;
      continue;
    }
    std::vector<int> ids;
    std::vector<Syllable> word;
    std::string spelling;
    auto flush = [&] {
      if (word.empty()) return;
      ids.push_back(result.lexicon.add_or_get(std::move(word), spelling));
      word.clear();
      spelling.clear();
    };
    for (const SyllableToken& tok : seq.items) {
      if (tok.is_space) {
        flush();
      } else {
        word.push_back(tok.syl);
        spelling += tok.src.empty() ? chart.canonical_ascii(tok.syl) : tok.src;
      }
    }
    flush();
    if (!ids.empty()) sentences.push_back(std::move(ids));
  }
  if (sentences.empty()) throw EmptyCorpusError("no corpus line parsed");

  std::vector<int> remap = result.lexicon.finalize();
  for (std::vector<int>& s : sentences)
    for (int& id : s) id = remap[static_cast<std::size_t>(id)];

  NGramModel& lm = result.lm;
  lm.vocab_size = result.lexicon.size();
  lm.sentences = static_cast<std::int64_t>(sentences.size());
  lm.unigram.assign(static_cast<std::size_t>(lm.vocab_size), 0);
  lm.context_total.assign(static_cast<std::size_t>(lm.vocab_size) + 1, 0);
  for (const std::vector<int>& s : sentences) {
    int prev = LmContext::kBos;
    for (int id : s) {
      ++lm.unigram[static_cast<std::size_t>(id)];
      ++lm.unigram_total;
      result.lexicon.word_mut(id).count += 1;
      if (order == 2) {
        ++lm.bigram[NGramModel::pack(prev, id)];
        ++lm.context_total[prev == LmContext::kBos ? 0 : static_cast<std::size_t>(prev) + 1];
      }
      prev = id;
    }
  }
  return result;
}

void save_model(std::ostream& out, const Lexicon& lexicon, const NGramModel& lm) {
  out << "fidel-lm 1\n";
  out << "order " << lm.order << '\n';
  out << "smoothing_k " << lm.smoothing_k << '\n';
  out << "oov_syllable_logprob " << lm.oov_syllable_logprob << '\n';
  out << "sentences " << lm.sentences << '\n';
  out << "[lexicon]\n";
  for (int id = 0; id < lexicon.size(); ++id) {
    const Lexicon::Word& w = lexicon.word(id);
    out << w.spelling << ' ' << lm.unigram[static_cast<std::size_t>(id)] << '\n';
  }
  out << "[bigrams]\n";
  if (lm.order == 2) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> rows(lm.bigram.begin(), lm.bigram.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [key, count] : rows) {
      int ctx = static_cast<int>(key >> 32) - 1;  // -1 = BOS
      int word = static_cast<int>(key & 0xFFFFFFFFull);
      out << (ctx < 0 ? "<s>" : lexicon.word(ctx).spelling) << ' ' << lexicon.word(word).spelling
          << ' ' << count << '\n';
    }
  }
}

void save_model_file(const std::string& path, const Lexicon& lexicon, const NGramModel& lm) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_model(out, lexicon, lm);
}

namespace {

std::vector<Syllable> parse_word_syllables(const std::string& spelling, const Chart& chart) {
  SyllableSequence seq = parse_surface(spelling, detect_scheme(spelling), chart);
  std::vector<Syllable> sylls;
  for (const SyllableToken& tok : seq.items) {
    if (tok.is_space) throw FormatError("lexicon word '" + spelling + "' contains a space");
    sylls.push_back(tok.syl);
  }
  if (sylls.empty()) throw FormatError("empty lexicon word");
  return sylls;
}

}  // namespace

std::pair<Lexicon, NGramModel> load_model(std::istream& in, const Chart& chart) {
  Lexicon lexicon;
  NGramModel lm;
  std::string line;
  if (!std::getline(in, line) || line != "fidel-lm 1")
    throw FormatError("not a fidel-lm model file");

  enum class Section { kHeader, kLexicon, kBigrams } section = Section::kHeader;
  std::vector<std::int64_t> unigram_counts;
  std::vector<std::tuple<std::string, std::string, std::int64_t>> bigram_rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "[lexicon]") {
      section = Section::kLexicon;
      continue;
    }
    if (line == "[bigrams]") {
      section = Section::kBigrams;
      continue;
    }
    std::istringstream fields(line);
    if (section == Section::kHeader) {
      std::string key;
      fields >> key;
      if (key == "order") fields >> lm.order;
      else if (key == "smoothing_k") fields >> lm.smoothing_k;
      else if (key == "oov_syllable_logprob") fields >> lm.oov_syllable_logprob;
      else if (key == "sentences") fields >> lm.sentences;
      else throw FormatError("unknown model header key '" + key + "'");
      if (!fields) throw FormatError("bad model header line '" + line + "'");
    } else if (section == Section::kLexicon) {
      std::string spelling;
      std::int64_t count;
      if (!(fields >> spelling >> count)) throw FormatError("bad lexicon line '" + line + "'");
      int id = lexicon.add_or_get(parse_word_syllables(spelling, chart), spelling);
      if (id != static_cast<int>(unigram_counts.size()))
        throw FormatError("duplicate lexicon entry '" + spelling + "'");
      lexicon.word_mut(id).count = count;
      unigram_counts.push_back(count);
    } else {
      std::string a, b;
      std::int64_t count;
      if (!(fields >> a >> b >> count)) throw FormatError("bad bigram line '" + line + "'");
      bigram_rows.emplace_back(a, b, count);
    }
  }
  if (lm.order != 1 && lm.order != 2) throw FormatError("model order must be 1 or 2");

  lm.vocab_size = lexicon.size();
  lm.unigram = unigram_counts;
  for (std::int64_t c : unigram_counts) lm.unigram_total += c;
  lm.context_total.assign(static_cast<std::size_t>(lm.vocab_size) + 1, 0);
  for (const auto& [a, b, count] : bigram_rows) {
    int ctx = LmContext::kBos;
    if (a != "<s>") {
      std::optional<int> id = lexicon.find(parse_word_syllables(a, chart));
      if (!id) throw FormatError("bigram context '" + a + "' not in lexicon");
      ctx = *id;
    }
    std::optional<int> word = lexicon.find(parse_word_syllables(b, chart));
    if (!word) throw FormatError("bigram word '" + b + "' not in lexicon");
    lm.bigram[NGramModel::pack(ctx, *word)] += count;
    lm.context_total[ctx == LmContext::kBos ? 0 : static_cast<std::size_t>(ctx) + 1] += count;
  }
  return {std::move(lexicon), std::move(lm)};
}

std::pair<Lexicon, NGramModel> load_model_file(const std::string& path, const Chart& chart) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file: " + path);
  return load_model(in, chart);
}

}  // namespace fidel
