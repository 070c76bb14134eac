#pragma once

// Synthetic corpora for tests: two classes over disjoint vocabularies, so a
// working classifier must reach near-perfect held-out macro-F1.

#include <random>
#include <string>
#include <vector>

#include "blazeclass/corpus.hpp"

namespace synth {

struct Corpus {
  blazeclass::Dataset train;
  blazeclass::Dataset valid;
  blazeclass::TaskSchema schema = blazeclass::TaskSchema::for_task(blazeclass::Task::A);
};

inline std::vector<std::string> class_vocab(int cls, std::size_t n_words) {
  std::vector<std::string> words;
  const char* stem = cls == 0 ? "red" : "blu";
  for (std::size_t i = 0; i < n_words; ++i) {
    words.push_back(stem + std::to_string(i));
  }
  return words;
}

inline blazeclass::Document make_doc(const std::vector<std::string>& vocab,
                                     int cls, std::size_t index,
                                     std::mt19937_64& rng, std::size_t min_len,
                                     std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<std::size_t> word_dist(0, vocab.size() - 1);
  blazeclass::Document doc;
  doc.id = "synth:" + std::to_string(cls) + ":" + std::to_string(index);
  std::size_t len = len_dist(rng);
  for (std::size_t t = 0; t < len; ++t) {
    if (t > 0) doc.raw_text += ' ';
    doc.raw_text += vocab[word_dist(rng)];
  }
  doc.tokens.clear();
  doc.label_a = cls == 0 ? blazeclass::LabelA::NOT : blazeclass::LabelA::OFF;
  return doc;
}

/// Disjoint-vocabulary corpus. `label_noise` flips that fraction of
/// training labels; validation labels stay clean.
inline Corpus separable_corpus(std::size_t docs_per_class,
                               std::size_t valid_per_class,
                               std::size_t words_per_class = 50,
                               double label_noise = 0.0,
                               std::uint64_t seed = 42,
                               std::size_t min_len = 5,
                               std::size_t max_len = 12) {
  Corpus corpus;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int cls = 0; cls < 2; ++cls) {
    auto vocab = class_vocab(cls, words_per_class);
    for (std::size_t i = 0; i < docs_per_class; ++i) {
      auto doc = make_doc(vocab, cls, i, rng, min_len, max_len);
      if (label_noise > 0.0 && coin(rng) < label_noise) {
        doc.label_a = doc.label_a == blazeclass::LabelA::NOT
                          ? blazeclass::LabelA::OFF
                          : blazeclass::LabelA::NOT;
      }
      corpus.train.push_back(std::move(doc));
    }
    for (std::size_t i = 0; i < valid_per_class; ++i) {
      corpus.valid.push_back(
          make_doc(vocab, cls, docs_per_class + i, rng, min_len, max_len));
    }
  }
  return corpus;
}

}  // namespace synth
