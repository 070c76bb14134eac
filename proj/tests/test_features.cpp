#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <random>

#include "blazeclass/features.hpp"
#include "doctest.h"

using namespace blazeclass;

namespace {

using Docs = std::vector<std::vector<std::string>>;

Docs random_docs(std::mt19937_64& rng, std::size_t max_docs,
                 std::size_t max_words) {
  std::uniform_int_distribution<std::size_t> n_docs(1, max_docs);
  std::uniform_int_distribution<std::size_t> doc_len(0, 12);
  std::uniform_int_distribution<std::size_t> word(0, max_words - 1);
  Docs docs(n_docs(rng));
  for (auto& doc : docs) {
    std::size_t len = doc_len(rng);
    for (std::size_t i = 0; i < len; ++i) {
      doc.push_back("w" + std::to_string(word(rng)));
    }
  }
  return docs;
}

}  // namespace

TEST_CASE("build_vocab counts, prunes and orders") {
  Docs docs = {{"a", "b", "a"}};
  Vocabulary v1 = build_vocab(docs, 1);
  REQUIRE(v1.size() == 2);
  CHECK(v1.id("a") == 0);
  CHECK(v1.id("b") == 1);
  CHECK(v1.count(0) == 2);
  CHECK(v1.count(1) == 1);

  Vocabulary v2 = build_vocab(docs, 2);
  REQUIRE(v2.size() == 1);
  CHECK(v2.id("a") == 0);
  CHECK(v2.id("b") == -1);

  CHECK(build_vocab({}, 1).size() == 0);

  // Frequency ties break lexicographically.
  Vocabulary v3 = build_vocab({{"zeta", "echo"}}, 1);
  CHECK(v3.id("echo") == 0);
  CHECK(v3.id("zeta") == 1);
}

TEST_CASE("bow counts and one-hot clamping") {
  Vocabulary vocab = build_vocab({{"a", "a", "b"}}, 1);
  SparseVector v = bow({"a", "a", "b"}, vocab);
  REQUIRE(v.entries.size() == 2);
  CHECK(v.entries[0] == std::pair<std::uint32_t, double>{0, 2.0});
  CHECK(v.entries[1] == std::pair<std::uint32_t, double>{1, 1.0});
  CHECK(v.valid());

  CHECK(bow({"z"}, vocab).entries.empty());
  CHECK(bow({}, vocab).entries.empty());

  SparseVector onehot = bow({"a", "a", "b"}, vocab, /*binary=*/true);
  for (const auto& [idx, value] : onehot.entries) CHECK(value == 1.0);
}

TEST_CASE("idf_fit worked examples") {
  // 9 documents, the word appears in 2.
  Docs docs;
  for (int i = 0; i < 9; ++i) {
    docs.push_back(i < 2 ? std::vector<std::string>{"w", "x"}
                         : std::vector<std::string>{"x"});
  }
  Vocabulary vocab = build_vocab(docs, 1);
  IdfTable table = idf_fit(docs, vocab);
  int w = vocab.id("w");
  REQUIRE(w >= 0);
  CHECK(table.idf[w] == std::log(9.0 / 3.0));
  CHECK(table.idf[w] == doctest::Approx(1.0986122886681098).epsilon(1e-12));

  // 10 documents, word in 9 -> exactly zero.
  Docs docs10;
  for (int i = 0; i < 10; ++i) {
    docs10.push_back(i < 9 ? std::vector<std::string>{"w"}
                           : std::vector<std::string>{"x"});
  }
  vocab = build_vocab(docs10, 1);
  table = idf_fit(docs10, vocab);
  CHECK(table.idf[vocab.id("w")] == 0.0);

  // Word in all 10 -> negative value retained.
  Docs docs_all(10, {"w"});
  vocab = build_vocab(docs_all, 1);
  table = idf_fit(docs_all, vocab);
  CHECK(table.idf[vocab.id("w")] ==
        doctest::Approx(-0.0953101798043249).epsilon(1e-12));
  CHECK(table.idf[vocab.id("w")] < 0.0);
}

TEST_CASE("idf_fit equals a brute-force dense recomputation bit for bit") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Docs docs = random_docs(rng, 20, 50);
    Vocabulary vocab = build_vocab(docs, 1);
    IdfTable table = idf_fit(docs, vocab);
    REQUIRE(table.idf.size() == vocab.size());
    for (std::size_t id = 0; id < vocab.size(); ++id) {
      std::uint64_t df = 0;
      for (const auto& doc : docs) {
        for (const auto& token : doc) {
          if (token == vocab.token(id)) {
            ++df;
            break;
          }
        }
      }
      CHECK(table.doc_frequency[id] == df);
      double expected = std::log(static_cast<double>(docs.size()) /
                                 (1.0 + static_cast<double>(df)));
      CHECK(table.idf[id] == expected);  // identical operation order
    }
  }
}

TEST_CASE("tfidf_transform worked examples") {
  Docs docs_all(10, {"a"});
  Vocabulary vocab = build_vocab(docs_all, 1);

  // idf exactly zero: 9 of 10 docs.
  Docs docs10;
  for (int i = 0; i < 10; ++i) {
    docs10.push_back(i < 9 ? std::vector<std::string>{"a"}
                           : std::vector<std::string>{"b"});
  }
  vocab = build_vocab(docs10, 1);
  IdfTable table = idf_fit(docs10, vocab);
  CHECK(tfidf_transform({"a"}, vocab, table).entries.empty());

  // idf = ln 3.
  Docs docs9;
  for (int i = 0; i < 9; ++i) {
    docs9.push_back(i < 3 ? std::vector<std::string>{"a"}
                          : std::vector<std::string>{"b"});
  }
  vocab = build_vocab(docs9, 1);
  table = idf_fit(docs9, vocab);
  SparseVector v = tfidf_transform({"a", "a"}, vocab, table);
  REQUIRE(v.entries.size() == 1);
  CHECK(v.entries[0].second == doctest::Approx(2.0 * std::log(3.0)).epsilon(1e-12));

  CHECK(tfidf_transform({}, vocab, table).entries.empty());
}

TEST_CASE("tfidf_transform agrees with a dense oracle on random corpora") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    Docs docs = random_docs(rng, 20, 50);
    Vocabulary vocab = build_vocab(docs, 1);
    IdfTable table = idf_fit(docs, vocab);
    for (const auto& doc : docs) {
      SparseVector sparse = tfidf_transform(doc, vocab, table);
      CHECK(sparse.valid());
      std::vector<double> dense(vocab.size(), 0.0);
      for (const auto& token : doc) {
        int id = vocab.id(token);
        if (id >= 0) dense[id] += 1.0;
      }
      std::size_t nonzero = 0;
      for (std::size_t id = 0; id < vocab.size(); ++id) {
        dense[id] *= table.idf[id];
        if (dense[id] != 0.0) ++nonzero;
      }
      CHECK(sparse.entries.size() == nonzero);
      for (const auto& [idx, value] : sparse.entries) {
        CHECK(value == dense[idx]);
      }
    }
  }
}

TEST_CASE("word_ngrams enumeration") {
  std::vector<std::string> grams = word_ngrams({"a", "b", "c"}, 1, 2);
  std::string ab = std::string("a") + kNgramSeparator + "b";
  std::string bc = std::string("b") + kNgramSeparator + "c";
  CHECK(grams == std::vector<std::string>{"a", "b", "c", ab, bc});

  CHECK(word_ngrams({"a"}, 2, 3).empty());
  CHECK(word_ngrams({"a", "b"}, 1, 1) == std::vector<std::string>{"a", "b"});
}

TEST_CASE("word_ngrams count identity") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> len(0, 9);
  std::uniform_int_distribution<std::size_t> nmin(1, 3);
  std::uniform_int_distribution<std::size_t> span(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t l = len(rng);
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < l; ++i) tokens.push_back("t" + std::to_string(i));
    std::size_t lo = nmin(rng), hi = lo + span(rng);
    std::size_t expected = 0;
    for (std::size_t n = lo; n <= hi; ++n) {
      expected += l + 1 > n ? l - n + 1 : 0;
    }
    CHECK(word_ngrams(tokens, lo, hi).size() == expected);
  }
}

TEST_CASE("char_ngrams enumeration and whole-form handling") {
  CHECK(char_ngrams("cat", 3, 3) ==
        std::vector<std::string>{"<ca", "cat", "at>"});
  CHECK(char_ngrams("a", 3, 3) == std::vector<std::string>{"<a>"});
  CHECK(char_ngrams("ab", 5, 6).empty());
  CHECK(char_ngrams("a", 3, 3, /*exclude_whole=*/true).empty());
  CHECK(char_ngrams("cat", 3, 5, /*exclude_whole=*/true) ==
        std::vector<std::string>{"<ca", "cat", "at>", "<cat", "cat>"});
}

TEST_CASE("char_ngrams treats multi-byte characters as units") {
  // "ü" is two UTF-8 bytes but one character.
  auto grams = char_ngrams("für", 3, 3);
  CHECK(grams == std::vector<std::string>{"<fü", "für", "ür>"});
}

TEST_CASE("char_ngrams coverage property") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> len(1, 9);
  std::uniform_int_distribution<int> ch(0, 25);
  for (int trial = 0; trial < 100; ++trial) {
    std::string word;
    for (int i = 0, n = len(rng); i < n; ++i) {
      word += static_cast<char>('a' + ch(rng));
    }
    std::size_t minn = 3, maxn = 6;
    auto grams = char_ngrams(word, minn, maxn);
    std::string wrapped = "<" + word + ">";
    if (wrapped.size() < minn) {
      CHECK(grams.empty());
      continue;
    }
    std::vector<bool> covered(wrapped.size(), false);
    for (const auto& gram : grams) {
      std::size_t pos = wrapped.find(gram);
      REQUIRE(pos != std::string::npos);
      for (std::size_t i = 0; i < gram.size(); ++i) covered[pos + i] = true;
    }
    for (bool c : covered) CHECK(c);
  }
}

TEST_CASE("fnv1a32 fixed vectors") {
  CHECK(fnv1a32("") == 2166136261u);
  CHECK(fnv1a32("a") == 3826002220u);
  CHECK(fnv1a32("a") == 0xE40C292Cu);
  CHECK(fnv1a32("foobar") == 0xBF9CF968u);
  CHECK(hash_token("a", 10) == 0);
  CHECK(hash_token("", 7) == 2166136261u % 7);
  CHECK_THROWS_AS(hash_token("a", 0), std::invalid_argument);
}

TEST_CASE("sparse vector invariants hold after every operation") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    Docs docs = random_docs(rng, 10, 20);
    Vocabulary vocab = build_vocab(docs, 1);
    IdfTable table = idf_fit(docs, vocab);
    for (const auto& doc : docs) {
      CHECK(bow(doc, vocab).valid());
      CHECK(bow(doc, vocab, true).valid());
      CHECK(tfidf_transform(doc, vocab, table).valid());
    }
  }
}
