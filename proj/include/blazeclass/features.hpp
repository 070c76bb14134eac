#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace blazeclass {

/// Joins the words of a word n-gram. U+001F can never survive
/// normalization, so joined n-grams cannot collide with real tokens.
inline constexpr char kNgramSeparator = '\x1f';

/// Token table with frequency counts. Ids are dense from 0, assigned in
/// descending corpus frequency (ties broken lexicographically).
class Vocabulary {
 public:
  Vocabulary() = default;

  std::size_t size() const { return id_to_token_.size(); }
  std::uint32_t min_count() const { return min_count_; }
  /// Id of `token`, or -1 when the token was pruned or never seen.
  int id(const std::string& token) const;
  const std::string& token(std::size_t id) const { return id_to_token_[id]; }
  std::uint64_t count(std::size_t id) const { return counts_[id]; }
  const std::vector<std::string>& tokens() const { return id_to_token_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  /// Appends a token with its count; ids follow insertion order. Used by
  /// build_vocab and by model deserialization.
  void append(const std::string& token, std::uint64_t count);
  void set_min_count(std::uint32_t min_count) { min_count_ = min_count; }

 private:
  std::unordered_map<std::string, std::uint32_t> token_to_id_;
  std::vector<std::string> id_to_token_;
  std::vector<std::uint64_t> counts_;
  std::uint32_t min_count_ = 1;
};

/// Document frequencies and the inverse-document-frequency weights
/// idf[i] = ln(n_documents / (1 + doc_frequency[i])).
struct IdfTable {
  std::uint64_t n_documents = 0;
  std::vector<std::uint64_t> doc_frequency;
  std::vector<double> idf;
};

/// Sorted sparse vector; indices strictly increasing, no explicit zeros.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;
  std::uint32_t dimension = 0;

  bool valid() const;
  double l2_norm() const;
};

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& documents,
                       std::uint32_t min_count = 1);

/// Bag-of-words counts; with binary=true counts clamp to 1 (one-hot view).
SparseVector bow(const std::vector<std::string>& tokens,
                 const Vocabulary& vocab, bool binary = false);

IdfTable idf_fit(const std::vector<std::vector<std::string>>& documents,
                 const Vocabulary& vocab);

/// Term counts weighted by idf; entries with an exactly zero product are
/// dropped, negative weights are kept.
SparseVector tfidf_transform(const std::vector<std::string>& tokens,
                             const Vocabulary& vocab, const IdfTable& table);

/// All contiguous word n-grams for n in [n_min, n_max], joined with
/// kNgramSeparator.
std::vector<std::string> word_ngrams(const std::vector<std::string>& tokens,
                                     std::size_t n_min, std::size_t n_max);

/// Character n-grams of the boundary-wrapped word `<word>`. With
/// exclude_whole, the n-gram equal to the whole wrapped form is skipped
/// (callers use this for in-vocabulary words, whose whole-word unit is the
/// word id itself).
std::vector<std::string> char_ngrams(const std::string& word, std::size_t minn,
                                     std::size_t maxn,
                                     bool exclude_whole = false);

/// FNV-1a 32-bit over the UTF-8 bytes of `s`.
std::uint32_t fnv1a32(const std::string& s);

/// Feature-hashing bucket for an n-gram string.
std::uint32_t hash_token(const std::string& s, std::uint32_t n_buckets);

}  // namespace blazeclass
