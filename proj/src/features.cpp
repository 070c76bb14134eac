#include "blazeclass/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace blazeclass {

int Vocabulary::id(const std::string& token) const {
  auto it = token_to_id_.find(token);
  return it == token_to_id_.end() ? -1 : static_cast<int>(it->second);
}

void Vocabulary::append(const std::string& token, std::uint64_t count) {
  if (token_to_id_.count(token)) {
    throw std::invalid_argument("duplicate vocabulary token: " + token);
  }
  token_to_id_.emplace(token, static_cast<std::uint32_t>(id_to_token_.size()));
  id_to_token_.push_back(token);
  counts_.push_back(count);
}

bool SparseVector::valid() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first >= dimension) return false;
    if (i > 0 && entries[i].first <= entries[i - 1].first) return false;
    if (entries[i].second == 0.0) return false;
  }
  return true;
}

double SparseVector::l2_norm() const {
  double sq = 0.0;
  for (const auto& [idx, value] : entries) sq += value * value;
  return std::sqrt(sq);
}

Vocabulary build_vocab(const std::vector<std::vector<std::string>>& documents,
                       std::uint32_t min_count) {
  if (min_count < 1) {
    throw std::invalid_argument("min_count must be >= 1");
  }
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& doc : documents) {
    for (const auto& token : doc) ++freq[token];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  kept.reserve(freq.size());
  for (auto& [token, count] : freq) {
    if (count >= min_count) kept.push_back({token, count});
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary vocab;
  vocab.set_min_count(min_count);
  for (auto& [token, count] : kept) vocab.append(token, count);
  return vocab;
}

SparseVector bow(const std::vector<std::string>& tokens,
                 const Vocabulary& vocab, bool binary) {
  std::map<std::uint32_t, double> acc;
  for (const auto& token : tokens) {
    int id = vocab.id(token);
    if (id >= 0) acc[static_cast<std::uint32_t>(id)] += 1.0;
  }
  SparseVector vec;
  vec.dimension = static_cast<std::uint32_t>(vocab.size());
  vec.entries.reserve(acc.size());
  for (auto& [id, count] : acc) {
    vec.entries.push_back({id, binary ? 1.0 : count});
  }
  return vec;
}

IdfTable idf_fit(const std::vector<std::vector<std::string>>& documents,
                 const Vocabulary& vocab) {
  IdfTable table;
  table.n_documents = documents.size();
  table.doc_frequency.assign(vocab.size(), 0);
  std::vector<bool> seen(vocab.size());
  for (const auto& doc : documents) {
    std::fill(seen.begin(), seen.end(), false);
    for (const auto& token : doc) {
      int id = vocab.id(token);
      if (id >= 0 && !seen[static_cast<std::size_t>(id)]) {
        seen[static_cast<std::size_t>(id)] = true;
        ++table.doc_frequency[static_cast<std::size_t>(id)];
      }
    }
  }
  table.idf.resize(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    table.idf[i] = std::log(static_cast<double>(table.n_documents) /
                            (1.0 + static_cast<double>(table.doc_frequency[i])));
  }
  return table;
}

SparseVector tfidf_transform(const std::vector<std::string>& tokens,
                             const Vocabulary& vocab, const IdfTable& table) {
  if (table.idf.size() != vocab.size()) {
    throw std::invalid_argument("idf table does not match vocabulary");
  }
  std::map<std::uint32_t, double> counts;
  for (const auto& token : tokens) {
    int id = vocab.id(token);
    if (id >= 0) counts[static_cast<std::uint32_t>(id)] += 1.0;
  }
  SparseVector vec;
  vec.dimension = static_cast<std::uint32_t>(vocab.size());
  for (auto& [id, count] : counts) {
    double value = count * table.idf[id];
    if (value != 0.0) vec.entries.push_back({id, value});
  }
  return vec;
}

std::vector<std::string> word_ngrams(const std::vector<std::string>& tokens,
                                     std::size_t n_min, std::size_t n_max) {
  if (n_min < 1 || n_min > n_max) {
    throw std::invalid_argument("need 1 <= n_min <= n_max");
  }
  std::vector<std::string> grams;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    if (tokens.size() < n) break;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string gram = tokens[i];
      for (std::size_t j = 1; j < n; ++j) {
        gram += kNgramSeparator;
        gram += tokens[i + j];
      }
      grams.push_back(std::move(gram));
    }
  }
  return grams;
}

std::vector<std::string> char_ngrams(const std::string& word, std::size_t minn,
                                     std::size_t maxn, bool exclude_whole) {
  if (minn < 1 || minn > maxn) {
    throw std::invalid_argument("need 1 <= minn <= maxn");
  }
  std::string wrapped = "<" + word + ">";
  std::vector<std::string> grams;
  // Substring boundaries land on UTF-8 codepoint starts, so multi-byte
  // characters count as single units.
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < wrapped.size(); ++i) {
    if ((static_cast<unsigned char>(wrapped[i]) & 0xC0) != 0x80) {
      starts.push_back(i);
    }
  }
  starts.push_back(wrapped.size());
  std::size_t n_chars = starts.size() - 1;
  for (std::size_t n = minn; n <= maxn && n <= n_chars; ++n) {
    if (n == n_chars && exclude_whole) continue;
    for (std::size_t i = 0; i + n <= n_chars; ++i) {
      grams.push_back(
          wrapped.substr(starts[i], starts[i + n] - starts[i]));
    }
  }
  return grams;
}

std::uint32_t fnv1a32(const std::string& s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char byte : s) {
    h ^= byte;
    h *= 16777619u;
  }
  return h;
}

std::uint32_t hash_token(const std::string& s, std::uint32_t n_buckets) {
  if (n_buckets < 1) {
    throw std::invalid_argument("n_buckets must be >= 1");
  }
  return fnv1a32(s) % n_buckets;
}

}  // namespace blazeclass
