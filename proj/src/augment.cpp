#include "blazeclass/augment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "blazeclass/preprocess.hpp"

namespace blazeclass {

void AugmentConfig::validate() const {
  if (!(target_ratio > 0.0)) {
    throw std::invalid_argument("target_ratio must be > 0");
  }
  if (!(substitution_rate >= 0.0 && substitution_rate <= 1.0)) {
    throw std::invalid_argument("substitution_rate outside [0,1]");
  }
  if (k_neighbors < 1) {
    throw std::invalid_argument("k_neighbors must be >= 1");
  }
}

Dataset oversample(const Dataset& dataset, const TaskSchema& schema,
                   const AugmentConfig& config) {
  config.validate();

  std::vector<std::vector<std::size_t>> by_class(schema.num_classes());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    std::optional<int> cls = label_index(dataset[i], schema);
    if (cls) by_class[static_cast<std::size_t>(*cls)].push_back(i);
  }
  std::size_t present = 0, majority = 0;
  for (const auto& members : by_class) {
    if (!members.empty()) ++present;
    majority = std::max(majority, members.size());
  }
  if (present < 2) {
    throw std::invalid_argument("oversampling needs at least 2 classes present");
  }

  const auto target = static_cast<std::size_t>(
      std::ceil(config.target_ratio * static_cast<double>(majority)));

  Dataset out = dataset;
  std::mt19937_64 rng(config.seed);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    const auto& members = by_class[c];
    if (members.empty() || members.size() >= target) continue;
    std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
    for (std::size_t d = members.size(); d < target; ++d) {
      Document copy = dataset[members[pick(rng)]];
      copy.duplicate = true;
      copy.id += "+dup" + std::to_string(d - members.size());
      out.push_back(std::move(copy));
    }
  }
  return out;
}

std::vector<std::uint32_t> nearest_neighbors(const BlazeModel& model,
                                             std::uint32_t word,
                                             std::uint32_t k) {
  const std::size_t v = model.vocab.size();
  const std::size_t dim = model.config.dim;
  if (word >= v) {
    throw std::invalid_argument("word id outside vocabulary");
  }
  const float* target = model.input.row(word);
  double target_norm = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    target_norm += static_cast<double>(target[d]) * target[d];
  }
  target_norm = std::sqrt(target_norm);
  if (target_norm == 0.0) return {};

  std::vector<std::pair<double, std::uint32_t>> scored;
  scored.reserve(v - 1);
  for (std::uint32_t r = 0; r < v; ++r) {
    if (r == word) continue;
    const float* row = model.input.row(r);
    double dot = 0.0, norm = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      dot += static_cast<double>(row[d]) * target[d];
      norm += static_cast<double>(row[d]) * row[d];
    }
    if (norm == 0.0) continue;
    scored.push_back({dot / (std::sqrt(norm) * target_norm), r});
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < scored.size() && i < k; ++i) {
    out.push_back(scored[i].second);
  }
  return out;
}

Document substitute_words(const Document& document, const BlazeModel& model,
                          const AugmentConfig& config) {
  config.validate();
  if (model.vocab.size() < 2) {
    throw std::invalid_argument("model vocabulary is trivial");
  }

  std::vector<std::string> tokens =
      document.tokens.empty() ? tokenize(document.raw_text) : document.tokens;

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  bool changed = false;
  for (std::string& token : tokens) {
    int id = model.vocab.id(token);
    if (id < 0) continue;
    if (coin(rng) >= config.substitution_rate) continue;
    std::vector<std::uint32_t> neighbors = nearest_neighbors(
        model, static_cast<std::uint32_t>(id), config.k_neighbors);
    if (neighbors.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, neighbors.size() - 1);
    token = model.vocab.token(neighbors[pick(rng)]);
    changed = true;
  }

  if (!changed) return document;
  Document out = document;
  out.tokens = std::move(tokens);
  std::string joined;
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (i > 0) joined += ' ';
    joined += out.tokens[i];
  }
  out.raw_text = std::move(joined);
  return out;
}

Dataset Oversampler::apply(const Dataset& dataset,
                           const TaskSchema& schema) const {
  return oversample(dataset, schema, config_);
}

Dataset WordSubstituter::apply(const Dataset& dataset,
                               const TaskSchema& schema) const {
  (void)schema;
  Dataset out;
  out.reserve(dataset.size());
  AugmentConfig per_doc = config_;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    per_doc.seed = config_.seed + i;
    out.push_back(substitute_words(dataset[i], *model_, per_doc));
  }
  return out;
}

}  // namespace blazeclass
