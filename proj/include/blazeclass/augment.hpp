#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "blazeclass/blaze.hpp"
#include "blazeclass/corpus.hpp"

namespace blazeclass {

struct AugmentConfig {
  double target_ratio = 1.0;      // minority:majority after augmentation
  double substitution_rate = 0.1;  // fraction of eligible tokens substituted
  std::uint32_t k_neighbors = 5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Duplicates minority-class documents (seeded sampling with replacement)
/// until every class reaches at least target_ratio of the majority count.
/// Originals are untouched; copies carry duplicate = true and a derived id.
Dataset oversample(const Dataset& dataset, const TaskSchema& schema,
                   const AugmentConfig& config);

/// Replaces in-vocabulary tokens, each independently with probability
/// substitution_rate, by one of their k nearest neighbors under cosine
/// similarity over the model's word vectors. Out-of-vocabulary tokens are
/// never substituted.
Document substitute_words(const Document& document, const BlazeModel& model,
                          const AugmentConfig& config);

/// k nearest in-vocabulary neighbors of word id `word` (excluding itself)
/// by cosine similarity over the input matrix word rows; exhaustive scan,
/// ties broken by the lower id.
std::vector<std::uint32_t> nearest_neighbors(const BlazeModel& model,
                                             std::uint32_t word,
                                             std::uint32_t k);

/// Dataset-in/dataset-out augmentation step; lets callers stack
/// strategies without knowing which one runs.
class Augmenter {
 public:
  virtual ~Augmenter() = default;
  virtual Dataset apply(const Dataset& dataset,
                        const TaskSchema& schema) const = 0;
};

class Oversampler : public Augmenter {
 public:
  explicit Oversampler(AugmentConfig config) : config_(config) {}
  Dataset apply(const Dataset& dataset,
                const TaskSchema& schema) const override;

 private:
  AugmentConfig config_;
};

class WordSubstituter : public Augmenter {
 public:
  WordSubstituter(std::shared_ptr<const BlazeModel> model,
                  AugmentConfig config)
      : model_(std::move(model)), config_(config) {}
  Dataset apply(const Dataset& dataset,
                const TaskSchema& schema) const override;

 private:
  std::shared_ptr<const BlazeModel> model_;
  AugmentConfig config_;
};

}  // namespace blazeclass
