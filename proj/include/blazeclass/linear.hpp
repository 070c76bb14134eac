#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blazeclass/corpus.hpp"
#include "blazeclass/features.hpp"

namespace blazeclass {

struct LinearConfig {
  double l2 = 1e-4;
  std::uint32_t epochs = 20;
  double lr = 0.1;
  std::uint64_t seed = 0;
  bool normalize_features = true;  // L2-normalize inputs before training
};

/// Multinomial logistic regression. Weights are stored as float32 so the
/// on-disk container round-trips bitwise; all math runs in double.
struct LinearModel {
  std::vector<std::string> class_names;
  std::uint32_t dimension = 0;
  std::vector<float> weights;  // num_classes x dimension, row-major
  std::vector<float> bias;     // num_classes
  LinearConfig config;

  std::size_t num_classes() const { return class_names.size(); }
  double weight_norm() const;
};

LinearModel train_logreg(const std::vector<SparseVector>& features,
                         const std::vector<int>& labels,
                         const std::vector<std::string>& class_names,
                         const LinearConfig& config);

/// Argmax class (ties to the lowest index) and the full probability vector.
std::pair<int, std::vector<double>> predict_logreg(const LinearModel& model,
                                                   const SparseVector& x);

/// Loss and analytic gradient of softmax cross-entropy plus (l2/2)||W||^2
/// for a single example, over dense double parameters. This is the formula
/// the SGD applies; tests difference it against finite differences.
struct LogregGradient {
  double loss = 0.0;
  std::vector<double> grad_weights;
  std::vector<double> grad_bias;
};
LogregGradient logreg_loss_and_grad(const std::vector<double>& weights,
                                    const std::vector<double>& bias,
                                    std::size_t num_classes,
                                    std::size_t dimension,
                                    const SparseVector& x, int gold, double l2);

enum class FeatureKind : std::uint8_t { TFIDF = 0, BOW = 1, ONEHOT = 2 };

/// The complete classical baseline: word n-gram vocabulary, idf table and a
/// logistic regression over the resulting sparse vectors.
struct LinearTextModel {
  Vocabulary vocab;
  IdfTable idf;
  std::uint32_t ngram_max = 1;
  FeatureKind features = FeatureKind::TFIDF;
  LinearModel model;

  SparseVector featurize(const std::vector<std::string>& tokens) const;
};

LinearTextModel train_linear_text(
    const std::vector<std::vector<std::string>>& docs,
    const std::vector<int>& labels, const TaskSchema& schema,
    const LinearConfig& config, std::uint32_t ngram_max = 1,
    FeatureKind features = FeatureKind::TFIDF, std::uint32_t min_count = 1);

std::pair<int, std::vector<double>> predict_linear_text(
    const LinearTextModel& model, const std::vector<std::string>& tokens);

}  // namespace blazeclass
