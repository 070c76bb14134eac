#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "blazeclass/corpus.hpp"
#include "blazeclass/features.hpp"

namespace blazeclass {

struct BlazeConfig {
  std::uint32_t dim = 100;
  double lr = 0.05;
  std::uint32_t epochs = 10;
  std::uint32_t min_count = 1;
  std::uint32_t word_ngrams = 2;  // largest word n-gram
  std::uint32_t minn = 3;         // subword range
  std::uint32_t maxn = 6;
  std::uint32_t n_buckets = 2'000'000;
  bool early_stopping = true;
  std::uint32_t patience = 1;
  std::uint32_t workers = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Row-major float32 matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0f) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  float* row(std::size_t r) { return data_.data() + r * cols_; }
  const float* row(std::size_t r) const { return data_.data() + r * cols_; }
  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }

  void fill_uniform(double bound, std::mt19937_64& rng);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

/// Supervised embedding-bag classifier. Input rows 0..|vocab| are word
/// vectors; rows |vocab|..|vocab|+n_buckets hold hashed word n-grams and
/// character n-grams.
struct BlazeModel {
  Vocabulary vocab;
  Matrix input;   // (|vocab| + n_buckets) x dim
  Matrix output;  // n_classes x dim
  std::vector<std::string> class_names;
  BlazeConfig config;

  std::size_t num_classes() const { return class_names.size(); }
};

struct EpochStats {
  double train_loss = 0.0;
  double valid_macro_f1 = 0.0;
  bool has_valid = false;
};

struct TrainReport {
  std::vector<EpochStats> epochs;  // one entry per epoch actually run
  std::uint32_t stopped_epoch = 0;  // 1-based
  std::uint32_t best_epoch = 0;     // 1-based; 0 when no validation ran
};

/// Feature ids for one document: in-vocabulary word ids, then hashed word
/// n-grams (n = 2..word_ngrams), then each token's hashed character
/// n-grams. Out-of-vocabulary tokens contribute subword ids only.
std::vector<std::uint32_t> featurize(const std::vector<std::string>& tokens,
                                     const Vocabulary& vocab,
                                     const BlazeConfig& config);

/// featurize() with per-vocabulary-word subword ids precomputed. Produces
/// exactly the same id list; safe to share across threads once built.
class Featurizer {
 public:
  Featurizer(const Vocabulary& vocab, const BlazeConfig& config);

  void featurize_into(const std::vector<std::string>& tokens,
                      std::vector<std::uint32_t>& ids) const;
  std::vector<std::uint32_t> operator()(
      const std::vector<std::string>& tokens) const;

 private:
  const Vocabulary& vocab_;
  BlazeConfig config_;
  std::vector<std::vector<std::uint32_t>> word_subwords_;
};

/// Mean of the input rows over `ids` (zero vector when empty), then
/// softmax of the output projection.
std::vector<double> forward(const BlazeModel& model,
                            const std::vector<std::uint32_t>& ids);

/// One SGD step on a single example. Returns -ln p[gold] measured before
/// the update. An empty id list performs no update and returns ln K.
double train_step(BlazeModel& model, const std::vector<std::uint32_t>& ids,
                  int gold, double lr);

/// Loss and analytic gradients used by train_step, exposed for
/// finite-difference verification. The gradient of input row r is
/// (occurrences of r in ids) * grad_hidden / |ids|.
struct BlazeGradient {
  double loss = 0.0;
  std::vector<double> grad_output;  // n_classes x dim, row-major
  std::vector<double> grad_hidden;  // dim
};
BlazeGradient blaze_loss_and_grad(const BlazeModel& model,
                                  const std::vector<std::uint32_t>& ids,
                                  int gold);

/// Hook for injecting the per-epoch validation score (tests exercise the
/// early-stopping schedule through it). Default computes macro-F1 on the
/// validation set.
using ValidMetricFn =
    std::function<double(const BlazeModel& model, std::uint32_t epoch)>;

/// Trains on preprocessed documents (falls back to whitespace tokens when
/// a document was not preprocessed). Per-example learning rate decays
/// linearly from config.lr to 0 over epochs * |train| examples. With
/// workers == 1 the run is bitwise deterministic under a fixed seed.
std::pair<BlazeModel, TrainReport> train(const Dataset& train_set,
                                         const Dataset& valid_set,
                                         const TaskSchema& schema,
                                         const BlazeConfig& config,
                                         const ValidMetricFn& valid_metric = {});

/// Top-k classes by probability (ties broken by class index).
std::vector<std::pair<std::string, double>> predict(
    const BlazeModel& model, const std::vector<std::string>& tokens,
    std::size_t k);

/// Reusable prediction state for batch inference.
class BlazePredictor {
 public:
  explicit BlazePredictor(const BlazeModel& model);

  /// Argmax class index and its probability.
  std::pair<int, double> predict_index(
      const std::vector<std::string>& tokens) const;
  std::vector<std::pair<std::string, double>> predict_topk(
      const std::vector<std::string>& tokens, std::size_t k) const;

 private:
  const BlazeModel& model_;
  Featurizer featurizer_;
  mutable std::vector<std::uint32_t> ids_;
  mutable std::vector<double> hidden_;
  mutable std::vector<double> probs_;
};

struct TuneTrial {
  BlazeConfig config;
  double valid_macro_f1 = 0.0;
  std::uint32_t stopped_epoch = 0;
};

/// Seeded random search over learning rate, dimension, minimum word count
/// and word n-grams; every other knob comes from `base`. Returns the best
/// configuration (highest validation macro-F1, earliest trial wins ties)
/// and the full trial log.
std::pair<BlazeConfig, std::vector<TuneTrial>> tune(
    const Dataset& train_set, const Dataset& valid_set,
    const TaskSchema& schema, std::size_t budget, std::uint64_t seed,
    const BlazeConfig& base = {});

}  // namespace blazeclass
