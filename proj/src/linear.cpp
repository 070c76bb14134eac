#include "blazeclass/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace blazeclass {

namespace {

void softmax_inplace(std::vector<double>& logits) {
  double max_logit = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double& v : logits) {
    v = std::exp(v - max_logit);
    sum += v;
  }
  for (double& v : logits) v /= sum;
}

SparseVector l2_normalized(const SparseVector& x) {
  double norm = x.l2_norm();
  if (norm == 0.0) return x;
  SparseVector out = x;
  for (auto& [idx, value] : out.entries) value /= norm;
  return out;
}

}  // namespace

double LinearModel::weight_norm() const {
  double sq = 0.0;
  for (float w : weights) sq += static_cast<double>(w) * w;
  return std::sqrt(sq);
}

LinearModel train_logreg(const std::vector<SparseVector>& features,
                         const std::vector<int>& labels,
                         const std::vector<std::string>& class_names,
                         const LinearConfig& config) {
  if (features.size() != labels.size()) {
    throw std::invalid_argument("features/labels length mismatch");
  }
  if (features.empty()) {
    throw std::invalid_argument("empty training set");
  }
  const std::size_t k = class_names.size();
  if (k < 2) {
    throw std::invalid_argument("need at least 2 classes");
  }
  std::set<int> present(labels.begin(), labels.end());
  for (int label : present) {
    if (label < 0 || label >= static_cast<int>(k)) {
      throw std::invalid_argument("label outside class range");
    }
  }
  if (present.size() < 2) {
    throw std::invalid_argument("degenerate labels: only one class present");
  }

  std::uint32_t dim = 0;
  for (const SparseVector& x : features) {
    dim = std::max(dim, x.dimension);
  }

  LinearModel model;
  model.class_names = class_names;
  model.dimension = dim;
  model.config = config;
  model.weights.assign(k * dim, 0.0f);
  model.bias.assign(k, 0.0f);

  std::vector<SparseVector> data;
  data.reserve(features.size());
  for (const SparseVector& x : features) {
    data.push_back(config.normalize_features ? l2_normalized(x) : x);
  }

  // Shadow parameters in double; the L2 decay runs through a global scale
  // factor so each step stays proportional to the touched features.
  std::vector<double> w(k * dim, 0.0);
  std::vector<double> b(k, 0.0);
  double scale = 1.0;

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> logits(k);

  for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t idx : order) {
      const SparseVector& x = data[idx];
      const int gold = labels[idx];
      for (std::size_t c = 0; c < k; ++c) {
        double dot = 0.0;
        for (const auto& [j, value] : x.entries) {
          dot += w[c * dim + j] * value;
        }
        logits[c] = scale * dot + b[c];
      }
      softmax_inplace(logits);
      if (config.l2 > 0.0) {
        scale *= 1.0 - config.lr * config.l2;
        if (scale < 1e-9) {
          for (double& v : w) v *= scale;
          scale = 1.0;
        }
      }
      for (std::size_t c = 0; c < k; ++c) {
        double g = logits[c] - (static_cast<int>(c) == gold ? 1.0 : 0.0);
        if (g == 0.0) continue;
        for (const auto& [j, value] : x.entries) {
          w[c * dim + j] -= config.lr * g * value / scale;
        }
        b[c] -= config.lr * g;
      }
    }
  }

  for (std::size_t i = 0; i < w.size(); ++i) {
    model.weights[i] = static_cast<float>(w[i] * scale);
  }
  for (std::size_t c = 0; c < k; ++c) {
    model.bias[c] = static_cast<float>(b[c]);
  }
  return model;
}

std::pair<int, std::vector<double>> predict_logreg(const LinearModel& model,
                                                   const SparseVector& x) {
  const std::size_t k = model.num_classes();
  if (x.dimension > model.dimension) {
    throw std::invalid_argument("input dimension exceeds model dimension");
  }
  std::vector<double> logits(k);
  for (std::size_t c = 0; c < k; ++c) {
    double dot = static_cast<double>(model.bias[c]);
    for (const auto& [j, value] : x.entries) {
      dot += static_cast<double>(model.weights[c * model.dimension + j]) * value;
    }
    logits[c] = dot;
  }
  softmax_inplace(logits);
  int best = 0;
  for (std::size_t c = 1; c < k; ++c) {
    if (logits[c] > logits[best]) best = static_cast<int>(c);
  }
  return {best, std::move(logits)};
}

LogregGradient logreg_loss_and_grad(const std::vector<double>& weights,
                                    const std::vector<double>& bias,
                                    std::size_t num_classes,
                                    std::size_t dimension,
                                    const SparseVector& x, int gold,
                                    double l2) {
  if (weights.size() != num_classes * dimension || bias.size() != num_classes) {
    throw std::invalid_argument("parameter shape mismatch");
  }
  if (gold < 0 || gold >= static_cast<int>(num_classes)) {
    throw std::invalid_argument("gold class out of range");
  }
  std::vector<double> probs(num_classes);
  for (std::size_t c = 0; c < num_classes; ++c) {
    double dot = bias[c];
    for (const auto& [j, value] : x.entries) {
      dot += weights[c * dimension + j] * value;
    }
    probs[c] = dot;
  }
  softmax_inplace(probs);

  LogregGradient out;
  out.loss = -std::log(probs[gold]);
  for (double wv : weights) out.loss += 0.5 * l2 * wv * wv;

  out.grad_weights.assign(weights.size(), 0.0);
  out.grad_bias.assign(num_classes, 0.0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    double g = probs[c] - (static_cast<int>(c) == gold ? 1.0 : 0.0);
    for (const auto& [j, value] : x.entries) {
      out.grad_weights[c * dimension + j] += g * value;
    }
    out.grad_bias[c] = g;
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    out.grad_weights[i] += l2 * weights[i];
  }
  return out;
}

SparseVector LinearTextModel::featurize(
    const std::vector<std::string>& tokens) const {
  std::vector<std::string> units =
      ngram_max > 1 ? word_ngrams(tokens, 1, ngram_max) : tokens;
  switch (features) {
    case FeatureKind::TFIDF:
      return tfidf_transform(units, vocab, idf);
    case FeatureKind::BOW:
      return bow(units, vocab, false);
    case FeatureKind::ONEHOT:
      return bow(units, vocab, true);
  }
  throw std::invalid_argument("unknown feature kind");
}

LinearTextModel train_linear_text(
    const std::vector<std::vector<std::string>>& docs,
    const std::vector<int>& labels, const TaskSchema& schema,
    const LinearConfig& config, std::uint32_t ngram_max, FeatureKind features,
    std::uint32_t min_count) {
  LinearTextModel out;
  out.ngram_max = ngram_max;
  out.features = features;

  std::vector<std::vector<std::string>> units;
  units.reserve(docs.size());
  for (const auto& doc : docs) {
    units.push_back(ngram_max > 1 ? word_ngrams(doc, 1, ngram_max) : doc);
  }
  out.vocab = build_vocab(units, min_count);
  out.idf = idf_fit(units, out.vocab);

  std::vector<SparseVector> xs;
  xs.reserve(docs.size());
  for (const auto& u : units) {
    if (features == FeatureKind::TFIDF) {
      xs.push_back(tfidf_transform(u, out.vocab, out.idf));
    } else {
      xs.push_back(bow(u, out.vocab, features == FeatureKind::ONEHOT));
    }
  }
  out.model = train_logreg(xs, labels, schema.classes, config);
  return out;
}

std::pair<int, std::vector<double>> predict_linear_text(
    const LinearTextModel& model, const std::vector<std::string>& tokens) {
  SparseVector x = model.featurize(tokens);
  if (model.model.config.normalize_features) {
    double norm = x.l2_norm();
    if (norm != 0.0) {
      for (auto& [idx, value] : x.entries) value /= norm;
    }
  }
  return predict_logreg(model.model, x);
}

}  // namespace blazeclass
