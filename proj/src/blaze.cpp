#include "blazeclass/blaze.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "blazeclass/eval.hpp"
#include "blazeclass/preprocess.hpp"

namespace blazeclass {

void BlazeConfig::validate() const {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("lr must be > 0");
  if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");
  if (word_ngrams < 1) throw std::invalid_argument("word_ngrams must be >= 1");
  if (minn < 1 || minn > maxn) throw std::invalid_argument("need 1 <= minn <= maxn");
  if (n_buckets < 1) throw std::invalid_argument("n_buckets must be >= 1");
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

void Matrix::fill_uniform(double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<float> dist(static_cast<float>(-bound),
                                             static_cast<float>(bound));
  for (float& v : data_) v = dist(rng);
}

namespace {

constexpr std::uint32_t kFnvBasis = 2166136261u;
constexpr std::uint32_t kFnvPrime = 16777619u;

inline std::uint32_t fnv_feed(std::uint32_t h, const std::string& s) {
  for (unsigned char byte : s) {
    h ^= byte;
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint32_t fnv_feed(std::uint32_t h, char c) {
  h ^= static_cast<unsigned char>(c);
  h *= kFnvPrime;
  return h;
}

// Hashed ids of word n-grams for n in [2, max_n], enumerated like
// word_ngrams(): by n, then by start position. Hash states roll forward one
// token at a time so no joined strings are built.
template <typename Emit>
void hashed_word_ngrams(const std::vector<std::string>& tokens,
                        std::uint32_t max_n, Emit&& emit) {
  if (max_n < 2 || tokens.size() < 2) return;
  std::vector<std::uint32_t> states(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    states[i] = fnv_feed(kFnvBasis, tokens[i]);
  }
  for (std::uint32_t n = 2; n <= max_n; ++n) {
    if (tokens.size() < n) break;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      states[i] = fnv_feed(fnv_feed(states[i], kNgramSeparator), tokens[i + n - 1]);
      emit(states[i]);
    }
  }
}

template <typename Emit>
void hashed_subwords(const std::string& token, const BlazeConfig& config,
                     bool in_vocab, Emit&& emit) {
  for (const std::string& gram :
       char_ngrams(token, config.minn, config.maxn, /*exclude_whole=*/in_vocab)) {
    emit(hash_token(gram, config.n_buckets));
  }
}

}  // namespace

std::vector<std::uint32_t> featurize(const std::vector<std::string>& tokens,
                                     const Vocabulary& vocab,
                                     const BlazeConfig& config) {
  std::vector<std::uint32_t> ids;
  const std::uint32_t offset = static_cast<std::uint32_t>(vocab.size());
  for (const std::string& token : tokens) {
    int id = vocab.id(token);
    if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
  }
  hashed_word_ngrams(tokens, config.word_ngrams, [&](std::uint32_t h) {
    ids.push_back(offset + h % config.n_buckets);
  });
  for (const std::string& token : tokens) {
    bool in_vocab = vocab.id(token) >= 0;
    hashed_subwords(token, config, in_vocab,
                    [&](std::uint32_t b) { ids.push_back(offset + b); });
  }
  return ids;
}

Featurizer::Featurizer(const Vocabulary& vocab, const BlazeConfig& config)
    : vocab_(vocab), config_(config) {
  word_subwords_.resize(vocab.size());
  for (std::size_t w = 0; w < vocab.size(); ++w) {
    hashed_subwords(vocab.token(w), config_, /*in_vocab=*/true,
                    [&](std::uint32_t b) { word_subwords_[w].push_back(b); });
  }
}

void Featurizer::featurize_into(const std::vector<std::string>& tokens,
                                std::vector<std::uint32_t>& ids) const {
  ids.clear();
  const std::uint32_t offset = static_cast<std::uint32_t>(vocab_.size());
  for (const std::string& token : tokens) {
    int id = vocab_.id(token);
    if (id >= 0) ids.push_back(static_cast<std::uint32_t>(id));
  }
  hashed_word_ngrams(tokens, config_.word_ngrams, [&](std::uint32_t h) {
    ids.push_back(offset + h % config_.n_buckets);
  });
  for (const std::string& token : tokens) {
    int id = vocab_.id(token);
    if (id >= 0) {
      for (std::uint32_t b : word_subwords_[static_cast<std::size_t>(id)]) {
        ids.push_back(offset + b);
      }
    } else {
      hashed_subwords(token, config_, /*in_vocab=*/false,
                      [&](std::uint32_t b) { ids.push_back(offset + b); });
    }
  }
}

std::vector<std::uint32_t> Featurizer::operator()(
    const std::vector<std::string>& tokens) const {
  std::vector<std::uint32_t> ids;
  featurize_into(tokens, ids);
  return ids;
}

namespace {

void compute_hidden(const BlazeModel& model,
                    const std::vector<std::uint32_t>& ids,
                    std::vector<double>& hidden) {
  const std::size_t dim = model.config.dim;
  hidden.assign(dim, 0.0);
  if (ids.empty()) return;
  for (std::uint32_t id : ids) {
    const float* row = model.input.row(id);
    for (std::size_t d = 0; d < dim; ++d) hidden[d] += row[d];
  }
  const double inv = 1.0 / static_cast<double>(ids.size());
  for (double& v : hidden) v *= inv;
}

void compute_probs(const BlazeModel& model, const std::vector<double>& hidden,
                   std::vector<double>& probs) {
  const std::size_t k = model.num_classes();
  const std::size_t dim = model.config.dim;
  probs.assign(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    const float* row = model.output.row(c);
    double dot = 0.0;
    for (std::size_t d = 0; d < dim; ++d) dot += row[d] * hidden[d];
    probs[c] = dot;
  }
  double max_logit = *std::max_element(probs.begin(), probs.end());
  double sum = 0.0;
  for (double& v : probs) {
    v = std::exp(v - max_logit);
    sum += v;
  }
  for (double& v : probs) v /= sum;
}

struct StepWorkspace {
  std::vector<double> hidden;
  std::vector<double> probs;
  std::vector<double> grad_hidden;
};

// Shared matrices are updated without locks when training multi-worker;
// lost updates are part of the contract.
double step_impl(BlazeModel& model, const std::vector<std::uint32_t>& ids,
                 int gold, double lr, StepWorkspace& ws) {
  const std::size_t k = model.num_classes();
  const std::size_t dim = model.config.dim;
  if (gold < 0 || gold >= static_cast<int>(k)) {
    throw std::invalid_argument("gold class out of range");
  }
  if (ids.empty()) {
    return std::log(static_cast<double>(k));
  }
  compute_hidden(model, ids, ws.hidden);
  compute_probs(model, ws.hidden, ws.probs);
  const double loss = -std::log(ws.probs[gold]);

  ws.grad_hidden.assign(dim, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    const double g = ws.probs[c] - (static_cast<int>(c) == gold ? 1.0 : 0.0);
    float* row = model.output.row(c);
    for (std::size_t d = 0; d < dim; ++d) {
      ws.grad_hidden[d] += g * row[d];
      row[d] -= static_cast<float>(lr * g * ws.hidden[d]);
    }
  }
  const double scale = lr / static_cast<double>(ids.size());
  for (std::uint32_t id : ids) {
    float* row = model.input.row(id);
    for (std::size_t d = 0; d < dim; ++d) {
      row[d] -= static_cast<float>(scale * ws.grad_hidden[d]);
    }
  }
  return loss;
}

}  // namespace

std::vector<double> forward(const BlazeModel& model,
                            const std::vector<std::uint32_t>& ids) {
  std::vector<double> hidden, probs;
  compute_hidden(model, ids, hidden);
  compute_probs(model, hidden, probs);
  return probs;
}

double train_step(BlazeModel& model, const std::vector<std::uint32_t>& ids,
                  int gold, double lr) {
  StepWorkspace ws;
  return step_impl(model, ids, gold, lr, ws);
}

BlazeGradient blaze_loss_and_grad(const BlazeModel& model,
                                  const std::vector<std::uint32_t>& ids,
                                  int gold) {
  const std::size_t k = model.num_classes();
  const std::size_t dim = model.config.dim;
  BlazeGradient out;
  std::vector<double> hidden, probs;
  compute_hidden(model, ids, hidden);
  compute_probs(model, hidden, probs);
  out.loss = -std::log(probs[gold]);
  out.grad_output.assign(k * dim, 0.0);
  out.grad_hidden.assign(dim, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    const double g = probs[c] - (static_cast<int>(c) == gold ? 1.0 : 0.0);
    const float* row = model.output.row(c);
    for (std::size_t d = 0; d < dim; ++d) {
      out.grad_output[c * dim + d] = g * hidden[d];
      out.grad_hidden[d] += g * row[d];
    }
  }
  return out;
}

namespace {

std::vector<std::string> tokens_of(const Document& doc) {
  return doc.tokens.empty() ? tokenize(doc.raw_text) : doc.tokens;
}

double macro_f1_on(const BlazeModel& model, const Featurizer& featurizer,
                   const std::vector<std::vector<std::string>>& docs,
                   const std::vector<int>& gold, const TaskSchema& schema) {
  std::vector<int> predicted(docs.size());
  std::vector<std::uint32_t> ids;
  std::vector<double> hidden, probs;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    featurizer.featurize_into(docs[i], ids);
    compute_hidden(model, ids, hidden);
    compute_probs(model, hidden, probs);
    int best = 0;
    for (std::size_t c = 1; c < probs.size(); ++c) {
      if (probs[c] > probs[best]) best = static_cast<int>(c);
    }
    predicted[i] = best;
  }
  return metrics(confusion(gold, predicted, schema)).macro_f1;
}

}  // namespace

std::pair<BlazeModel, TrainReport> train(const Dataset& train_set,
                                         const Dataset& valid_set,
                                         const TaskSchema& schema,
                                         const BlazeConfig& config,
                                         const ValidMetricFn& valid_metric) {
  config.validate();
  if (train_set.empty()) {
    throw std::invalid_argument("empty training set");
  }
  const bool want_valid = !valid_set.empty() || static_cast<bool>(valid_metric);
  if (config.early_stopping && !want_valid) {
    throw std::invalid_argument("early stopping requires a validation set");
  }

  const std::size_t n = train_set.size();
  std::vector<std::vector<std::string>> docs(n);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<int> cls = label_index(train_set[i], schema);
    if (!cls) {
      throw std::invalid_argument("unlabeled document in training set: " +
                                  train_set[i].id);
    }
    docs[i] = tokens_of(train_set[i]);
    labels[i] = *cls;
  }

  std::vector<std::vector<std::string>> valid_docs;
  std::vector<int> valid_labels;
  for (const Document& doc : valid_set) {
    std::optional<int> cls = label_index(doc, schema);
    if (!cls) {
      throw std::invalid_argument("unlabeled document in validation set: " +
                                  doc.id);
    }
    valid_docs.push_back(tokens_of(doc));
    valid_labels.push_back(*cls);
  }

  BlazeModel model;
  model.config = config;
  model.class_names = schema.classes;
  model.vocab = build_vocab(docs, config.min_count);

  std::mt19937_64 rng(config.seed);
  model.input = Matrix(model.vocab.size() + config.n_buckets, config.dim);
  model.input.fill_uniform(1.0 / static_cast<double>(config.dim), rng);
  model.output = Matrix(schema.num_classes(), config.dim);

  Featurizer featurizer(model.vocab, config);

  const std::uint64_t planned_total =
      static_cast<std::uint64_t>(config.epochs) * static_cast<std::uint64_t>(n);
  std::atomic<std::uint64_t> processed{0};
  std::mt19937_64 shuffle_rng(config.seed ^ 0x9E3779B97F4A7C15ull);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  TrainReport report;
  double best_f1 = -std::numeric_limits<double>::infinity();
  std::uint32_t bad_epochs = 0;
  std::vector<float> best_input, best_output;
  bool have_snapshot = false;

  auto run_shard = [&](std::size_t lo, std::size_t hi, double* loss_sum) {
    StepWorkspace ws;
    std::vector<std::uint32_t> ids;
    double local = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t idx = order[i];
      featurizer.featurize_into(docs[idx], ids);
      const std::uint64_t t = processed.fetch_add(1, std::memory_order_relaxed);
      const double lr =
          config.lr *
          (1.0 - static_cast<double>(t) / static_cast<double>(planned_total));
      local += step_impl(model, ids, labels[idx], lr, ws);
    }
    *loss_sum = local;
  };

  for (std::uint32_t epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double epoch_loss = 0.0;
    if (config.workers == 1) {
      run_shard(0, n, &epoch_loss);
    } else {
      std::vector<std::thread> threads;
      std::vector<double> partial(config.workers, 0.0);
      for (std::uint32_t w = 0; w < config.workers; ++w) {
        std::size_t lo = n * w / config.workers;
        std::size_t hi = n * (w + 1) / config.workers;
        threads.emplace_back(run_shard, lo, hi, &partial[w]);
      }
      for (auto& t : threads) t.join();
      epoch_loss = std::accumulate(partial.begin(), partial.end(), 0.0);
    }

    EpochStats stats;
    stats.train_loss = epoch_loss / static_cast<double>(n);
    report.stopped_epoch = epoch;

    if (want_valid) {
      stats.has_valid = true;
      stats.valid_macro_f1 =
          valid_metric
              ? valid_metric(model, epoch)
              : macro_f1_on(model, featurizer, valid_docs, valid_labels, schema);
      report.epochs.push_back(stats);

      if (stats.valid_macro_f1 > best_f1) {
        best_f1 = stats.valid_macro_f1;
        report.best_epoch = epoch;
        bad_epochs = 0;
        best_input = model.input.data();
        best_output = model.output.data();
        have_snapshot = true;
      } else {
        ++bad_epochs;
        if (config.early_stopping && bad_epochs >= config.patience) {
          break;
        }
      }
    } else {
      report.epochs.push_back(stats);
    }
  }

  if (have_snapshot) {
    model.input.data() = std::move(best_input);
    model.output.data() = std::move(best_output);
  }
  return {std::move(model), std::move(report)};
}

std::vector<std::pair<std::string, double>> predict(
    const BlazeModel& model, const std::vector<std::string>& tokens,
    std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<double> probs =
      forward(model, featurize(tokens, model.vocab, model.config));
  std::vector<int> idx(probs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (probs[a] != probs[b]) return probs[a] > probs[b];
    return a < b;
  });
  k = std::min(k, idx.size());
  std::vector<std::pair<std::string, double>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back({model.class_names[idx[i]], probs[idx[i]]});
  }
  return out;
}

BlazePredictor::BlazePredictor(const BlazeModel& model)
    : model_(model), featurizer_(model.vocab, model.config) {}

std::pair<int, double> BlazePredictor::predict_index(
    const std::vector<std::string>& tokens) const {
  featurizer_.featurize_into(tokens, ids_);
  compute_hidden(model_, ids_, hidden_);
  compute_probs(model_, hidden_, probs_);
  int best = 0;
  for (std::size_t c = 1; c < probs_.size(); ++c) {
    if (probs_[c] > probs_[best]) best = static_cast<int>(c);
  }
  return {best, probs_[best]};
}

std::vector<std::pair<std::string, double>> BlazePredictor::predict_topk(
    const std::vector<std::string>& tokens, std::size_t k) const {
  featurizer_.featurize_into(tokens, ids_);
  compute_hidden(model_, ids_, hidden_);
  compute_probs(model_, hidden_, probs_);
  std::vector<int> idx(probs_.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (probs_[a] != probs_[b]) return probs_[a] > probs_[b];
    return a < b;
  });
  k = std::min(k, idx.size());
  std::vector<std::pair<std::string, double>> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back({model_.class_names[idx[i]], probs_[idx[i]]});
  }
  return out;
}

std::pair<BlazeConfig, std::vector<TuneTrial>> tune(const Dataset& train_set,
                                                    const Dataset& valid_set,
                                                    const TaskSchema& schema,
                                                    std::size_t budget,
                                                    std::uint64_t seed,
                                                    const BlazeConfig& base) {
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (valid_set.empty()) {
    throw std::invalid_argument("tuning requires a validation set");
  }

  static constexpr std::uint32_t kDims[] = {10, 25, 50, 100, 200};
  static constexpr std::uint32_t kMinCounts[] = {1, 2, 5, 10};
  static constexpr std::uint32_t kWordNgrams[] = {1, 2, 3};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_lr(std::log(0.01), std::log(0.5));
  std::uniform_int_distribution<std::size_t> pick_dim(0, 4);
  std::uniform_int_distribution<std::size_t> pick_mc(0, 3);
  std::uniform_int_distribution<std::size_t> pick_wn(0, 2);

  std::vector<TuneTrial> trials;
  std::size_t best_trial = 0;
  for (std::size_t t = 0; t < budget; ++t) {
    BlazeConfig config = base;
    config.lr = std::exp(log_lr(rng));
    config.dim = kDims[pick_dim(rng)];
    config.min_count = kMinCounts[pick_mc(rng)];
    config.word_ngrams = kWordNgrams[pick_wn(rng)];

    auto [model, report] = train(train_set, valid_set, schema, config);
    TuneTrial trial;
    trial.config = config;
    trial.stopped_epoch = report.stopped_epoch;
    trial.valid_macro_f1 =
        report.best_epoch > 0
            ? report.epochs[report.best_epoch - 1].valid_macro_f1
            : 0.0;
    trials.push_back(trial);
    if (trial.valid_macro_f1 > trials[best_trial].valid_macro_f1) {
      best_trial = t;
    }
  }
  return {trials[best_trial].config, std::move(trials)};
}

}  // namespace blazeclass
