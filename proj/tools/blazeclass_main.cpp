#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blazeclass/augment.hpp"
#include "blazeclass/blaze.hpp"
#include "blazeclass/corpus.hpp"
#include "blazeclass/errors.hpp"
#include "blazeclass/eval.hpp"
#include "blazeclass/linear.hpp"
#include "blazeclass/model_io.hpp"
#include "blazeclass/preprocess.hpp"
#include "json.hpp"

namespace bc = blazeclass;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Shared option blocks

struct DataOptions {
  std::string emoji_table;
  std::string lexicon;

  void attach(CLI::App* cmd) {
    cmd->add_option("--emoji-table", emoji_table,
                    "Emoji table TSV (default: $BLAZECLASS_DATA_DIR or ./data)");
    cmd->add_option("--lexicon", lexicon,
                    "Hashtag segmentation lexicon TSV (same default)");
  }
};

struct NormalizerOptions {
  bc::NormalizerConfig config;
  bool preprocess = true;

  void attach(CLI::App* cmd) {
    cmd->add_flag("!--no-preprocess", preprocess,
                  "Feed raw whitespace tokens, skipping normalization");
    cmd->add_flag("!--no-lowercase", config.lowercase, "Keep letter case");
    cmd->add_option("--mention-token", config.mention_token,
                    "Replacement for @-mention runs");
    cmd->add_option("--url-token", config.url_token, "Replacement for URLs");
    cmd->add_flag("!--no-demojize", config.demojize,
                  "Keep emoji instead of replacing them with names");
    cmd->add_flag("!--no-segment-hashtags", config.segment_hashtags,
                  "Keep hashtag bodies unsplit");
    cmd->add_flag("!--keep-punct", config.strip_punct, "Keep punctuation");
    cmd->add_flag("!--keep-digits", config.strip_digits, "Keep digits");
  }
};

std::string resolve_data_file(const std::string& flag_value,
                              const std::string& filename) {
  if (!flag_value.empty()) return flag_value;
  if (const char* dir = std::getenv("BLAZECLASS_DATA_DIR")) {
    return std::string(dir) + "/" + filename;
  }
  return "data/" + filename;
}

bool file_exists(const std::string& path) {
  return std::ifstream(path).good();
}

struct Pipeline {
  bc::NormalizerConfig config;
  bc::EmojiTable emoji;
  bc::SegmentLexicon lexicon;
  bool enabled = true;

  static Pipeline make(const DataOptions& data, const NormalizerOptions& norm) {
    Pipeline p;
    p.config = norm.config;
    p.enabled = norm.preprocess;
    if (!p.enabled) return p;
    std::string emoji_path = resolve_data_file(data.emoji_table, "emoji_table.tsv");
    std::string lexicon_path =
        resolve_data_file(data.lexicon, "segment_lexicon.tsv");
    if (file_exists(emoji_path)) {
      p.emoji = bc::EmojiTable::load(emoji_path);
    } else if (!data.emoji_table.empty()) {
      throw std::runtime_error(emoji_path + ": cannot open emoji table");
    } else {
      std::cerr << "warning: emoji table not found at " << emoji_path
                << "; emoji will be dropped\n";
    }
    if (file_exists(lexicon_path)) {
      p.lexicon = bc::SegmentLexicon::load(lexicon_path);
    } else if (!data.lexicon.empty()) {
      throw std::runtime_error(lexicon_path + ": cannot open lexicon");
    } else {
      std::cerr << "warning: segmentation lexicon not found at " << lexicon_path
                << "; hashtags stay unsplit\n";
    }
    return p;
  }

  void apply(bc::Dataset& dataset) const {
    for (bc::Document& doc : dataset) {
      doc.tokens = enabled ? bc::normalize(doc.raw_text, config, emoji, lexicon)
                           : bc::tokenize(doc.raw_text);
    }
  }
};

bc::TaskSchema schema_from_flag(const std::string& task) {
  auto parsed = bc::TaskSchema::parse_task(task);
  if (!parsed) throw UsageError("unknown task \"" + task + "\" (use A, B or C)");
  return bc::TaskSchema::for_task(*parsed);
}

bc::Dataset load_labeled_inputs(const std::vector<std::string>& paths,
                                const bc::TaskSchema& schema) {
  bc::Dataset all;
  for (const std::string& path : paths) {
    bc::Dataset part = bc::load_labeled_file(path, schema);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

void write_manifest(const std::string& output_path, const std::string& command,
                    const json& config, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs, std::uint64_t seed,
                    double duration_seconds) {
  json manifest;
  manifest["subcommand"] = command;
  manifest["config"] = config;
  manifest["inputs"] = inputs;
  manifest["outputs"] = outputs;
  manifest["seed"] = seed;
  manifest["duration_seconds"] = duration_seconds;
  std::string path = output_path + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot write manifest");
  }
  out << manifest.dump(2) << '\n';
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

json blaze_config_json(const bc::BlazeConfig& c) {
  return json{{"dim", c.dim},
              {"lr", c.lr},
              {"epochs", c.epochs},
              {"min_count", c.min_count},
              {"word_ngrams", c.word_ngrams},
              {"minn", c.minn},
              {"maxn", c.maxn},
              {"buckets", c.n_buckets},
              {"early_stopping", c.early_stopping},
              {"patience", c.patience},
              {"workers", c.workers},
              {"seed", c.seed}};
}

// ---------------------------------------------------------------------------
// stats

struct StatsArgs {
  std::vector<std::string> inputs;
  std::string task = "A";
  std::string format = "labeled";
  DataOptions data;
  NormalizerOptions norm;
};

int cmd_stats(const StatsArgs& args) {
  bc::TaskSchema schema = schema_from_flag(args.task);
  bc::Dataset dataset;
  if (args.format == "labeled") {
    dataset = load_labeled_inputs(args.inputs, schema);
  } else if (args.format == "jsonl") {
    for (const std::string& path : args.inputs) {
      bc::Dataset part = bc::load_jsonl(path);
      dataset.insert(dataset.end(), part.begin(), part.end());
    }
  } else {
    throw UsageError("unknown --format (use labeled or jsonl)");
  }
  Pipeline::make(args.data, args.norm).apply(dataset);
  bc::CorpusStats stats = bc::stats(dataset, schema);

  std::cout << "documents " << stats.n_docs << "\n";
  std::uint64_t labeled = 0;
  for (const auto& [name, count] : stats.class_counts) labeled += count;
  if (labeled > 0) {
    std::cout << "class counts\n";
    char buf[96];
    for (const std::string& name : schema.classes) {
      auto it = stats.class_counts.find(name);
      std::uint64_t count = it == stats.class_counts.end() ? 0 : it->second;
      std::snprintf(buf, sizeof(buf), "  %-4s %10llu  %5.1f%%\n", name.c_str(),
                    static_cast<unsigned long long>(count),
                    100.0 * static_cast<double>(count) /
                        static_cast<double>(labeled));
      std::cout << buf;
    }
  }
  if (stats.n_docs > 0) {
    std::vector<std::uint64_t> lengths;
    lengths.reserve(stats.n_docs);
    for (const auto& [len, count] : stats.length_histogram) {
      for (std::uint64_t i = 0; i < count; ++i) lengths.push_back(len);
    }
    auto pick = [&](double q) {
      std::size_t i = static_cast<std::size_t>(q * (lengths.size() - 1));
      return lengths[i];
    };
    std::cout << "length tokens: min " << lengths.front() << "  median "
              << pick(0.5) << "  p95 " << pick(0.95) << "  max "
              << stats.max_len << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::vector<std::string> inputs;
  std::string valid_path;
  std::string task = "A";
  std::string model_kind = "blaze";
  std::string output;
  std::string export_vocab;
  double valid_fraction = 0.99;
  bc::BlazeConfig blaze;
  double l2 = 1e-4;
  std::string features = "tfidf";
  std::uint32_t ngram_max = 1;
  DataOptions data;
  NormalizerOptions norm;
};

int cmd_train(const TrainArgs& args) {
  Stopwatch watch;
  bc::TaskSchema schema = schema_from_flag(args.task);
  bc::Dataset train_set = load_labeled_inputs(args.inputs, schema);
  if (train_set.empty()) {
    throw std::runtime_error("training input is empty");
  }
  Pipeline pipeline = Pipeline::make(args.data, args.norm);
  pipeline.apply(train_set);

  bc::Dataset valid_set;
  if (!args.valid_path.empty()) {
    valid_set = bc::load_labeled_file(args.valid_path, schema);
    pipeline.apply(valid_set);
  } else if (args.blaze.early_stopping && args.model_kind == "blaze") {
    // No validation file: carve one out of the training data.
    std::tie(train_set, valid_set) =
        bc::split(train_set, schema, args.valid_fraction, args.blaze.seed);
  }

  json config = blaze_config_json(args.blaze);
  config["model"] = args.model_kind;
  config["valid_fraction"] = args.valid_fraction;

  if (args.model_kind == "blaze") {
    auto [model, report] = bc::train(train_set, valid_set, schema, args.blaze);
    for (std::size_t e = 0; e < report.epochs.size(); ++e) {
      std::cout << "epoch " << (e + 1) << "  loss "
                << report.epochs[e].train_loss;
      if (report.epochs[e].has_valid) {
        std::cout << "  valid-f1 " << report.epochs[e].valid_macro_f1;
      }
      std::cout << "\n";
    }
    std::cout << "stopped epoch " << report.stopped_epoch;
    if (report.best_epoch > 0) {
      std::cout << ", best epoch " << report.best_epoch << " (macro-F1 "
                << report.epochs[report.best_epoch - 1].valid_macro_f1 << ")";
    }
    std::cout << "\n";
    bc::save_model(model, args.output);
    if (!args.export_vocab.empty()) {
      bc::write_vocab_tsv(model.vocab, args.export_vocab);
    }
  } else if (args.model_kind == "linear") {
    std::vector<std::vector<std::string>> docs;
    std::vector<int> labels;
    for (const bc::Document& doc : train_set) {
      auto cls = bc::label_index(doc, schema);
      if (!cls) {
        throw std::runtime_error("unlabeled document: " + doc.id);
      }
      docs.push_back(doc.tokens);
      labels.push_back(*cls);
    }
    bc::LinearConfig config_lin;
    config_lin.l2 = args.l2;
    config_lin.lr = args.blaze.lr;
    config_lin.epochs = args.blaze.epochs;
    config_lin.seed = args.blaze.seed;
    bc::FeatureKind kind = bc::FeatureKind::TFIDF;
    if (args.features == "bow") kind = bc::FeatureKind::BOW;
    else if (args.features == "onehot") kind = bc::FeatureKind::ONEHOT;
    else if (args.features != "tfidf") {
      throw UsageError("unknown --features (use tfidf, bow or onehot)");
    }
    bc::LinearTextModel model =
        bc::train_linear_text(docs, labels, schema, config_lin, args.ngram_max,
                              kind, args.blaze.min_count);
    bc::save_model(model, args.output);
    if (!args.export_vocab.empty()) {
      bc::write_idf_tsv(model.vocab, model.idf, args.export_vocab);
    }
    config["l2"] = args.l2;
    config["features"] = args.features;
    config["ngram_max"] = args.ngram_max;
  } else {
    throw UsageError("unknown --model (use blaze or linear)");
  }

  std::vector<std::string> inputs = args.inputs;
  if (!args.valid_path.empty()) inputs.push_back(args.valid_path);
  write_manifest(args.output, "train", config, inputs, {args.output},
                 args.blaze.seed, watch.seconds());
  std::cout << "model written to " << args.output << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// predict

struct PredictArgs {
  std::string model_path;
  std::string input;
  std::string output = "-";
  std::size_t k = 1;
  DataOptions data;
  NormalizerOptions norm;
};

int cmd_predict(const PredictArgs& args) {
  Stopwatch watch;
  if (args.k < 1) throw UsageError("--k must be >= 1");
  bc::Dataset dataset = bc::load_jsonl(args.input);
  Pipeline::make(args.data, args.norm).apply(dataset);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (args.output != "-") {
    file.open(args.output, std::ios::binary);
    if (!file) {
      throw std::runtime_error(args.output + ": cannot open file for writing");
    }
    out = &file;
  }

  auto emit = [&](const std::vector<std::pair<std::string, double>>& top) {
    json line;
    line["label"] = top.front().first;
    line["prob"] = top.front().second;
    auto& topk = line["top_k"] = json::array();
    for (const auto& [name, prob] : top) {
      topk.push_back(json::array({name, prob}));
    }
    (*out) << line.dump() << '\n';
  };

  bc::ModelType type = bc::peek_model_type(args.model_path);
  std::size_t k = args.k;
  if (type == bc::ModelType::BLAZE) {
    bc::BlazeModel model = bc::load_blaze_model(args.model_path);
    if (k > model.num_classes()) {
      std::cerr << "warning: k clamped to " << model.num_classes() << "\n";
      k = model.num_classes();
    }
    bc::BlazePredictor predictor(model);
    for (const bc::Document& doc : dataset) {
      emit(predictor.predict_topk(doc.tokens, k));
    }
  } else {
    bc::LinearTextModel model = bc::load_linear_model(args.model_path);
    if (k > model.model.num_classes()) {
      std::cerr << "warning: k clamped to " << model.model.num_classes() << "\n";
      k = model.model.num_classes();
    }
    for (const bc::Document& doc : dataset) {
      auto [best, probs] = bc::predict_linear_text(model, doc.tokens);
      std::vector<int> idx(probs.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (probs[a] != probs[b]) return probs[a] > probs[b];
        return a < b;
      });
      std::vector<std::pair<std::string, double>> top;
      for (std::size_t i = 0; i < k; ++i) {
        top.push_back({model.model.class_names[idx[i]], probs[idx[i]]});
      }
      emit(top);
    }
  }

  if (args.output != "-") {
    write_manifest(args.output, "predict",
                   json{{"k", args.k}, {"model", args.model_path}},
                   {args.input}, {args.output}, 0, watch.seconds());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// test

struct TestArgs {
  std::string model_path;
  std::string input;
  std::string task = "A";
  std::string baseline;
  std::string errors_path;
  std::size_t errors_limit = 50;
  bool as_json = false;
  DataOptions data;
  NormalizerOptions norm;
};

int cmd_test(const TestArgs& args) {
  bc::TaskSchema schema = schema_from_flag(args.task);
  bc::Dataset dataset = bc::load_labeled_file(args.input, schema);
  Pipeline::make(args.data, args.norm).apply(dataset);

  bc::MetricsReport report;
  if (!args.baseline.empty()) {
    report = bc::majority_baseline(dataset, schema, args.baseline);
  } else if (!args.model_path.empty()) {
    bc::Predictor predictor;
    bc::ModelType type = bc::peek_model_type(args.model_path);
    bc::BlazeModel blaze_model;
    bc::LinearTextModel linear_model;
    std::optional<bc::BlazePredictor> fast;
    if (type == bc::ModelType::BLAZE) {
      blaze_model = bc::load_blaze_model(args.model_path);
      fast.emplace(blaze_model);
      predictor = [&](const bc::Document& doc) {
        return fast->predict_index(doc.tokens);
      };
    } else {
      linear_model = bc::load_linear_model(args.model_path);
      predictor = [&](const bc::Document& doc) {
        auto [best, probs] = bc::predict_linear_text(linear_model, doc.tokens);
        return std::make_pair(best, probs[best]);
      };
    }

    std::vector<int> gold, predicted;
    for (const bc::Document& doc : dataset) {
      auto cls = bc::label_index(doc, schema);
      if (!cls) {
        throw std::runtime_error("unlabeled document: " + doc.id);
      }
      gold.push_back(*cls);
      predicted.push_back(predictor(doc).first);
    }
    report = bc::metrics(bc::confusion(gold, predicted, schema));

    if (!args.errors_path.empty()) {
      auto records =
          bc::error_report(predictor, dataset, schema, args.errors_limit);
      bc::write_error_tsv(records, schema, args.errors_path);
      std::cerr << "wrote " << records.size() << " misclassifications to "
                << args.errors_path << "\n";
    }
  } else {
    throw UsageError("need --model or --baseline");
  }

  std::cout << (args.as_json ? report.to_json() + "\n" : report.to_table());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tune

struct TuneArgs {
  std::vector<std::string> inputs;
  std::string valid_path;
  std::string task = "A";
  std::string output;
  std::string trials_log;
  std::size_t budget = 10;
  double valid_fraction = 0.8;
  bc::BlazeConfig base;
  DataOptions data;
  NormalizerOptions norm;
};

int cmd_tune(const TuneArgs& args) {
  Stopwatch watch;
  bc::TaskSchema schema = schema_from_flag(args.task);
  bc::Dataset train_set = load_labeled_inputs(args.inputs, schema);
  Pipeline pipeline = Pipeline::make(args.data, args.norm);
  pipeline.apply(train_set);

  bc::Dataset valid_set;
  if (!args.valid_path.empty()) {
    valid_set = bc::load_labeled_file(args.valid_path, schema);
    pipeline.apply(valid_set);
  } else {
    std::tie(train_set, valid_set) =
        bc::split(train_set, schema, args.valid_fraction, args.base.seed);
  }

  auto [best, trials] =
      bc::tune(train_set, valid_set, schema, args.budget, args.base.seed,
               args.base);

  for (std::size_t t = 0; t < trials.size(); ++t) {
    const bc::TuneTrial& trial = trials[t];
    std::cout << "trial " << t << "  lr " << trial.config.lr << "  dim "
              << trial.config.dim << "  min-count " << trial.config.min_count
              << "  word-ngrams " << trial.config.word_ngrams << "  f1 "
              << trial.valid_macro_f1 << "\n";
  }

  // Best config in the key=value form that `train --config` reads back.
  std::ofstream out(args.output, std::ios::binary);
  if (!out) {
    throw std::runtime_error(args.output + ": cannot open file for writing");
  }
  out << "lr=" << best.lr << "\n"
      << "dim=" << best.dim << "\n"
      << "min-count=" << best.min_count << "\n"
      << "word-ngrams=" << best.word_ngrams << "\n";
  out.close();

  if (!args.trials_log.empty()) {
    std::ofstream log(args.trials_log, std::ios::binary);
    for (const bc::TuneTrial& trial : trials) {
      json j = blaze_config_json(trial.config);
      j["valid_macro_f1"] = trial.valid_macro_f1;
      j["stopped_epoch"] = trial.stopped_epoch;
      log << j.dump() << '\n';
    }
  }

  write_manifest(args.output, "tune", blaze_config_json(args.base),
                 args.inputs, {args.output}, args.base.seed, watch.seconds());
  std::cout << "best config written to " << args.output << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// augment

struct AugmentArgs {
  std::vector<std::string> inputs;
  std::string task = "A";
  std::string mode = "oversample";
  std::string output;
  std::string model_path;
  bc::AugmentConfig config;
  DataOptions data;
  NormalizerOptions norm;
};

int cmd_augment(const AugmentArgs& args) {
  Stopwatch watch;
  bc::TaskSchema schema = schema_from_flag(args.task);
  bc::Dataset dataset = load_labeled_inputs(args.inputs, schema);

  bc::Dataset augmented;
  if (args.mode == "oversample") {
    augmented = bc::oversample(dataset, schema, args.config);
  } else if (args.mode == "substitute") {
    if (args.model_path.empty()) {
      throw UsageError("substitute mode needs --model for the embeddings");
    }
    Pipeline::make(args.data, args.norm).apply(dataset);
    bc::BlazeModel model = bc::load_blaze_model(args.model_path);
    auto shared = std::make_shared<bc::BlazeModel>(std::move(model));
    augmented = bc::WordSubstituter(shared, args.config).apply(dataset, schema);
  } else {
    throw UsageError("unknown --mode (use oversample or substitute)");
  }

  bc::save_labeled_file(augmented, args.output, schema);
  json config{{"mode", args.mode},
              {"target_ratio", args.config.target_ratio},
              {"rate", args.config.substitution_rate},
              {"k", args.config.k_neighbors},
              {"seed", args.config.seed}};
  write_manifest(args.output, "augment", config, args.inputs, {args.output},
                 args.config.seed, watch.seconds());
  std::cout << "wrote " << augmented.size() << " examples to " << args.output
            << "\n";
  return kExitOk;
}

void attach_blaze_flags(CLI::App* cmd, bc::BlazeConfig& config) {
  cmd->add_option("--dim", config.dim, "Embedding width");
  cmd->add_option("--lr", config.lr, "Initial learning rate");
  cmd->add_option("--epochs", config.epochs, "Training epochs");
  cmd->add_option("--min-count", config.min_count, "Vocabulary pruning threshold");
  cmd->add_option("--word-ngrams", config.word_ngrams, "Largest word n-gram");
  cmd->add_option("--minn", config.minn, "Smallest character n-gram");
  cmd->add_option("--maxn", config.maxn, "Largest character n-gram");
  cmd->add_option("--buckets", config.n_buckets, "Hashed n-gram buckets");
  cmd->add_flag("--early-stopping,!--no-early-stopping", config.early_stopping,
                "Stop when validation macro-F1 stops improving");
  cmd->add_option("--patience", config.patience, "Early stopping patience");
  cmd->add_option("--workers", config.workers, "Training threads");
  cmd->add_option("--seed", config.seed, "RNG seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Offensive-language classification toolkit"};
  app.require_subcommand(1);

  StatsArgs stats_args;
  CLI::App* stats_cmd =
      app.add_subcommand("stats", "Class counts and length distribution");
  stats_cmd->add_option("--input", stats_args.inputs, "Input file(s)")
      ->required();
  stats_cmd->add_option("--task", stats_args.task, "Task A, B or C");
  stats_cmd->add_option("--format", stats_args.format, "labeled or jsonl");
  stats_args.data.attach(stats_cmd);
  stats_args.norm.attach(stats_cmd);
  stats_cmd->set_config("--config");

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "Train a classifier");
  train_cmd->add_option("--input", train_args.inputs, "Training file(s)")
      ->required();
  train_cmd->add_option("--valid", train_args.valid_path, "Validation file");
  train_cmd->add_option("--task", train_args.task, "Task A, B or C");
  train_cmd->add_option("--model", train_args.model_kind, "blaze or linear");
  train_cmd->add_option("--output", train_args.output, "Model file to write")
      ->required();
  train_cmd->add_option("--valid-fraction", train_args.valid_fraction,
                        "Train fraction for the internal split");
  train_cmd->add_option("--l2", train_args.l2, "L2 strength (linear model)");
  train_cmd->add_option("--features", train_args.features,
                        "linear features: tfidf, bow or onehot");
  train_cmd->add_option("--ngram-max", train_args.ngram_max,
                        "linear word n-gram range upper bound");
  train_cmd->add_option("--export-vocab", train_args.export_vocab,
                        "Write the fitted vocabulary as TSV");
  attach_blaze_flags(train_cmd, train_args.blaze);
  train_args.data.attach(train_cmd);
  train_args.norm.attach(train_cmd);
  train_cmd->set_config("--config");

  PredictArgs predict_args;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Batch inference over JSON lines");
  predict_cmd->add_option("--model", predict_args.model_path, "Model file")
      ->required();
  predict_cmd->add_option("--input", predict_args.input, "JSONL input")
      ->required();
  predict_cmd->add_option("--output", predict_args.output,
                          "Output path (- for stdout)");
  predict_cmd->add_option("--k", predict_args.k, "Top-k classes to report");
  predict_args.data.attach(predict_cmd);
  predict_args.norm.attach(predict_cmd);
  predict_cmd->set_config("--config");

  TestArgs test_args;
  CLI::App* test_cmd =
      app.add_subcommand("test", "Evaluate a model on labeled data");
  test_cmd->add_option("--model", test_args.model_path, "Model file");
  test_cmd->add_option("--input", test_args.input, "Labeled input")->required();
  test_cmd->add_option("--task", test_args.task, "Task A, B or C");
  test_cmd->add_option("--baseline", test_args.baseline,
                       "Score the constant predictor for this class instead");
  test_cmd->add_option("--errors", test_args.errors_path,
                       "Write misclassification TSV here");
  test_cmd->add_option("--errors-limit", test_args.errors_limit,
                       "Cap on misclassifications reported");
  test_cmd->add_flag("--json", test_args.as_json, "Emit JSON instead of text");
  test_args.data.attach(test_cmd);
  test_args.norm.attach(test_cmd);
  test_cmd->set_config("--config");

  TuneArgs tune_args;
  CLI::App* tune_cmd =
      app.add_subcommand("tune", "Random-search hyperparameter tuning");
  tune_cmd->add_option("--input", tune_args.inputs, "Training file(s)")
      ->required();
  tune_cmd->add_option("--valid", tune_args.valid_path, "Validation file");
  tune_cmd->add_option("--task", tune_args.task, "Task A, B or C");
  tune_cmd->add_option("--output", tune_args.output, "Best-config file")
      ->required();
  tune_cmd->add_option("--trials-log", tune_args.trials_log,
                       "JSONL log of every trial");
  tune_cmd->add_option("--budget", tune_args.budget, "Number of trials");
  tune_cmd->add_option("--valid-fraction", tune_args.valid_fraction,
                       "Train fraction for the internal split");
  attach_blaze_flags(tune_cmd, tune_args.base);
  tune_args.data.attach(tune_cmd);
  tune_args.norm.attach(tune_cmd);
  tune_cmd->set_config("--config");

  AugmentArgs augment_args;
  CLI::App* augment_cmd =
      app.add_subcommand("augment", "Rebalance or paraphrase training data");
  augment_cmd->add_option("--input", augment_args.inputs, "Labeled input(s)")
      ->required();
  augment_cmd->add_option("--task", augment_args.task, "Task A, B or C");
  augment_cmd->add_option("--mode", augment_args.mode,
                          "oversample or substitute");
  augment_cmd->add_option("--output", augment_args.output, "Augmented file")
      ->required();
  augment_cmd->add_option("--model", augment_args.model_path,
                          "Blaze model supplying embeddings (substitute)");
  augment_cmd
      ->add_option("--target-ratio", augment_args.config.target_ratio,
                   "Minority:majority ratio to reach")
      ->check(CLI::PositiveNumber);
  augment_cmd->add_option("--rate", augment_args.config.substitution_rate,
                          "Per-token substitution probability");
  augment_cmd->add_option("--k", augment_args.config.k_neighbors,
                          "Neighbors considered per substitution");
  augment_cmd->add_option("--seed", augment_args.config.seed, "RNG seed");
  augment_args.data.attach(augment_cmd);
  augment_args.norm.attach(augment_cmd);
  augment_cmd->set_config("--config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(stats_cmd)) return cmd_stats(stats_args);
    if (app.got_subcommand(train_cmd)) return cmd_train(train_args);
    if (app.got_subcommand(predict_cmd)) return cmd_predict(predict_args);
    if (app.got_subcommand(test_cmd)) return cmd_test(test_args);
    if (app.got_subcommand(tune_cmd)) return cmd_tune(tune_args);
    if (app.got_subcommand(augment_cmd)) return cmd_augment(augment_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
