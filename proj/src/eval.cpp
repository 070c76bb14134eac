#include "blazeclass/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace blazeclass {

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts) {
    for (std::uint64_t c : row) t += c;
  }
  return t;
}

ConfusionMatrix confusion(const std::vector<int>& gold,
                          const std::vector<int>& predicted,
                          const TaskSchema& schema) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("gold/predicted length mismatch");
  }
  const int k = static_cast<int>(schema.num_classes());
  ConfusionMatrix cm;
  cm.class_names = schema.classes;
  cm.counts.assign(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] < 0 || gold[i] >= k || predicted[i] < 0 || predicted[i] >= k) {
      throw std::invalid_argument("label outside schema at pair " +
                                  std::to_string(i));
    }
    ++cm.counts[gold[i]][predicted[i]];
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  const std::size_t k = cm.class_names.size();
  const std::uint64_t total = cm.total();
  if (total == 0) {
    throw std::invalid_argument("empty confusion matrix");
  }

  MetricsReport report;
  report.class_names = cm.class_names;
  report.precision.resize(k);
  report.recall.resize(k);
  report.f1.resize(k);

  std::uint64_t diag = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::uint64_t tp = cm.counts[c][c];
    std::uint64_t fp = 0, fn = 0;
    for (std::size_t o = 0; o < k; ++o) {
      if (o == c) continue;
      fp += cm.counts[o][c];
      fn += cm.counts[c][o];
    }
    diag += tp;
    double p = (tp + fp) == 0 ? 0.0
                              : static_cast<double>(tp) /
                                    static_cast<double>(tp + fp);
    double r = (tp + fn) == 0 ? 0.0
                              : static_cast<double>(tp) /
                                    static_cast<double>(tp + fn);
    report.precision[c] = p;
    report.recall[c] = r;
    report.f1[c] = (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
    report.macro_f1 += report.f1[c];
  }
  report.macro_f1 /= static_cast<double>(k);
  report.accuracy = static_cast<double>(diag) / static_cast<double>(total);
  return report;
}

MetricsReport majority_baseline(const Dataset& dataset,
                                const TaskSchema& schema,
                                const std::string& class_name) {
  int constant = schema.class_index(class_name);
  if (constant < 0) {
    throw std::invalid_argument("unknown class \"" + class_name + "\"");
  }
  std::vector<int> gold;
  gold.reserve(dataset.size());
  for (const Document& doc : dataset) {
    std::optional<int> cls = label_index(doc, schema);
    if (cls) gold.push_back(*cls);
  }
  if (gold.empty()) {
    throw std::invalid_argument("dataset carries no labels for this task");
  }
  std::vector<int> predicted(gold.size(), constant);
  return metrics(confusion(gold, predicted, schema));
}

std::vector<ErrorRecord> error_report(const Predictor& predict,
                                      const Dataset& dataset,
                                      const TaskSchema& schema, std::size_t n) {
  std::vector<ErrorRecord> wrong;
  for (const Document& doc : dataset) {
    std::optional<int> cls = label_index(doc, schema);
    if (!cls) continue;
    auto [pred, prob] = predict(doc);
    if (pred != *cls) {
      wrong.push_back({doc, *cls, pred, prob});
    }
  }
  std::stable_sort(wrong.begin(), wrong.end(),
                   [](const ErrorRecord& a, const ErrorRecord& b) {
                     return a.probability > b.probability;
                   });
  if (wrong.size() > n) wrong.resize(n);
  return wrong;
}

void write_error_tsv(const std::vector<ErrorRecord>& records,
                     const TaskSchema& schema, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  out << "text\tgold\tpredicted\tprob\n";
  char buf[32];
  for (const ErrorRecord& rec : records) {
    std::snprintf(buf, sizeof(buf), "%.6f", rec.probability);
    out << rec.document.raw_text << '\t' << schema.classes[rec.gold] << '\t'
        << schema.classes[rec.predicted] << '\t' << buf << '\n';
  }
}

std::string MetricsReport::to_table() const {
  std::ostringstream out;
  char buf[64];
  out << "class        precision   recall       f1\n";
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    std::snprintf(buf, sizeof(buf), "%-12s %9.4f %8.4f %8.4f\n",
                  class_names[c].c_str(), precision[c], recall[c], f1[c]);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "accuracy %.4f\nmacro-F1 %.4f\n", accuracy,
                macro_f1);
  out << buf;
  return out.str();
}

std::string MetricsReport::to_json() const {
  nlohmann::json j;
  j["accuracy"] = accuracy;
  j["macro_f1"] = macro_f1;
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    j["classes"][class_names[c]] = {
        {"precision", precision[c]}, {"recall", recall[c]}, {"f1", f1[c]}};
  }
  return j.dump(2);
}

}  // namespace blazeclass
