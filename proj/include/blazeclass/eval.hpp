#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "blazeclass/corpus.hpp"

namespace blazeclass {

/// Per-class tallies; counts[gold][predicted].
struct ConfusionMatrix {
  std::vector<std::string> class_names;
  std::vector<std::vector<std::uint64_t>> counts;

  std::uint64_t total() const;
};

struct MetricsReport {
  double accuracy = 0.0;
  std::vector<std::string> class_names;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  double macro_f1 = 0.0;

  std::string to_table() const;
  std::string to_json() const;
};

ConfusionMatrix confusion(const std::vector<int>& gold,
                          const std::vector<int>& predicted,
                          const TaskSchema& schema);

/// Accuracy, per-class P/R/F1 and macro-F1. 0/0 ratios resolve to 0, which
/// is what makes degenerate constant-predictor rows well defined.
MetricsReport metrics(const ConfusionMatrix& cm);

/// Metrics of the constant predictor that always answers `class_name`.
MetricsReport majority_baseline(const Dataset& dataset,
                                const TaskSchema& schema,
                                const std::string& class_name);

struct ErrorRecord {
  Document document;
  int gold = 0;
  int predicted = 0;
  double probability = 0.0;  // confidence in the (wrong) predicted class
};

/// Prediction callback: class index and its probability for one document.
using Predictor = std::function<std::pair<int, double>(const Document&)>;

/// Up to n misclassified documents, most confidently wrong first.
std::vector<ErrorRecord> error_report(const Predictor& predict,
                                      const Dataset& dataset,
                                      const TaskSchema& schema, std::size_t n);

/// TSV export of an error report: text, gold, predicted, prob.
void write_error_tsv(const std::vector<ErrorRecord>& records,
                     const TaskSchema& schema, const std::string& path);

}  // namespace blazeclass
