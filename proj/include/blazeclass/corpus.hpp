#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blazeclass {

enum class Task { A, B, C };

enum class LabelA { NOT, OFF };
enum class LabelB { TIN, UNT };
enum class LabelC { GRP, IND, OTH };

/// One tweet/text record. Labels follow the three-level hierarchy:
/// label_b is only meaningful when label_a == OFF, label_c only when
/// label_b == TIN.
struct Document {
  std::string id;
  std::string raw_text;
  std::vector<std::string> tokens;  // empty until preprocessed
  std::optional<LabelA> label_a;
  std::optional<LabelB> label_b;
  std::optional<LabelC> label_c;
  std::optional<double> prob_a;
  bool duplicate = false;  // set on copies produced by oversampling
};

using Dataset = std::vector<Document>;

/// Class inventory for one annotation level. Class order is alphabetical
/// and fixed so that class indices are stable everywhere.
struct TaskSchema {
  Task task;
  std::vector<std::string> classes;

  static TaskSchema for_task(Task task);
  static std::optional<Task> parse_task(const std::string& name);

  std::size_t num_classes() const { return classes.size(); }
  /// Index of `name` in `classes`, or -1 when unknown.
  int class_index(const std::string& name) const;
};

/// Label of `doc` at the schema's level as a class index, if present.
std::optional<int> label_index(const Document& doc, const TaskSchema& schema);

/// Sets the schema-level label on `doc` (Task A also clears prob_a ties).
void set_label(Document& doc, const TaskSchema& schema, int class_idx);

struct CorpusStats {
  std::uint64_t n_docs = 0;
  std::map<std::string, std::uint64_t> class_counts;
  std::map<std::uint64_t, std::uint64_t> length_histogram;
  std::uint64_t max_len = 0;
};

/// Reads a `__label__<tag> <text>` training file. Task A accepts the
/// numeric tags "0"/"1" as well as the class names.
Dataset load_labeled_file(const std::string& path, const TaskSchema& schema);

/// Writes documents back in the training-file format (LF line endings).
/// With numeric_tags, Task A labels are written as 0/1.
void save_labeled_file(const Dataset& dataset, const std::string& path,
                       const TaskSchema& schema, bool numeric_tags = false);

/// Reads a JSON-lines inference file; each object must carry "source".
Dataset load_jsonl(const std::string& path);

/// Maps a label probability to OFF/NOT. Ties at the threshold go to OFF.
LabelA assign_label(double prob_a, double threshold);

/// Deterministic class-stratified split. Train gets floor(n * fraction)
/// documents overall; per-class quotas follow largest remainders.
std::pair<Dataset, Dataset> split(const Dataset& dataset,
                                  const TaskSchema& schema,
                                  double train_fraction, std::uint64_t seed);

/// K held-out folds built on the same stratified shuffling as split().
std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& dataset,
                                               const TaskSchema& schema,
                                               std::size_t k = 5,
                                               std::uint64_t seed = 0);

/// Class counts and token-length histogram. Uses preprocessed tokens when
/// present, whitespace tokens of raw_text otherwise.
CorpusStats stats(const Dataset& dataset, const TaskSchema& schema);

}  // namespace blazeclass
