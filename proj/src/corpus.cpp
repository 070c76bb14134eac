#include "blazeclass/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "blazeclass/errors.hpp"
#include "json.hpp"

namespace blazeclass {

namespace {

const std::string kLabelPrefix = "__label__";

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string basename_of(const std::string& path) {
  std::size_t pos = path.find_last_of("/\\");
  return pos == std::string::npos ? path : path.substr(pos + 1);
}

std::size_t whitespace_token_count(const std::string& text) {
  std::size_t n = 0;
  bool in_token = false;
  for (char c : text) {
    bool ws = c == ' ' || c == '\t' || c == '\r' || c == '\n';
    if (!ws && !in_token) ++n;
    in_token = !ws;
  }
  return n;
}

}  // namespace

TaskSchema TaskSchema::for_task(Task task) {
  switch (task) {
    case Task::A:
      return {Task::A, {"NOT", "OFF"}};
    case Task::B:
      return {Task::B, {"TIN", "UNT"}};
    case Task::C:
      return {Task::C, {"GRP", "IND", "OTH"}};
  }
  throw std::invalid_argument("unknown task");
}

std::optional<Task> TaskSchema::parse_task(const std::string& name) {
  if (name == "A" || name == "a") return Task::A;
  if (name == "B" || name == "b") return Task::B;
  if (name == "C" || name == "c") return Task::C;
  return std::nullopt;
}

int TaskSchema::class_index(const std::string& name) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::optional<int> label_index(const Document& doc, const TaskSchema& schema) {
  switch (schema.task) {
    case Task::A:
      if (doc.label_a) return static_cast<int>(*doc.label_a);
      break;
    case Task::B:
      if (doc.label_b) return static_cast<int>(*doc.label_b);
      break;
    case Task::C:
      if (doc.label_c) return static_cast<int>(*doc.label_c);
      break;
  }
  return std::nullopt;
}

void set_label(Document& doc, const TaskSchema& schema, int class_idx) {
  if (class_idx < 0 || class_idx >= static_cast<int>(schema.num_classes())) {
    throw std::invalid_argument("class index out of range");
  }
  switch (schema.task) {
    case Task::A:
      doc.label_a = static_cast<LabelA>(class_idx);
      break;
    case Task::B:
      doc.label_b = static_cast<LabelB>(class_idx);
      doc.label_a = LabelA::OFF;
      break;
    case Task::C:
      doc.label_c = static_cast<LabelC>(class_idx);
      doc.label_b = LabelB::TIN;
      doc.label_a = LabelA::OFF;
      break;
  }
}

namespace {

// Tag synonyms. Task A additionally accepts the numeric tags that appear in
// the OLID-era training files ("0" = NOT, "1" = OFF).
int tag_to_class(const std::string& tag, const TaskSchema& schema) {
  if (schema.task == Task::A) {
    if (tag == "0") return 0;
    if (tag == "1") return 1;
  }
  return schema.class_index(tag);
}

}  // namespace

Dataset load_labeled_file(const std::string& path, const TaskSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open file");
  }
  Dataset out;
  std::string line;
  std::size_t line_no = 0;
  const std::string base = basename_of(path);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (line.rfind(kLabelPrefix, 0) != 0) {
      throw ParseError(path, line_no, "line does not start with __label__");
    }
    std::size_t tag_begin = kLabelPrefix.size();
    std::size_t tag_end = line.find_first_of(" \t", tag_begin);
    std::string tag = line.substr(
        tag_begin,
        tag_end == std::string::npos ? std::string::npos : tag_end - tag_begin);
    if (tag.empty()) {
      throw ParseError(path, line_no, "empty label tag");
    }
    int cls = tag_to_class(tag, schema);
    if (cls < 0) {
      throw ParseError(path, line_no, "unknown label tag \"" + tag + "\"");
    }
    Document doc;
    doc.id = base + ":" + std::to_string(line_no);
    doc.raw_text =
        tag_end == std::string::npos ? "" : trim(line.substr(tag_end + 1));
    set_label(doc, schema, cls);
    out.push_back(std::move(doc));
  }
  return out;
}

void save_labeled_file(const Dataset& dataset, const std::string& path,
                       const TaskSchema& schema, bool numeric_tags) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error(path + ": cannot open file for writing");
  }
  for (const Document& doc : dataset) {
    std::optional<int> cls = label_index(doc, schema);
    if (!cls) {
      throw std::invalid_argument("document " + doc.id +
                                  " has no label for the requested task");
    }
    std::string tag = schema.classes[*cls];
    if (numeric_tags && schema.task == Task::A) {
      tag = std::to_string(*cls);
    }
    out << kLabelPrefix << tag << ' ' << doc.raw_text << '\n';
  }
}

Dataset load_jsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open file");
  }
  Dataset out;
  std::string line;
  std::size_t line_no = 0;
  const std::string base = basename_of(path);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(path, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object() || !obj.contains("source")) {
      throw ParseError(path, line_no, "missing \"source\" key");
    }
    if (!obj["source"].is_string()) {
      throw ParseError(path, line_no, "\"source\" is not a string");
    }
    Document doc;
    doc.id = base + ":" + std::to_string(line_no);
    doc.raw_text = obj["source"].get<std::string>();
    out.push_back(std::move(doc));
  }
  return out;
}

LabelA assign_label(double prob_a, double threshold) {
  if (!(prob_a >= 0.0 && prob_a <= 1.0)) {
    throw std::invalid_argument("prob_a outside [0,1]");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("threshold outside [0,1]");
  }
  return prob_a >= threshold ? LabelA::OFF : LabelA::NOT;
}

namespace {

// Documents grouped by class index; unlabeled documents form a trailing
// stratum so that split() and kfold() stay total over partially labeled data.
std::vector<std::vector<std::size_t>> strata_of(const Dataset& dataset,
                                                const TaskSchema& schema) {
  std::vector<std::vector<std::size_t>> strata(schema.num_classes() + 1);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    std::optional<int> cls = label_index(dataset[i], schema);
    strata[cls ? static_cast<std::size_t>(*cls) : schema.num_classes()]
        .push_back(i);
  }
  return strata;
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& dataset,
                                  const TaskSchema& schema,
                                  double train_fraction, std::uint64_t seed) {
  if (dataset.empty()) {
    throw std::invalid_argument("cannot split an empty dataset");
  }
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction outside (0,1)");
  }

  std::mt19937_64 rng(seed);
  auto strata = strata_of(dataset, schema);
  for (auto& stratum : strata) {
    std::shuffle(stratum.begin(), stratum.end(), rng);
  }

  const std::size_t n = dataset.size();
  const std::size_t train_total =
      static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction));

  // Per-stratum quotas: floor first, then hand out the shortfall by largest
  // fractional remainder (ties to the lower stratum index).
  std::vector<std::size_t> quota(strata.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    double exact = static_cast<double>(strata[s].size()) * train_fraction;
    quota[s] = static_cast<std::size_t>(std::floor(exact));
    assigned += quota[s];
    remainders.push_back({exact - std::floor(exact), s});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::size_t shortfall = train_total - assigned;
  for (std::size_t i = 0; i < remainders.size() && shortfall > 0; ++i) {
    std::size_t s = remainders[i].second;
    if (quota[s] < strata[s].size()) {
      ++quota[s];
      --shortfall;
    }
  }

  Dataset train, valid;
  train.reserve(train_total);
  valid.reserve(n - train_total);
  for (std::size_t s = 0; s < strata.size(); ++s) {
    for (std::size_t i = 0; i < strata[s].size(); ++i) {
      (i < quota[s] ? train : valid).push_back(dataset[strata[s][i]]);
    }
  }
  return {std::move(train), std::move(valid)};
}

std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& dataset,
                                               const TaskSchema& schema,
                                               std::size_t k,
                                               std::uint64_t seed) {
  if (k < 2) {
    throw std::invalid_argument("kfold requires k >= 2");
  }
  if (dataset.size() < k) {
    throw std::invalid_argument("kfold requires at least k documents");
  }

  std::mt19937_64 rng(seed);
  auto strata = strata_of(dataset, schema);
  std::vector<std::size_t> fold_of(dataset.size(), 0);
  std::size_t deal = 0;
  for (auto& stratum : strata) {
    std::shuffle(stratum.begin(), stratum.end(), rng);
    for (std::size_t idx : stratum) {
      fold_of[idx] = deal++ % k;
    }
  }

  std::vector<std::pair<Dataset, Dataset>> folds(k);
  for (std::size_t f = 0; f < k; ++f) {
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      (fold_of[i] == f ? folds[f].second : folds[f].first)
          .push_back(dataset[i]);
    }
  }
  return folds;
}

CorpusStats stats(const Dataset& dataset, const TaskSchema& schema) {
  CorpusStats out;
  out.n_docs = dataset.size();
  for (const Document& doc : dataset) {
    std::optional<int> cls = label_index(doc, schema);
    if (cls) {
      ++out.class_counts[schema.classes[static_cast<std::size_t>(*cls)]];
    }
    std::uint64_t len = doc.tokens.empty()
                            ? whitespace_token_count(doc.raw_text)
                            : doc.tokens.size();
    ++out.length_histogram[len];
    out.max_len = std::max(out.max_len, len);
  }
  return out;
}

}  // namespace blazeclass
