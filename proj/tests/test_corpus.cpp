#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "blazeclass/corpus.hpp"
#include "blazeclass/errors.hpp"
#include "doctest.h"

using namespace blazeclass;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& content, const char* name) {
    path = std::string("corpus_test_") + name + ".tmp";
    std::ofstream out(path, std::ios::binary);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dataset labeled_dataset(std::size_t n_not, std::size_t n_off) {
  Dataset ds;
  for (std::size_t i = 0; i < n_not + n_off; ++i) {
    Document doc;
    doc.id = "d" + std::to_string(i);
    doc.raw_text = "w" + std::to_string(i % 7);
    doc.label_a = i < n_not ? LabelA::NOT : LabelA::OFF;
    ds.push_back(doc);
  }
  return ds;
}

}  // namespace

TEST_CASE("load_labeled_file parses the training-file listing") {
  TempFile file(
      "__label__0 obama wanted liberals and illegals to move into red states\n"
      "__label__1 liberals are all kookoo\n"
      "__label__0 i'm so fucking ready\n"
      "__label__1 canada doesn need another cuck we already have enough\n",
      "listing");
  Dataset ds = load_labeled_file(file.path, TaskSchema::for_task(Task::A));
  REQUIRE(ds.size() == 4);
  CHECK(ds[0].label_a == LabelA::NOT);
  CHECK(ds[0].raw_text ==
        "obama wanted liberals and illegals to move into red states");
  CHECK(ds[1].label_a == LabelA::OFF);
  CHECK(ds[1].raw_text == "liberals are all kookoo");
  CHECK(ds[2].label_a == LabelA::NOT);
  CHECK(ds[2].raw_text == "i'm so fucking ready");
  CHECK(ds[3].label_a == LabelA::OFF);
  CHECK(ds[3].raw_text == "canada doesn need another cuck we already have enough");
}

TEST_CASE("load_labeled_file accepts class-name tags and skips blank lines") {
  TempFile file("__label__NOT hello there\n\n__label__OFF go away\n", "names");
  Dataset ds = load_labeled_file(file.path, TaskSchema::for_task(Task::A));
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].label_a == LabelA::NOT);
  CHECK(ds[1].label_a == LabelA::OFF);
}

TEST_CASE("load_labeled_file of an empty file is an empty dataset") {
  TempFile file("", "empty");
  CHECK(load_labeled_file(file.path, TaskSchema::for_task(Task::A)).empty());
}

TEST_CASE("load_labeled_file rejects lines without the prefix") {
  TempFile file("__label__0 fine\nnot a labeled line\n", "noprefix");
  try {
    load_labeled_file(file.path, TaskSchema::for_task(Task::A));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("load_labeled_file names unknown tags") {
  TempFile file("__label__MAYBE whatever\n", "badtag");
  try {
    load_labeled_file(file.path, TaskSchema::for_task(Task::A));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("MAYBE") != std::string::npos);
  }
}

TEST_CASE("task B and C tags map to their schemas") {
  TempFile file("__label__TIN insult at someone\n__label__UNT general swearing\n",
                "taskb");
  Dataset ds = load_labeled_file(file.path, TaskSchema::for_task(Task::B));
  REQUIRE(ds.size() == 2);
  CHECK(ds[0].label_b == LabelB::TIN);
  CHECK(ds[0].label_a == LabelA::OFF);  // hierarchy invariant
  CHECK(ds[1].label_b == LabelB::UNT);

  TempFile filec("__label__GRP x\n__label__IND y\n__label__OTH z\n", "taskc");
  Dataset dsc = load_labeled_file(filec.path, TaskSchema::for_task(Task::C));
  REQUIRE(dsc.size() == 3);
  CHECK(dsc[0].label_c == LabelC::GRP);
  CHECK(dsc[0].label_b == LabelB::TIN);
  CHECK(dsc[2].label_c == LabelC::OTH);
}

TEST_CASE("save then load then save is byte-stable") {
  TaskSchema schema = TaskSchema::for_task(Task::A);
  TempFile file("__label__NOT alpha beta\n__label__OFF gamma\n", "roundtrip");
  Dataset ds = load_labeled_file(file.path, schema);
  TempFile out("", "roundtrip_out");
  save_labeled_file(ds, out.path, schema);
  CHECK(read_all(out.path) == read_all(file.path));

  // Numeric tags reproduce the paper-style file.
  TempFile numeric("__label__0 alpha beta\n__label__1 gamma\n", "numeric");
  Dataset ds2 = load_labeled_file(numeric.path, schema);
  TempFile out2("", "numeric_out");
  save_labeled_file(ds2, out2.path, schema, /*numeric_tags=*/true);
  CHECK(read_all(out2.path) == read_all(numeric.path));
}

TEST_CASE("load_jsonl parses the inference listing") {
  TempFile file(
      "{\"source\": \" user  me too are all racist \"}\n"
      "{\"source\": \" liberal logic if  liberals get their way url\"}\n"
      "{\"source\": \" sierra burgess is a loser she is me when my phone dings "
      " face with tears of joy \"}\n",
      "jsonl");
  Dataset ds = load_jsonl(file.path);
  REQUIRE(ds.size() == 3);
  CHECK(ds[0].raw_text == " user  me too are all racist ");
  CHECK(ds[1].raw_text == " liberal logic if  liberals get their way url");
  CHECK(ds[2].raw_text ==
        " sierra burgess is a loser she is me when my phone dings "
        " face with tears of joy ");
  CHECK_FALSE(ds[0].label_a.has_value());
}

TEST_CASE("load_jsonl edge cases") {
  TempFile empty_source("{\"source\": \"\"}\n", "jsonl_empty");
  Dataset ds = load_jsonl(empty_source.path);
  REQUIRE(ds.size() == 1);
  CHECK(ds[0].raw_text.empty());

  TempFile missing("{}\n", "jsonl_missing");
  try {
    load_jsonl(missing.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("source") != std::string::npos);
  }

  TempFile malformed("{\"source\": \"ok\"}\nnot json at all\n", "jsonl_bad");
  try {
    load_jsonl(malformed.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("assign_label thresholding") {
  CHECK(assign_label(0.7, 0.5) == LabelA::OFF);
  CHECK(assign_label(0.5, 0.5) == LabelA::OFF);  // tie goes to OFF
  CHECK(assign_label(0.49, 0.5) == LabelA::NOT);
  CHECK_THROWS_AS(assign_label(1.2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(assign_label(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("assign_label is monotone in prob_a") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    double threshold = unit(rng);
    bool seen_off = false;
    for (double p = 0.0; p <= 1.0; p += 0.01) {
      bool off = assign_label(p, threshold) == LabelA::OFF;
      if (seen_off) CHECK(off);
      seen_off = seen_off || off;
    }
  }
}

TEST_CASE("split reproduces the 80/20 sizes on the 2019-shaped corpus") {
  Dataset ds = labeled_dataset(8840, 4400);
  auto [train, valid] = split(ds, TaskSchema::for_task(Task::A), 0.8, 1);
  CHECK(train.size() == 10592);
  CHECK(valid.size() == 2648);

  // Stratification is exact here: both strata sizes divide evenly.
  std::size_t train_not = 0;
  for (const Document& doc : train) {
    if (doc.label_a == LabelA::NOT) ++train_not;
  }
  CHECK(train_not == 7072);
}

TEST_CASE("split is an exact deterministic partition") {
  Dataset ds = labeled_dataset(23, 14);
  TaskSchema schema = TaskSchema::for_task(Task::A);
  auto [train1, valid1] = split(ds, schema, 0.5, 99);
  auto [train2, valid2] = split(ds, schema, 0.5, 99);
  REQUIRE(train1.size() == train2.size());
  for (std::size_t i = 0; i < train1.size(); ++i) {
    CHECK(train1[i].id == train2[i].id);
  }

  std::set<std::string> ids;
  for (const Document& doc : train1) ids.insert(doc.id);
  for (const Document& doc : valid1) {
    CHECK(ids.count(doc.id) == 0);
    ids.insert(doc.id);
  }
  CHECK(ids.size() == ds.size());
  CHECK(train1.size() + valid1.size() == ds.size());
}

TEST_CASE("split floor semantics and domain errors") {
  Dataset one = labeled_dataset(1, 0);
  auto [train, valid] = split(one, TaskSchema::for_task(Task::A), 0.8, 0);
  CHECK(train.empty());
  CHECK(valid.size() == 1);

  CHECK_THROWS_AS(split({}, TaskSchema::for_task(Task::A), 0.5, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(split(one, TaskSchema::for_task(Task::A), 0.0, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(split(one, TaskSchema::for_task(Task::A), 1.0, 0),
                  std::invalid_argument);
}

TEST_CASE("kfold covers every document exactly once as held-out") {
  Dataset ds = labeled_dataset(31, 19);
  TaskSchema schema = TaskSchema::for_task(Task::A);
  auto folds = kfold(ds, schema, 5, 3);
  REQUIRE(folds.size() == 5);
  std::map<std::string, int> held_out;
  for (const auto& [train, valid] : folds) {
    CHECK(train.size() + valid.size() == ds.size());
    for (const Document& doc : valid) ++held_out[doc.id];
  }
  CHECK(held_out.size() == ds.size());
  for (const auto& [id, times] : held_out) CHECK(times == 1);
}

TEST_CASE("stats reproduces the dataset summary shape") {
  Dataset ds = labeled_dataset(8840, 4400);
  CorpusStats st = stats(ds, TaskSchema::for_task(Task::A));
  CHECK(st.n_docs == 13240);
  CHECK(st.class_counts.at("NOT") == 8840);
  CHECK(st.class_counts.at("OFF") == 4400);
  double pct_not = 100.0 * 8840 / 13240;
  double pct_off = 100.0 * 4400 / 13240;
  CHECK(pct_not == doctest::Approx(66.8).epsilon(0.002));
  CHECK(pct_off == doctest::Approx(33.2).epsilon(0.002));

  std::uint64_t histogram_total = 0;
  for (const auto& [len, count] : st.length_histogram) histogram_total += count;
  CHECK(histogram_total == st.n_docs);
}

TEST_CASE("stats on the task C counts") {
  Dataset ds;
  TaskSchema schema = TaskSchema::for_task(Task::C);
  auto add = [&](int cls, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      Document doc;
      doc.id = schema.classes[cls] + std::to_string(i);
      doc.raw_text = "x";
      set_label(doc, schema, cls);
      ds.push_back(doc);
    }
  };
  add(0, 1074);  // GRP
  add(1, 2407);  // IND
  add(2, 395);   // OTH
  CorpusStats st = stats(ds, schema);
  CHECK(st.class_counts.at("GRP") == 1074);
  CHECK(st.class_counts.at("IND") == 2407);
  CHECK(st.class_counts.at("OTH") == 395);
}

TEST_CASE("stats of an empty dataset is all zeros") {
  CorpusStats st = stats({}, TaskSchema::for_task(Task::A));
  CHECK(st.n_docs == 0);
  CHECK(st.class_counts.empty());
  CHECK(st.length_histogram.empty());
  CHECK(st.max_len == 0);
}
