#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "blazeclass/preprocess.hpp"
#include "doctest.h"

using namespace blazeclass;

namespace {

const EmojiTable& emoji_table() {
  static EmojiTable table =
      EmojiTable::load(std::string(BLAZECLASS_DATA_DIR) + "/emoji_table.tsv");
  return table;
}

const SegmentLexicon& lexicon() {
  static SegmentLexicon lex = SegmentLexicon::load(
      std::string(BLAZECLASS_DATA_DIR) + "/segment_lexicon.tsv");
  return lex;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

// Independent oracle: score every segmentation of `body` by brute-force
// enumeration and return the best score.
double best_segmentation_score(const std::string& body,
                               const SegmentLexicon& lex) {
  const std::size_t n = body.size();
  const double log_total = std::log(static_cast<double>(lex.total_count()));
  double best = -1e300;
  // Bit i of mask = cut after position i.
  for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask) {
    double score = 0.0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i) {
      bool cut = i + 1 == n || (mask >> i) & 1;
      if (!cut) continue;
      std::string piece = body.substr(start, i + 1 - start);
      if (lex.contains(piece)) {
        score += std::log(static_cast<double>(lex.count(piece))) - log_total;
      } else {
        score += -log_total - static_cast<double>(piece.size());
      }
      start = i + 1;
    }
    best = std::max(best, score);
  }
  return best;
}

double segmentation_score(const std::vector<std::string>& pieces,
                          const SegmentLexicon& lex) {
  const double log_total = std::log(static_cast<double>(lex.total_count()));
  double score = 0.0;
  for (const std::string& piece : pieces) {
    if (lex.contains(piece)) {
      score += std::log(static_cast<double>(lex.count(piece))) - log_total;
    } else {
      score += -log_total - static_cast<double>(piece.size());
    }
  }
  return score;
}

}  // namespace

TEST_CASE("demojize replaces known emoji with padded names") {
  CHECK(demojize("\U0001F602", emoji_table()) == " face with tears of joy ");
  CHECK(demojize("ok", emoji_table()) == "ok");
  CHECK(demojize("\U0001F44F\U0001F44F", emoji_table()) ==
        " clapping hands  clapping hands ");
}

TEST_CASE("demojize drops unknown emoji and is idempotent") {
  // U+1F004 (mahjong tile) is in the emoji blocks but not in the table.
  CHECK(demojize("a\U0001F004b", emoji_table()) == "ab");
  for (const char* sample :
       {"hello \U0001F602 world", "\U0001F44F", "plain", "a\U0001F004b"}) {
    std::string once = demojize(sample, emoji_table());
    CHECK(demojize(once, emoji_table()) == once);
  }
}

TEST_CASE("demojize longest-match handles multi-codepoint sequences") {
  EmojiTable table;
  table.add(U"❤", "red heart");
  table.add(U"❤️‍\U0001F525", "heart on fire");
  CHECK(demojize("❤️‍\U0001F525", table) == " heart on fire ");
  CHECK(demojize("❤", table) == " red heart ");
}

TEST_CASE("segment_hashtag splits concatenated words") {
  auto pieces = segment_hashtag("constitutionday", lexicon());
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0] == "constitution");
  CHECK(pieces[1] == "day");
}

TEST_CASE("segment_hashtag keeps lexicon words and unknowns unsplit") {
  CHECK(segment_hashtag("maga", lexicon()) == std::vector<std::string>{"maga"});
  CHECK(segment_hashtag("zzqx", lexicon()) == std::vector<std::string>{"zzqx"});
  CHECK(segment_hashtag("", lexicon()).empty());
}

TEST_CASE("segment_hashtag matches the brute-force oracle") {
  std::mt19937_64 rng(11);
  std::vector<std::string> pool = {"stop", "day",  "war",  "vote", "maga",
                                   "the",  "love", "news", "qx",   "zz"};
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> n_pieces(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    std::string body;
    for (int i = 0, n = n_pieces(rng); i < n; ++i) body += pool[pick(rng)];
    if (body.size() > 14) continue;
    auto pieces = segment_hashtag(body, lexicon());
    // Reassembly never invents or loses characters.
    std::string reassembled;
    for (const auto& piece : pieces) reassembled += piece;
    CHECK(reassembled == body);
    if (lexicon().contains(body)) continue;  // whole-word precedence
    CHECK(segmentation_score(pieces, lexicon()) ==
          doctest::Approx(best_segmentation_score(body, lexicon()))
              .epsilon(1e-12));
  }
}

TEST_CASE("tokenize splits on whitespace runs") {
  CHECK(tokenize("a  b") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize(" ").empty());
  CHECK(tokenize("liberals are all kookoo").size() == 4);
}

TEST_CASE("normalize handles the mention-run example") {
  NormalizerConfig config;
  auto tokens = normalize(
      "@USER @USER Dont let politics ruin your family...its just a show full "
      "of liars",
      config, emoji_table(), lexicon());
  std::vector<std::string> expected = {
      "user", "dont", "let",  "politics", "ruin", "your", "family",
      "its",  "just", "a",    "show",     "full", "of",   "liars"};
  CHECK(tokens == expected);
}

TEST_CASE("normalize segments hashtags and masks urls") {
  NormalizerConfig config;
  auto tokens =
      normalize("#StopKavanaugh he is liar like the rest of the #GOP URL",
                config, emoji_table(), lexicon());
  std::vector<std::string> expected = {"stop", "kavanaugh", "he",  "is",
                                       "liar", "like",      "the", "rest",
                                       "of",   "the",       "gop", "url"};
  CHECK(tokens == expected);
}

TEST_CASE("normalize of empty input is empty") {
  CHECK(normalize("", NormalizerConfig{}, emoji_table(), lexicon()).empty());
}

TEST_CASE("normalize on the masked inference listing") {
  NormalizerConfig config;
  auto tokens = normalize(" user  me too are all racist ", config,
                          emoji_table(), lexicon());
  std::vector<std::string> expected = {"user", "me",  "too",
                                       "are",  "all", "racist"};
  CHECK(tokens == expected);
}

TEST_CASE("normalize collapses mention runs to one token") {
  NormalizerConfig config;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> run(1, 5);
  for (int trial = 0; trial < 30; ++trial) {
    std::string text;
    int k = run(rng);
    for (int i = 0; i < k; ++i) text += "@someone" + std::to_string(i) + " ";
    text += "hello";
    auto tokens = normalize(text, config, emoji_table(), lexicon());
    REQUIRE(tokens.size() == 2);
    CHECK(tokens[0] == "user");
    CHECK(tokens[1] == "hello");
  }
}

TEST_CASE("normalize url forms and duplicate collapsing") {
  NormalizerConfig config;
  auto norm = [&](const std::string& s) {
    return normalize(s, config, emoji_table(), lexicon());
  };
  CHECK(norm("see http://t.co/x now") ==
        std::vector<std::string>{"see", "url", "now"});
  CHECK(norm("see https://a.b/c?d=1 now") ==
        std::vector<std::string>{"see", "url", "now"});
  CHECK(norm("see www.example.com now") ==
        std::vector<std::string>{"see", "url", "now"});
  CHECK(norm("URL URL") == std::vector<std::string>{"url"});
  CHECK(norm("link HTTP") == std::vector<std::string>{"link", "url"});
}

TEST_CASE("normalize strips digits and punctuation per config") {
  NormalizerConfig config;
  auto tokens = normalize("It's 2020, really?!", config, emoji_table(), lexicon());
  CHECK(tokens == std::vector<std::string>{"it", "s", "really"});

  config.strip_digits = false;
  tokens = normalize("It's 2020, really?!", config, emoji_table(), lexicon());
  CHECK(tokens == std::vector<std::string>{"it", "s", "2020", "really"});
}

TEST_CASE("normalize output alphabet and idempotence") {
  NormalizerConfig config;
  std::vector<std::string> samples = {
      "@USER @USER Dont let politics ruin your family...its just a show",
      "#StopKavanaugh he is liar like the rest of the #GOP URL",
      "#BiggBossTamil janani won the task \U0001F44F\U0001F44F\U0001F44F",
      "RT @a: check www.foo.com NOW!!! \U0001F602",
      "#MAGA #maga2020 100% @trump",
      "",
      "   ",
      "plain words only",
  };
  for (const std::string& sample : samples) {
    auto tokens = normalize(sample, config, emoji_table(), lexicon());
    for (const std::string& token : tokens) {
      CHECK_FALSE(token.empty());
      for (char c : token) {
        bool lower = c >= 'a' && c <= 'z';
        CHECK(lower);
      }
    }
    auto again = normalize(join(tokens), config, emoji_table(), lexicon());
    CHECK(again == tokens);
  }
}

TEST_CASE("normalize idempotence on random mention/hashtag/emoji soup") {
  NormalizerConfig config;
  std::mt19937_64 rng(17);
  std::vector<std::string> parts = {"@USER",   "#ConstitutionDay",
                                    "\U0001F602", "hello",
                                    "URL",     "www.x.com",
                                    "so2me9",  "!!!",
                                    "#GOP",    "@a @b"};
  std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
  std::uniform_int_distribution<int> len(1, 8);
  for (int trial = 0; trial < 100; ++trial) {
    std::string text;
    for (int i = 0, n = len(rng); i < n; ++i) {
      text += parts[pick(rng)];
      text += ' ';
    }
    auto tokens = normalize(text, config, emoji_table(), lexicon());
    CHECK(normalize(join(tokens), config, emoji_table(), lexicon()) == tokens);
  }
}

TEST_CASE("segment lexicon table invariants") {
  CHECK(lexicon().size() > 3000);
  CHECK(lexicon().contains("the"));
  std::uint64_t total = lexicon().total_count();
  CHECK(total > 0);
  CHECK(lexicon().count("the") >= lexicon().count("kavanaugh"));
}

TEST_CASE("emoji table names are lowercase words") {
  EmojiTable table;
  CHECK_THROWS(table.add(U"", "name"));
}
