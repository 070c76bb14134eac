#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace blazeclass {

struct NormalizerConfig {
  bool lowercase = true;
  std::string mention_token = "user";
  std::string url_token = "url";
  bool demojize = true;
  bool segment_hashtags = true;
  bool strip_punct = true;
  bool strip_digits = true;
};

/// Emoji codepoint sequences mapped to lowercase name words. Lookup is
/// longest-match over codepoint sequences; codepoints that look like emoji
/// but have no entry are dropped.
class EmojiTable {
 public:
  EmojiTable() = default;

  /// Loads a UTF-8 TSV of `<hex codepoints, space separated>\t<name words>`.
  static EmojiTable load(const std::string& path);

  void add(const std::u32string& sequence, const std::string& name);
  /// Longest entry matching a prefix of [it, end); returns match length in
  /// codepoints (0 when none) and writes the name into `name`.
  std::size_t match(const char32_t* begin, std::size_t len,
                    std::string* name) const;

  std::size_t size() const { return table_.size(); }
  std::size_t max_sequence_len() const { return max_len_; }

 private:
  std::map<std::u32string, std::string> table_;
  std::size_t max_len_ = 0;
};

/// Unigram frequency lexicon for hashtag segmentation.
class SegmentLexicon {
 public:
  SegmentLexicon() = default;

  /// Loads a UTF-8 TSV of `<word>\t<count>`.
  static SegmentLexicon load(const std::string& path);

  void add(const std::string& word, std::uint64_t count);
  bool contains(const std::string& word) const;
  std::uint64_t count(const std::string& word) const;
  std::uint64_t total_count() const { return total_; }
  std::size_t size() const { return words_.size(); }
  std::size_t max_word_len() const { return max_word_len_; }

 private:
  std::unordered_map<std::string, std::uint64_t> words_;
  std::uint64_t total_ = 0;
  std::size_t max_word_len_ = 0;
};

/// Replaces every known emoji sequence with its name words padded with
/// single spaces; unknown emoji codepoints are dropped.
std::string demojize(const std::string& text, const EmojiTable& table);

/// Maximum-likelihood segmentation of a lowercased hashtag body. Known
/// words score log(count/total); an out-of-lexicon chunk of length L scores
/// log(1/total) - L. A body that is itself a lexicon word stays unsplit.
std::vector<std::string> segment_hashtag(const std::string& tag_body,
                                         const SegmentLexicon& lexicon);

/// Splits on whitespace runs; never yields empty tokens.
std::vector<std::string> tokenize(const std::string& text);

/// Full normalization pipeline: lowercase, mention-run and URL replacement,
/// demojize, hashtag segmentation, punctuation/digit stripping, whitespace
/// collapse, tokenize.
std::vector<std::string> normalize(const std::string& raw_text,
                                   const NormalizerConfig& config,
                                   const EmojiTable& emoji_table,
                                   const SegmentLexicon& lexicon);

namespace unicode {
/// Decodes UTF-8 into codepoints; invalid bytes decode as U+FFFD.
std::u32string decode_utf8(const std::string& s);
std::string encode_utf8(const std::u32string& s);
/// True for codepoints in the common emoji/symbol blocks.
bool is_emoji_codepoint(char32_t cp);
}  // namespace unicode

}  // namespace blazeclass
