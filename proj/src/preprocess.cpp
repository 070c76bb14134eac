#include "blazeclass/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "blazeclass/errors.hpp"

namespace blazeclass {

namespace unicode {

std::u32string decode_utf8(const std::string& s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const auto* bytes = reinterpret_cast<const unsigned char*>(s.data());
  while (i < s.size()) {
    unsigned char b = bytes[i];
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b < 0x80) {
      cp = b;
    } else if ((b & 0xE0) == 0xC0 && i + 1 < s.size() &&
               (bytes[i + 1] & 0xC0) == 0x80) {
      cp = ((b & 0x1F) << 6) | (bytes[i + 1] & 0x3F);
      len = 2;
    } else if ((b & 0xF0) == 0xE0 && i + 2 < s.size() &&
               (bytes[i + 1] & 0xC0) == 0x80 && (bytes[i + 2] & 0xC0) == 0x80) {
      cp = ((b & 0x0F) << 12) | ((bytes[i + 1] & 0x3F) << 6) |
           (bytes[i + 2] & 0x3F);
      len = 3;
    } else if ((b & 0xF8) == 0xF0 && i + 3 < s.size() &&
               (bytes[i + 1] & 0xC0) == 0x80 && (bytes[i + 2] & 0xC0) == 0x80 &&
               (bytes[i + 3] & 0xC0) == 0x80) {
      cp = ((b & 0x07) << 18) | ((bytes[i + 1] & 0x3F) << 12) |
           ((bytes[i + 2] & 0x3F) << 6) | (bytes[i + 3] & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(const std::u32string& s) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

bool is_emoji_codepoint(char32_t cp) {
  return (cp >= 0x1F000 && cp <= 0x1FAFF) ||  // emoji & pictograph planes
         (cp >= 0x2600 && cp <= 0x27BF) ||    // misc symbols, dingbats
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // misc symbols and arrows
         (cp >= 0x1F1E6 && cp <= 0x1F1FF) ||  // regional indicators
         cp == 0x200D || cp == 0xFE0F ||      // ZWJ, variation selector
         cp == 0x2764 || cp == 0x263A || cp == 0x2639;
}

}  // namespace unicode

// --- EmojiTable -------------------------------------------------------------

void EmojiTable::add(const std::u32string& sequence, const std::string& name) {
  if (sequence.empty()) {
    throw std::invalid_argument("empty emoji sequence");
  }
  table_[sequence] = name;
  max_len_ = std::max(max_len_, sequence.size());
}

std::size_t EmojiTable::match(const char32_t* begin, std::size_t len,
                              std::string* name) const {
  std::size_t try_len = std::min(len, max_len_);
  for (std::size_t l = try_len; l >= 1; --l) {
    auto it = table_.find(std::u32string(begin, begin + l));
    if (it != table_.end()) {
      if (name) *name = it->second;
      return l;
    }
  }
  return 0;
}

EmojiTable EmojiTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open emoji table");
  }
  EmojiTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path, line_no, "expected <codepoints>\\t<name>");
    }
    std::u32string seq;
    std::istringstream codes(line.substr(0, tab));
    std::string hex;
    while (codes >> hex) {
      seq.push_back(static_cast<char32_t>(std::stoul(hex, nullptr, 16)));
    }
    std::string name = line.substr(tab + 1);
    while (!name.empty() && (name.back() == '\r' || name.back() == ' ')) {
      name.pop_back();
    }
    if (seq.empty() || name.empty()) {
      throw ParseError(path, line_no, "empty codepoint sequence or name");
    }
    table.add(seq, name);
  }
  return table;
}

// --- SegmentLexicon ---------------------------------------------------------

void SegmentLexicon::add(const std::string& word, std::uint64_t count) {
  if (word.empty() || count == 0) {
    throw std::invalid_argument("lexicon entries need a word and count >= 1");
  }
  auto [it, inserted] = words_.try_emplace(word, count);
  if (!inserted) {
    total_ -= it->second;
    it->second = count;
  }
  total_ += count;
  max_word_len_ = std::max(max_word_len_, word.size());
}

bool SegmentLexicon::contains(const std::string& word) const {
  return words_.count(word) > 0;
}

std::uint64_t SegmentLexicon::count(const std::string& word) const {
  auto it = words_.find(word);
  return it == words_.end() ? 0 : it->second;
}

SegmentLexicon SegmentLexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error(path + ": cannot open segmentation lexicon");
  }
  SegmentLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path, line_no, "expected <word>\\t<count>");
    }
    std::string word = line.substr(0, tab);
    std::uint64_t count = 0;
    try {
      count = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw ParseError(path, line_no, "count is not a number");
    }
    if (count == 0) {
      throw ParseError(path, line_no, "count must be >= 1");
    }
    lex.add(word, count);
  }
  return lex;
}

// --- demojize ---------------------------------------------------------------

std::string demojize(const std::string& text, const EmojiTable& table) {
  std::u32string cps = unicode::decode_utf8(text);
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    std::string name;
    std::size_t matched =
        table.size() ? table.match(cps.data() + i, cps.size() - i, &name) : 0;
    if (matched > 0) {
      out += ' ';
      out += name;
      out += ' ';
      i += matched;
    } else if (unicode::is_emoji_codepoint(cps[i])) {
      ++i;  // unknown emoji: drop
    } else {
      out += unicode::encode_utf8(std::u32string(1, cps[i]));
      ++i;
    }
  }
  return out;
}

// --- segment_hashtag --------------------------------------------------------

std::vector<std::string> segment_hashtag(const std::string& tag_body,
                                         const SegmentLexicon& lexicon) {
  if (tag_body.empty()) return {};
  if (lexicon.contains(tag_body)) return {tag_body};

  const std::size_t n = tag_body.size();
  const double log_total = std::log(
      static_cast<double>(std::max<std::uint64_t>(lexicon.total_count(), 1)));
  // Unknown chunk of length L: log(1/total) - L.
  auto unknown_score = [&](std::size_t len) {
    return -log_total - static_cast<double>(len);
  };

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  std::vector<double> best(n + 1, kNegInf);
  std::vector<std::size_t> back(n + 1, 0);
  best[0] = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (best[i] == kNegInf) continue;
      std::string piece = tag_body.substr(i, j - i);
      double score;
      std::uint64_t c = lexicon.count(piece);
      if (c > 0) {
        score = std::log(static_cast<double>(c)) - log_total;
      } else {
        score = unknown_score(j - i);
      }
      if (best[i] + score > best[j]) {
        best[j] = best[i] + score;
        back[j] = i;
      }
    }
  }

  std::vector<std::string> pieces;
  for (std::size_t j = n; j > 0; j = back[j]) {
    pieces.push_back(tag_body.substr(back[j], j - back[j]));
  }
  std::reverse(pieces.begin(), pieces.end());
  return pieces;
}

// --- tokenize & normalize ---------------------------------------------------

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool is_mention(const std::string& tok) {
  return tok.size() >= 2 && tok[0] == '@';
}

bool looks_like_url(const std::string& tok) {
  if (tok == "url" || tok == "http") return true;  // already-masked data
  if (tok.rfind("www.", 0) == 0) return true;
  std::size_t colon = tok.find("://");
  if (colon != std::string::npos && colon > 0) {
    for (std::size_t i = 0; i < colon; ++i) {
      char c = tok[i];
      bool scheme_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                         (c >= '0' && c <= '9') || c == '+' || c == '-' ||
                         c == '.';
      if (!scheme_char) return false;
    }
    return true;
  }
  return false;
}

void ascii_lowercase(std::string& s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
}

}  // namespace

std::vector<std::string> normalize(const std::string& raw_text,
                                   const NormalizerConfig& config,
                                   const EmojiTable& emoji_table,
                                   const SegmentLexicon& lexicon) {
  std::string text = raw_text;
  if (config.lowercase) ascii_lowercase(text);
  if (config.demojize) text = demojize(text, emoji_table);

  std::vector<std::string> words;
  bool prev_mention = false;
  for (std::string& tok : tokenize(text)) {
    if (is_mention(tok)) {
      // A run of mentions collapses to one token.
      if (!prev_mention) words.push_back(config.mention_token);
      prev_mention = true;
      continue;
    }
    prev_mention = false;
    if (looks_like_url(tok)) {
      words.push_back(config.url_token);
      continue;
    }
    if (config.segment_hashtags && tok[0] == '#') {
      std::size_t body_start = tok.find_first_not_of('#');
      if (body_start == std::string::npos) continue;
      // Segment each alphanumeric chunk of the body separately.
      std::string body = tok.substr(body_start);
      std::size_t i = 0;
      while (i < body.size()) {
        while (i < body.size() && !is_word_char(body[i])) ++i;
        std::size_t start = i;
        while (i < body.size() && is_word_char(body[i]) && body[i] != '_') ++i;
        if (i > start) {
          for (std::string& piece :
               segment_hashtag(body.substr(start, i - start), lexicon)) {
            words.push_back(std::move(piece));
          }
        }
        if (i < body.size() && body[i] == '_') ++i;
      }
      continue;
    }
    words.push_back(std::move(tok));
  }

  // Scrub punctuation/digits, then split pieces glued together by removed
  // characters ("family...its" -> "family its").
  std::vector<std::string> tokens;
  for (const std::string& word : words) {
    std::string kept;
    for (char c : word) {
      bool alpha = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
      bool digit = c >= '0' && c <= '9';
      if (alpha || (digit && !config.strip_digits)) {
        kept += c;
      } else if (config.strip_punct || digit) {
        kept += ' ';
      } else {
        kept += c;
      }
    }
    for (std::string& piece : tokenize(kept)) {
      tokens.push_back(std::move(piece));
    }
  }

  // Collapse leftover runs of the mention/url tokens; masked duplicates can
  // surface only after punctuation stripping ("url." "url").
  std::vector<std::string> out;
  for (std::string& tok : tokens) {
    bool dup = !out.empty() && out.back() == tok &&
               (tok == config.mention_token || tok == config.url_token);
    if (!dup) out.push_back(std::move(tok));
  }
  return out;
}

}  // namespace blazeclass
