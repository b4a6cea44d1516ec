#include "finsum/text.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "finsum/builtin_data.hpp"
#include "finsum/errors.hpp"
#include "finsum/porter.hpp"

namespace finsum {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// punctuation detached from chunk ends by tokenize()
bool is_detachable(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case '\'': case '(': case ')':
      return true;
    default:
      return false;
  }
}

Token make_token(std::string surface, const WordList& stopwords) {
  Token t;
  t.lower = to_lower_ascii(surface);
  t.stem = porter_stem(t.lower);
  t.is_stopword = stopwords.contains(t.lower);
  t.surface = std::move(surface);
  return t;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  return out;
}

std::string clean_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
    } else {
      if (pending_space) out.push_back(' ');
      pending_space = false;
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> whitespace_chunks(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && is_space(text[i])) ++i;
    std::size_t b = i;
    while (i < n && !is_space(text[i])) ++i;
    if (i > b) out.emplace_back(text.substr(b, i - b));
  }
  return out;
}

int whitespace_token_count(std::string_view text) {
  int count = 0;
  bool in_chunk = false;
  for (char c : text) {
    if (is_space(c)) {
      in_chunk = false;
    } else if (!in_chunk) {
      in_chunk = true;
      ++count;
    }
  }
  return count;
}

WordList WordList::from_text(std::string_view text) {
  WordList wl;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    wl.words_.emplace(line);
  }
  return wl;
}

WordList WordList::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read word list: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return from_text(ss.str());
}

const WordList& builtin_stopwords() {
  static const WordList wl = WordList::from_text(detail::kStopwordsTxt);
  return wl;
}

const WordList& builtin_abbreviations() {
  static const WordList wl = WordList::from_text(detail::kAbbreviationsTxt);
  return wl;
}

std::vector<Token> tokenize(std::string_view text, const WordList& stopwords) {
  std::vector<Token> out;
  for (std::string& chunk : whitespace_chunks(text)) {
    std::size_t b = 0, e = chunk.size();
    std::size_t lead_end = 0;
    while (b < e && is_detachable(chunk[b])) {
      // ".5" style decimals keep their leading dot
      if (chunk[b] == '.' && b + 1 < e && is_digit(chunk[b + 1])) break;
      ++b;
    }
    lead_end = b;
    while (e > b && is_detachable(chunk[e - 1])) --e;
    for (std::size_t i = 0; i < lead_end; ++i)
      out.push_back(make_token(std::string(1, chunk[i]), stopwords));
    if (e > b) out.push_back(make_token(chunk.substr(b, e - b), stopwords));
    for (std::size_t i = e; i < chunk.size(); ++i)
      out.push_back(make_token(std::string(1, chunk[i]), stopwords));
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  return tokenize(text, builtin_stopwords());
}

std::vector<Sentence> segment_sentences(std::string_view cleaned,
                                        const WordList& abbreviations) {
  std::vector<Sentence> out;
  const std::size_t n = cleaned.size();
  std::size_t start = 0;
  auto emit = [&](std::size_t from, std::size_t to) {  // [from, to)
    Sentence s;
    s.index = static_cast<int>(out.size());
    s.text = std::string(cleaned.substr(from, to - from));
    s.tokens = tokenize(s.text);
    out.push_back(std::move(s));
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    char c = cleaned[i];
    if ((c != '.' && c != '!' && c != '?') || cleaned[i + 1] != ' ') continue;
    // cleaned text never ends with a space, but stay safe on raw input
    char next = (i + 2 < n) ? cleaned[i + 2] : '\0';
    bool guarded = false;
    if (next >= 'a' && next <= 'z') {
      std::size_t ws = cleaned.rfind(' ', i);
      std::size_t cb = (ws == std::string_view::npos || ws < start) ? start
                                                                    : ws + 1;
      guarded = abbreviations.contains(
          to_lower_ascii(cleaned.substr(cb, i - cb + 1)));
    }
    if (!guarded) {
      emit(start, i + 1);
      start = i + 2;
      ++i;  // skip the boundary space
    }
  }
  if (start < n) emit(start, n);
  return out;
}

std::vector<Sentence> segment_sentences(std::string_view cleaned) {
  return segment_sentences(cleaned, builtin_abbreviations());
}

NgramCounts ngrams(const std::vector<Token>& tokens, int n, bool use_stems) {
  if (n < 1) throw std::invalid_argument("ngrams: n must be >= 1");
  NgramCounts out;
  if (tokens.size() < static_cast<std::size_t>(n)) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += use_stems ? tokens[i + k].stem : tokens[i + k].lower;
    }
    ++out[key];
  }
  return out;
}

}  // namespace finsum
