#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace finsum {

struct Token {
  std::string surface;
  std::string lower;   // ASCII case-folded surface
  std::string stem;    // Porter stem of lower
  bool is_stopword = false;
};

struct Sentence {
  int index = 0;  // 0-based position in the document
  std::string text;
  std::vector<Token> tokens;
};

// Plain-text word list: one entry per line, '#' comments and blank lines
// ignored. Used for stopwords and sentence-boundary abbreviation guards.
class WordList {
 public:
  WordList() = default;
  static WordList from_text(std::string_view text);
  static WordList from_file(const std::string& path);

  bool contains(std::string_view w) const {
    return words_.count(std::string(w)) > 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Built-in lists embedded at build time from data/*.txt.
const WordList& builtin_stopwords();
const WordList& builtin_abbreviations();

std::string to_lower_ascii(std::string_view s);

// Collapse whitespace runs to single spaces and trim; nothing else changes.
std::string clean_text(std::string_view raw);

// Whitespace-delimited chunks, no punctuation handling. This is the token
// notion used for corpus statistics, filter thresholds, and length budgets.
std::vector<std::string> whitespace_chunks(std::string_view text);
int whitespace_token_count(std::string_view text);

// Metric-grade tokenization: split on whitespace, then detach surrounding
// .,;:!?"'() as separate tokens. Numeric/currency interiors stay intact
// ($2.94, 1,681, mid-90s) because detachment only touches chunk ends, and a
// leading '.' directly before a digit is kept (.5 stays one token).
std::vector<Token> tokenize(std::string_view text);
std::vector<Token> tokenize(std::string_view text, const WordList& stopwords);

// Rule-based segmentation of cleaned text. A '.', '!' or '?' followed by a
// space ends a sentence unless the chunk it terminates is on the abbreviation
// guard list and the next character is lowercase. Decimals never split (no
// whitespace follows the dot). Indices run 0..N-1; joining the sentence texts
// with single spaces recovers the input.
std::vector<Sentence> segment_sentences(std::string_view cleaned);
std::vector<Sentence> segment_sentences(std::string_view cleaned,
                                        const WordList& abbreviations);

// n-gram multiset; keys are '\x1f'-joined stem (or lower) forms.
using NgramCounts = std::unordered_map<std::string, int>;
NgramCounts ngrams(const std::vector<Token>& tokens, int n, bool use_stems);

}  // namespace finsum
