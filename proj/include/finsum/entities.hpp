#pragma once

#include <memory>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace finsum {

enum class EntityKind {
  money,
  percent,
  cardinal_scaled,  // bare number + scale word ("1.3 billion")
  quarter,
  fiscal_year,
  ticker,
  proper_noun,
};

std::string_view to_string(EntityKind k);

struct Entity {
  std::string surface;
  EntityKind kind = EntityKind::proper_noun;
  std::size_t begin = 0;  // [begin, end) character offsets into the source
  std::size_t end = 0;
  // lowercase, commas stripped; money/cardinal amounts become "value@scale"
  // (e0/e3/e6/e9/e12), "N percent" becomes "N%", quarters become q1..q4,
  // fiscal years become the 4-digit year
  std::string normalized;
  std::vector<std::string> words;  // lowercase constituents, stopwords removed
};

struct EntityList {
  std::vector<Entity> entities;   // document order, non-overlapping spans
  std::set<std::string> as_set;   // distinct normalized forms
};

// Regex-table extractor. The built-in table lives in data/entity_patterns.txt
// (embedded at build time); a custom table can be supplied for domain
// transfer. Matching keeps the longest candidate at each position, breaking
// ties by kind priority (money wins over percent, ... , proper_noun last).
class EntityExtractor {
 public:
  EntityExtractor();  // built-in pattern table
  explicit EntityExtractor(std::string_view table_text);
  static EntityExtractor from_file(const std::string& path);

  EntityList extract(std::string_view text) const;

 private:
  struct Rule {
    EntityKind kind;
    int priority;
    std::regex re;
  };
  std::vector<Rule> rules_;
};

// Convenience wrapper over a shared built-in extractor.
EntityList extract_entities(std::string_view text);

// Lowercase word forms of a target text, precomputed once per text for the
// partial-match rule: both whitespace chunks and punctuation-detached token
// surfaces count as present words.
class MatchContext {
 public:
  explicit MatchContext(std::string_view text);
  bool has_word(std::string_view w) const {
    return words_.count(std::string(w)) > 0;
  }

 private:
  std::unordered_set<std::string> words_;
};

// True when e's normalized form is in target.as_set, or e spans several words
// and any of its non-stopword constituents appears as a word of target_text.
bool entity_match(const Entity& e, const MatchContext& target_ctx,
                  const EntityList& target);
bool entity_match(const Entity& e, std::string_view target_text,
                  const EntityList& target);

}  // namespace finsum
