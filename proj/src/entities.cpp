#include "finsum/entities.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "finsum/builtin_data.hpp"
#include "finsum/errors.hpp"
#include "finsum/text.hpp"

namespace finsum {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string strip_commas(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    if (c != ',') out.push_back(c);
  return out;
}

std::string_view scale_exponent(std::string_view word) {
  if (word == "thousand") return "e3";
  if (word == "million") return "e6";
  if (word == "billion") return "e9";
  if (word == "trillion") return "e12";
  return "e0";
}

std::string_view quarter_of(std::string_view word) {
  if (word == "first" || word == "1st") return "q1";
  if (word == "second" || word == "2nd") return "q2";
  if (word == "third" || word == "3rd") return "q3";
  if (word == "fourth" || word == "4th") return "q4";
  return "q?";
}

std::string normalize(EntityKind kind, std::string_view surface) {
  std::string s = strip_commas(to_lower_ascii(surface));
  switch (kind) {
    case EntityKind::money:
    case EntityKind::cardinal_scaled: {
      if (!s.empty() && s.front() == '$') s.erase(0, 1);
      auto parts = whitespace_chunks(s);
      std::string value = parts.empty() ? s : parts[0];
      std::string_view scale =
          parts.size() > 1 ? scale_exponent(parts[1]) : "e0";
      return value + "@" + std::string(scale);
    }
    case EntityKind::percent: {
      // both "14.5%" and "14.5 percent" normalize to "14.5%"
      if (!s.empty() && s.back() == '%') return s;
      auto parts = whitespace_chunks(s);
      return (parts.empty() ? s : parts[0]) + "%";
    }
    case EntityKind::quarter: {
      if (s.size() == 2 && s[0] == 'q') return s;
      auto parts = whitespace_chunks(s);
      return std::string(quarter_of(parts.empty() ? s : parts[0]));
    }
    case EntityKind::fiscal_year: {
      std::string digits;
      for (char c : s)
        if (is_digit(c)) digits.push_back(c);
      if (digits.size() == 2)
        return (digits >= "90" ? "19" : "20") + digits;
      return digits;
    }
    case EntityKind::ticker:
    case EntityKind::proper_noun:
      return s;
  }
  return s;
}

std::vector<std::string> constituents(std::string_view surface) {
  std::vector<std::string> out;
  for (const std::string& chunk : whitespace_chunks(to_lower_ascii(surface)))
    if (!builtin_stopwords().contains(chunk)) out.push_back(chunk);
  return out;
}

std::optional<EntityKind> parse_kind(std::string_view s) {
  if (s == "money") return EntityKind::money;
  if (s == "percent") return EntityKind::percent;
  if (s == "cardinal_scaled") return EntityKind::cardinal_scaled;
  if (s == "quarter") return EntityKind::quarter;
  if (s == "fiscal_year") return EntityKind::fiscal_year;
  if (s == "ticker") return EntityKind::ticker;
  if (s == "proper_noun") return EntityKind::proper_noun;
  return std::nullopt;
}

// offsets where sentences begin, for the proper-noun start filter
std::vector<std::size_t> sentence_starts(std::string_view text) {
  std::vector<std::size_t> starts;
  std::size_t pos = 0;
  for (const Sentence& s : segment_sentences(text)) {
    starts.push_back(pos);
    pos += s.text.size() + 1;  // sentences are single-space joined
  }
  return starts;
}

}  // namespace

std::string_view to_string(EntityKind k) {
  switch (k) {
    case EntityKind::money: return "money";
    case EntityKind::percent: return "percent";
    case EntityKind::cardinal_scaled: return "cardinal_scaled";
    case EntityKind::quarter: return "quarter";
    case EntityKind::fiscal_year: return "fiscal_year";
    case EntityKind::ticker: return "ticker";
    case EntityKind::proper_noun: return "proper_noun";
  }
  return "?";
}

EntityExtractor::EntityExtractor(std::string_view table_text) {
  std::istringstream in{std::string(table_text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t nz = line.find_first_not_of(" \t\r");
    if (nz == std::string::npos || line[nz] == '#') continue;
    std::istringstream ls(line);
    std::string kind_str, flags;
    int priority = 0;
    std::string pattern;
    if (!(ls >> kind_str >> priority >> flags) ||
        !std::getline(ls, pattern)) {
      throw ConfigError("entity pattern table: bad line " +
                        std::to_string(lineno));
    }
    std::size_t p = pattern.find_first_not_of(" \t");
    pattern = p == std::string::npos ? "" : pattern.substr(p);
    while (!pattern.empty() &&
           (pattern.back() == '\r' || pattern.back() == ' '))
      pattern.pop_back();
    auto kind = parse_kind(kind_str);
    if (!kind || pattern.empty())
      throw ConfigError("entity pattern table: bad line " +
                        std::to_string(lineno));
    auto syntax = std::regex::ECMAScript;
    if (flags.find('i') != std::string::npos) syntax |= std::regex::icase;
    try {
      rules_.push_back(Rule{*kind, priority, std::regex(pattern, syntax)});
    } catch (const std::regex_error& e) {
      throw ConfigError("entity pattern table: bad regex on line " +
                        std::to_string(lineno) + ": " + e.what());
    }
  }
  if (rules_.empty()) throw ConfigError("entity pattern table: no rules");
}

EntityExtractor::EntityExtractor()
    : EntityExtractor(detail::kEntityPatternsTxt) {}

EntityExtractor EntityExtractor::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read entity pattern table: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return EntityExtractor(ss.str());
}

EntityList EntityExtractor::extract(std::string_view text) const {
  EntityList out;
  if (text.empty()) return out;

  struct Candidate {
    std::size_t begin, end;
    EntityKind kind;
    int priority;
  };
  std::vector<Candidate> candidates;
  std::vector<std::size_t> starts;  // lazily built, proper nouns only
  bool starts_built = false;

  for (const Rule& rule : rules_) {
    auto begin = std::cregex_iterator(text.data(), text.data() + text.size(),
                                      rule.re);
    for (auto it = begin; it != std::cregex_iterator(); ++it) {
      std::size_t b = static_cast<std::size_t>(it->position());
      std::size_t e = b + static_cast<std::size_t>(it->length());
      if (e == b) continue;
      if (rule.kind == EntityKind::proper_noun) {
        std::string_view surface = text.substr(b, e - b);
        if (surface.size() == 1) continue;
        if (surface.find(' ') == std::string_view::npos) {
          if (!starts_built) {
            starts = sentence_starts(text);
            starts_built = true;
          }
          if (std::binary_search(starts.begin(), starts.end(), b)) continue;
        }
      }
      candidates.push_back(Candidate{b, e, rule.kind, rule.priority});
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              std::size_t la = a.end - a.begin, lb = b.end - b.begin;
              if (la != lb) return la > lb;
              if (a.priority != b.priority) return a.priority < b.priority;
              return a.begin < b.begin;
            });

  std::vector<Candidate> accepted;
  for (const Candidate& c : candidates) {
    bool overlaps = false;
    for (const Candidate& a : accepted)
      if (c.begin < a.end && a.begin < c.end) {
        overlaps = true;
        break;
      }
    if (!overlaps) accepted.push_back(c);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Candidate& a, const Candidate& b) {
              return a.begin < b.begin;
            });

  for (const Candidate& c : accepted) {
    Entity e;
    e.surface = std::string(text.substr(c.begin, c.end - c.begin));
    e.kind = c.kind;
    e.begin = c.begin;
    e.end = c.end;
    e.normalized = normalize(c.kind, e.surface);
    e.words = constituents(e.surface);
    out.as_set.insert(e.normalized);
    out.entities.push_back(std::move(e));
  }
  return out;
}

EntityList extract_entities(std::string_view text) {
  static const EntityExtractor extractor;
  return extractor.extract(text);
}

MatchContext::MatchContext(std::string_view text) {
  std::string lower = to_lower_ascii(text);
  for (std::string& chunk : whitespace_chunks(lower))
    words_.insert(std::move(chunk));
  for (const Token& t : tokenize(lower)) words_.insert(t.lower);
}

bool entity_match(const Entity& e, const MatchContext& target_ctx,
                  const EntityList& target) {
  if (target.as_set.count(e.normalized)) return true;
  // partial match: a multi-word entity counts as present when any of its
  // non-stopword constituents shows up as a word of the target text
  if (e.surface.find(' ') != std::string::npos)
    for (const std::string& w : e.words)
      if (target_ctx.has_word(w)) return true;
  return false;
}

bool entity_match(const Entity& e, std::string_view target_text,
                  const EntityList& target) {
  return entity_match(e, MatchContext(target_text), target);
}

}  // namespace finsum
