#include "finsum/porter.hpp"

#include <array>
#include <cstddef>

namespace finsum {
namespace {

bool is_vowel_char(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// y counts as a vowel when preceded by a consonant (word-initial y is a
// consonant).
bool is_consonant(std::string_view w, std::size_t i) {
  char c = w[i];
  if (is_vowel_char(c)) return false;
  if (c == 'y') return i == 0 || !is_consonant(w, i - 1);
  return true;
}

// m in the [C](VC)^m[V] decomposition.
int measure(std::string_view w) {
  int m = 0;
  std::size_t i = 0;
  const std::size_t n = w.size();
  while (i < n && is_consonant(w, i)) ++i;
  while (i < n) {
    while (i < n && !is_consonant(w, i)) ++i;
    if (i == n) break;
    ++m;
    while (i < n && is_consonant(w, i)) ++i;
  }
  return m;
}

bool has_vowel(std::string_view w) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!is_consonant(w, i)) return true;
  return false;
}

bool ends_double_consonant(std::string_view w) {
  const std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends cvc where the final consonant is not w, x or y.
bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  char last = w[n - 1];
  return is_consonant(w, n - 3) && !is_consonant(w, n - 2) &&
         is_consonant(w, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(std::string_view w, std::string_view suf) {
  return w.size() >= suf.size() &&
         w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Within one step only the longest matching suffix is considered; if its
// measure condition fails no other rule in the step fires.
void apply_step(std::string& w, const Rule* rules, std::size_t count,
                int min_measure) {
  const Rule* best = nullptr;
  for (std::size_t k = 0; k < count; ++k) {
    if (ends_with(w, rules[k].suffix) &&
        (!best || rules[k].suffix.size() > best->suffix.size())) {
      best = &rules[k];
    }
  }
  if (!best) return;
  std::string_view stem(w.data(), w.size() - best->suffix.size());
  if (measure(stem) > min_measure) {
    w.assign(stem);
    w.append(best->replacement);
  }
}

}  // namespace

std::string porter_stem(std::string_view word) {
  std::string w(word);
  if (w.size() <= 2) return w;

  // step 1a
  if (ends_with(w, "sses")) {
    w.erase(w.size() - 2);
  } else if (ends_with(w, "ies")) {
    w.erase(w.size() - 2);
  } else if (ends_with(w, "ss")) {
    // keep
  } else if (ends_with(w, "s")) {
    w.erase(w.size() - 1);
  }

  // step 1b
  bool cleanup = false;
  if (ends_with(w, "eed")) {
    if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0)
      w.erase(w.size() - 1);
  } else if (ends_with(w, "ed")) {
    if (has_vowel(std::string_view(w).substr(0, w.size() - 2))) {
      w.erase(w.size() - 2);
      cleanup = true;
    }
  } else if (ends_with(w, "ing")) {
    if (has_vowel(std::string_view(w).substr(0, w.size() - 3))) {
      w.erase(w.size() - 3);
      cleanup = true;
    }
  }
  if (cleanup) {
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
      w.push_back('e');
    } else if (ends_double_consonant(w)) {
      char c = w.back();
      if (c != 'l' && c != 's' && c != 'z') w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
      w.push_back('e');
    }
  }

  // step 1c
  if (ends_with(w, "y") &&
      has_vowel(std::string_view(w).substr(0, w.size() - 1))) {
    w.back() = 'i';
  }

  // step 2 (m > 0)
  static constexpr std::array<Rule, 20> kStep2{{
      {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},
      {"anci", "ance"},   {"izer", "ize"},    {"abli", "able"},
      {"alli", "al"},     {"entli", "ent"},   {"eli", "e"},
      {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
      {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"},
      {"fulness", "ful"}, {"ousness", "ous"}, {"aliti", "al"},
      {"iviti", "ive"},   {"biliti", "ble"},
  }};
  apply_step(w, kStep2.data(), kStep2.size(), 0);

  // step 3 (m > 0)
  static constexpr std::array<Rule, 7> kStep3{{
      {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
      {"ical", "ic"},  {"ful", ""},   {"ness", ""},
  }};
  apply_step(w, kStep3.data(), kStep3.size(), 0);

  // step 4 (m > 1); "ion" additionally requires the stem to end in s or t
  {
    static constexpr std::array<std::string_view, 19> kStep4{
        "al",  "ance", "ence", "er",    "ic",   "able", "ible",
        "ant", "ement", "ment", "ent",  "ion",  "ou",   "ism",
        "ate", "iti",  "ous",  "ive",   "ize",
    };
    std::string_view best;
    for (auto suf : kStep4) {
      if (ends_with(w, suf) && suf.size() > best.size()) best = suf;
    }
    if (!best.empty()) {
      std::string_view stem(w.data(), w.size() - best.size());
      bool ok = measure(stem) > 1;
      if (ok && best == "ion")
        ok = !stem.empty() && (stem.back() == 's' || stem.back() == 't');
      if (ok) w.erase(w.size() - best.size());
    }
  }

  // step 5a
  if (ends_with(w, "e")) {
    std::string_view stem(w.data(), w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
  }

  // step 5b
  if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l')
    w.pop_back();

  return w;
}

}  // namespace finsum
