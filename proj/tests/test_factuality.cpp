#include <doctest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "finsum/factuality.hpp"
#include "finsum/text.hpp"

using namespace finsum;

namespace {

// --- independent oracle ----------------------------------------------------
// Re-derives matching and counting from scratch: word sets via simple chunk
// scans, constituents via stopword-filtered chunks, set variant via a
// first-occurrence scan. No MatchContext, no count helpers.

std::set<std::string> brute_words(const std::string& text) {
  std::set<std::string> words;
  for (std::string chunk : whitespace_chunks(to_lower_ascii(text))) {
    words.insert(chunk);
    const std::string punct = ".,;:!?\"'()";
    std::size_t b = chunk.find_first_not_of(punct);
    std::size_t e = chunk.find_last_not_of(punct);
    if (b != std::string::npos) words.insert(chunk.substr(b, e - b + 1));
  }
  return words;
}

bool brute_match(const Entity& e, const std::set<std::string>& target_words,
                 const EntityList& target) {
  for (const Entity& t : target.entities)
    if (t.normalized == e.normalized) return true;
  if (e.surface.find(' ') == std::string::npos) return false;
  for (const std::string& w : whitespace_chunks(to_lower_ascii(e.surface)))
    if (!builtin_stopwords().contains(w) && target_words.count(w)) return true;
  return false;
}

struct BruteRatio {
  int matched = 0, total = 0;
  double value() const { return total ? double(matched) / total : 1.0; }
};

// list variant: every occurrence; set variant: first occurrence per
// normalized form only
BruteRatio brute_ratio(const EntityList& from,
                       const std::set<std::string>& target_words,
                       const EntityList& target, bool set_variant) {
  BruteRatio r;
  std::set<std::string> seen;
  for (const Entity& e : from.entities) {
    if (set_variant && !seen.insert(e.normalized).second) continue;
    ++r.total;
    if (brute_match(e, target_words, target)) ++r.matched;
  }
  return r;
}

FactualityScores brute_scores(const std::string& source,
                              const std::string& ref, const std::string& hyp,
                              const EntityExtractor& ex) {
  EntityList se = ex.extract(source), re = ex.extract(ref),
             he = ex.extract(hyp);
  auto sw = brute_words(source), rw = brute_words(ref), hw = brute_words(hyp);
  FactualityScores f;
  f.prec_s_nu = brute_ratio(he, sw, se, false).value();
  f.prec_s_u = brute_ratio(he, sw, se, true).value();
  f.prec_t_nu = brute_ratio(he, rw, re, false).value();
  f.recall_t_nu = brute_ratio(re, hw, he, false).value();
  f.f1_t_nu = f1_of(f.prec_t_nu, f.recall_t_nu);
  f.prec_t_u = brute_ratio(he, rw, re, true).value();
  f.recall_t_u = brute_ratio(re, hw, he, true).value();
  f.f1_t_u = f1_of(f.prec_t_u, f.recall_t_u);
  return f;
}

void check_equal(const FactualityScores& got, const FactualityScores& want) {
  CHECK(got.prec_s_nu == want.prec_s_nu);
  CHECK(got.prec_s_u == want.prec_s_u);
  CHECK(got.prec_t_nu == want.prec_t_nu);
  CHECK(got.recall_t_nu == want.recall_t_nu);
  CHECK(got.f1_t_nu == want.f1_t_nu);
  CHECK(got.prec_t_u == want.prec_t_u);
  CHECK(got.recall_t_u == want.recall_t_u);
  CHECK(got.f1_t_u == want.f1_t_u);
}

}  // namespace

TEST_CASE("worked example: one reference entity missing from the hypothesis") {
  const std::string source =
      "in q4 the company reported gaap eps of $2.88 and adjusted eps of $2.94";
  const std::string ref = "q4 gaap eps was $2.88, adjusted eps $2.94";
  const std::string hyp = "q4 adjusted eps was $2.94";
  const EntityExtractor ex;
  // sanity: the entity sets are {q4, 2.88, 2.94} vs {q4, 2.94}
  REQUIRE(ex.extract(ref).as_set.size() == 3);
  REQUIRE(ex.extract(hyp).as_set.size() == 2);

  FactualityScores f = score_sample(source, ref, hyp, ex);
  CHECK(f.prec_t_u == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.recall_t_u == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.f1_t_u == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(f.prec_t_nu == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.recall_t_nu == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(f.prec_s_nu == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.prec_s_u == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("list and set variants diverge on repeated mentions") {
  const std::string source =
      "q4 was strong, margin hit 12% and q4 cash flow improved";
  const std::string ref = "q4 was solid overall";
  const std::string hyp = "q4 margin of 12% and q4 strength";
  const EntityExtractor ex;
  REQUIRE(ex.extract(hyp).entities.size() == 3);  // q4, 12%, q4
  REQUIRE(ex.extract(hyp).as_set.size() == 2);

  FactualityScores f = score_sample(source, ref, hyp, ex);
  // per occurrence: two q4 mentions match, 12% does not
  CHECK(f.prec_t_nu == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // per distinct form: one of two forms matches
  CHECK(f.prec_t_u == doctest::Approx(0.5).epsilon(1e-12));
  // everything in the hypothesis is supported by the source
  CHECK(f.prec_s_nu == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.prec_s_u == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empty-side conventions") {
  const EntityExtractor ex;
  SUBCASE("no hypothesis entities: vacuous precision, zero recall credit") {
    FactualityScores f =
        score_sample("q4 eps $2.94", "q4 eps was $2.94", "nothing numeric", ex);
    CHECK(f.prec_s_nu == 1.0);
    CHECK(f.prec_s_u == 1.0);
    CHECK(f.prec_t_nu == 1.0);
    CHECK(f.recall_t_nu == 0.0);
    CHECK(f.f1_t_nu == 0.0);  // f1(1, 0) = 0
  }
  SUBCASE("no reference entities: vacuous recall") {
    FactualityScores f =
        score_sample("q4 eps $2.94", "a plain summary", "eps of $2.94", ex);
    CHECK(f.recall_t_nu == 1.0);
    CHECK(f.recall_t_u == 1.0);
    CHECK(f.prec_t_nu == 0.0);  // $2.94 is not in the reference
    CHECK(f.f1_t_nu == 0.0);
  }
  SUBCASE("no entities anywhere: all vacuous, f1 of 1 and 1") {
    FactualityScores f = score_sample("plain text", "plain text", "plain", ex);
    CHECK(f.prec_s_nu == 1.0);
    CHECK(f.prec_t_nu == 1.0);
    CHECK(f.recall_t_nu == 1.0);
    CHECK(f.f1_t_nu == 1.0);
  }
  SUBCASE("disjoint entities: f1 of 0 and 0 is 0") {
    FactualityScores f =
        score_sample("mixed q1 and 5% content", "all about q1", "we saw 5%", ex);
    CHECK(f.prec_t_nu == 0.0);
    CHECK(f.recall_t_nu == 0.0);
    CHECK(f.f1_t_nu == 0.0);
  }
}

TEST_CASE("target_scores agrees with score_sample") {
  const EntityExtractor ex;
  const std::string ref = "q4 eps of $2.94 and revenue of $1.3 billion";
  const std::string hyp = "eps was $2.94 in q4";
  EntityList he = ex.extract(hyp), re = ex.extract(ref);
  TargetScores t = target_scores(he, hyp, re, ref, Variant::set);
  FactualityScores f = score_sample("irrelevant source", ref, hyp, ex);
  CHECK(t.prec_t == f.prec_t_u);
  CHECK(t.recall_t == f.recall_t_u);
  CHECK(t.f1_t == f.f1_t_u);
  TargetScores tl = target_scores(he, hyp, re, ref, Variant::list);
  CHECK(tl.prec_t == f.prec_t_nu);
  CHECK(tl.recall_t == f.recall_t_nu);
}

TEST_CASE("precision_source stands alone") {
  const EntityExtractor ex;
  const std::string source = "the company saw q4 revenue of $480 million";
  const std::string hyp = "q4 revenue was $480 million, up 9%";
  EntityList he = ex.extract(hyp), se = ex.extract(source);
  // 9% is unsupported: 2 of 3 occurrences, 2 of 3 distinct forms
  CHECK(precision_source(he, source, se, Variant::list) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(precision_source(he, source, se, Variant::set) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("counts back the scores exactly") {
  const EntityExtractor ex;
  const std::string source = "q4 margin 12%, eps $2.94, revenue $1.3 billion";
  const std::string ref = "q4 eps $2.94 and 12% margin";
  const std::string hyp = "eps $2.94, margin 12%, and q1 notes";
  FactualityScores f = score_sample(source, ref, hyp, ex);
  FactualityCounts c = count_sample(source, ref, hyp, ex);
  CHECK(f.prec_s_nu == double(c.s_matched_nu) / c.s_total_nu);
  CHECK(f.prec_s_u == double(c.s_matched_u) / c.s_total_u);
  CHECK(f.prec_t_nu == double(c.p_matched_nu) / c.p_total_nu);
  CHECK(f.recall_t_nu == double(c.r_matched_nu) / c.r_total_nu);
  CHECK(f.prec_t_u == double(c.p_matched_u) / c.p_total_u);
  CHECK(f.recall_t_u == double(c.r_matched_u) / c.r_total_u);
}

TEST_CASE("random fixtures agree exactly with the brute-force oracle") {
  const EntityExtractor ex;
  const std::vector<std::string> entities = {
      "$1",          "$2.50",       "$1,300",   "$3 million", "$1.3 billion",
      "5%",          "14.5 percent", "q1",      "q2",         "q3",
      "q4",          "fourth quarter", "fy21",  "2019",       "ACME",
      "WDGT",        "Acme Corp",   "Widget Inc", "Gadget"};
  const std::vector<std::string> fillers = {
      "said", "while", "margins", "held", "steady", "and", "then", "overall"};
  std::mt19937 rng(987654321);
  std::uniform_int_distribution<int> n_entities(0, 10);
  std::uniform_int_distribution<std::size_t> pick_e(0, entities.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_f(0, fillers.size() - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  auto make_text = [&]() {
    std::string text = fillers[pick_f(rng)];
    int n = n_entities(rng);
    for (int i = 0; i < n; ++i) {
      text += " " + entities[pick_e(rng)];
      if (coin(rng) < 0.3) text += ",";
      text += " " + fillers[pick_f(rng)];
    }
    return text;
  };

  for (int trial = 0; trial < 300; ++trial) {
    std::string source = make_text(), ref = make_text(), hyp = make_text();
    FactualityScores got = score_sample(source, ref, hyp, ex);
    FactualityScores want = brute_scores(source, ref, hyp, ex);
    check_equal(got, want);
  }
}

TEST_CASE("f1 helper conventions") {
  CHECK(f1_of(0.0, 0.0) == 0.0);
  CHECK(f1_of(1.0, 0.0) == 0.0);
  CHECK(f1_of(1.0, 1.0) == 1.0);
  CHECK(f1_of(1.0, 2.0 / 3.0) == doctest::Approx(0.8).epsilon(1e-12));
}
