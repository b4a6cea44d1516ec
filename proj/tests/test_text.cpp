#include <doctest.h>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "finsum/porter.hpp"
#include "finsum/text.hpp"

using namespace finsum;

namespace {
std::vector<std::string> surfaces(const std::vector<Token>& toks) {
  std::vector<std::string> out;
  for (const Token& t : toks) out.push_back(t.surface);
  return out;
}
}  // namespace

TEST_CASE("clean_text collapses whitespace and trims") {
  CHECK(clean_text("a  b\n c ") == "a b c");
  CHECK(clean_text("") == "");
  CHECK(clean_text("$2.94\t eps") == "$2.94 eps");
  CHECK(clean_text("  \t\n ") == "");
  CHECK(clean_text("already clean") == "already clean");
  // idempotent
  CHECK(clean_text(clean_text("x \r\n y")) == clean_text("x \r\n y"));
}

TEST_CASE("whitespace chunks and counts") {
  CHECK(whitespace_chunks("a b  c").size() == 3);
  CHECK(whitespace_token_count("q4 earnings per share $2.88.") == 5);
  CHECK(whitespace_token_count("") == 0);
  CHECK(whitespace_token_count("   ") == 0);
}

TEST_CASE("tokenize detaches edge punctuation only") {
  auto toks = tokenize("q4 earnings per share $2.88.");
  CHECK(surfaces(toks) ==
        std::vector<std::string>{"q4", "earnings", "per", "share", "$2.88",
                                 "."});
  CHECK(tokenize("").empty());
  CHECK(surfaces(tokenize("a b")) == std::vector<std::string>{"a", "b"});
  // currency / grouped / hyphenated interiors stay intact
  CHECK(surfaces(tokenize("1,681 samples")) ==
        std::vector<std::string>{"1,681", "samples"});
  CHECK(surfaces(tokenize("the mid-90s boom")) ==
        std::vector<std::string>{"the", "mid-90s", "boom"});
  CHECK(surfaces(tokenize("(loss)")) ==
        std::vector<std::string>{"(", "loss", ")"});
  CHECK(surfaces(tokenize("\"great,\" he said.")) ==
        std::vector<std::string>{"\"", "great", ",", "\"", "he", "said", "."});
  // leading '.' kept when a digit follows
  CHECK(surfaces(tokenize("up .5 points")) ==
        std::vector<std::string>{"up", ".5", "points"});
}

TEST_CASE("token fields are consistent") {
  for (const Token& t : tokenize("The Cats SAT on mats, happily.")) {
    CHECK(t.lower == to_lower_ascii(t.surface));
    CHECK(t.stem == porter_stem(t.lower));
  }
  auto toks = tokenize("the cat and a dog");
  REQUIRE(toks.size() == 5);
  CHECK(toks[0].is_stopword);      // the
  CHECK(!toks[1].is_stopword);     // cat
  CHECK(toks[2].is_stopword);      // and
  CHECK(toks[3].is_stopword);      // a
  CHECK(!toks[4].is_stopword);     // dog
}

TEST_CASE("segmentation basics") {
  CHECK(segment_sentences("eps was $2.94. revenue grew.").size() == 2);
  CHECK(segment_sentences("eps was $2.94 this quarter").size() == 1);
  CHECK(segment_sentences("").empty());
  CHECK(segment_sentences("Up 3%! Down 2%? Flat.").size() == 3);
}

TEST_CASE("decimal points never split") {
  auto s = segment_sentences("revenue was $2.94 billion in fy21");
  REQUIRE(s.size() == 1);
  CHECK(s[0].text == "revenue was $2.94 billion in fy21");
}

TEST_CASE("abbreviation guard holds before lowercase only") {
  // "inc." is on the guard list: no boundary when lowercase text follows
  CHECK(segment_sentences("acme inc. said profits rose. shares fell.").size() ==
        2);
  // an uppercase continuation does end the sentence, guard list or not
  CHECK(segment_sentences("It was Acme Inc. Shares fell.").size() == 2);
  // unguarded word + lowercase continuation still splits
  CHECK(segment_sentences("eps was $2.94. revenue grew.").size() == 2);
  CHECK(segment_sentences("we saw that in q4. margins held up").size() == 1);
}

TEST_CASE("sentence indices and tokens") {
  auto s = segment_sentences("First part here. Second part there. Third.");
  REQUIRE(s.size() == 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].index == static_cast<int>(i));
    CHECK(!s[i].tokens.empty());
  }
}

TEST_CASE("segmentation is loss-free on cleaned text") {
  auto check_lossfree = [](const std::string& raw) {
    std::string cleaned = clean_text(raw);
    auto sents = segment_sentences(cleaned);
    std::string joined;
    for (const Sentence& s : sents) {
      if (!joined.empty()) joined.push_back(' ');
      joined += s.text;
    }
    CHECK(joined == cleaned);
  };
  check_lossfree("eps was $2.94. revenue grew. Costs fell! why? unclear.");
  check_lossfree("acme inc. said q4 was strong. ACME rose 4.5% to $31.20.");
  check_lossfree("one");
  check_lossfree("");

  std::mt19937 rng(7);
  const std::vector<std::string> vocab = {
      "acme", "inc.",  "grew", "fell", "$2.94", "q4.",    "Shares", "margins",
      "14%",  "flat.", "Up!",  "down", "why?",  "(loss)", "e.g.",   "2021."};
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(1, 30);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      if (!text.empty()) text.push_back(' ');
      text += vocab[pick(rng)];
    }
    check_lossfree(text);
  }
}

TEST_CASE("ngrams are multisets over stems or lowers") {
  auto toks = tokenize("the cat sat");
  auto bi = ngrams(toks, 2, false);
  REQUIRE(bi.size() == 2);
  CHECK(bi.at(std::string("the") + '\x1f' + "cat") == 1);
  CHECK(bi.at(std::string("cat") + '\x1f' + "sat") == 1);

  auto rep = tokenize("a a a");
  auto uni = ngrams(rep, 1, false);
  REQUIRE(uni.size() == 1);
  CHECK(uni.at("a") == 3);

  CHECK(ngrams(tokenize("a b"), 3, true).empty());
  CHECK(ngrams({}, 1, true).empty());
  CHECK_THROWS_AS(ngrams(toks, 0, true), std::invalid_argument);

  // stems unify inflections
  auto s1 = ngrams(tokenize("cats"), 1, true);
  CHECK(s1.count("cat") == 1);
}

TEST_CASE("word lists parse comments and blanks") {
  WordList wl = WordList::from_text("# header\n\nalpha\nbeta\n # note\ngamma\n");
  CHECK(wl.size() == 3);
  CHECK(wl.contains("alpha"));
  CHECK(wl.contains("gamma"));
  CHECK(!wl.contains("delta"));
  CHECK(builtin_stopwords().contains("the"));
  CHECK(!builtin_stopwords().contains("revenue"));
  CHECK(builtin_abbreviations().contains("inc."));
}
