#pragma once

#include <vector>

#include "finsum/embedding.hpp"
#include "finsum/text.hpp"

namespace finsum {

struct RougeScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Clipped multiset n-gram overlap, stem forms by default (use_stems=false
// matches on lowercase surfaces instead). Empty denominators give 0.
RougeScore rouge_n(const std::vector<Token>& hyp, const std::vector<Token>& ref,
                   int n, bool use_stems = true);

// Longest common subsequence over stems: P = LCS/|hyp|, R = LCS/|ref|.
RougeScore rouge_l(const std::vector<Token>& hyp, const std::vector<Token>& ref,
                   bool use_stems = true);

struct MeteorDetail {
  int matches = 0;  // aligned unigrams (exact stage, then stem stage)
  int chunks = 0;   // minimal contiguous runs covering the alignment
  double precision = 0;
  double recall = 0;
  double fmean = 0;    // 10PR / (R + 9P)
  double penalty = 0;  // 0.5 * (chunks/matches)^3
  double score = 0;    // fmean * (1 - penalty)
};

// Staged unigram alignment: exact lowercase matches first, Porter-stem
// matches on what remains; each token pairs at most once and the number of
// matches per stage is maximal. Among maximal alignments, the one with the
// fewest chunks wins (exhaustive search with pruning; inputs big enough to
// exhaust the search budget fall back to the best alignment found, which is
// the in-order greedy one). No synonym or paraphrase stage.
MeteorDetail meteor_detail(const std::vector<Token>& hyp,
                           const std::vector<Token>& ref);
double meteor(const std::vector<Token>& hyp, const std::vector<Token>& ref);

struct EmbedScore {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Greedy embedding match: recall is the mean over reference tokens of the
// best cosine against any hypothesis token; precision symmetric; cosine with
// a zero vector is 0. Tokens are embedded by their lowercase form.
EmbedScore embed_score(const std::vector<Token>& hyp,
                       const std::vector<Token>& ref,
                       EmbeddingProvider& provider);

}  // namespace finsum
