#pragma once

#include <string_view>

#include "finsum/entities.hpp"

namespace finsum {

// set  = distinct normalized entities (the "U" columns: unique)
// list = every occurrence checked individually ("NU" columns: non-unique)
enum class Variant { set, list };

struct FactualityScores {
  double prec_s_nu = 0;  // hypothesis entities found in the source document
  double prec_s_u = 0;
  double prec_t_nu = 0;  // hypothesis vs reference summary
  double recall_t_nu = 0;
  double f1_t_nu = 0;
  double prec_t_u = 0;
  double recall_t_u = 0;
  double f1_t_u = 0;
};

struct TargetScores {
  double prec_t = 0;
  double recall_t = 0;
  double f1_t = 0;
};

// Raw match/total counts behind the eight scores, for micro aggregation.
struct FactualityCounts {
  int s_matched_nu = 0, s_total_nu = 0;  // prec_s list
  int s_matched_u = 0, s_total_u = 0;    // prec_s set
  int p_matched_nu = 0, p_total_nu = 0;  // prec_t list
  int p_matched_u = 0, p_total_u = 0;    // prec_t set
  int r_matched_nu = 0, r_total_nu = 0;  // recall_t list
  int r_matched_u = 0, r_total_u = 0;    // recall_t set
};

// Fraction of hypothesis entities present in the source. Empty hypothesis
// entity collection -> 1.0 (vacuous precision; nothing asserted, nothing
// wrong).
double precision_source(const EntityList& hyp, std::string_view source_text,
                        const EntityList& source, Variant variant);

// prec_t over hypothesis entities vs the reference, recall_t over reference
// entities vs the hypothesis (same partial-match rule in both directions),
// f1 = 2PR/(P+R) with 0/0 -> 0. Empty-side conventions: no hypothesis
// entities -> prec_t = 1.0; no reference entities -> recall_t = 1.0.
TargetScores target_scores(const EntityList& hyp, std::string_view hyp_text,
                           const EntityList& ref, std::string_view ref_text,
                           Variant variant);

// Extracts the three entity lists once and computes all eight values.
FactualityScores score_sample(std::string_view source_text,
                              std::string_view ref_text,
                              std::string_view hyp_text);
FactualityScores score_sample(std::string_view source_text,
                              std::string_view ref_text,
                              std::string_view hyp_text,
                              const EntityExtractor& extractor);

// Same computation, reported as counts (for micro-averaged corpus scores).
FactualityCounts count_sample(std::string_view source_text,
                              std::string_view ref_text,
                              std::string_view hyp_text,
                              const EntityExtractor& extractor);

inline double f1_of(double p, double r) {
  return (p + r) > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

}  // namespace finsum
