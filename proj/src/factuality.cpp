#include "finsum/factuality.hpp"

namespace finsum {
namespace {

struct MatchCount {
  int matched = 0;
  int total = 0;
  double ratio_or(double when_empty) const {
    return total > 0 ? double(matched) / double(total) : when_empty;
  }
};

const Entity& representative(const EntityList& l, const std::string& norm) {
  for (const Entity& e : l.entities)
    if (e.normalized == norm) return e;
  return l.entities.front();  // unreachable: as_set mirrors entities
}

// how many of `from`'s entities appear in (`ctx`, `target`); set variant
// tests each distinct normalized form once, via its first occurrence
MatchCount count_matches(const EntityList& from, const MatchContext& ctx,
                         const EntityList& target, Variant variant) {
  MatchCount mc;
  if (variant == Variant::list) {
    mc.total = static_cast<int>(from.entities.size());
    for (const Entity& e : from.entities)
      if (entity_match(e, ctx, target)) ++mc.matched;
  } else {
    mc.total = static_cast<int>(from.as_set.size());
    for (const std::string& norm : from.as_set)
      if (entity_match(representative(from, norm), ctx, target)) ++mc.matched;
  }
  return mc;
}

}  // namespace

double precision_source(const EntityList& hyp, std::string_view source_text,
                        const EntityList& source, Variant variant) {
  MatchContext ctx(source_text);
  return count_matches(hyp, ctx, source, variant).ratio_or(1.0);
}

TargetScores target_scores(const EntityList& hyp, std::string_view hyp_text,
                           const EntityList& ref, std::string_view ref_text,
                           Variant variant) {
  MatchContext ref_ctx(ref_text);
  MatchContext hyp_ctx(hyp_text);
  TargetScores s;
  // no hypothesis entities -> nothing asserted, precision vacuously 1;
  // no reference entities -> nothing to recover, recall vacuously 1
  s.prec_t = count_matches(hyp, ref_ctx, ref, variant).ratio_or(1.0);
  s.recall_t = count_matches(ref, hyp_ctx, hyp, variant).ratio_or(1.0);
  s.f1_t = f1_of(s.prec_t, s.recall_t);
  return s;
}

FactualityScores score_sample(std::string_view source_text,
                              std::string_view ref_text,
                              std::string_view hyp_text,
                              const EntityExtractor& extractor) {
  EntityList source = extractor.extract(source_text);
  EntityList ref = extractor.extract(ref_text);
  EntityList hyp = extractor.extract(hyp_text);
  MatchContext src_ctx(source_text);
  MatchContext ref_ctx(ref_text);
  MatchContext hyp_ctx(hyp_text);

  FactualityScores out;
  out.prec_s_nu =
      count_matches(hyp, src_ctx, source, Variant::list).ratio_or(1.0);
  out.prec_s_u =
      count_matches(hyp, src_ctx, source, Variant::set).ratio_or(1.0);

  out.prec_t_nu =
      count_matches(hyp, ref_ctx, ref, Variant::list).ratio_or(1.0);
  out.recall_t_nu =
      count_matches(ref, hyp_ctx, hyp, Variant::list).ratio_or(1.0);
  out.f1_t_nu = f1_of(out.prec_t_nu, out.recall_t_nu);

  out.prec_t_u = count_matches(hyp, ref_ctx, ref, Variant::set).ratio_or(1.0);
  out.recall_t_u =
      count_matches(ref, hyp_ctx, hyp, Variant::set).ratio_or(1.0);
  out.f1_t_u = f1_of(out.prec_t_u, out.recall_t_u);
  return out;
}

FactualityScores score_sample(std::string_view source_text,
                              std::string_view ref_text,
                              std::string_view hyp_text) {
  static const EntityExtractor extractor;
  return score_sample(source_text, ref_text, hyp_text, extractor);
}

FactualityCounts count_sample(std::string_view source_text,
                              std::string_view ref_text,
                              std::string_view hyp_text,
                              const EntityExtractor& extractor) {
  EntityList source = extractor.extract(source_text);
  EntityList ref = extractor.extract(ref_text);
  EntityList hyp = extractor.extract(hyp_text);
  MatchContext src_ctx(source_text);
  MatchContext ref_ctx(ref_text);
  MatchContext hyp_ctx(hyp_text);

  FactualityCounts c;
  auto fill = [](MatchCount mc, int& matched, int& total) {
    matched = mc.matched;
    total = mc.total;
  };
  fill(count_matches(hyp, src_ctx, source, Variant::list), c.s_matched_nu,
       c.s_total_nu);
  fill(count_matches(hyp, src_ctx, source, Variant::set), c.s_matched_u,
       c.s_total_u);
  fill(count_matches(hyp, ref_ctx, ref, Variant::list), c.p_matched_nu,
       c.p_total_nu);
  fill(count_matches(hyp, ref_ctx, ref, Variant::set), c.p_matched_u,
       c.p_total_u);
  fill(count_matches(ref, hyp_ctx, hyp, Variant::list), c.r_matched_nu,
       c.r_total_nu);
  fill(count_matches(ref, hyp_ctx, hyp, Variant::set), c.r_matched_u,
       c.r_total_u);
  return c;
}

}  // namespace finsum
