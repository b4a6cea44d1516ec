#include "finsum/overlap.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <unordered_map>

namespace finsum {
namespace {

double f1(double p, double r) { return (p + r) > 0 ? 2 * p * r / (p + r) : 0; }

const std::string& key_of(const Token& t, bool use_stems) {
  return use_stems ? t.stem : t.lower;
}

// Staged alignment search. Stage quotas (how many pairs each equality class
// contributes) are fixed by the counts alone; the search only decides which
// occurrences pair up, minimizing the number of chunks. Exhaustive DFS with
// feasibility and bound pruning; a node budget turns pathological inputs into
// "best alignment found so far", whose first candidate is the in-order greedy
// alignment.
struct Aligner {
  int nh = 0, nr = 0;
  std::vector<int> hl, hs, rl, rs;  // lower/stem class id per token
  std::vector<int> q1;              // remaining stage-1 quota per lower class
  std::vector<int> q2;              // remaining stage-2 quota per stem class
  std::vector<int> q1stem;          // sum of q1 over the lowers of each stem
  std::vector<int> rem_h_lower, rem_h_stem;      // hyp positions >= h
  std::vector<int> ref_free_lower, ref_free_stem;  // unused ref tokens
  std::vector<std::vector<int>> ref_by_lower, ref_by_stem;
  std::vector<char> used;
  int m_target = 0, matched = 0, chunks = 0, best_chunks = INT_MAX;
  int last_h = -5, last_r = -5;
  long long nodes = 0;
  static constexpr long long kBudget = 500000;

  void search(int h) {
    if (matched == m_target) {
      best_chunks = std::min(best_chunks, chunks);
      return;
    }
    if (h >= nh || chunks >= best_chunks) return;
    // keep exploring until at least one complete alignment exists
    if (++nodes > kBudget && best_chunks != INT_MAX) return;

    const int c = hl[h], s = hs[h];

    auto try_pair = [&](int j, bool stage1) {
      const int cj = rl[j];
      used[j] = 1;
      --ref_free_lower[cj];
      --ref_free_stem[s];
      if (stage1) {
        --q1[c];
        --q1stem[s];
      } else {
        --q2[s];
      }
      ++matched;
      const int add = (last_h == h - 1 && last_r == j - 1) ? 0 : 1;
      chunks += add;
      const int ph = last_h, pr = last_r;
      last_h = h;
      last_r = j;
      --rem_h_lower[c];
      --rem_h_stem[s];

      search(h + 1);

      ++rem_h_lower[c];
      ++rem_h_stem[s];
      last_h = ph;
      last_r = pr;
      chunks -= add;
      --matched;
      if (stage1) {
        ++q1[c];
        ++q1stem[s];
      } else {
        ++q2[s];
      }
      ++ref_free_stem[s];
      ++ref_free_lower[cj];
      used[j] = 0;
    };

    // run-extending candidate first (good solutions early make the bound
    // bite), then the rest in ascending position
    auto for_candidates = [&](const std::vector<int>& list, auto&& fn) {
      const int want = (last_h == h - 1) ? last_r + 1 : -1;
      if (want >= 0 && want < nr && !used[want] &&
          std::binary_search(list.begin(), list.end(), want))
        fn(want);
      for (int j : list)
        if (!used[j] && j != want) fn(j);
    };

    if (q1[c] > 0)
      for_candidates(ref_by_lower[c], [&](int j) { try_pair(j, true); });

    if (q2[s] > 0 && rem_h_lower[c] - 1 >= q1[c] &&
        rem_h_stem[s] - 1 >= q1stem[s] + q2[s] - 1) {
      for_candidates(ref_by_stem[s], [&](int j) {
        if (ref_free_lower[rl[j]] - 1 < q1[rl[j]]) return;  // starves stage 1
        try_pair(j, false);
      });
    }

    if (rem_h_lower[c] - 1 >= q1[c] &&
        rem_h_stem[s] - 1 >= q1stem[s] + q2[s]) {
      --rem_h_lower[c];
      --rem_h_stem[s];
      search(h + 1);
      ++rem_h_lower[c];
      ++rem_h_stem[s];
    }
  }
};

}  // namespace

RougeScore rouge_n(const std::vector<Token>& hyp, const std::vector<Token>& ref,
                   int n, bool use_stems) {
  NgramCounts h = ngrams(hyp, n, use_stems);
  NgramCounts r = ngrams(ref, n, use_stems);
  long long overlap = 0;
  for (const auto& [gram, count] : h) {
    auto it = r.find(gram);
    if (it != r.end()) overlap += std::min(count, it->second);
  }
  auto total = [n](const std::vector<Token>& t) -> long long {
    return t.size() >= static_cast<std::size_t>(n)
               ? static_cast<long long>(t.size()) - n + 1
               : 0;
  };
  const long long ht = total(hyp), rt = total(ref);
  RougeScore s;
  s.precision = ht > 0 ? double(overlap) / double(ht) : 0.0;
  s.recall = rt > 0 ? double(overlap) / double(rt) : 0.0;
  s.f1 = f1(s.precision, s.recall);
  return s;
}

RougeScore rouge_l(const std::vector<Token>& hyp, const std::vector<Token>& ref,
                   bool use_stems) {
  const std::size_t m = hyp.size(), n = ref.size();
  RougeScore s;
  if (m == 0 || n == 0) return s;
  // two-row LCS table
  std::vector<int> prev(n + 1, 0), cur(n + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    const std::string& hk = key_of(hyp[i - 1], use_stems);
    for (std::size_t j = 1; j <= n; ++j) {
      cur[j] = hk == key_of(ref[j - 1], use_stems)
                   ? prev[j - 1] + 1
                   : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  const int lcs = prev[n];
  s.precision = double(lcs) / double(m);
  s.recall = double(lcs) / double(n);
  s.f1 = f1(s.precision, s.recall);
  return s;
}

MeteorDetail meteor_detail(const std::vector<Token>& hyp,
                           const std::vector<Token>& ref) {
  MeteorDetail d;
  const int nh = static_cast<int>(hyp.size());
  const int nr = static_cast<int>(ref.size());
  if (nh == 0 || nr == 0) return d;

  Aligner a;
  a.nh = nh;
  a.nr = nr;
  std::unordered_map<std::string, int> lower_ids, stem_ids;
  std::vector<int> stem_of_lower;
  auto lower_id = [&](const Token& t) {
    auto [it, fresh] = lower_ids.try_emplace(t.lower, int(lower_ids.size()));
    if (fresh) {
      auto [sit, _] = stem_ids.try_emplace(t.stem, int(stem_ids.size()));
      stem_of_lower.push_back(sit->second);
    }
    return it->second;
  };
  for (const Token& t : hyp) {
    a.hl.push_back(lower_id(t));
    a.hs.push_back(stem_of_lower[a.hl.back()]);
  }
  for (const Token& t : ref) {
    a.rl.push_back(lower_id(t));
    a.rs.push_back(stem_of_lower[a.rl.back()]);
  }
  const int n_lower = static_cast<int>(lower_ids.size());
  const int n_stem = static_cast<int>(stem_ids.size());

  std::vector<int> cnt_h_lower(n_lower, 0), cnt_r_lower(n_lower, 0);
  for (int c : a.hl) ++cnt_h_lower[c];
  for (int c : a.rl) ++cnt_r_lower[c];
  a.q1.resize(n_lower);
  for (int c = 0; c < n_lower; ++c)
    a.q1[c] = std::min(cnt_h_lower[c], cnt_r_lower[c]);

  std::vector<int> left_h_stem(n_stem, 0), left_r_stem(n_stem, 0);
  a.q1stem.assign(n_stem, 0);
  for (int c = 0; c < n_lower; ++c) {
    const int s = stem_of_lower[c];
    left_h_stem[s] += cnt_h_lower[c] - a.q1[c];
    left_r_stem[s] += cnt_r_lower[c] - a.q1[c];
    a.q1stem[s] += a.q1[c];
  }
  a.q2.resize(n_stem);
  for (int s = 0; s < n_stem; ++s)
    a.q2[s] = std::min(left_h_stem[s], left_r_stem[s]);

  for (int c = 0; c < n_lower; ++c) a.m_target += a.q1[c];
  for (int s = 0; s < n_stem; ++s) a.m_target += a.q2[s];

  d.matches = a.m_target;
  d.precision = double(a.m_target) / double(nh);
  d.recall = double(a.m_target) / double(nr);
  if (a.m_target == 0) return d;

  a.rem_h_lower = cnt_h_lower;
  a.rem_h_stem.assign(n_stem, 0);
  for (int s : a.hs) ++a.rem_h_stem[s];
  a.ref_free_lower = cnt_r_lower;
  a.ref_free_stem.assign(n_stem, 0);
  for (int s : a.rs) ++a.ref_free_stem[s];
  a.ref_by_lower.resize(n_lower);
  a.ref_by_stem.resize(n_stem);
  for (int j = 0; j < nr; ++j) {
    a.ref_by_lower[a.rl[j]].push_back(j);
    a.ref_by_stem[a.rs[j]].push_back(j);
  }
  a.used.assign(nr, 0);
  a.search(0);

  d.chunks = a.best_chunks;
  d.fmean = 10.0 * d.precision * d.recall / (d.recall + 9.0 * d.precision);
  d.penalty = 0.5 * std::pow(double(d.chunks) / double(d.matches), 3.0);
  d.score = d.fmean * (1.0 - d.penalty);
  return d;
}

double meteor(const std::vector<Token>& hyp, const std::vector<Token>& ref) {
  return meteor_detail(hyp, ref).score;
}

EmbedScore embed_score(const std::vector<Token>& hyp,
                       const std::vector<Token>& ref,
                       EmbeddingProvider& provider) {
  EmbedScore s;
  if (hyp.empty() || ref.empty()) return s;
  std::vector<std::string> hw, rw;
  hw.reserve(hyp.size());
  rw.reserve(ref.size());
  for (const Token& t : hyp) hw.push_back(t.lower);
  for (const Token& t : ref) rw.push_back(t.lower);

  Eigen::MatrixXd eh = provider.embed(hw);
  Eigen::MatrixXd er = provider.embed(rw);
  auto normalize_rows = [](Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      double n = m.row(i).norm();
      if (n > 0) m.row(i) /= n;  // zero vectors keep cosine 0
    }
  };
  normalize_rows(eh);
  normalize_rows(er);

  Eigen::MatrixXd sim = eh * er.transpose();
  s.precision = sim.rowwise().maxCoeff().mean();
  s.recall = sim.colwise().maxCoeff().mean();
  s.f1 = f1(s.precision, s.recall);
  return s;
}

}  // namespace finsum
