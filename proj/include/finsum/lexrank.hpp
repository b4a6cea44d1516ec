#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "finsum/text.hpp"

namespace finsum {

struct SelectionBudget {
  int max_sentences = 15;
  int max_tokens = 4000;  // whitespace tokens
  double damping = 0.85;
  double epsilon = 1e-6;
  int max_iterations = 100;
  // similarity entries below the threshold are zeroed and the survivors set
  // to 1 before normalization (binary LexRank); continuous mode when absent
  std::optional<double> threshold;
};

struct SentenceGraph {
  std::vector<Sentence> sentences;
  std::unordered_map<std::string, double> idf;  // stem -> idf
  Eigen::MatrixXd sim;         // symmetric, [0,1], unit diagonal
  Eigen::VectorXd centrality;  // filled by centrality(); sums to 1
};

// Normalize rows to sum 1; all-zero rows become uniform. Works on any dense
// Eigen expression and preserves its scalar type.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
row_stochastic(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m = a;
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    Scalar s = m.row(i).sum();
    if (s > Scalar(0))
      m.row(i) /= s;
    else
      m.row(i).setConstant(Scalar(1) / Scalar(m.cols()));
  }
  return m;
}

// Damped power iteration on a row-stochastic matrix:
//   p <- d/N + (1-d) * M^T p
// starting uniform, stopping when the L1 change drops below epsilon or after
// max_iterations. Returns the stationary vector; iteration count lands in
// iterations_out when given.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> stationary_distribution(
    const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar damping,
    typename Derived::Scalar epsilon, int max_iterations,
    int* iterations_out = nullptr) {
  using Scalar = typename Derived::Scalar;
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
  const Eigen::Index n = m.rows();
  Vector p = Vector::Constant(n, Scalar(1) / Scalar(n));
  int it = 0;
  while (it < max_iterations) {
    Vector next = Vector::Constant(n, damping / Scalar(n)) +
                  (Scalar(1) - damping) * (m.transpose() * p);
    Scalar change = (next - p).template lpNorm<1>();
    p = std::move(next);
    ++it;
    if (change < epsilon) break;
  }
  if (iterations_out) *iterations_out = it;
  return p;
}

// idf-modified-cosine similarity graph over non-stopword stems.
// idf(w) = ln((N+1)/(n_w+1)) + 1 with n_w = sentences containing stem w.
// Throws std::invalid_argument on an empty sentence list.
SentenceGraph build_graph(const std::vector<Sentence>& sentences);

// Continuous (or thresholded) LexRank centrality. Stores the result on the
// graph and returns it.
const Eigen::VectorXd& centrality(SentenceGraph& g, const SelectionBudget& b);

// Greedy budgeted selection over (centrality desc, index asc): a sentence is
// taken while the count stays within max_sentences and the running whitespace
// token total stays within max_tokens. If the top-ranked sentence alone
// busts the token cap it is taken anyway, so non-empty input always yields at
// least one sentence. Output is in original document order.
// Requires centrality to be computed (throws std::logic_error otherwise).
std::vector<Sentence> select(const SentenceGraph& g, const SelectionBudget& b);

// build_graph + centrality + select in one call.
std::vector<Sentence> extract_sentences(const std::vector<Sentence>& sentences,
                                        const SelectionBudget& b);

}  // namespace finsum
