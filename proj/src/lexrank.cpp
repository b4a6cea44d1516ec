#include "finsum/lexrank.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace finsum {
namespace {

bool has_alnum(std::string_view s) {
  for (char c : s)
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
        (c >= '0' && c <= '9'))
      return true;
  return false;
}

}  // namespace

SentenceGraph build_graph(const std::vector<Sentence>& sentences) {
  if (sentences.empty())
    throw std::invalid_argument("build_graph: empty sentence list");
  const int n = static_cast<int>(sentences.size());

  // term frequencies over content stems (stopwords and punctuation-only
  // tokens carry no signal and would link every pair of sentences)
  std::vector<std::unordered_map<std::string, double>> tf(n);
  std::unordered_map<std::string, int> df;
  for (int i = 0; i < n; ++i) {
    for (const Token& t : sentences[i].tokens)
      if (!t.is_stopword && has_alnum(t.stem)) tf[i][t.stem] += 1.0;
    for (const auto& [stem, _] : tf[i]) ++df[stem];
  }

  SentenceGraph g;
  g.sentences = sentences;
  for (const auto& [stem, count] : df)
    g.idf[stem] = std::log((n + 1.0) / (count + 1.0)) + 1.0;

  std::vector<double> norm(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (const auto& [stem, f] : tf[i]) {
      double w = f * g.idf[stem];
      s += w * w;
    }
    norm[i] = std::sqrt(s);
  }

  g.sim = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) g.sim(i, i) = 1.0;
  for (int i = 0; i < n; ++i) {
    if (norm[i] == 0.0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (norm[j] == 0.0) continue;
      const auto& small = tf[i].size() <= tf[j].size() ? tf[i] : tf[j];
      const auto& large = tf[i].size() <= tf[j].size() ? tf[j] : tf[i];
      double dot = 0.0;
      for (const auto& [stem, f] : small) {
        auto it = large.find(stem);
        if (it == large.end()) continue;
        double idf = g.idf[stem];
        dot += f * it->second * idf * idf;
      }
      double v = std::min(1.0, dot / (norm[i] * norm[j]));
      g.sim(i, j) = v;
      g.sim(j, i) = v;
    }
  }
  return g;
}

const Eigen::VectorXd& centrality(SentenceGraph& g, const SelectionBudget& b) {
  Eigen::MatrixXd w;
  if (b.threshold)
    w = (g.sim.array() >= *b.threshold).cast<double>();
  else
    w = g.sim;
  Eigen::MatrixXd m = row_stochastic(w);
  g.centrality =
      stationary_distribution(m, b.damping, b.epsilon, b.max_iterations);
  return g.centrality;
}

std::vector<Sentence> select(const SentenceGraph& g, const SelectionBudget& b) {
  const int n = static_cast<int>(g.sentences.size());
  if (g.centrality.size() != n)
    throw std::logic_error("select: centrality not computed");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) {
    if (g.centrality(a) != g.centrality(c))
      return g.centrality(a) > g.centrality(c);
    return a < c;
  });

  std::vector<int> taken;
  long long tokens = 0;
  for (int idx : order) {
    if (static_cast<int>(taken.size()) >= b.max_sentences) break;
    int t = whitespace_token_count(g.sentences[idx].text);
    // the top-ranked sentence is always taken, even when it alone busts the
    // token cap — a summary must not be empty
    if (!taken.empty() && tokens + t > b.max_tokens) continue;
    taken.push_back(idx);
    tokens += t;
  }
  std::sort(taken.begin(), taken.end());

  std::vector<Sentence> out;
  out.reserve(taken.size());
  for (int idx : taken) out.push_back(g.sentences[idx]);
  return out;
}

std::vector<Sentence> extract_sentences(const std::vector<Sentence>& sentences,
                                        const SelectionBudget& b) {
  SentenceGraph g = build_graph(sentences);
  centrality(g, b);
  return select(g, b);
}

}  // namespace finsum
