// Shared test fixtures and independent oracles. The oracles recompute results
// from first principles (dense matrices, exhaustive pair enumeration) and must
// stay free of the sparse/ranking code paths they check.
#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "synsetrank/eval.hpp"
#include "synsetrank/graph.hpp"
#include "synsetrank/markov.hpp"
#include "synsetrank/rankers.hpp"
#include "synsetrank/rng.hpp"

namespace fixtures {

using namespace synsetrank;

// Four nodes, label A: 0->1, 0->2, 0->3; label B: 1->2.
inline LabeledGraph g4_forward() {
  return LabeledGraph(4, 2, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {1, 2, 1}});
}

inline LabeledGraph g4() { return g4_forward().augment_with_reverse_labels(); }

inline FrequencyDistribution g4_p0() {
  return FrequencyDistribution({0.5, 0.5, 0.0, 0.0});
}

// Random multigraph for property tests; roughly uniform edges, occasionally
// augmented if requested.
inline LabeledGraph random_graph(Rng& rng, NodeId max_nodes = 500,
                                 LabelId max_labels = 8, bool allow_augment = true) {
  NodeId n = 2 + static_cast<NodeId>(rng.uniform_index(max_nodes - 1));
  LabelId labels = 1 + static_cast<LabelId>(rng.uniform_index(max_labels));
  std::size_t edge_count = rng.uniform_index(static_cast<std::uint64_t>(n) * 4 + 1);
  std::vector<Edge> edges;
  edges.reserve(edge_count);
  for (std::size_t e = 0; e < edge_count; ++e) {
    edges.push_back({static_cast<NodeId>(rng.uniform_index(n)),
                     static_cast<NodeId>(rng.uniform_index(n)),
                     static_cast<LabelId>(rng.uniform_index(labels))});
  }
  LabeledGraph g(n, labels, std::move(edges));
  if (allow_augment && rng.uniform_index(2) == 1) g = g.augment_with_reverse_labels();
  return g;
}

// Directed graph where every node has out-degree k (distinct targets, no
// self-loops), so the weighted out-degree is constant.
inline LabeledGraph k_out_regular(Rng& rng, NodeId n, int k) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    std::vector<NodeId> picked;
    while (picked.size() < static_cast<std::size_t>(k)) {
      NodeId t = static_cast<NodeId>(rng.uniform_index(n));
      if (t == i) continue;
      if (std::find(picked.begin(), picked.end(), t) != picked.end()) continue;
      picked.push_back(t);
      edges.push_back({i, t, 0});
    }
  }
  return LabeledGraph(n, 1, std::move(edges));
}

// Normalized distribution over n nodes; roughly a third of the entries zero.
inline std::vector<double> random_distribution(Rng& rng, std::size_t n) {
  std::vector<double> p(n, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform_index(3) == 0) continue;
    p[i] = 0.05 + rng.uniform_real();
    sum += p[i];
  }
  if (sum == 0.0) {
    p[rng.uniform_index(n)] = 1.0;
    sum = 1.0;
  }
  for (double& v : p) v /= sum;
  return p;
}

// Dense (N+1)x(N+1) transition matrix computed straight from the edge lists
// and the block definition, independent of the sparse construction.
inline std::vector<std::vector<double>> dense_transition(const LabeledGraph& g,
                                                         std::span<const double> w,
                                                         std::span<const double> restart,
                                                         double alpha, double beta) {
  const NodeId n = g.node_count();
  std::vector<std::vector<double>> weight(n, std::vector<double>(n, 0.0));
  g.for_each_edge([&](NodeId i, NodeId j, LabelId l) { weight[i][j] += w[l]; });

  std::vector<double> degree(n, 0.0);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = 0; j < n; ++j) degree[i] += weight[i][j];

  std::vector<std::vector<double>> q(n + 1, std::vector<double>(n + 1, 0.0));
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      double q_prime = degree[i] > 0.0 ? weight[i][j] / degree[i] : 0.0;
      q[i][j] = (1.0 - alpha) * ((1.0 - beta) * q_prime + (i == j ? beta : 0.0));
    }
    q[i][n] = degree[i] > 0.0 ? alpha : 1.0 - (1.0 - alpha) * beta;
  }
  for (NodeId j = 0; j < n; ++j) q[n][j] = restart[j];
  return q;
}

inline std::vector<double> dense_walk(const std::vector<std::vector<double>>& q,
                                      std::vector<double> p, int steps) {
  const std::size_t m = q.size();
  for (int t = 0; t < steps; ++t) {
    std::vector<double> next(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) next[j] += p[i] * q[i][j];
    p = std::move(next);
  }
  return p;
}

// Exhaustive pairwise Mann-Whitney statistic, ties counting one half.
inline double auc_bruteforce(std::span<const double> scores, const GoldLabels& gold) {
  double wins = 0.0, ties = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < gold.size(); ++a) {
    if (!gold.positive()[a]) continue;
    double pos = scores[gold.nodes()[a]];
    for (std::size_t b = 0; b < gold.size(); ++b) {
      if (gold.positive()[b]) continue;
      double neg = scores[gold.nodes()[b]];
      if (pos > neg) wins += 1.0;
      else if (pos == neg) ties += 1.0;
      ++pairs;
    }
  }
  return (wins + 0.5 * ties) / static_cast<double>(pairs);
}

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    std::string tmpl =
        (std::filesystem::temp_directory_path() / ("synsetrank_" + tag + "_XXXXXX"))
            .string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (::mkdtemp(buf.data()) == nullptr)
      throw std::runtime_error("mkdtemp failed for " + tmpl);
    path = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline std::filesystem::path write_file(const std::filesystem::path& path,
                                        const std::string& body) {
  std::ofstream out(path);
  out << body;
  return path;
}

} // namespace fixtures
