#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "synsetrank/graph.hpp"

namespace synsetrank {

// Walk hyperparameters: alpha taxes mass into the sink-source node each step,
// beta lets a walker stay put, steps is the exact number of iterations run
// (steps is a tuned parameter, not a convergence budget).
struct WalkParams {
  double alpha{0.0};
  double beta{0.0};
  int steps{1};

  void validate() const;

  friend bool operator==(const WalkParams&, const WalkParams&) = default;
};

// Q': per-node outgoing probabilities, the weighted edge counts of each row
// divided by the row's weighted out-degree. Rows of nodes with zero weighted
// out-degree are empty (dangling).
struct RowStochastic {
  NodeId size{0};
  std::vector<std::size_t> row_ptr; // size + 1
  std::vector<NodeId> col;
  std::vector<double> val;

  bool row_empty(NodeId i) const { return row_ptr[i] == row_ptr[i + 1]; }
  double row_sum(NodeId i) const;
  double entry(NodeId i, NodeId j) const;
};

RowStochastic build_row_normalized(const LabeledGraph& graph,
                                   std::span<const double> weights);

// Probability vector over the N nodes plus the sink-source entry (index N).
using Distribution = std::vector<double>;

// Appends the zero sink-source entry to a node distribution.
Distribution initial_distribution(std::span<const double> node_probs);

// The (N+1)-state chain: the node block is (1-alpha){(1-beta)Q' + beta I},
// column N carries the sink rate k_i (alpha for nodes with outgoing mass,
// 1-(1-alpha)beta for dangling nodes), and row N re-emits the restart
// distribution. Every row sums to 1. Immutable once built; walks over a
// shared instance are safe to run concurrently.
class TransitionSystem {
public:
  NodeId node_count() const noexcept { return node_count_; } // N, chain has N+1 states
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  std::span<const double> restart() const noexcept { return restart_; }
  double sink_rate(NodeId i) const;

  double entry(NodeId i, NodeId j) const; // full (N+1)x(N+1) lookup
  double row_sum(NodeId i) const;

  // start^T Q^steps by sparse vector-matrix products; steps = 0 returns start.
  Distribution walk(const Distribution& start, int steps) const;

  // Empirical distribution of `walkers` independent trajectories, the
  // simulation oracle for walk(). Deterministic given the seed.
  Distribution monte_carlo_walk(const Distribution& start, int steps,
                                std::uint64_t walkers, std::uint64_t seed) const;

  friend TransitionSystem build_transition(const RowStochastic&,
                                           std::span<const double>,
                                           const WalkParams&);

private:
  void step(const Distribution& in, Distribution& out) const;

  NodeId node_count_{0};
  double alpha_{0.0};
  double beta_{0.0};
  std::vector<std::size_t> row_ptr_; // node_count + 2 (rows 0..N)
  std::vector<NodeId> col_;
  std::vector<double> val_;
  std::vector<double> restart_;   // length N
  std::vector<double> sink_rate_; // k, length N
};

// restart must be a probability vector over the N nodes (L1 tolerance 1e-9);
// q_prime rows must each sum to 1 or be empty.
TransitionSystem build_transition(const RowStochastic& q_prime,
                                  std::span<const double> restart,
                                  const WalkParams& params);

} // namespace synsetrank
