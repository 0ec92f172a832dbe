#include "synsetrank/markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "synsetrank/rng.hpp"

namespace synsetrank {

namespace {

constexpr double kRestartTolerance = 1e-9;
constexpr double kNegativeNoise = 1e-15;

double checked_nonnegative(double v, const char* where) {
  if (v < 0.0) {
    if (v < -kNegativeNoise)
      throw Error::invalid(std::string(where) + ": negative entry " + std::to_string(v));
    return 0.0; // clamp float noise
  }
  return v;
}

void check_probability_vector(std::span<const double> p, const char* what) {
  double sum = 0.0;
  for (double v : p) {
    if (v < 0.0) throw Error::invalid(std::string(what) + " has a negative entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRestartTolerance)
    throw Error::invalid(std::string(what) + " is not normalized (sum = " +
                         std::to_string(sum) + ")");
}

} // namespace

void WalkParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error::invalid("alpha must lie in [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw Error::invalid("beta must lie in [0, 1]");
  if (steps < 1) throw Error::invalid("steps must be at least 1");
}

double RowStochastic::row_sum(NodeId i) const {
  double s = 0.0;
  for (std::size_t e = row_ptr[i]; e < row_ptr[i + 1]; ++e) s += val[e];
  return s;
}

double RowStochastic::entry(NodeId i, NodeId j) const {
  for (std::size_t e = row_ptr[i]; e < row_ptr[i + 1]; ++e)
    if (col[e] == j) return val[e];
  return 0.0;
}

RowStochastic build_row_normalized(const LabeledGraph& graph,
                                   std::span<const double> weights) {
  const NodeId n = graph.node_count();
  std::vector<double> degree = graph.weighted_out_degree(weights);

  RowStochastic q;
  q.size = n;
  q.row_ptr.assign(n + 1, 0);

  // One linear pass per row: merge the per-label sorted destination lists,
  // accumulating parallel-edge weight onto a single entry.
  std::vector<double> weight_to(n, 0.0);
  std::vector<NodeId> touched;
  for (NodeId i = 0; i < n; ++i) {
    touched.clear();
    for (LabelId l = 0; l < graph.label_count(); ++l) {
      double w = weights[l];
      if (w == 0.0) continue;
      for (NodeId j : graph.out_neighbors(l, i)) {
        if (weight_to[j] == 0.0) touched.push_back(j);
        weight_to[j] += w;
      }
    }
    if (degree[i] > 0.0) {
      std::sort(touched.begin(), touched.end());
      for (NodeId j : touched) {
        q.col.push_back(j);
        q.val.push_back(weight_to[j] / degree[i]);
      }
    }
    for (NodeId j : touched) weight_to[j] = 0.0;
    q.row_ptr[i + 1] = q.col.size();
  }
  return q;
}

Distribution initial_distribution(std::span<const double> node_probs) {
  Distribution p(node_probs.begin(), node_probs.end());
  p.push_back(0.0);
  return p;
}

TransitionSystem build_transition(const RowStochastic& q_prime,
                                  std::span<const double> restart,
                                  const WalkParams& params) {
  params.validate();
  const NodeId n = q_prime.size;
  if (restart.size() != n)
    throw Error::invalid("restart distribution length does not match node count");
  check_probability_vector(restart, "restart distribution");

  const double alpha = params.alpha;
  const double beta = params.beta;
  const double edge_scale = (1.0 - alpha) * (1.0 - beta);
  const double self_link = (1.0 - alpha) * beta;

  TransitionSystem ts;
  ts.node_count_ = n;
  ts.alpha_ = alpha;
  ts.beta_ = beta;
  ts.restart_.assign(restart.begin(), restart.end());
  ts.sink_rate_.resize(n);
  ts.row_ptr_.assign(n + 2, 0);

  for (NodeId i = 0; i < n; ++i) {
    bool dangling = q_prime.row_empty(i);
    double k = dangling ? 1.0 - (1.0 - alpha) * beta : alpha;
    ts.sink_rate_[i] = k;

    // Row layout: scaled Q' entries with the self-link folded into the
    // diagonal (they accumulate when Q' already has a self-loop), then the
    // sink column. Zero entries are dropped.
    bool diagonal_emitted = false;
    for (std::size_t e = q_prime.row_ptr[i]; e < q_prime.row_ptr[i + 1]; ++e) {
      NodeId j = q_prime.col[e];
      double v = edge_scale * q_prime.val[e];
      if (j == i) {
        v += self_link;
        diagonal_emitted = true;
      }
      v = checked_nonnegative(v, "transition entry");
      if (v > 0.0) {
        ts.col_.push_back(j);
        ts.val_.push_back(v);
      }
    }
    if (!diagonal_emitted && self_link > 0.0) {
      // Keep columns sorted: the diagonal slots in after smaller columns.
      std::size_t row_begin = ts.row_ptr_[i];
      std::size_t insert = row_begin;
      while (insert < ts.col_.size() && ts.col_[insert] < i) ++insert;
      ts.col_.insert(ts.col_.begin() + insert, i);
      ts.val_.insert(ts.val_.begin() + insert, self_link);
    }
    if (k > 0.0) {
      ts.col_.push_back(n);
      ts.val_.push_back(k);
    }
    ts.row_ptr_[i + 1] = ts.col_.size();
  }

  // Sink-source row: the restart distribution, zero to itself.
  for (NodeId j = 0; j < n; ++j) {
    if (restart[j] > 0.0) {
      ts.col_.push_back(j);
      ts.val_.push_back(restart[j]);
    }
  }
  ts.row_ptr_[n + 1] = ts.col_.size();
  return ts;
}

double TransitionSystem::sink_rate(NodeId i) const {
  if (i >= node_count_) throw Error::invalid("node out of range");
  return sink_rate_[i];
}

double TransitionSystem::entry(NodeId i, NodeId j) const {
  if (i > node_count_ || j > node_count_) throw Error::invalid("state out of range");
  for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e)
    if (col_[e] == j) return val_[e];
  return 0.0;
}

double TransitionSystem::row_sum(NodeId i) const {
  if (i > node_count_) throw Error::invalid("state out of range");
  double s = 0.0;
  for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) s += val_[e];
  return s;
}

void TransitionSystem::step(const Distribution& in, Distribution& out) const {
  out.assign(node_count_ + 1, 0.0);
  for (NodeId i = 0; i <= node_count_; ++i) {
    double p = in[i];
    if (p == 0.0) continue;
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e)
      out[col_[e]] += p * val_[e];
  }
}

Distribution TransitionSystem::walk(const Distribution& start, int steps) const {
  if (start.size() != static_cast<std::size_t>(node_count_) + 1)
    throw Error::invalid("start distribution must have length N+1");
  if (steps < 0) throw Error::invalid("steps must be non-negative");
  check_probability_vector(start, "start distribution");

  Distribution current = start;
  Distribution next(node_count_ + 1);
  for (int t = 0; t < steps; ++t) {
    step(current, next);
    current.swap(next);
  }
  return current;
}

Distribution TransitionSystem::monte_carlo_walk(const Distribution& start, int steps,
                                                std::uint64_t walkers,
                                                std::uint64_t seed) const {
  if (start.size() != static_cast<std::size_t>(node_count_) + 1)
    throw Error::invalid("start distribution must have length N+1");
  if (steps < 0) throw Error::invalid("steps must be non-negative");
  if (walkers == 0) throw Error::invalid("walker count must be positive");
  check_probability_vector(start, "start distribution");

  const NodeId n = node_count_;

  // Per-row cumulative sums for categorical sampling.
  std::vector<double> row_cum(val_.size());
  for (NodeId i = 0; i <= n; ++i) {
    double acc = 0.0;
    for (std::size_t e = row_ptr_[i]; e < row_ptr_[i + 1]; ++e) {
      acc += val_[e];
      row_cum[e] = acc;
    }
  }
  std::vector<double> start_cum(start.size());
  {
    double acc = 0.0;
    for (std::size_t i = 0; i < start.size(); ++i) {
      acc += start[i];
      start_cum[i] = acc;
    }
  }

  auto sample_prefix = [](std::span<const double> cum, double u) -> std::size_t {
    auto it = std::upper_bound(cum.begin(), cum.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cum.begin());
    if (k == cum.size()) {
      // u fell into the rounding tail beyond cum.back(); clamp to the last
      // slot with actual width (zero-probability slots repeat the total).
      k = cum.size() - 1;
      while (k > 0 && cum[k] == cum[k - 1]) --k;
    }
    return k;
  };

  std::vector<std::uint64_t> counts(n + 1, 0);
  Rng rng(seed);
  for (std::uint64_t w = 0; w < walkers; ++w) {
    std::size_t state = sample_prefix(start_cum, rng.uniform_real());
    for (int t = 0; t < steps; ++t) {
      std::size_t begin = row_ptr_[state];
      std::size_t count = row_ptr_[state + 1] - begin;
      // Rows always sum to 1, so every state has outgoing entries.
      std::span<const double> cum(row_cum.data() + begin, count);
      std::size_t pick = sample_prefix(cum, rng.uniform_real());
      state = col_[begin + pick];
    }
    counts[state]++;
  }

  Distribution empirical(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    empirical[i] = static_cast<double>(counts[i]) / static_cast<double>(walkers);
  return empirical;
}

} // namespace synsetrank
