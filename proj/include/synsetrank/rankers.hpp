#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "synsetrank/graph.hpp"
#include "synsetrank/markov.hpp"

namespace synsetrank {

// Per-node frequency mass (raw counts or probabilities; rankers always
// L1-normalize before use, so only ratios matter). At least one entry must be
// strictly positive.
class FrequencyDistribution {
public:
  explicit FrequencyDistribution(std::vector<double> raw);

  // TSV rows `node<TAB>value`; unlisted nodes have zero frequency.
  static FrequencyDistribution load_tsv(const std::filesystem::path& path,
                                        NodeId node_count);

  std::size_t size() const noexcept { return raw_.size(); }
  std::span<const double> raw() const noexcept { return raw_; }
  std::vector<double> normalized() const;

private:
  std::vector<double> raw_;
};

// Scores plus the deterministic ranking order: descending score, ties broken
// by higher frequency, then lower node index.
struct Ranking {
  std::vector<double> scores;
  std::vector<NodeId> order;
};

Ranking make_ranking(std::vector<double> scores, std::span<const double> tie_frequency);

// Baseline: rank by the frequency distribution itself.
Ranking rank_frequency(const FrequencyDistribution& p0);

// p-hat = (p0 * d) / ||p0 * d||_1 (elementwise product). Errors if the
// product is identically zero (every frequent node is isolated).
FrequencyDistribution degree_adjust(const FrequencyDistribution& p0,
                                    std::span<const double> degree);

// Taxed, self-looped random walk started and restarted from p0.
Ranking rank_pagerank(const LabeledGraph& graph, std::span<const double> weights,
                      const FrequencyDistribution& p0, const WalkParams& params);

// Same walk, but both the start vector and the restart row use the
// degree-adjusted distribution, so each node's per-edge influence on its
// neighbors is independent of its own out-degree.
Ranking rank_synsetrank(const LabeledGraph& graph, std::span<const double> weights,
                        const FrequencyDistribution& p0, const WalkParams& params);

struct MoroConfig {
  int top_k{1};
};

// Three-tier baseline: the top_k most frequent nodes, their direct in/out
// neighbors, then everyone else; within a tier, relative frequency orders.
Ranking rank_moro(const LabeledGraph& graph, const FrequencyDistribution& p0,
                  const MoroConfig& config);

// `rank<TAB>node<TAB>score` rows, ranks starting at 1, 12 significant digits.
std::string format_ranking_tsv(const Ranking& ranking);
void write_ranking_tsv(const Ranking& ranking, const std::filesystem::path& path);

} // namespace synsetrank
