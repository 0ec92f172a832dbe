#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "synsetrank/graph.hpp"
#include "synsetrank/markov.hpp"
#include "synsetrank/rankers.hpp"

namespace synsetrank {

// Positive/negative annotations over a subset of nodes. Both classes must be
// present, otherwise AUC is undefined.
class GoldLabels {
public:
  GoldLabels(std::vector<NodeId> nodes, std::vector<std::uint8_t> positive);

  // TSV rows `node<TAB>0|1`.
  static GoldLabels load_tsv(const std::filesystem::path& path, NodeId node_count);

  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const NodeId> nodes() const noexcept { return nodes_; }
  std::span<const std::uint8_t> positive() const noexcept { return positive_; }
  std::size_t positive_count() const noexcept { return positive_count_; }
  std::size_t negative_count() const noexcept { return nodes_.size() - positive_count_; }
  NodeId max_node() const noexcept { return max_node_; }

private:
  std::vector<NodeId> nodes_;          // sorted ascending
  std::vector<std::uint8_t> positive_; // parallel to nodes_
  std::size_t positive_count_{0};
  NodeId max_node_{0};
};

// One relation's evaluation bundle: graph, frequency distribution, and the
// validation/test gold splits.
struct RelationDataset {
  std::string name;
  LabeledGraph graph;
  FrequencyDistribution p0;
  GoldLabels validation;
  GoldLabels test;

  // Reads edges.tsv (self-describing `# nodes= labels=` header), freq.tsv,
  // gold.valid.tsv and gold.test.tsv from a directory.
  static RelationDataset load_dir(const std::filesystem::path& dir, bool reverse_augment);
};

// Mann-Whitney AUC: over all (positive, negative) gold pairs, the fraction
// where the positive outscores the negative, ties counting one half. Exactly
// antisymmetric under score negation.
double auc(std::span<const double> scores, const GoldLabels& gold);
double auc(const Ranking& ranking, const GoldLabels& gold);

enum class WalkMethod { pagerank, synsetrank };

const char* walk_method_name(WalkMethod method);

// Exhaustive hyperparameter grid, enumerated alpha-major, then beta, then
// steps; argmax ties go to the earliest configuration.
struct GridSpec {
  std::vector<double> alphas;
  std::vector<double> betas;
  std::vector<int> steps_list;

  // alpha, beta in {0.0, 0.2, ..., 1.0}, steps in {1, ..., 5}: 180 configs.
  static GridSpec defaults();

  void validate() const;
  std::size_t config_count() const noexcept;
  WalkParams config(std::size_t index) const;
};

struct GridResult {
  GridSpec grid;
  WalkParams best_params{};
  std::size_t best_index{0};
  double best_validation_auc{0.0};
  std::vector<double> validation_auc; // per configuration, grid order
  double test_auc{0.0};
};

struct CommonGridResult {
  GridSpec grid;
  WalkParams best_params{};
  std::size_t best_index{0};
  double best_mean_validation_auc{0.0};
  std::vector<double> mean_validation_auc; // per configuration, grid order
  std::vector<std::string> relation_names;
  std::vector<double> test_auc; // per relation, at the shared best_params
  double mean_test_auc{0.0};
};

// Evaluates every configuration on the validation gold and reports the test
// AUC at the winner. No early stopping.
GridResult grid_search_per_relation(const RelationDataset& dataset, WalkMethod method,
                                    const GridSpec& grid, int jobs = 1);

// One shared configuration maximizing the unweighted mean validation AUC.
CommonGridResult grid_search_common(std::span<const RelationDataset> datasets,
                                    WalkMethod method, const GridSpec& grid,
                                    int jobs = 1);

std::string grid_result_csv(const GridResult& result);
std::string grid_result_csv(const CommonGridResult& result);

// Six-method comparison: Frequency, Moro (top_k tuned on validation),
// PageRank and SynsetRank with per-relation and with common parameters.
struct CompareReport {
  static constexpr std::array<const char*, 6> kColumns = {
      "frequency", "moro", "pagerank", "pagerank_common",
      "synsetrank", "synsetrank_common"};

  std::vector<std::string> relations;
  std::vector<std::array<double, 6>> values; // test AUC per relation
  std::array<double, 6> average{};
  std::vector<int> moro_top_k;      // chosen per relation
  WalkParams pagerank_common{};
  WalkParams synsetrank_common{};

  std::string text() const; // aligned table, 4 decimals
  std::string csv() const;  // same numbers, same precision
};

inline const std::array<int, 5> kDefaultMoroKs = {10, 25, 50, 100, 200};

CompareReport compare_table(std::span<const RelationDataset> datasets,
                            const GridSpec& grid, std::span<const int> moro_ks,
                            int jobs = 1);

} // namespace synsetrank
