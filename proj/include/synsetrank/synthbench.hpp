#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "synsetrank/eval.hpp"

namespace synsetrank {

// Planted-relevance benchmark spec. The generator hides a densely interlinked
// cluster of relevant nodes behind high-degree, high-frequency seed hubs:
// frequency alone cannot see the cluster, and a plain random walk dilutes the
// hubs' influence over their many edges, while low-degree noise nodes push
// comparatively strong mass onto irrelevant neighbors. Degree skew controls
// the power-law exponent of background out-degrees.
struct PlantedSpec {
  std::uint32_t node_count{3000};
  std::uint32_t label_count{3}; // pre-augmentation
  std::uint32_t relevant_cluster_size{60};
  double seed_frequency_mass{0.7};
  double noise_frequency_mass{0.3};
  double degree_skew{2.2};
  double negatives_per_positive{35.0};
  std::uint64_t rng_seed{1};

  void validate() const;
};

// Deterministic in the spec: the same spec yields the same dataset, and the
// same files, byte for byte. The returned graph is unaugmented; gold
// positives are the cluster plus the seeds, split evenly (per class) into
// disjoint validation and test sets.
RelationDataset generate_planted(const PlantedSpec& spec);

// Writes edges.tsv (with `# nodes= labels=` header), freq.tsv,
// gold.valid.tsv, gold.test.tsv and a spec.txt echo into dir.
void write_dataset_dir(const RelationDataset& dataset, const PlantedSpec& spec,
                       const std::filesystem::path& dir);

// Per-relation specs for a multi-relation benchmark: sub-seeds plus mild
// jitter of cluster size, noise mass and degree skew around the base values.
std::vector<PlantedSpec> benchmark_specs(const PlantedSpec& base,
                                         std::uint32_t relation_count,
                                         std::uint64_t master_seed);

} // namespace synsetrank
