#include "synsetrank/synthbench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "synsetrank/rng.hpp"
#include "synsetrank/text.hpp"

namespace synsetrank {

namespace {

std::uint32_t seed_count_for(const PlantedSpec& spec) {
  return std::max<std::uint32_t>(3, spec.relevant_cluster_size / 3);
}

// k distinct picks from pool, never `exclude`, never repeating. Rejection
// sampling; k is small relative to the pool everywhere this is used.
std::vector<NodeId> pick_distinct(Rng& rng, const std::vector<NodeId>& pool,
                                  std::size_t k, NodeId exclude) {
  std::vector<NodeId> picked;
  picked.reserve(k);
  while (picked.size() < k) {
    NodeId candidate = pool[rng.uniform_index(pool.size())];
    if (candidate == exclude) continue;
    if (std::find(picked.begin(), picked.end(), candidate) != picked.end()) continue;
    picked.push_back(candidate);
  }
  return picked;
}

int power_law_degree(Rng& rng, double skew, int minimum, int cap) {
  double u = rng.uniform_real();
  double x = minimum * std::pow(1.0 - u, -1.0 / (skew - 1.0));
  int deg = static_cast<int>(x);
  return std::clamp(deg, minimum, cap);
}

GoldLabels make_gold(const std::vector<NodeId>& positives,
                     const std::vector<NodeId>& negatives) {
  std::vector<NodeId> nodes;
  std::vector<std::uint8_t> flags;
  nodes.reserve(positives.size() + negatives.size());
  for (NodeId v : positives) {
    nodes.push_back(v);
    flags.push_back(1);
  }
  for (NodeId v : negatives) {
    nodes.push_back(v);
    flags.push_back(0);
  }
  return GoldLabels(std::move(nodes), std::move(flags));
}

} // namespace

void PlantedSpec::validate() const {
  std::uint32_t seeds = seed_count_for(*this);
  if (relevant_cluster_size < 2)
    throw Error::invalid("infeasible spec: relevant cluster needs at least 2 nodes");
  if (relevant_cluster_size >= node_count)
    throw Error::invalid("infeasible spec: cluster larger than the node count");
  if (static_cast<std::uint64_t>(relevant_cluster_size) + seeds + 4 > node_count)
    throw Error::invalid("infeasible spec: cluster plus seeds leave no background nodes");
  if (label_count < 1) throw Error::invalid("infeasible spec: need at least one label");
  if (!(seed_frequency_mass > 0.0 && seed_frequency_mass <= 1.0))
    throw Error::invalid("infeasible spec: seed frequency mass must lie in (0, 1]");
  if (noise_frequency_mass < 0.0)
    throw Error::invalid("infeasible spec: noise frequency mass must be non-negative");
  if (!(degree_skew > 1.0))
    throw Error::invalid("infeasible spec: degree skew must exceed 1");
  if (!(negatives_per_positive > 0.0))
    throw Error::invalid("infeasible spec: negatives-per-positive ratio must be positive");
}

RelationDataset generate_planted(const PlantedSpec& spec) {
  spec.validate();
  Rng rng(spec.rng_seed);

  const NodeId n = spec.node_count;
  const std::uint32_t cluster_size = spec.relevant_cluster_size;
  const std::uint32_t seeds = seed_count_for(spec);

  // Roles: cluster, seed hubs, background (noise nodes are background nodes
  // that will carry frequency mass).
  std::vector<std::uint32_t> chosen =
      rng.sample_without_replacement(n, cluster_size + seeds);
  std::vector<NodeId> cluster(chosen.begin(), chosen.begin() + cluster_size);
  std::vector<NodeId> seed_nodes(chosen.begin() + cluster_size, chosen.end());

  std::vector<char> role(n, 0); // 0 background, 1 cluster, 2 seed
  for (NodeId v : cluster) role[v] = 1;
  for (NodeId v : seed_nodes) role[v] = 2;
  std::vector<NodeId> background;
  background.reserve(n - cluster_size - seeds);
  for (NodeId v = 0; v < n; ++v)
    if (role[v] == 0) background.push_back(v);

  std::uint32_t noise_count = std::min<std::uint32_t>(
      static_cast<std::uint32_t>(background.size()),
      std::max<std::uint32_t>(20, n / 50));
  std::vector<std::uint32_t> noise_picks =
      rng.sample_without_replacement(static_cast<std::uint32_t>(background.size()),
                                     noise_count);
  std::vector<NodeId> noise_nodes;
  noise_nodes.reserve(noise_count);
  for (std::uint32_t idx : noise_picks) noise_nodes.push_back(background[idx]);

  // Everything a non-seed node may point at; the cluster is reachable only
  // through the seeds, which is the planted signal.
  std::vector<NodeId> non_cluster;
  non_cluster.reserve(n - cluster_size);
  for (NodeId v = 0; v < n; ++v)
    if (role[v] != 1) non_cluster.push_back(v);

  std::vector<Edge> edges;
  auto random_label = [&] { return static_cast<LabelId>(rng.uniform_index(spec.label_count)); };

  // Dense cluster interlinks.
  for (NodeId c : cluster) {
    std::size_t m = 3 + rng.uniform_index(3); // 3..5
    m = std::min(m, cluster.size() - 1);
    for (NodeId target : pick_distinct(rng, cluster, m, c))
      edges.push_back({c, target, random_label()});
  }
  // Each cluster node hangs off a few seed hubs.
  for (NodeId c : cluster) {
    std::size_t a = 2 + rng.uniform_index(2); // 2..3
    a = std::min(a, seed_nodes.size());
    for (NodeId s : pick_distinct(rng, seed_nodes, a, c))
      edges.push_back({s, c, random_label()});
  }
  // Seed hubs spread over many background targets, so their per-edge
  // influence under a plain walk is far thinner than that of the low-degree
  // noise nodes.
  for (NodeId s : seed_nodes) {
    std::size_t h = 60 + rng.uniform_index(81); // 60..140
    h = std::min(h, non_cluster.size() - 1);
    for (NodeId target : pick_distinct(rng, non_cluster, h, s))
      edges.push_back({s, target, random_label()});
  }
  // Background with power-law out-degrees.
  for (NodeId b : background) {
    int deg = power_law_degree(rng, spec.degree_skew, 2, 40);
    std::size_t d = std::min<std::size_t>(deg, non_cluster.size() - 1);
    for (NodeId target : pick_distinct(rng, non_cluster, d, b))
      edges.push_back({b, target, random_label()});
  }

  LabeledGraph graph(n, spec.label_count, std::move(edges), false);

  // Frequency: mass on a random subset of the seeds plus noise mass on the
  // noise nodes. Cluster members never occur in the "corpus".
  std::vector<double> freq(n, 0.0);
  std::uint32_t active =
      std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::lround(0.7 * seeds)));
  std::vector<std::uint32_t> active_picks = rng.sample_without_replacement(seeds, active);
  {
    std::vector<double> w(active);
    double total = 0.0;
    for (double& v : w) {
      v = 0.5 + rng.uniform_real();
      total += v;
    }
    for (std::uint32_t i = 0; i < active; ++i)
      freq[seed_nodes[active_picks[i]]] = spec.seed_frequency_mass * w[i] / total;
  }
  if (spec.noise_frequency_mass > 0.0 && !noise_nodes.empty()) {
    std::vector<double> w(noise_nodes.size());
    double total = 0.0;
    for (double& v : w) {
      v = 0.5 + rng.uniform_real();
      total += v;
    }
    for (std::size_t i = 0; i < noise_nodes.size(); ++i)
      freq[noise_nodes[i]] = spec.noise_frequency_mass * w[i] / total;
  }

  // Gold: positives are cluster plus seeds; negatives sampled from the
  // background at the requested ratio.
  std::vector<NodeId> positives = cluster;
  positives.insert(positives.end(), seed_nodes.begin(), seed_nodes.end());
  std::size_t wanted_negatives = static_cast<std::size_t>(
      spec.negatives_per_positive * static_cast<double>(positives.size()));
  wanted_negatives = std::clamp<std::size_t>(wanted_negatives, 2, background.size());
  std::vector<std::uint32_t> negative_picks = rng.sample_without_replacement(
      static_cast<std::uint32_t>(background.size()),
      static_cast<std::uint32_t>(wanted_negatives));
  std::vector<NodeId> negatives;
  negatives.reserve(wanted_negatives);
  for (std::uint32_t idx : negative_picks) negatives.push_back(background[idx]);

  // Disjoint validation/test halves, split per class so both sides keep both
  // classes.
  rng.shuffle(positives);
  rng.shuffle(negatives);
  std::size_t pos_half = (positives.size() + 1) / 2;
  std::size_t neg_half = (negatives.size() + 1) / 2;
  std::vector<NodeId> valid_pos(positives.begin(), positives.begin() + pos_half);
  std::vector<NodeId> test_pos(positives.begin() + pos_half, positives.end());
  std::vector<NodeId> valid_neg(negatives.begin(), negatives.begin() + neg_half);
  std::vector<NodeId> test_neg(negatives.begin() + neg_half, negatives.end());

  return RelationDataset{"",
                         std::move(graph),
                         FrequencyDistribution(std::move(freq)),
                         make_gold(valid_pos, valid_neg),
                         make_gold(test_pos, test_neg)};
}

namespace {

void write_gold(const GoldLabels& gold, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error::io("cannot write gold labels '" + path.string() + "'");
  for (std::size_t i = 0; i < gold.size(); ++i)
    out << gold.nodes()[i] << '\t' << (gold.positive()[i] ? 1 : 0) << '\n';
  if (!out) throw Error::io("failed writing gold labels '" + path.string() + "'");
}

} // namespace

void write_dataset_dir(const RelationDataset& dataset, const PlantedSpec& spec,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  dataset.graph.save_edge_list(dir / "edges.tsv", /*with_header=*/true);

  {
    std::ofstream out(dir / "freq.tsv");
    if (!out) throw Error::io("cannot write '" + (dir / "freq.tsv").string() + "'");
    auto raw = dataset.p0.raw();
    for (std::size_t v = 0; v < raw.size(); ++v)
      if (raw[v] > 0.0) out << v << '\t' << format_sig12(raw[v]) << '\n';
  }
  write_gold(dataset.validation, dir / "gold.valid.tsv");
  write_gold(dataset.test, dir / "gold.test.tsv");

  {
    std::ofstream out(dir / "spec.txt");
    if (!out) throw Error::io("cannot write '" + (dir / "spec.txt").string() + "'");
    out << "node_count=" << spec.node_count << '\n'
        << "label_count=" << spec.label_count << '\n'
        << "relevant_cluster_size=" << spec.relevant_cluster_size << '\n'
        << "seed_frequency_mass=" << format_sig12(spec.seed_frequency_mass) << '\n'
        << "noise_frequency_mass=" << format_sig12(spec.noise_frequency_mass) << '\n'
        << "degree_skew=" << format_sig12(spec.degree_skew) << '\n'
        << "negatives_per_positive=" << format_sig12(spec.negatives_per_positive) << '\n'
        << "rng_seed=" << spec.rng_seed << '\n';
  }
}

std::vector<PlantedSpec> benchmark_specs(const PlantedSpec& base,
                                         std::uint32_t relation_count,
                                         std::uint64_t master_seed) {
  if (relation_count < 1)
    throw Error::invalid("benchmark needs at least one relation");
  base.validate();

  std::vector<PlantedSpec> specs;
  specs.reserve(relation_count);
  std::uint64_t chain = master_seed;
  for (std::uint32_t r = 0; r < relation_count; ++r) {
    Rng jitter(splitmix64(chain));
    PlantedSpec spec = base;
    double cluster_scale = 0.75 + 0.5 * jitter.uniform_real();
    spec.relevant_cluster_size = std::max<std::uint32_t>(
        4, static_cast<std::uint32_t>(std::lround(cluster_scale * base.relevant_cluster_size)));
    spec.noise_frequency_mass =
        std::min(0.95, base.noise_frequency_mass * (0.6 + 0.8 * jitter.uniform_real()));
    spec.degree_skew = std::clamp(base.degree_skew - 0.2 + 0.6 * jitter.uniform_real(),
                                  1.5, 3.5);
    spec.rng_seed = jitter.next_u64();
    spec.validate();
    specs.push_back(spec);
  }
  return specs;
}

} // namespace synsetrank
