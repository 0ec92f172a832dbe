// Acceptance suite: runs every gate criterion and prints one PASS/FAIL line
// per criterion. Exits nonzero if any criterion fails. Criterion 9 drives the
// actual CLI binary (path in SYNSETRANK_CLI).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "synsetrank/synthbench.hpp"

using namespace synsetrank;

namespace {

struct Criterion {
  int id;
  std::string name;
  double time_limit_seconds; // 0 = unlimited
  std::function<bool(std::string&)> run;
};

bool check(bool condition, std::string& detail, const std::string& message) {
  if (!condition && detail.empty()) detail = message;
  return condition;
}

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

const std::vector<double> kGridValues{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};

// --- criterion 1 & 2: stochasticity and conservation --------------------

bool run_stochasticity(std::string& detail) {
  Rng rng(1001);
  for (int trial = 0; trial < 100; ++trial) {
    LabeledGraph g = fixtures::random_graph(rng, 500, 8);
    RowStochastic q = build_row_normalized(g, ones(g.label_count()));
    std::vector<double> restart = fixtures::random_distribution(rng, g.node_count());
    for (double alpha : kGridValues) {
      for (double beta : kGridValues) {
        TransitionSystem ts = build_transition(q, restart, {alpha, beta, 1});
        for (NodeId i = 0; i <= g.node_count(); ++i) {
          double deviation = std::abs(ts.row_sum(i) - 1.0);
          if (!check(deviation <= 1e-12, detail,
                     "row " + std::to_string(i) + " deviates by " +
                         std::to_string(deviation) + " at alpha=" +
                         std::to_string(alpha) + " beta=" + std::to_string(beta)))
            return false;
        }
      }
    }
  }
  return true;
}

bool run_conservation(std::string& detail) {
  Rng rng(1001); // same graph stream as criterion 1
  for (int trial = 0; trial < 100; ++trial) {
    LabeledGraph g = fixtures::random_graph(rng, 500, 8);
    RowStochastic q = build_row_normalized(g, ones(g.label_count()));
    std::vector<double> restart = fixtures::random_distribution(rng, g.node_count());
    for (double alpha : kGridValues) {
      for (double beta : kGridValues) {
        TransitionSystem ts = build_transition(q, restart, {alpha, beta, 1});
        Distribution p = initial_distribution(restart);
        for (int t = 1; t <= 50; ++t) {
          p = ts.walk(p, 1);
          double sum = 0.0;
          for (double v : p) sum += v;
          if (!check(std::abs(sum - 1.0) <= 1e-10, detail,
                     "mass drifted to " + std::to_string(sum) + " after " +
                         std::to_string(t) + " steps"))
            return false;
        }
      }
    }
  }
  return true;
}

// --- criterion 3: worked fixture ------------------------------------------

bool run_fixture(std::string& detail) {
  WalkParams params{0.0, 0.0, 1};
  Ranking synset = rank_synsetrank(fixtures::g4(), ones(4), fixtures::g4_p0(), params);
  const double synset_expected[4] = {0.2, 0.2, 0.4, 0.2};
  for (int i = 0; i < 4; ++i)
    if (!check(std::abs(synset.scores[i] - synset_expected[i]) <= 1e-12, detail,
               "synsetrank score " + std::to_string(i) + " = " +
                   std::to_string(synset.scores[i])))
      return false;

  Ranking pagerank = rank_pagerank(fixtures::g4(), ones(4), fixtures::g4_p0(), params);
  const double pagerank_expected[4] = {0.25, 1.0 / 6, 5.0 / 12, 1.0 / 6};
  for (int i = 0; i < 4; ++i)
    if (!check(std::abs(pagerank.scores[i] - pagerank_expected[i]) <= 1e-12, detail,
               "pagerank score " + std::to_string(i) + " = " +
                   std::to_string(pagerank.scores[i])))
      return false;
  return true;
}

// --- criterion 4: equal influence ------------------------------------------

bool equal_influence_holds(const LabeledGraph& g, std::span<const double> p0_raw,
                           std::string& detail) {
  std::vector<double> w = ones(g.label_count());
  std::vector<double> d = g.weighted_out_degree(w);
  double z = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) z += p0_raw[i] * d[i];
  if (z <= 0.0) return true; // nothing to deliver

  FrequencyDistribution p0(std::vector<double>(p0_raw.begin(), p0_raw.end()));
  FrequencyDistribution p_hat = degree_adjust(p0, d);
  RowStochastic q = build_row_normalized(g, w);

  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (d[i] == 0.0) continue;
    double expected = p0_raw[i] / z;
    for (std::size_t e = q.row_ptr[i]; e < q.row_ptr[i + 1]; ++e) {
      NodeId j = q.col[e];
      double multiplicity = 0.0;
      for (LabelId l = 0; l < g.label_count(); ++l)
        if (g.has_edge(l, i, j)) multiplicity += 1.0;
      double per_edge = p_hat.raw()[i] * q.val[e] / multiplicity;
      if (!check(std::abs(per_edge - expected) <= 1e-12, detail,
                 "edge (" + std::to_string(i) + "," + std::to_string(j) +
                     ") delivers " + std::to_string(per_edge) + " instead of " +
                     std::to_string(expected)))
        return false;
    }
  }
  return true;
}

bool run_equal_influence(std::string& detail) {
  std::vector<double> g4_p0{0.5, 0.5, 0.0, 0.0};
  if (!equal_influence_holds(fixtures::g4(), g4_p0, detail)) return false;

  Rng rng(4004);
  int done = 0;
  while (done < 50) {
    LabeledGraph g = fixtures::random_graph(rng, 200, 6);
    if (g.edge_count() == 0) continue;
    std::vector<double> p0(g.node_count());
    for (double& v : p0) v = 0.01 + rng.uniform_real();
    if (!equal_influence_holds(g, p0, detail)) return false;
    ++done;
  }
  return true;
}

// --- criterion 5: monte carlo oracle ---------------------------------------

bool run_monte_carlo(std::string& detail) {
  Rng rng(5005);
  const NodeId n = 200;
  std::vector<Edge> edges;
  for (int e = 0; e < 800; ++e)
    edges.push_back({static_cast<NodeId>(rng.uniform_index(n)),
                     static_cast<NodeId>(rng.uniform_index(n)),
                     static_cast<LabelId>(rng.uniform_index(3))});
  LabeledGraph g(n, 3, std::move(edges));

  std::vector<double> restart = fixtures::random_distribution(rng, n);
  RowStochastic q = build_row_normalized(g, ones(3));
  TransitionSystem ts = build_transition(q, restart, {0.2, 0.2, 3});
  Distribution start = initial_distribution(restart);

  Distribution exact = ts.walk(start, 3);
  Distribution empirical = ts.monte_carlo_walk(start, 3, 1000000, 50505);
  for (std::size_t i = 0; i < exact.size(); ++i) {
    double gap = std::abs(exact[i] - empirical[i]);
    if (!check(gap <= 5e-3, detail,
               "entry " + std::to_string(i) + " off by " + std::to_string(gap)))
      return false;
  }
  return true;
}

// --- criterion 6: regular-graph equivalence ---------------------------------

bool run_regular_equivalence(std::string& detail) {
  Rng rng(6006);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 2 + static_cast<int>(rng.uniform_index(5));
    NodeId n = 20 + static_cast<NodeId>(rng.uniform_index(41));
    LabeledGraph g = fixtures::k_out_regular(rng, n, k);
    std::vector<double> p0(n);
    for (double& v : p0) v = 0.01 + rng.uniform_real();
    FrequencyDistribution freq(p0);

    for (double alpha : kGridValues) {
      for (double beta : kGridValues) {
        for (int steps = 1; steps <= 5; ++steps) {
          WalkParams params{alpha, beta, steps};
          Ranking pagerank = rank_pagerank(g, ones(1), freq, params);
          Ranking synset = rank_synsetrank(g, ones(1), freq, params);
          if (!check(pagerank.order == synset.order, detail,
                     "orders diverge on graph " + std::to_string(trial) +
                         " at alpha=" + std::to_string(alpha) + " beta=" +
                         std::to_string(beta) + " t=" + std::to_string(steps)))
            return false;
        }
      }
    }
  }
  return true;
}

// --- criterion 7: auc oracle -------------------------------------------------

bool run_auc_oracle(std::string& detail) {
  Rng rng(7007);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 5 + rng.uniform_index(150);
    bool coarse = rng.uniform_index(2) == 0;
    std::vector<double> scores(n);
    for (double& s : scores)
      s = coarse ? static_cast<double>(rng.uniform_index(5)) : rng.uniform_real();

    std::vector<NodeId> nodes;
    std::vector<std::uint8_t> flags;
    for (NodeId i = 0; i < n; ++i) {
      if (rng.uniform_index(5) == 0) continue;
      nodes.push_back(i);
      flags.push_back(rng.uniform_index(4) == 0 ? 1 : 0);
    }
    if (nodes.size() < 2) {
      nodes = {0, 1};
      flags = {1, 0};
    }
    bool has_pos = false, has_neg = false;
    for (std::uint8_t f : flags) (f ? has_pos : has_neg) = true;
    if (!has_pos) flags.front() = 1;
    if (!has_neg) flags.back() = 0;
    GoldLabels gold(std::move(nodes), std::move(flags));

    double fast = auc(scores, gold);
    double slow = fixtures::auc_bruteforce(scores, gold);
    if (!check(std::abs(fast - slow) <= 1e-12, detail,
               "fast " + std::to_string(fast) + " vs oracle " + std::to_string(slow)))
      return false;

    std::vector<double> negated = scores;
    for (double& s : negated) s = -s;
    double mirrored = auc(negated, gold);
    if (!check(fast + mirrored == 1.0, detail,
               "antisymmetry violated: " + std::to_string(fast) + " + " +
                   std::to_string(mirrored) + " != 1"))
      return false;
  }
  return true;
}

// --- criterion 8: grid protocol ----------------------------------------------

bool run_grid_protocol(std::string& detail) {
  GridSpec grid = GridSpec::defaults();
  if (!check(grid.config_count() == 180, detail,
             "default grid enumerates " + std::to_string(grid.config_count())))
    return false;

  PlantedSpec spec;
  spec.node_count = 400;
  spec.relevant_cluster_size = 14;
  std::vector<RelationDataset> sets;
  for (std::uint64_t seed : {81ULL, 82ULL, 83ULL}) {
    spec.rng_seed = seed;
    RelationDataset ds = generate_planted(spec);
    ds.name = "planted" + std::to_string(seed);
    ds.graph = ds.graph.augment_with_reverse_labels();
    sets.push_back(std::move(ds));
  }

  CommonGridResult common = grid_search_common(sets, WalkMethod::synsetrank, grid, 2);
  if (!check(common.mean_validation_auc.size() == 180, detail,
             "common search table has " +
                 std::to_string(common.mean_validation_auc.size()) + " cells"))
    return false;

  // Exhaustive recomputation from scratch, one fresh pipeline per cell.
  std::size_t best = 0;
  std::vector<double> recomputed(grid.config_count());
  for (std::size_t c = 0; c < grid.config_count(); ++c) {
    double mean = 0.0;
    for (const RelationDataset& ds : sets) {
      Ranking r = rank_synsetrank(ds.graph, ones(ds.graph.label_count()), ds.p0,
                                  grid.config(c));
      mean += auc(r, ds.validation);
    }
    recomputed[c] = mean / static_cast<double>(sets.size());
    if (recomputed[c] > recomputed[best]) best = c;
  }
  for (std::size_t c = 0; c < grid.config_count(); ++c)
    if (!check(common.mean_validation_auc[c] == recomputed[c], detail,
               "cell " + std::to_string(c) + " differs from recomputation"))
      return false;
  if (!check(common.best_index == best, detail,
             "argmax " + std::to_string(common.best_index) + " vs exhaustive " +
                 std::to_string(best)))
    return false;
  return true;
}

// --- criterion 9: directional benchmark --------------------------------------

std::string locate_cli() {
  if (const char* env = std::getenv("SYNSETRANK_CLI")) return env;
  // fallback: the CLI sits next to this binary's tree under tools/
  std::error_code ec;
  auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    auto candidate = self.parent_path().parent_path() / "tools" / "synsetrank";
    if (std::filesystem::exists(candidate)) return candidate.string();
  }
  return {};
}

bool run_directional_benchmark(std::string& detail) {
  std::string cli = locate_cli();
  if (!check(!cli.empty(), detail,
             "CLI not found: set SYNSETRANK_CLI or build tools/synsetrank"))
    return false;

  fixtures::TempDir tmp("acceptance");
  std::string bench = (tmp.path / "bench").string();
  std::string csv = (tmp.path / "report.csv").string();

  std::string gen_cmd = cli + " gen --relations 13 --seed 7 --out " + bench +
                        " > /dev/null";
  if (!check(std::system(gen_cmd.c_str()) == 0, detail, "gen exited nonzero"))
    return false;
  std::string compare_cmd = cli + " compare --data " + bench + " --csv " +
                            csv + " > " + (tmp.path / "table.txt").string();
  if (!check(std::system(compare_cmd.c_str()) == 0, detail, "compare exited nonzero"))
    return false;

  std::ifstream in(csv);
  std::string line, average;
  int relation_rows = 0;
  std::getline(in, line); // header
  while (std::getline(in, line)) {
    if (line.rfind("average,", 0) == 0) average = line;
    else ++relation_rows;
  }
  if (!check(relation_rows == 13, detail,
             "expected 13 relation rows, saw " + std::to_string(relation_rows)))
    return false;
  if (!check(!average.empty(), detail, "no average row in the report")) return false;

  std::vector<double> values;
  std::istringstream fields(average);
  std::string field;
  std::getline(fields, field, ','); // label
  while (std::getline(fields, field, ',')) values.push_back(std::stod(field));
  if (!check(values.size() == 6, detail, "average row has the wrong arity")) return false;

  double frequency = values[0], pagerank = values[2], synsetrank = values[4];
  std::ostringstream summary;
  summary << "mean test AUC: frequency=" << frequency << " pagerank=" << pagerank
          << " synsetrank=" << synsetrank;
  if (!check(synsetrank >= pagerank + 0.02, detail,
             summary.str() + " — synsetrank lead over pagerank below 0.02"))
    return false;
  if (!check(synsetrank >= frequency + 0.03, detail,
             summary.str() + " — synsetrank lead over frequency below 0.03"))
    return false;
  detail = summary.str(); // informational on pass
  return true;
}

} // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "stochasticity: every transition row sums to 1 within 1e-12", 30.0,
       run_stochasticity},
      {2, "conservation: |sum p(t) - 1| <= 1e-10 for t = 1..50", 0.0, run_conservation},
      {3, "worked fixture scores within 1e-12", 0.0, run_fixture},
      {4, "equal per-edge influence of the degree-adjusted start", 0.0,
       run_equal_influence},
      {5, "monte carlo oracle within 5e-3 of the exact walk", 60.0, run_monte_carlo},
      {6, "synsetrank equals pagerank on regular graphs across the grid", 0.0,
       run_regular_equivalence},
      {7, "fast AUC matches the pairwise oracle; exact antisymmetry", 0.0,
       run_auc_oracle},
      {8, "grid protocol: 180 cells, common argmax matches exhaustive recheck", 0.0,
       run_grid_protocol},
      {9, "directional benchmark: synsetrank >= pagerank+0.02 and >= frequency+0.03",
       600.0, run_directional_benchmark},
  };

  int failures = 0;
  for (Criterion& criterion : criteria) {
    auto begin = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    if (ok && criterion.time_limit_seconds > 0.0 &&
        elapsed > criterion.time_limit_seconds) {
      ok = false;
      detail = "exceeded the " + std::to_string(criterion.time_limit_seconds) +
               "s budget";
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL",
                criterion.id, criterion.name.c_str(), elapsed,
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
