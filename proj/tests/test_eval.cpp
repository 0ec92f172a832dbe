#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support/fixtures.hpp"
#include "synsetrank/synthbench.hpp"

using namespace synsetrank;

namespace {

GoldLabels gold_of(std::vector<NodeId> nodes, std::vector<std::uint8_t> flags) {
  return GoldLabels(std::move(nodes), std::move(flags));
}

// Random scored instance over n nodes with a controllable amount of ties.
struct AucInstance {
  std::vector<double> scores;
  GoldLabels gold;
};

AucInstance random_auc_instance(Rng& rng) {
  std::size_t n = 5 + rng.uniform_index(120);
  bool coarse = rng.uniform_index(2) == 0; // coarse scores force ties
  std::vector<double> scores(n);
  for (double& s : scores)
    s = coarse ? static_cast<double>(rng.uniform_index(4)) : rng.uniform_real();

  std::vector<NodeId> nodes;
  std::vector<std::uint8_t> flags;
  for (NodeId i = 0; i < n; ++i) {
    if (rng.uniform_index(4) == 0) continue; // some nodes stay unlabeled
    nodes.push_back(i);
    flags.push_back(rng.uniform_index(3) == 0 ? 1 : 0);
  }
  // guarantee both classes
  if (nodes.size() < 2) {
    nodes = {0, 1};
    flags = {1, 0};
  }
  bool has_pos = false, has_neg = false;
  for (std::uint8_t f : flags) (f ? has_pos : has_neg) = true;
  if (!has_pos) flags.front() = 1;
  if (!has_neg) flags.back() = 0;
  return {std::move(scores), GoldLabels(std::move(nodes), std::move(flags))};
}

// One tiny dataset for grid tests: star 0 -> {1,2,3,4}, frequency on 0 and 5.
RelationDataset star_dataset(std::vector<NodeId> valid_pos, std::vector<NodeId> valid_neg,
                             std::vector<NodeId> test_pos, std::vector<NodeId> test_neg) {
  LabeledGraph g(8, 1, {{0, 1, 0}, {0, 2, 0}, {0, 3, 0}, {0, 4, 0}});
  std::vector<double> freq(8, 0.0);
  freq[0] = 0.9;
  freq[5] = 0.1;
  auto gold = [](const std::vector<NodeId>& pos, const std::vector<NodeId>& neg) {
    std::vector<NodeId> nodes = pos;
    std::vector<std::uint8_t> flags(pos.size(), 1);
    nodes.insert(nodes.end(), neg.begin(), neg.end());
    flags.insert(flags.end(), neg.size(), 0);
    return GoldLabels(std::move(nodes), std::move(flags));
  };
  return RelationDataset{"star", std::move(g), FrequencyDistribution(std::move(freq)),
                         gold(valid_pos, valid_neg), gold(test_pos, test_neg)};
}

} // namespace

TEST_CASE("auc on the worked example") {
  std::vector<double> scores{0.9, 0.8, 0.1, 0.05};
  GoldLabels gold = gold_of({0, 1, 2, 3}, {1, 0, 1, 0});
  CHECK(auc(scores, gold) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(fixtures::auc_bruteforce(scores, gold) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("auc extremes") {
  std::vector<double> separating{0.9, 0.8, 0.2, 0.1};
  CHECK(auc(separating, gold_of({0, 1, 2, 3}, {1, 1, 0, 0})) == 1.0);
  CHECK(auc(separating, gold_of({0, 1, 2, 3}, {0, 0, 1, 1})) == 0.0);
  std::vector<double> flat{0.5, 0.5, 0.5, 0.5};
  CHECK(auc(flat, gold_of({0, 1, 2, 3}, {1, 0, 1, 0})) == 0.5);
}

TEST_CASE("one-class gold labels are rejected") {
  CHECK_THROWS_WITH_AS(gold_of({0, 1}, {1, 1}), "AUC undefined: gold labels need both classes",
                       Error);
  CHECK_THROWS_AS(gold_of({0, 1}, {0, 0}), Error);
}

TEST_CASE("gold labels outside the score vector are rejected") {
  std::vector<double> scores{0.5, 0.4};
  CHECK_THROWS_AS(auc(scores, gold_of({0, 5}, {1, 0})), Error);
}

TEST_CASE("unlabeled nodes do not affect auc") {
  std::vector<double> scores{0.9, 0.8, 0.1, 0.05, 123.0, -7.0};
  GoldLabels gold = gold_of({0, 1, 2, 3}, {1, 0, 1, 0});
  CHECK(auc(scores, gold) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("fast auc matches the pairwise oracle, with exact antisymmetry") {
  Rng rng(31337);
  for (int trial = 0; trial < 300; ++trial) {
    AucInstance instance = random_auc_instance(rng);
    double fast = auc(instance.scores, instance.gold);
    double slow = fixtures::auc_bruteforce(instance.scores, instance.gold);
    CHECK(std::abs(fast - slow) <= 1e-12);

    std::vector<double> negated = instance.scores;
    for (double& s : negated) s = -s;
    double mirrored = auc(negated, instance.gold);
    CHECK(fast + mirrored == 1.0); // exact, not approximate
  }
}

TEST_CASE("auc is invariant under strictly increasing transforms") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    AucInstance instance = random_auc_instance(rng);
    double base = auc(instance.scores, instance.gold);

    std::vector<double> affine = instance.scores;
    for (double& s : affine) s = 2.0 * s + 1.0;
    CHECK(auc(affine, instance.gold) == base);

    std::vector<double> shrunk = instance.scores;
    for (double& s : shrunk) s = 0.25 * s - 3.0;
    CHECK(auc(shrunk, instance.gold) == base);
  }
}

TEST_CASE("gold label TSV parsing") {
  fixtures::TempDir tmp("eval");
  GoldLabels gold = GoldLabels::load_tsv(
      fixtures::write_file(tmp.path / "g.tsv", "3\t1\n0\t0\n2\t1\n"), 5);
  CHECK(gold.size() == 3);
  CHECK(gold.positive_count() == 2);
  CHECK(gold.nodes()[0] == 0); // sorted

  CHECK_THROWS_AS(GoldLabels::load_tsv(
                      fixtures::write_file(tmp.path / "bad.tsv", "0\t2\n1\t1\n"), 5),
                  Error);
  CHECK_THROWS_AS(GoldLabels::load_tsv(
                      fixtures::write_file(tmp.path / "dup.tsv", "0\t1\n0\t0\n"), 5),
                  Error);
  CHECK_THROWS_AS(GoldLabels::load_tsv(
                      fixtures::write_file(tmp.path / "oor.tsv", "9\t1\n0\t0\n"), 5),
                  Error);
}

TEST_CASE("the default grid enumerates 180 configurations alpha-major") {
  GridSpec grid = GridSpec::defaults();
  CHECK(grid.config_count() == 180);
  CHECK(grid.config(0) == WalkParams{0.0, 0.0, 1});
  CHECK(grid.config(1) == WalkParams{0.0, 0.0, 2});
  CHECK(grid.config(5) == WalkParams{0.0, 0.2, 1});
  CHECK(grid.config(30) == WalkParams{0.2, 0.0, 1});
  CHECK(grid.config(179) == WalkParams{1.0, 1.0, 5});
}

TEST_CASE("grid spec validation") {
  GridSpec empty;
  CHECK_THROWS_AS(empty.validate(), Error);
  GridSpec bad_alpha{{1.5}, {0.0}, {1}};
  CHECK_THROWS_AS(bad_alpha.validate(), Error);
  GridSpec bad_steps{{0.0}, {0.0}, {0}};
  CHECK_THROWS_AS(bad_steps.validate(), Error);
}

TEST_CASE("single-cell grid equals a direct rank and auc call") {
  RelationDataset ds = star_dataset({0, 5}, {1, 2}, {0}, {1, 3});
  GridSpec cell{{0.2}, {0.4}, {2}};
  GridResult result = grid_search_per_relation(ds, WalkMethod::pagerank, cell);

  CHECK(result.best_index == 0);
  CHECK(result.best_params == WalkParams{0.2, 0.4, 2});

  Ranking direct = rank_pagerank(ds.graph, uniform_weights(ds.graph.label_count()),
                                 ds.p0, WalkParams{0.2, 0.4, 2});
  CHECK(result.best_validation_auc == auc(direct, ds.validation));
  CHECK(result.test_auc == auc(direct, ds.test));
}

TEST_CASE("identical validation scores break ties toward the earlier config") {
  RelationDataset ds = star_dataset({0, 5}, {1, 2}, {0}, {1, 3});
  // beta=1 makes the walk an identity regardless of steps: equal AUC.
  GridSpec grid{{0.0}, {1.0}, {1, 2, 3}};
  GridResult result = grid_search_per_relation(ds, WalkMethod::pagerank, grid);
  CHECK(result.validation_auc[0] == result.validation_auc[1]);
  CHECK(result.validation_auc[1] == result.validation_auc[2]);
  CHECK(result.best_index == 0);
}

TEST_CASE("grid search equals an independent re-evaluation of every cell") {
  RelationDataset ds = star_dataset({0, 5}, {1, 2}, {0}, {1, 3});
  GridSpec grid{{0.0, 0.4}, {0.0, 0.5}, {1, 2}};
  for (WalkMethod method : {WalkMethod::pagerank, WalkMethod::synsetrank}) {
    GridResult result = grid_search_per_relation(ds, method, grid, 2);
    std::size_t best = 0;
    for (std::size_t c = 0; c < grid.config_count(); ++c) {
      WalkParams params = grid.config(c);
      Ranking r = method == WalkMethod::pagerank
                      ? rank_pagerank(ds.graph, uniform_weights(1), ds.p0, params)
                      : rank_synsetrank(ds.graph, uniform_weights(1), ds.p0, params);
      double v = auc(r, ds.validation);
      CHECK(result.validation_auc[c] == v); // bit-identical recomputation
      if (v > result.validation_auc[best]) best = c;
    }
    CHECK(result.best_index == best);
  }
}

TEST_CASE("common search can prefer a compromise configuration") {
  // Validation AUC tables by construction:
  //   ds1 over beta {0, .5, 1}: (0, 0.5, 1)  -> optimum beta=1
  //   ds2 over beta {0, .5, 1}: (1, 1,   0)  -> optimum beta=0
  //   mean:                     (.5, .75, .5) -> compromise beta=0.5
  std::vector<RelationDataset> sets;
  sets.push_back(star_dataset({0, 5}, {1, 2}, {0, 5}, {1, 2}));
  sets.push_back(star_dataset({1, 2}, {5}, {1, 2}, {5}));
  GridSpec grid{{0.0}, {0.0, 0.5, 1.0}, {1}};

  GridResult first = grid_search_per_relation(sets[0], WalkMethod::pagerank, grid);
  GridResult second = grid_search_per_relation(sets[1], WalkMethod::pagerank, grid);
  CHECK(first.validation_auc == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(second.validation_auc == std::vector<double>{1.0, 1.0, 0.0});
  CHECK(first.best_index == 2);
  CHECK(second.best_index == 0);

  CommonGridResult common = grid_search_common(sets, WalkMethod::pagerank, grid);
  CHECK(common.best_index == 1); // matches neither per-relation optimum
  CHECK(common.best_params == WalkParams{0.0, 0.5, 1});
  CHECK(common.mean_validation_auc == std::vector<double>{0.5, 0.75, 0.5});

  // Exhaustive recomputation of the mean over fresh rankings.
  for (std::size_t c = 0; c < grid.config_count(); ++c) {
    double mean = 0.0;
    for (const RelationDataset& ds : sets) {
      Ranking r = rank_pagerank(ds.graph, uniform_weights(1), ds.p0, grid.config(c));
      mean += auc(r, ds.validation);
    }
    mean /= static_cast<double>(sets.size());
    CHECK(common.mean_validation_auc[c] == mean);
  }
}

TEST_CASE("common search over a single dataset reduces to the per-relation search") {
  RelationDataset ds = star_dataset({0, 5}, {1, 2}, {0}, {1, 3});
  GridSpec grid{{0.0, 0.2}, {0.0, 1.0}, {1, 2}};
  GridResult single = grid_search_per_relation(ds, WalkMethod::synsetrank, grid);
  std::vector<RelationDataset> sets{ds};
  CommonGridResult common = grid_search_common(sets, WalkMethod::synsetrank, grid);
  CHECK(common.best_index == single.best_index);
  CHECK(common.mean_validation_auc == single.validation_auc);
  CHECK(common.test_auc[0] == single.test_auc);
  CHECK(common.mean_test_auc == single.test_auc);
}

TEST_CASE("grid csv lists every configuration and flags the winner") {
  RelationDataset ds = star_dataset({0, 5}, {1, 2}, {0}, {1, 3});
  GridSpec grid{{0.0}, {0.0, 1.0}, {1}};
  GridResult result = grid_search_per_relation(ds, WalkMethod::pagerank, grid);
  std::string csv = grid_result_csv(result);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "alpha,beta,steps,validation_auc,best");
  int rows = 0, best_rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    if (line.size() >= 2 && line.substr(line.size() - 2) == ",1") ++best_rows;
  }
  CHECK(rows == 2);
  CHECK(best_rows == 1);
}

TEST_CASE("compare table runs the full six-method report on synthetic data") {
  PlantedSpec spec;
  spec.node_count = 400;
  spec.relevant_cluster_size = 18;
  spec.rng_seed = 3;
  std::vector<RelationDataset> sets;
  for (std::uint64_t seed : {3ULL, 4ULL}) {
    spec.rng_seed = seed;
    RelationDataset ds = generate_planted(spec);
    ds.name = "rel_seed" + std::to_string(seed);
    ds.graph = ds.graph.augment_with_reverse_labels();
    sets.push_back(std::move(ds));
  }

  GridSpec grid{{0.0, 0.2}, {0.0, 0.4}, {1, 2}};
  std::vector<int> ks{5, 25, 1000000}; // the oversized k must be skipped
  CompareReport report = compare_table(sets, grid, ks, 2);

  REQUIRE(report.relations.size() == 2);
  REQUIRE(report.values.size() == 2);
  for (int k : report.moro_top_k) CHECK((k == 5 || k == 25));
  for (std::size_t c = 0; c < 6; ++c) {
    double mean = 0.5 * (report.values[0][c] + report.values[1][c]);
    CHECK(report.average[c] == doctest::Approx(mean).epsilon(1e-15));
  }

  // Text and CSV carry identical numbers at 4 decimals.
  std::string text = report.text();
  std::string csv = report.csv();
  std::istringstream csv_lines(csv);
  std::string line;
  std::getline(csv_lines, line);
  CHECK(line == "relation,frequency,moro,pagerank,pagerank_common,synsetrank,synsetrank_common");
  int row = 0;
  while (std::getline(csv_lines, line)) {
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    int col = 0;
    while (std::getline(fields, field, ',')) {
      double expected = row < 2 ? report.values[row][col] : report.average[col];
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.4f", expected);
      CHECK(field == buf);
      CHECK(text.find(field) != std::string::npos);
      ++col;
    }
    CHECK(col == 6);
    ++row;
  }
  CHECK(row == 3); // two relations plus the average line
  CHECK(text.find("Average AUC") != std::string::npos);
}

TEST_CASE("compare and common search reject empty dataset lists") {
  std::vector<RelationDataset> none;
  std::vector<int> ks{5};
  CHECK_THROWS_AS(compare_table(none, GridSpec::defaults(), ks), Error);
  CHECK_THROWS_AS(grid_search_common(none, WalkMethod::pagerank, GridSpec::defaults()),
                  Error);
}

TEST_CASE("moro tuning fails when no top_k fits the graph") {
  RelationDataset ds = star_dataset({0, 5}, {1, 2}, {0}, {1, 3});
  std::vector<RelationDataset> sets{ds};
  std::vector<int> ks{1000};
  GridSpec grid{{0.0}, {0.0}, {1}};
  CHECK_THROWS_AS(compare_table(sets, grid, ks), Error);
}
