#include "synsetrank/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string_view>

#include "synsetrank/parallel.hpp"
#include "synsetrank/text.hpp"

namespace synsetrank {

GoldLabels::GoldLabels(std::vector<NodeId> nodes, std::vector<std::uint8_t> positive)
    : nodes_(std::move(nodes)), positive_(std::move(positive)) {
  if (nodes_.size() != positive_.size())
    throw Error::invalid("gold labels: node and flag lengths differ");
  if (nodes_.empty()) throw Error::invalid("gold labels: empty");

  std::vector<std::size_t> perm(nodes_.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return nodes_[a] < nodes_[b]; });
  std::vector<NodeId> sorted_nodes(nodes_.size());
  std::vector<std::uint8_t> sorted_flags(nodes_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    sorted_nodes[i] = nodes_[perm[i]];
    sorted_flags[i] = positive_[perm[i]] ? 1 : 0;
  }
  for (std::size_t i = 1; i < sorted_nodes.size(); ++i)
    if (sorted_nodes[i] == sorted_nodes[i - 1])
      throw Error::invalid("gold labels: duplicate node " + std::to_string(sorted_nodes[i]));
  nodes_ = std::move(sorted_nodes);
  positive_ = std::move(sorted_flags);

  for (std::uint8_t f : positive_) positive_count_ += f;
  max_node_ = nodes_.back();
  if (positive_count_ == 0 || positive_count_ == nodes_.size())
    throw Error::domain("AUC undefined: gold labels need both classes");
}

GoldLabels GoldLabels::load_tsv(const std::filesystem::path& path, NodeId node_count) {
  std::ifstream in(path);
  if (!in) throw Error::io("cannot open gold labels '" + path.string() + "'");

  std::vector<NodeId> nodes;
  std::vector<std::uint8_t> flags;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos)
      throw Error::parse("line " + std::to_string(line_no) + ": expected `node<TAB>0|1`");
    std::int64_t node = -1;
    auto [p, ec] = std::from_chars(view.data(), view.data() + tab, node);
    if (ec != std::errc{} || p != view.data() + tab || node < 0 ||
        node >= static_cast<std::int64_t>(node_count))
      throw Error::parse("line " + std::to_string(line_no) + ": node out of range");
    std::string_view flag = view.substr(tab + 1);
    if (flag != "0" && flag != "1")
      throw Error::parse("line " + std::to_string(line_no) + ": label must be 0 or 1");
    nodes.push_back(static_cast<NodeId>(node));
    flags.push_back(flag == "1" ? 1 : 0);
  }
  return GoldLabels(std::move(nodes), std::move(flags));
}

RelationDataset RelationDataset::load_dir(const std::filesystem::path& dir,
                                          bool reverse_augment) {
  auto edges_path = dir / "edges.tsv";
  auto header = read_edge_list_header(edges_path);
  if (!header)
    throw Error::parse("'" + edges_path.string() +
                       "' is missing its `# nodes=N labels=L` header line");

  LabeledGraph graph =
      LabeledGraph::load_edge_list(edges_path, header->node_count, header->label_count);
  if (reverse_augment) graph = graph.augment_with_reverse_labels();

  FrequencyDistribution p0 =
      FrequencyDistribution::load_tsv(dir / "freq.tsv", header->node_count);
  GoldLabels validation = GoldLabels::load_tsv(dir / "gold.valid.tsv", header->node_count);
  GoldLabels test = GoldLabels::load_tsv(dir / "gold.test.tsv", header->node_count);

  std::string name = dir.filename().string();
  if (name.empty()) name = dir.parent_path().filename().string();
  return RelationDataset{std::move(name), std::move(graph), std::move(p0),
                         std::move(validation), std::move(test)};
}

double auc(std::span<const double> scores, const GoldLabels& gold) {
  if (gold.max_node() >= scores.size())
    throw Error::invalid("gold labels reference nodes outside the score vector");
  const std::size_t positives = gold.positive_count();
  const std::size_t negatives = gold.negative_count();
  if (positives == 0 || negatives == 0)
    throw Error::domain("AUC undefined: gold labels need both classes");

  struct Entry {
    double score;
    bool positive;
  };
  std::vector<Entry> entries;
  entries.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    double s = scores[gold.nodes()[i]];
    if (std::isnan(s)) throw Error::invalid("scores must not contain NaN");
    entries.push_back({s, gold.positive()[i] != 0});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.score < b.score; });

  // Sweep ascending score groups: a positive beats every negative strictly
  // below its group and half-ties with negatives inside it.
  unsigned long long wins = 0, ties = 0, negatives_below = 0;
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i;
    unsigned long long group_pos = 0, group_neg = 0;
    while (j < entries.size() && entries[j].score == entries[i].score) {
      if (entries[j].positive) ++group_pos; else ++group_neg;
      ++j;
    }
    wins += group_pos * negatives_below;
    ties += group_pos * group_neg;
    negatives_below += group_neg;
    i = j;
  }

  // Branch on the half point so that negating all scores yields exactly
  // 1 - auc: the two calls then return x and 1 - x for the same double x.
  double numerator = static_cast<double>(wins) + 0.5 * static_cast<double>(ties);
  double denominator = static_cast<double>(positives) * static_cast<double>(negatives);
  if (2.0 * numerator <= denominator) return numerator / denominator;
  return 1.0 - (denominator - numerator) / denominator;
}

double auc(const Ranking& ranking, const GoldLabels& gold) {
  return auc(std::span<const double>(ranking.scores), gold);
}

const char* walk_method_name(WalkMethod method) {
  return method == WalkMethod::pagerank ? "pagerank" : "synsetrank";
}

GridSpec GridSpec::defaults() {
  return GridSpec{{0.0, 0.2, 0.4, 0.6, 0.8, 1.0},
                  {0.0, 0.2, 0.4, 0.6, 0.8, 1.0},
                  {1, 2, 3, 4, 5}};
}

void GridSpec::validate() const {
  if (alphas.empty() || betas.empty() || steps_list.empty())
    throw Error::invalid("grid must have at least one alpha, beta and steps value");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw Error::invalid("grid alpha outside [0, 1]");
  for (double b : betas)
    if (!(b >= 0.0 && b <= 1.0)) throw Error::invalid("grid beta outside [0, 1]");
  for (int s : steps_list)
    if (s < 1) throw Error::invalid("grid steps must be positive");
}

std::size_t GridSpec::config_count() const noexcept {
  return alphas.size() * betas.size() * steps_list.size();
}

WalkParams GridSpec::config(std::size_t index) const {
  std::size_t per_alpha = betas.size() * steps_list.size();
  std::size_t a = index / per_alpha;
  std::size_t rem = index % per_alpha;
  std::size_t b = rem / steps_list.size();
  std::size_t s = rem % steps_list.size();
  if (a >= alphas.size()) throw Error::invalid("grid configuration index out of range");
  return WalkParams{alphas[a], betas[b], steps_list[s]};
}

namespace {

// Validation and test AUC for every grid configuration of one dataset.
struct MethodTables {
  std::vector<double> validation;
  std::vector<double> test;
};

MethodTables evaluate_grid(const RelationDataset& ds, WalkMethod method,
                           const GridSpec& grid, int jobs) {
  grid.validate();
  const std::size_t configs = grid.config_count();
  MethodTables tables;
  tables.validation.assign(configs, 0.0);
  tables.test.assign(configs, 0.0);

  std::vector<double> weights = uniform_weights(ds.graph.label_count());
  RowStochastic q_prime = build_row_normalized(ds.graph, weights);
  std::vector<double> restart;
  if (method == WalkMethod::synsetrank) {
    FrequencyDistribution adjusted =
        degree_adjust(ds.p0, ds.graph.weighted_out_degree(weights));
    restart.assign(adjusted.raw().begin(), adjusted.raw().end());
  } else {
    restart = ds.p0.normalized();
  }

  const int max_steps = *std::max_element(grid.steps_list.begin(), grid.steps_list.end());
  const std::size_t pairs = grid.alphas.size() * grid.betas.size();

  // The transition structure is shared across step counts: one build per
  // (alpha, beta), then walk incrementally and score at each listed t. An
  // incremental prefix of steps is bit-identical to a fresh t-step walk, so
  // every cell matches an independent re-evaluation of that configuration.
  parallel_for(pairs, jobs, [&](std::size_t pair_index) {
    std::size_t a = pair_index / grid.betas.size();
    std::size_t b = pair_index % grid.betas.size();
    WalkParams params{grid.alphas[a], grid.betas[b], 1};
    int t = 0;
    try {
      TransitionSystem ts = build_transition(q_prime, restart, params);
      Distribution p = initial_distribution(restart);
      for (t = 1; t <= max_steps; ++t) {
        p = ts.walk(p, 1);
        for (std::size_t s = 0; s < grid.steps_list.size(); ++s) {
          if (grid.steps_list[s] != t) continue;
          std::size_t index = (a * grid.betas.size() + b) * grid.steps_list.size() + s;
          std::span<const double> scores(p.data(), ds.graph.node_count());
          tables.validation[index] = auc(scores, ds.validation);
          tables.test[index] = auc(scores, ds.test);
        }
      }
    } catch (const Error& e) {
      throw Error(e.kind(), "grid configuration alpha=" + std::to_string(params.alpha) +
                                " beta=" + std::to_string(params.beta) + " steps=" +
                                std::to_string(t) + ": " + e.what());
    }
  });
  return tables;
}

std::size_t argmax_first(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

} // namespace

GridResult grid_search_per_relation(const RelationDataset& dataset, WalkMethod method,
                                    const GridSpec& grid, int jobs) {
  MethodTables tables = evaluate_grid(dataset, method, grid, jobs);
  GridResult result;
  result.grid = grid;
  result.validation_auc = std::move(tables.validation);
  result.best_index = argmax_first(result.validation_auc);
  result.best_params = grid.config(result.best_index);
  result.best_validation_auc = result.validation_auc[result.best_index];
  result.test_auc = tables.test[result.best_index];
  return result;
}

CommonGridResult grid_search_common(std::span<const RelationDataset> datasets,
                                    WalkMethod method, const GridSpec& grid, int jobs) {
  if (datasets.empty()) throw Error::invalid("common grid search needs at least one dataset");
  grid.validate();

  const std::size_t configs = grid.config_count();
  std::vector<MethodTables> tables;
  tables.reserve(datasets.size());
  for (const RelationDataset& ds : datasets)
    tables.push_back(evaluate_grid(ds, method, grid, jobs));

  CommonGridResult result;
  result.grid = grid;
  result.mean_validation_auc.assign(configs, 0.0);
  for (std::size_t c = 0; c < configs; ++c) {
    double sum = 0.0;
    for (const MethodTables& t : tables) sum += t.validation[c];
    result.mean_validation_auc[c] = sum / static_cast<double>(datasets.size());
  }
  result.best_index = argmax_first(result.mean_validation_auc);
  result.best_params = grid.config(result.best_index);
  result.best_mean_validation_auc = result.mean_validation_auc[result.best_index];

  double test_sum = 0.0;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    result.relation_names.push_back(datasets[d].name);
    result.test_auc.push_back(tables[d].test[result.best_index]);
    test_sum += result.test_auc.back();
  }
  result.mean_test_auc = test_sum / static_cast<double>(datasets.size());
  return result;
}

namespace {

std::string grid_csv_body(const GridSpec& grid, std::span<const double> auc_column,
                          std::size_t best_index, const char* auc_header) {
  std::string out = "alpha,beta,steps,";
  out += auc_header;
  out += ",best\n";
  for (std::size_t i = 0; i < grid.config_count(); ++i) {
    WalkParams p = grid.config(i);
    out += format_sig12(p.alpha);
    out += ',';
    out += format_sig12(p.beta);
    out += ',';
    out += std::to_string(p.steps);
    out += ',';
    out += format_sig12(auc_column[i]);
    out += ',';
    out += (i == best_index) ? '1' : '0';
    out += '\n';
  }
  return out;
}

} // namespace

std::string grid_result_csv(const GridResult& result) {
  return grid_csv_body(result.grid, result.validation_auc, result.best_index,
                       "validation_auc");
}

std::string grid_result_csv(const CommonGridResult& result) {
  return grid_csv_body(result.grid, result.mean_validation_auc, result.best_index,
                       "mean_validation_auc");
}

namespace {

struct MoroChoice {
  int top_k;
  double test_auc;
};

MoroChoice tune_moro(const RelationDataset& ds, std::span<const int> ks) {
  int best_k = -1;
  double best_validation = -1.0;
  Ranking best_ranking;
  for (int k : ks) {
    if (k < 1 || static_cast<NodeId>(k) > ds.graph.node_count()) continue;
    Ranking r = rank_moro(ds.graph, ds.p0, MoroConfig{k});
    double v = auc(r, ds.validation);
    if (v > best_validation) {
      best_validation = v;
      best_k = k;
      best_ranking = std::move(r);
    }
  }
  if (best_k < 0)
    throw Error::invalid("no usable top_k value for dataset '" + ds.name +
                         "' (node count " + std::to_string(ds.graph.node_count()) + ")");
  return MoroChoice{best_k, auc(best_ranking, ds.test)};
}

} // namespace

CompareReport compare_table(std::span<const RelationDataset> datasets,
                            const GridSpec& grid, std::span<const int> moro_ks,
                            int jobs) {
  if (datasets.empty()) throw Error::invalid("comparison needs at least one dataset");
  grid.validate();
  if (moro_ks.empty()) throw Error::invalid("comparison needs at least one Moro top_k");

  const std::size_t n = datasets.size();
  std::vector<MethodTables> pagerank_tables(n), synsetrank_tables(n);
  for (std::size_t d = 0; d < n; ++d) {
    pagerank_tables[d] = evaluate_grid(datasets[d], WalkMethod::pagerank, grid, jobs);
    synsetrank_tables[d] = evaluate_grid(datasets[d], WalkMethod::synsetrank, grid, jobs);
  }

  auto common_best = [&](const std::vector<MethodTables>& tables) {
    std::vector<double> mean(grid.config_count(), 0.0);
    for (std::size_t c = 0; c < mean.size(); ++c) {
      double sum = 0.0;
      for (const MethodTables& t : tables) sum += t.validation[c];
      mean[c] = sum / static_cast<double>(n);
    }
    return argmax_first(mean);
  };
  std::size_t pagerank_common = common_best(pagerank_tables);
  std::size_t synsetrank_common = common_best(synsetrank_tables);

  CompareReport report;
  report.pagerank_common = grid.config(pagerank_common);
  report.synsetrank_common = grid.config(synsetrank_common);
  report.average.fill(0.0);

  for (std::size_t d = 0; d < n; ++d) {
    const RelationDataset& ds = datasets[d];
    std::array<double, 6> row{};
    row[0] = auc(rank_frequency(ds.p0), ds.test);
    MoroChoice moro = tune_moro(ds, moro_ks);
    row[1] = moro.test_auc;
    row[2] = pagerank_tables[d].test[argmax_first(pagerank_tables[d].validation)];
    row[3] = pagerank_tables[d].test[pagerank_common];
    row[4] = synsetrank_tables[d].test[argmax_first(synsetrank_tables[d].validation)];
    row[5] = synsetrank_tables[d].test[synsetrank_common];

    report.relations.push_back(ds.name);
    report.moro_top_k.push_back(moro.top_k);
    report.values.push_back(row);
    for (std::size_t c = 0; c < 6; ++c) report.average[c] += row[c];
  }
  for (std::size_t c = 0; c < 6; ++c) report.average[c] /= static_cast<double>(n);
  return report;
}

std::string CompareReport::text() const {
  static constexpr std::array<const char*, 6> headers = {
      "Frequency", "Moro", "PageRank", "PageRank(common)",
      "SynsetRank", "SynsetRank(common)"};

  std::size_t name_width = std::string("Average AUC").size();
  for (const std::string& r : relations) name_width = std::max(name_width, r.size());

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(name_width) + 2) << "Relation";
  for (const char* h : headers) out << std::right << std::setw(20) << h;
  out << '\n';
  for (std::size_t r = 0; r < relations.size(); ++r) {
    out << std::left << std::setw(static_cast<int>(name_width) + 2) << relations[r];
    for (double v : values[r]) out << std::right << std::setw(20) << format_fixed4(v);
    out << '\n';
  }
  out << std::left << std::setw(static_cast<int>(name_width) + 2) << "Average AUC";
  for (double v : average) out << std::right << std::setw(20) << format_fixed4(v);
  out << '\n';
  return out.str();
}

std::string CompareReport::csv() const {
  std::string out = "relation";
  for (const char* c : kColumns) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (std::size_t r = 0; r < relations.size(); ++r) {
    out += relations[r];
    for (double v : values[r]) {
      out += ',';
      out += format_fixed4(v);
    }
    out += '\n';
  }
  out += "average";
  for (double v : average) {
    out += ',';
    out += format_fixed4(v);
  }
  out += '\n';
  return out;
}

} // namespace synsetrank
