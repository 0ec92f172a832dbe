#include "synsetrank/rankers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string_view>

#include "synsetrank/text.hpp"

namespace synsetrank {

namespace {

std::vector<double> l1_normalize(std::span<const double> values, const char* what) {
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0) throw Error::invalid(std::string(what) + " has a negative entry");
    sum += v;
  }
  if (sum <= 0.0) throw Error::domain("empty frequency distribution");
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] / sum;
  return out;
}

Ranking rank_walk(const LabeledGraph& graph, std::span<const double> weights,
                  const FrequencyDistribution& p0, const WalkParams& params,
                  bool degree_adjusted) {
  params.validate();
  if (p0.size() != graph.node_count())
    throw Error::invalid("frequency distribution length does not match node count");

  RowStochastic q_prime = build_row_normalized(graph, weights);
  std::vector<double> restart;
  if (degree_adjusted) {
    FrequencyDistribution adjusted =
        degree_adjust(p0, graph.weighted_out_degree(weights));
    restart.assign(adjusted.raw().begin(), adjusted.raw().end());
  } else {
    restart = p0.normalized();
  }
  TransitionSystem ts = build_transition(q_prime, restart, params);
  Distribution result = ts.walk(initial_distribution(restart), params.steps);

  // Sink-source mass is discarded; scores are the node entries as-is.
  std::vector<double> scores(result.begin(), result.end() - 1);
  return make_ranking(std::move(scores), p0.raw());
}

} // namespace

FrequencyDistribution::FrequencyDistribution(std::vector<double> raw)
    : raw_(std::move(raw)) {
  bool any_positive = false;
  for (double v : raw_) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error::invalid("frequencies must be finite and non-negative");
    if (v > 0.0) any_positive = true;
  }
  if (!any_positive) throw Error::domain("empty frequency distribution");
}

FrequencyDistribution FrequencyDistribution::load_tsv(const std::filesystem::path& path,
                                                      NodeId node_count) {
  std::ifstream in(path);
  if (!in) throw Error::io("cannot open frequency file '" + path.string() + "'");

  std::vector<double> raw(node_count, 0.0);
  std::vector<bool> seen(node_count, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    std::size_t tab = view.find('\t');
    if (tab == std::string_view::npos)
      throw Error::parse("line " + std::to_string(line_no) + ": expected `node<TAB>value`");

    std::int64_t node = -1;
    auto [p1, ec1] = std::from_chars(view.data(), view.data() + tab, node);
    if (ec1 != std::errc{} || p1 != view.data() + tab || node < 0 ||
        node >= static_cast<std::int64_t>(node_count))
      throw Error::parse("line " + std::to_string(line_no) + ": node out of range");

    std::string value_str(view.substr(tab + 1));
    char* end = nullptr;
    double value = std::strtod(value_str.c_str(), &end);
    if (value_str.empty() || end != value_str.c_str() + value_str.size() ||
        !std::isfinite(value))
      throw Error::parse("line " + std::to_string(line_no) + ": cannot parse value");
    if (value < 0.0)
      throw Error::parse("line " + std::to_string(line_no) + ": frequency must be non-negative");
    if (seen[static_cast<std::size_t>(node)])
      throw Error::parse("line " + std::to_string(line_no) + ": duplicate node " +
                         std::to_string(node));
    seen[static_cast<std::size_t>(node)] = true;
    raw[static_cast<std::size_t>(node)] = value;
  }
  return FrequencyDistribution(std::move(raw));
}

std::vector<double> FrequencyDistribution::normalized() const {
  return l1_normalize(raw_, "frequency distribution");
}

Ranking make_ranking(std::vector<double> scores, std::span<const double> tie_frequency) {
  if (scores.size() != tie_frequency.size())
    throw Error::invalid("score and frequency lengths differ");

  std::vector<NodeId> order(scores.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    if (tie_frequency[a] != tie_frequency[b]) return tie_frequency[a] > tie_frequency[b];
    return a < b;
  });
  return Ranking{std::move(scores), std::move(order)};
}

Ranking rank_frequency(const FrequencyDistribution& p0) {
  return make_ranking(p0.normalized(), p0.raw());
}

FrequencyDistribution degree_adjust(const FrequencyDistribution& p0,
                                    std::span<const double> degree) {
  if (degree.size() != p0.size())
    throw Error::invalid("degree vector length does not match distribution");

  std::vector<double> product(p0.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p0.size(); ++i) {
    product[i] = p0.raw()[i] * degree[i];
    sum += product[i];
  }
  if (sum <= 0.0)
    throw Error::domain("degree adjustment is undefined: every frequent node has "
                        "zero weighted out-degree");
  for (double& v : product) v /= sum;
  return FrequencyDistribution(std::move(product));
}

Ranking rank_pagerank(const LabeledGraph& graph, std::span<const double> weights,
                      const FrequencyDistribution& p0, const WalkParams& params) {
  return rank_walk(graph, weights, p0, params, /*degree_adjusted=*/false);
}

Ranking rank_synsetrank(const LabeledGraph& graph, std::span<const double> weights,
                        const FrequencyDistribution& p0, const WalkParams& params) {
  return rank_walk(graph, weights, p0, params, /*degree_adjusted=*/true);
}

Ranking rank_moro(const LabeledGraph& graph, const FrequencyDistribution& p0,
                  const MoroConfig& config) {
  const NodeId n = graph.node_count();
  if (p0.size() != n)
    throw Error::invalid("frequency distribution length does not match node count");
  if (config.top_k < 1 || static_cast<NodeId>(config.top_k) > n)
    throw Error::invalid("top_k must lie in [1, node count]");

  // Seeds: the top_k nodes in frequency order (frequency desc, index asc).
  Ranking by_frequency = rank_frequency(p0);
  std::vector<char> is_seed(n, 0);
  for (int k = 0; k < config.top_k; ++k) is_seed[by_frequency.order[k]] = 1;

  std::vector<char> is_neighbor(n, 0);
  graph.for_each_edge([&](NodeId src, NodeId dst, LabelId) {
    if (is_seed[src] && !is_seed[dst]) is_neighbor[dst] = 1; // out-neighbor
    if (is_seed[dst] && !is_seed[src]) is_neighbor[src] = 1; // in-neighbor
  });

  double max_freq = *std::max_element(p0.raw().begin(), p0.raw().end());
  std::vector<double> scores(n);
  for (NodeId i = 0; i < n; ++i) {
    double relative = p0.raw()[i] / max_freq;
    double tier = is_seed[i] ? 2.0 : is_neighbor[i] ? 1.0 : 0.0;
    scores[i] = tier + relative;
  }
  return make_ranking(std::move(scores), p0.raw());
}

std::string format_ranking_tsv(const Ranking& ranking) {
  std::string out;
  for (std::size_t r = 0; r < ranking.order.size(); ++r) {
    NodeId node = ranking.order[r];
    out += std::to_string(r + 1);
    out += '\t';
    out += std::to_string(node);
    out += '\t';
    out += format_sig12(ranking.scores[node]);
    out += '\n';
  }
  return out;
}

void write_ranking_tsv(const Ranking& ranking, const std::filesystem::path& path) {
  std::string body = format_ranking_tsv(ranking);
  std::ofstream out(path);
  if (!out) throw Error::io("cannot write ranking '" + path.string() + "'");
  out << body;
  if (!out) throw Error::io("failed writing ranking '" + path.string() + "'");
}

} // namespace synsetrank
