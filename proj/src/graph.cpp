#include "synsetrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace synsetrank {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool is_blank_or_comment(std::string_view line) {
  std::string_view t = trim(line);
  return t.empty() || t.front() == '#';
}

// Splits a TSV row into fields; tolerates a trailing '\r'.
std::vector<std::string_view> split_fields(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      fields.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

template <typename Int>
Int parse_int(std::string_view field, const char* what, std::size_t line_no) {
  Int value{};
  std::string_view f = trim(field);
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
  if (ec != std::errc{} || ptr != f.data() + f.size()) {
    throw Error::parse("line " + std::to_string(line_no) + ": cannot parse " +
                       what + " from '" + std::string(field) + "'");
  }
  return value;
}

double parse_double(std::string_view field, const char* what, std::size_t line_no) {
  std::string f(trim(field));
  char* end = nullptr;
  double value = std::strtod(f.c_str(), &end);
  if (f.empty() || end != f.c_str() + f.size() || !std::isfinite(value)) {
    throw Error::parse("line " + std::to_string(line_no) + ": cannot parse " +
                       what + " from '" + f + "'");
  }
  return value;
}

} // namespace

LabeledGraph::LabeledGraph(NodeId node_count, LabelId label_count,
                           std::vector<Edge> edges, bool augmented)
    : node_count_(node_count), label_count_(label_count), augmented_(augmented) {
  if (augmented && label_count % 2 != 0)
    throw Error::invalid("augmented graph must have an even label count");

  for (const Edge& e : edges) {
    if (e.src >= node_count || e.dst >= node_count)
      throw Error::invalid("node out of range: edge (" + std::to_string(e.src) +
                           ", " + std::to_string(e.dst) + ") with node count " +
                           std::to_string(node_count));
    if (e.label >= label_count)
      throw Error::invalid("label out of range: " + std::to_string(e.label) +
                           " with label count " + std::to_string(label_count));
  }

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    if (a.label != b.label) return a.label < b.label;
    if (a.src != b.src) return a.src < b.src;
    return a.dst < b.dst;
  });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  labels_.resize(label_count);
  std::size_t pos = 0;
  for (LabelId l = 0; l < label_count; ++l) {
    LabelAdjacency& adj = labels_[l];
    adj.row_ptr.assign(node_count + 1, 0);
    std::size_t begin = pos;
    while (pos < edges.size() && edges[pos].label == l) ++pos;
    adj.dst.reserve(pos - begin);
    for (std::size_t e = begin; e < pos; ++e) {
      adj.row_ptr[edges[e].src + 1]++;
      adj.dst.push_back(edges[e].dst);
    }
    for (NodeId i = 0; i < node_count; ++i) adj.row_ptr[i + 1] += adj.row_ptr[i];
    total_edges_ += adj.dst.size();
  }
}

LabeledGraph LabeledGraph::load_edge_list(const std::filesystem::path& path,
                                          NodeId node_count, LabelId label_count) {
  std::ifstream in(path);
  if (!in) throw Error::io("cannot open edge list '" + path.string() + "'");

  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 3)
      throw Error::parse("line " + std::to_string(line_no) +
                         ": expected 3 tab-separated fields, got " +
                         std::to_string(fields.size()));
    auto src = parse_int<std::int64_t>(fields[0], "source node", line_no);
    auto dst = parse_int<std::int64_t>(fields[1], "destination node", line_no);
    auto lab = parse_int<std::int64_t>(fields[2], "label", line_no);
    if (src < 0 || src >= static_cast<std::int64_t>(node_count) ||
        dst < 0 || dst >= static_cast<std::int64_t>(node_count))
      throw Error::parse("line " + std::to_string(line_no) + ": node out of range");
    if (lab < 0 || lab >= static_cast<std::int64_t>(label_count))
      throw Error::parse("line " + std::to_string(line_no) + ": label out of range");
    edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst),
                     static_cast<LabelId>(lab)});
  }
  return LabeledGraph(node_count, label_count, std::move(edges), false);
}

LabeledGraph LabeledGraph::augment_with_reverse_labels() const {
  if (augmented_) throw Error::invalid("graph is already reverse-augmented");

  std::vector<Edge> all = edges();
  std::size_t original = all.size();
  all.reserve(2 * original);
  for (std::size_t e = 0; e < original; ++e) {
    all.push_back({all[e].dst, all[e].src, all[e].label + label_count_});
  }
  return LabeledGraph(node_count_, 2 * label_count_, std::move(all), true);
}

std::vector<double> LabeledGraph::weighted_out_degree(std::span<const double> weights) const {
  if (weights.size() != label_count_)
    throw Error::invalid("weight vector length " + std::to_string(weights.size()) +
                         " does not match label count " + std::to_string(label_count_));
  for (double w : weights)
    if (!std::isfinite(w) || w < 0.0)
      throw Error::invalid("label weights must be finite and non-negative");

  std::vector<double> degree(node_count_, 0.0);
  for (LabelId l = 0; l < label_count_; ++l) {
    const LabelAdjacency& adj = labels_[l];
    for (NodeId i = 0; i < node_count_; ++i) {
      std::size_t count = adj.row_ptr[i + 1] - adj.row_ptr[i];
      if (count > 0) degree[i] += weights[l] * static_cast<double>(count);
    }
  }
  return degree;
}

std::size_t LabeledGraph::edge_count(LabelId label) const {
  if (label >= label_count_) throw Error::invalid("label out of range");
  return labels_[label].dst.size();
}

std::span<const NodeId> LabeledGraph::out_neighbors(LabelId label, NodeId src) const {
  if (label >= label_count_) throw Error::invalid("label out of range");
  if (src >= node_count_) throw Error::invalid("node out of range");
  const LabelAdjacency& adj = labels_[label];
  return {adj.dst.data() + adj.row_ptr[src], adj.row_ptr[src + 1] - adj.row_ptr[src]};
}

bool LabeledGraph::has_edge(LabelId label, NodeId src, NodeId dst) const {
  auto row = out_neighbors(label, src);
  return std::binary_search(row.begin(), row.end(), dst);
}

std::vector<Edge> LabeledGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(total_edges_);
  for_each_edge([&](NodeId s, NodeId d, LabelId l) { out.push_back({s, d, l}); });
  return out;
}

void LabeledGraph::save_edge_list(std::ostream& out, bool with_header) const {
  if (with_header)
    out << "# nodes=" << node_count_ << " labels=" << label_count_ << "\n";
  for_each_edge([&](NodeId s, NodeId d, LabelId l) {
    out << s << '\t' << d << '\t' << l << '\n';
  });
}

void LabeledGraph::save_edge_list(const std::filesystem::path& path, bool with_header) const {
  std::ofstream out(path);
  if (!out) throw Error::io("cannot write edge list '" + path.string() + "'");
  save_edge_list(out, with_header);
  if (!out) throw Error::io("failed writing edge list '" + path.string() + "'");
}

std::vector<double> uniform_weights(LabelId label_count) {
  return std::vector<double>(label_count, 1.0);
}

std::vector<double> load_label_weights(const std::filesystem::path& path,
                                       LabelId label_count) {
  std::ifstream in(path);
  if (!in) throw Error::io("cannot open weights file '" + path.string() + "'");

  std::vector<double> weights = uniform_weights(label_count);
  std::vector<bool> seen(label_count, false);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() != 2)
      throw Error::parse("line " + std::to_string(line_no) +
                         ": expected `label<TAB>weight`");
    auto label = parse_int<std::int64_t>(fields[0], "label", line_no);
    double w = parse_double(fields[1], "weight", line_no);
    if (label < 0 || label >= static_cast<std::int64_t>(label_count))
      throw Error::parse("line " + std::to_string(line_no) + ": label out of range");
    if (w < 0.0)
      throw Error::parse("line " + std::to_string(line_no) + ": weight must be non-negative");
    if (seen[static_cast<std::size_t>(label)])
      throw Error::parse("line " + std::to_string(line_no) + ": duplicate label " +
                         std::to_string(label));
    seen[static_cast<std::size_t>(label)] = true;
    weights[static_cast<std::size_t>(label)] = w;
  }
  return weights;
}

std::optional<EdgeListHeader> read_edge_list_header(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error::io("cannot open edge list '" + path.string() + "'");
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty()) continue;
    if (t.front() != '#') return std::nullopt;
    // first comment line; accept `# nodes=N labels=L`
    long long nodes = -1, labels = -1;
    std::istringstream ss{std::string(t.substr(1))};
    std::string token;
    auto parse_count = [](std::string_view text, long long& out) {
      long long value = -1;
      auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec == std::errc{} && p == text.data() + text.size() && value >= 0) out = value;
    };
    while (ss >> token) {
      if (token.rfind("nodes=", 0) == 0) parse_count(std::string_view(token).substr(6), nodes);
      if (token.rfind("labels=", 0) == 0) parse_count(std::string_view(token).substr(7), labels);
    }
    if (nodes >= 0 && labels >= 0)
      return EdgeListHeader{static_cast<NodeId>(nodes), static_cast<LabelId>(labels)};
    return std::nullopt;
  }
  return std::nullopt;
}

} // namespace synsetrank
