#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "synsetrank/error.hpp"

namespace synsetrank {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;

struct Edge {
  NodeId src{};
  NodeId dst{};
  LabelId label{};

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Immutable edge-labeled directed multigraph. Each label owns a binary edge
// set (duplicate (src, dst) rows collapse) stored as sorted CSR, so the node
// and label universes are declared up front and never inferred: nodes with no
// edges are first-class citizens. After reverse augmentation the label count
// doubles and label l + L/2 holds the reversed edges of label l.
class LabeledGraph {
public:
  LabeledGraph(NodeId node_count, LabelId label_count, std::vector<Edge> edges,
               bool augmented = false);

  // Reads TSV rows `src<TAB>dst<TAB>label`. Lines starting with '#' and blank
  // lines are skipped. An empty file is a valid edgeless graph.
  static LabeledGraph load_edge_list(const std::filesystem::path& path,
                                     NodeId node_count, LabelId label_count);

  // Adds, for every label l < L, a label l + L containing all edges of l
  // reversed. Self-loops reverse onto themselves.
  LabeledGraph augment_with_reverse_labels() const;

  // d_i = sum over labels and out-edges of i of the label weight.
  std::vector<double> weighted_out_degree(std::span<const double> weights) const;

  NodeId node_count() const noexcept { return node_count_; }
  LabelId label_count() const noexcept { return label_count_; }
  bool augmented() const noexcept { return augmented_; }

  std::size_t edge_count() const noexcept { return total_edges_; }
  std::size_t edge_count(LabelId label) const;

  // Sorted destination list of node i under one label.
  std::span<const NodeId> out_neighbors(LabelId label, NodeId src) const;

  bool has_edge(LabelId label, NodeId src, NodeId dst) const;

  // Visits edges label-major, then by (src, dst) ascending.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (LabelId l = 0; l < label_count_; ++l) {
      const LabelAdjacency& adj = labels_[l];
      for (NodeId i = 0; i < node_count_; ++i) {
        for (std::size_t e = adj.row_ptr[i]; e < adj.row_ptr[i + 1]; ++e) {
          fn(i, adj.dst[e], l);
        }
      }
    }
  }

  std::vector<Edge> edges() const;

  void save_edge_list(std::ostream& out, bool with_header = false) const;
  void save_edge_list(const std::filesystem::path& path, bool with_header = false) const;

private:
  struct LabelAdjacency {
    std::vector<std::size_t> row_ptr; // node_count + 1
    std::vector<NodeId> dst;          // sorted within each row
  };

  NodeId node_count_{0};
  LabelId label_count_{0};
  bool augmented_{false};
  std::size_t total_edges_{0};
  std::vector<LabelAdjacency> labels_;
};

// All-ones weight vector, the default when no weights file is given.
std::vector<double> uniform_weights(LabelId label_count);

// Optional weights TSV `label<TAB>weight`; labels absent from the file keep
// weight 1.0. Weights must be non-negative.
std::vector<double> load_label_weights(const std::filesystem::path& path,
                                       LabelId label_count);

// `# nodes=N labels=L` on the first non-blank line of an edge list, written by
// the dataset generator so directories are self-describing.
struct EdgeListHeader {
  NodeId node_count;
  LabelId label_count;
};

std::optional<EdgeListHeader> read_edge_list_header(const std::filesystem::path& path);

} // namespace synsetrank
