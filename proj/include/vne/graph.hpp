#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vne {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Input that could not be parsed. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable undirected simple graph.
///
/// Nodes are dense ids 0..n-1. Neighbor lists are sorted ascending, free of
/// duplicates and self-loops, and symmetric. Every constructor canonicalizes.
class Graph {
 public:
  Graph() = default;

  /// Builds the canonical graph on `n` nodes. Both orientations and repeated
  /// pairs collapse to one edge. Throws GraphError on a self-loop or an
  /// endpoint >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return m_; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// Edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;  // CSR row starts, n + 1 entries
  std::vector<NodeId> targets_;
  std::size_t m_ = 0;
};

/// r-hop ego-network: the subgraph induced by every node within distance r of
/// the center. Local ids follow ascending original id.
struct EgoNetwork {
  Graph subgraph;
  NodeId center_local_id = 0;
  std::vector<NodeId> node_map;  // local id -> parent id
};

std::vector<std::size_t> degrees(const Graph& g);

/// BFS truncated at depth `radius`. Throws GraphError when v is out of range.
EgoNetwork ego_network(const Graph& g, NodeId v, unsigned radius);

/// Hop distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source);

/// Relabels nodes: node v of `g` becomes `perm[v]`.
Graph permute(const Graph& g, std::span<const NodeId> perm);

// Edge-list text format: "u v" per line, '#' comment lines, optional first
// line "n=<count>".

Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

/// Reads an edge list whose ids may be sparse or large. Ids are mapped to
/// 0..n-1 in ascending order; `original_ids[local]` gives the external id.
struct RemappedGraph {
  Graph graph;
  std::vector<std::int64_t> original_ids;
};
RemappedGraph read_edge_list_remapped(std::istream& in);

// Node-label file: "node_id label" per line, '#' comments allowed.

std::vector<std::string> read_node_labels(std::istream& in, std::size_t n);
void write_node_labels(std::span<const std::string> labels, std::ostream& out);

}  // namespace vne
