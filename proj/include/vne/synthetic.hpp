#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vne/graph.hpp"

namespace vne {

/// Invalid generator configuration (maps to a usage error at the CLI).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A graph with a ground-truth structural role per node. Labels are dense
/// 0..C-1 and `role_names[c]` describes class c.
struct RoleDataset {
  Graph graph;
  std::vector<int> roles;
  std::vector<std::string> role_names;

  std::size_t num_classes() const { return role_names.size(); }
};

enum class Shape { house, fan, star };
enum class Placement { regular, random };

Shape parse_shape(const std::string& s);
const char* to_string(Shape s);

/// A small motif planted on the cycle. `anchor` is the node joined to its
/// cycle node by a single edge.
struct ShapeTemplate {
  std::string name;
  std::size_t num_nodes = 0;
  std::vector<Edge> edges;
  NodeId anchor = 0;
  std::vector<std::string> node_names;  // per template node; orbit labels reuse them
};

const ShapeTemplate& shape_template(Shape s);

struct ShapeConfig {
  std::size_t cycle_len = 30;
  std::vector<Shape> shapes{Shape::house};
  std::size_t instances_per_shape = 10;
  Placement placement = Placement::regular;
  std::size_t rewire_count = 0;
  std::uint64_t seed = 0;
};

/// Orbit id per node under the automorphism group of `g` (optionally the
/// stabilizer of `fixed`), by exhaustive backtracking. Orbits are numbered in
/// order of their smallest member. Intended for graphs of a dozen nodes.
std::vector<int> automorphism_orbits(const Graph& g, std::optional<NodeId> fixed = std::nullopt);

/// Two K_clique_size joined through a path of `path_len` interior nodes.
/// Classes: non-attachment clique node, attachment node, and one class per
/// mirror pair of path positions.
RoleDataset barbell(std::size_t clique_size = 10, std::size_t path_len = 7);

/// Shapes planted along a cycle. Labels are the orbits of each template
/// (with its anchor fixed) plus two cycle classes: plain, and attached to a
/// shape. Rewiring, when requested, keeps the clean labels.
RoleDataset shapes_on_cycle(const ShapeConfig& cfg);

/// Batch of `count` datasets with seeds cfg.seed + 0 .. cfg.seed + count - 1.
std::vector<RoleDataset> shapes_batch(const ShapeConfig& cfg, std::size_t count);

/// Repeats k times: delete a uniformly chosen edge and insert a uniformly
/// chosen pair that was not an edge. Node and edge counts are preserved.
/// Throws ConfigError when k > m and GraphError when no non-edge exists.
Graph rewire(const Graph& g, std::size_t k, std::uint64_t seed);

/// G(n, p) by geometric edge skipping, O(n + m).
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

}  // namespace vne
