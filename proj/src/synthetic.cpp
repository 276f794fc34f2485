#include "vne/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "vne/rng.hpp"

namespace vne {

Shape parse_shape(const std::string& s) {
  if (s == "house") return Shape::house;
  if (s == "fan") return Shape::fan;
  if (s == "star") return Shape::star;
  throw ConfigError("unknown shape '" + s + "' (expected house|fan|star)");
}

const char* to_string(Shape s) {
  switch (s) {
    case Shape::house: return "house";
    case Shape::fan: return "fan";
    case Shape::star: return "star";
  }
  return "?";
}

const ShapeTemplate& shape_template(Shape s) {
  // house: square 0-1-2-3 with apex 4 over 2 and 3; hangs from the apex.
  static const ShapeTemplate kHouse{
      "house", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {2, 4}, {3, 4}}, 4,
      {"floor", "floor", "roof-base", "roof-base", "roof-top"}};
  // fan: hub 0 joined to every node of the path 1-2-3-4.
  static const ShapeTemplate kFan{
      "fan", 5, {{1, 2}, {2, 3}, {3, 4}, {0, 1}, {0, 2}, {0, 3}, {0, 4}}, 0,
      {"hub", "blade-end", "blade-mid", "blade-mid", "blade-end"}};
  static const ShapeTemplate kStar{
      "star", 5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, 0,
      {"center", "leaf", "leaf", "leaf", "leaf"}};
  switch (s) {
    case Shape::house: return kHouse;
    case Shape::fan: return kFan;
    case Shape::star: return kStar;
  }
  throw ConfigError("unknown shape");
}

namespace {

struct OrbitSearch {
  const Graph& g;
  std::vector<NodeId> image;
  std::vector<bool> used;
  std::vector<NodeId> parent;  // union-find over nodes

  NodeId find(NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  void extend(NodeId u) {
    const auto n = static_cast<NodeId>(g.num_nodes());
    if (u == n) {
      for (NodeId v = 0; v < n; ++v) unite(v, image[v]);
      return;
    }
    if (image[u] != n) {  // pre-assigned (fixed node)
      if (consistent(u, image[u])) extend(u + 1);
      return;
    }
    for (NodeId c = 0; c < n; ++c) {
      if (used[c] || g.degree(c) != g.degree(u) || !consistent(u, c)) continue;
      used[c] = true;
      image[u] = c;
      extend(u + 1);
      image[u] = n;
      used[c] = false;
    }
  }

  // Adjacency between u and every already-mapped w must be preserved.
  bool consistent(NodeId u, NodeId c) const {
    const auto n = static_cast<NodeId>(g.num_nodes());
    for (NodeId w = 0; w < u; ++w) {
      if (g.has_edge(u, w) != g.has_edge(c, image[w])) return false;
    }
    for (NodeId w = u + 1; w < n; ++w) {
      if (image[w] != n && g.has_edge(u, w) != g.has_edge(c, image[w])) return false;
    }
    return true;
  }
};

void check_cycle_config(const ShapeConfig& cfg) {
  if (cfg.cycle_len < 3) throw ConfigError("cycle length must be at least 3");
  if (cfg.shapes.empty()) throw ConfigError("at least one shape type is required");
  if (cfg.instances_per_shape == 0) throw ConfigError("instances per shape must be >= 1");
  const std::size_t total = cfg.shapes.size() * cfg.instances_per_shape;
  if (total > cfg.cycle_len) {
    throw ConfigError(std::to_string(total) + " shape instances do not fit on a cycle of " +
                      std::to_string(cfg.cycle_len));
  }
}

}  // namespace

std::vector<int> automorphism_orbits(const Graph& g, std::optional<NodeId> fixed) {
  const auto n = static_cast<NodeId>(g.num_nodes());
  OrbitSearch search{g, std::vector<NodeId>(n, n), std::vector<bool>(n, false), {}};
  search.parent.resize(n);
  std::iota(search.parent.begin(), search.parent.end(), NodeId{0});
  if (fixed) {
    if (*fixed >= n) throw GraphError("fixed node out of range");
    search.image[*fixed] = *fixed;
    search.used[*fixed] = true;
  }
  search.extend(0);

  std::vector<int> orbit(n, -1);
  std::map<NodeId, int> ids;
  for (NodeId v = 0; v < n; ++v) {
    auto [it, inserted] = ids.emplace(search.find(v), static_cast<int>(ids.size()));
    orbit[v] = it->second;
  }
  return orbit;
}

RoleDataset barbell(std::size_t clique_size, std::size_t path_len) {
  if (clique_size < 3) throw ConfigError("barbell clique size must be >= 3");
  if (path_len < 1) throw ConfigError("barbell path length must be >= 1");

  // Layout: clique A = [0, k), path = [k, k + p), clique B = [k + p, 2k + p).
  // Attachment nodes are k - 1 (A) and k + p (B).
  const std::size_t k = clique_size;
  const std::size_t p = path_len;
  const std::size_t n = 2 * k + p;
  std::vector<Edge> edges;
  for (std::size_t base : {std::size_t{0}, k + p}) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        edges.emplace_back(static_cast<NodeId>(base + i), static_cast<NodeId>(base + j));
      }
    }
  }
  for (std::size_t v = k - 1; v < k + p; ++v) {
    edges.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(v + 1));
  }

  RoleDataset ds;
  ds.graph = Graph::from_edges(n, edges);
  ds.role_names = {"clique", "attachment"};
  const std::size_t path_classes = (p + 1) / 2;
  for (std::size_t c = 1; c <= path_classes; ++c) ds.role_names.push_back("path-" + std::to_string(c));

  ds.roles.assign(n, 0);
  ds.roles[k - 1] = 1;
  ds.roles[k + p] = 1;
  for (std::size_t i = 1; i <= p; ++i) {
    const std::size_t from_end = std::min(i, p + 1 - i);
    ds.roles[k - 1 + i] = static_cast<int>(1 + from_end);
  }
  return ds;
}

RoleDataset shapes_on_cycle(const ShapeConfig& cfg) {
  check_cycle_config(cfg);

  const std::size_t cycle = cfg.cycle_len;
  const std::size_t total = cfg.shapes.size() * cfg.instances_per_shape;

  // Attachment cycle node per instance.
  std::vector<std::size_t> slots(total);
  if (cfg.placement == Placement::regular) {
    const std::size_t spacing = cycle / total;
    for (std::size_t i = 0; i < total; ++i) slots[i] = i * spacing;
  } else {
    std::vector<std::size_t> all(cycle);
    std::iota(all.begin(), all.end(), std::size_t{0});
    Rng rng(derive_seed(cfg.seed, "placement"));
    std::shuffle(all.begin(), all.end(), rng);
    std::copy_n(all.begin(), total, slots.begin());
  }

  // Class ids before compaction: 0 plain cycle, 1 attached cycle, then the
  // template orbits of each shape type in configuration order.
  std::vector<std::string> names{"cycle", "cycle-attach"};
  std::vector<std::vector<int>> orbit_class(cfg.shapes.size());
  for (std::size_t s = 0; s < cfg.shapes.size(); ++s) {
    const auto& tpl = shape_template(cfg.shapes[s]);
    const auto tg = Graph::from_edges(tpl.num_nodes, tpl.edges);
    const auto orbits = automorphism_orbits(tg, tpl.anchor);
    const int base = static_cast<int>(names.size());
    const int count = *std::max_element(orbits.begin(), orbits.end()) + 1;
    for (int o = 0; o < count; ++o) {
      const auto rep = std::find(orbits.begin(), orbits.end(), o) - orbits.begin();
      names.push_back(tpl.name + ":" + tpl.node_names[rep]);
    }
    orbit_class[s].resize(orbits.size());
    for (std::size_t i = 0; i < orbits.size(); ++i) orbit_class[s][i] = base + orbits[i];
  }

  std::vector<Edge> edges;
  std::vector<int> raw_roles(cycle, 0);
  for (std::size_t i = 0; i < cycle; ++i) {
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % cycle));
  }
  std::size_t next = cycle;
  for (std::size_t s = 0, inst = 0; s < cfg.shapes.size(); ++s) {
    const auto& tpl = shape_template(cfg.shapes[s]);
    for (std::size_t c = 0; c < cfg.instances_per_shape; ++c, ++inst) {
      const auto base = static_cast<NodeId>(next);
      for (const auto& [a, b] : tpl.edges) edges.emplace_back(base + a, base + b);
      edges.emplace_back(static_cast<NodeId>(slots[inst]), base + tpl.anchor);
      raw_roles[slots[inst]] = 1;
      for (std::size_t t = 0; t < tpl.num_nodes; ++t) raw_roles.push_back(orbit_class[s][t]);
      next += tpl.num_nodes;
    }
  }

  RoleDataset ds;
  ds.graph = Graph::from_edges(next, edges);

  // Compact to dense labels (the plain-cycle class vanishes on a full cycle).
  std::vector<int> remap(names.size(), -1);
  for (int r : raw_roles) remap[r] = 0;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (remap[c] == 0) {
      remap[c] = static_cast<int>(ds.role_names.size());
      ds.role_names.push_back(names[c]);
    }
  }
  ds.roles.reserve(raw_roles.size());
  for (int r : raw_roles) ds.roles.push_back(remap[r]);

  if (cfg.rewire_count > 0) {
    if (cfg.rewire_count > ds.graph.num_edges()) {
      throw ConfigError("cannot rewire " + std::to_string(cfg.rewire_count) +
                        " edges of a graph with " + std::to_string(ds.graph.num_edges()));
    }
    ds.graph = rewire(ds.graph, cfg.rewire_count, derive_seed(cfg.seed, "rewire"));
  }
  return ds;
}

std::vector<RoleDataset> shapes_batch(const ShapeConfig& cfg, std::size_t count) {
  std::vector<RoleDataset> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    ShapeConfig c = cfg;
    c.seed = cfg.seed + i;
    out.push_back(shapes_on_cycle(c));
  }
  return out;
}

Graph rewire(const Graph& g, std::size_t k, std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  const std::size_t m = g.num_edges();
  if (k > m) {
    throw ConfigError("cannot rewire " + std::to_string(k) + " edges of a graph with " +
                      std::to_string(m));
  }
  if (k == 0) return g;

  auto key = [n](NodeId u, NodeId v) {
    if (u > v) std::swap(u, v);
    return static_cast<std::uint64_t>(u) * n + v;
  };
  std::vector<Edge> edges = g.edges();
  std::unordered_set<std::uint64_t> present;
  for (const auto& [u, v] : edges) present.insert(key(u, v));

  const std::size_t pairs = n * (n - 1) / 2;
  Rng rng(seed);
  for (std::size_t step = 0; step < k; ++step) {
    if (pairs == m) throw GraphError("graph is complete; no non-edge to rewire into");
    const std::size_t victim = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);

    // Uniform over pairs that are not edges before the deletion.
    Edge added;
    if (4 * (pairs - m) >= pairs) {
      std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
      do {
        added = {node(rng), node(rng)};
      } while (added.first == added.second || present.count(key(added.first, added.second)));
    } else {
      std::vector<Edge> candidates;
      for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
          if (!present.count(key(u, v))) candidates.emplace_back(u, v);
        }
      }
      added = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    }
    if (added.first > added.second) std::swap(added.first, added.second);

    present.erase(key(edges[victim].first, edges[victim].second));
    present.insert(key(added.first, added.second));
    edges[victim] = added;
  }
  return Graph::from_edges(n, edges);
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw ConfigError("edge probability must be in [0, 1]");
  std::vector<Edge> edges;
  if (n < 2 || p == 0.0) return Graph::from_edges(n, edges);
  Rng rng(seed);
  if (p == 1.0) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
  }
  // Batagelj-Brandes: skip lengths over the lower triangle are geometric.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = unif(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

}  // namespace vne
