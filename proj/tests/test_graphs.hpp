#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "vne/graph.hpp"
#include "vne/rng.hpp"
#include "vne/synthetic.hpp"

namespace vne::test {

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 0; v < n; ++v) e.emplace_back(v, static_cast<NodeId>((v + 1) % n));
  return Graph::from_edges(n, e);
}

// Random graph with at least one edge; size and density vary with the draw.
inline Graph random_graph(Rng& rng, std::size_t min_n, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::uniform_real_distribution<double> density(0.05, 0.9);
  for (;;) {
    const std::size_t n = size(rng);
    const Graph g = erdos_renyi(n, density(rng), rng());
    if (g.num_edges() > 0) return g;
  }
}

inline std::vector<NodeId> random_permutation(Rng& rng, std::size_t n) {
  std::vector<NodeId> p(n);
  std::iota(p.begin(), p.end(), NodeId{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace vne::test
