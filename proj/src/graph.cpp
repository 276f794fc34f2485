#include "vne/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string_view>

namespace vne {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  if (n == 0 && edges.empty()) return g;
  std::vector<std::size_t> start(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a node outside 0.." + std::to_string(n) + "-1");
    }
    if (u == v) throw GraphError("self-loop on node " + std::to_string(u));
    ++start[u + 1];
    ++start[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
  std::vector<NodeId> raw(start[n]);
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (const auto& [u, v] : edges) {
    raw[fill[u]++] = v;
    raw[fill[v]++] = u;
  }

  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(raw.size());
  for (std::size_t u = 0; u < n; ++u) {
    const auto first = raw.begin() + static_cast<std::ptrdiff_t>(start[u]);
    const auto last = raw.begin() + static_cast<std::ptrdiff_t>(start[u + 1]);
    std::sort(first, last);
    g.targets_.insert(g.targets_.end(), first, std::unique(first, last));
    g.offsets_[u + 1] = g.targets_.size();
  }
  g.targets_.shrink_to_fit();
  g.m_ = g.targets_.size() / 2;
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  const bool from_u = degree(u) <= degree(v);
  const auto a = neighbors(from_u ? u : v);
  return std::binary_search(a.begin(), a.end(), from_u ? v : u);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::size_t> degrees(const Graph& g) {
  std::vector<std::size_t> d(g.num_nodes());
  for (NodeId v = 0; v < d.size(); ++v) d[v] = g.degree(v);
  return d;
}

std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source) {
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.num_nodes(), kUnreached);
  if (source >= g.num_nodes()) throw GraphError("source node out of range");
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[u] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

EgoNetwork ego_network(const Graph& g, NodeId v, unsigned radius) {
  if (v >= g.num_nodes()) {
    throw GraphError("node " + std::to_string(v) + " out of range for graph with " +
                     std::to_string(g.num_nodes()) + " nodes");
  }

  // Truncated BFS; `ball` collects the visited set in discovery order.
  std::vector<NodeId> ball{v};
  std::map<NodeId, NodeId> local;  // parent id -> placeholder, ordered by id
  local.emplace(v, 0);
  std::size_t level_begin = 0;
  for (unsigned depth = 0; depth < radius; ++depth) {
    const std::size_t level_end = ball.size();
    if (level_begin == level_end) break;
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (NodeId w : g.neighbors(ball[i])) {
        if (local.emplace(w, 0).second) ball.push_back(w);
      }
    }
    level_begin = level_end;
  }

  EgoNetwork ego;
  ego.node_map.reserve(local.size());
  NodeId next = 0;
  for (auto& [parent, id] : local) {
    id = next++;
    ego.node_map.push_back(parent);
  }
  ego.center_local_id = local.at(v);

  std::vector<Edge> edges;
  for (NodeId lu = 0; lu < ego.node_map.size(); ++lu) {
    for (NodeId w : g.neighbors(ego.node_map[lu])) {
      auto it = local.find(w);
      if (it != local.end() && lu < it->second) edges.emplace_back(lu, it->second);
    }
  }
  ego.subgraph = Graph::from_edges(ego.node_map.size(), edges);
  return ego;
}

Graph permute(const Graph& g, std::span<const NodeId> perm) {
  if (perm.size() != g.num_nodes()) throw GraphError("permutation size mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (NodeId p : perm) {
    if (p >= perm.size() || seen[p]) throw GraphError("not a permutation");
    seen[p] = true;
  }
  auto edges = g.edges();
  for (auto& [u, v] : edges) {
    u = perm[u];
    v = perm[v];
  }
  return Graph::from_edges(g.num_nodes(), edges);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid integer token '" + std::string(tok) + "'", line);
  }
  return value;
}

struct RawEdges {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::vector<std::size_t> lines;
  std::optional<std::size_t> declared_n;
};

RawEdges read_raw_edges(std::istream& in) {
  RawEdges raw;
  std::string buf;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, buf)) {
    ++line_no;
    auto line = trim(buf);
    if (line.empty() || line.front() == '#') continue;
    if (!seen_content && line.starts_with("n=")) {
      raw.declared_n = parse_int<std::size_t>(trim(line.substr(2)), line_no);
      seen_content = true;
      continue;
    }
    seen_content = true;
    auto tokens = split_ws(line);
    if (tokens.size() != 2) {
      throw ParseError("expected exactly two node ids per line; weighted or directed "
                       "edge lists are not supported",
                       line_no);
    }
    auto u = parse_int<std::int64_t>(tokens[0], line_no);
    auto v = parse_int<std::int64_t>(tokens[1], line_no);
    if (u == v) throw ParseError("self-loop on node " + std::to_string(u), line_no);
    raw.pairs.emplace_back(u, v);
    raw.lines.push_back(line_no);
  }
  return raw;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  auto raw = read_raw_edges(in);
  std::int64_t max_id = -1;
  for (std::size_t i = 0; i < raw.pairs.size(); ++i) {
    const auto [u, v] = raw.pairs[i];
    if (u < 0 || v < 0) throw ParseError("negative node id", raw.lines[i]);
    if (std::max(u, v) >= std::numeric_limits<NodeId>::max()) {
      throw ParseError("node id too large", raw.lines[i]);
    }
    max_id = std::max({max_id, u, v});
  }
  std::size_t n = static_cast<std::size_t>(max_id + 1);
  if (raw.declared_n) {
    if (*raw.declared_n < n) {
      throw ParseError("header n=" + std::to_string(*raw.declared_n) +
                           " is smaller than max id + 1 = " + std::to_string(n),
                       0);
    }
    n = *raw.declared_n;
  }
  std::vector<Edge> edges;
  edges.reserve(raw.pairs.size());
  for (const auto& [u, v] : raw.pairs) {
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n=" << g.num_nodes() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

RemappedGraph read_edge_list_remapped(std::istream& in) {
  auto raw = read_raw_edges(in);
  RemappedGraph result;
  for (const auto& [u, v] : raw.pairs) {
    result.original_ids.push_back(u);
    result.original_ids.push_back(v);
  }
  std::sort(result.original_ids.begin(), result.original_ids.end());
  result.original_ids.erase(std::unique(result.original_ids.begin(), result.original_ids.end()),
                            result.original_ids.end());
  auto local = [&](std::int64_t id) {
    return static_cast<NodeId>(
        std::lower_bound(result.original_ids.begin(), result.original_ids.end(), id) -
        result.original_ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.pairs.size());
  for (const auto& [u, v] : raw.pairs) edges.emplace_back(local(u), local(v));
  result.graph = Graph::from_edges(result.original_ids.size(), edges);
  return result;
}

std::vector<std::string> read_node_labels(std::istream& in, std::size_t n) {
  std::vector<std::string> labels(n);
  std::vector<bool> seen(n, false);
  std::string buf;
  std::size_t line_no = 0;
  while (std::getline(in, buf)) {
    ++line_no;
    auto line = trim(buf);
    if (line.empty() || line.front() == '#') continue;
    auto tokens = split_ws(line);
    if (tokens.size() != 2) throw ParseError("expected 'node_id label'", line_no);
    auto id = parse_int<std::size_t>(tokens[0], line_no);
    if (id >= n) throw ParseError("node id " + std::to_string(id) + " out of range", line_no);
    if (seen[id]) throw ParseError("duplicate label for node " + std::to_string(id), line_no);
    seen[id] = true;
    labels[id] = std::string(tokens[1]);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!seen[v]) throw ParseError("missing label for node " + std::to_string(v), 0);
  }
  return labels;
}

void write_node_labels(std::span<const std::string> labels, std::ostream& out) {
  for (std::size_t v = 0; v < labels.size(); ++v) out << v << ' ' << labels[v] << '\n';
}

}  // namespace vne
