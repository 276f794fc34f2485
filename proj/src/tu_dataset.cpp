#include "vne/tu_dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>

namespace vne {

namespace fs = std::filesystem;

namespace {

// First integer on each non-empty line (separators: comma or whitespace).
std::vector<std::vector<long>> read_int_rows(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  std::vector<std::vector<long>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<long> row;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ',' || line[i] == ' ' || line[i] == '\t' ||
                                 line[i] == '\r')) {
        ++i;
      }
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ',' && line[j] != ' ' && line[j] != '\t' &&
             line[j] != '\r') {
        ++j;
      }
      long value = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
      if (ec != std::errc{} || ptr != line.data() + j) {
        // Real-valued labels/attributes are truncated toward zero.
        try {
          value = static_cast<long>(std::stod(line.substr(i, j - i)));
        } catch (const std::exception&) {
          throw ParseError(path.filename().string() + ": invalid number '" +
                               line.substr(i, j - i) + "'",
                           line_no);
        }
      }
      row.push_back(value);
      i = j;
    }
    if (row.empty()) {
      // Blank lines are only tolerated at the end of a file.
      rows.emplace_back();
      continue;
    }
    rows.push_back(std::move(row));
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].empty()) throw ParseError(path.filename().string() + ": blank line", r + 1);
  }
  return rows;
}

}  // namespace

std::string tu_dataset_name(const fs::path& dir) {
  std::optional<std::string> name;
  if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir.string(), 0);
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto file = entry.path().filename().string();
    if (file.size() > 6 && file.ends_with("_A.txt")) {
      if (name) throw ParseError("several *_A.txt files in " + dir.string(), 0);
      name = file.substr(0, file.size() - 6);
    }
  }
  if (!name) throw ParseError("no *_A.txt file in " + dir.string(), 0);
  return *name;
}

AttributedGraphSet load_tu_dataset(const fs::path& dir) {
  const std::string ds = tu_dataset_name(dir);
  auto file = [&](const std::string& suffix) { return dir / (ds + "_" + suffix + ".txt"); };

  const auto indicator = read_int_rows(file("graph_indicator"));
  const auto graph_labels = read_int_rows(file("graph_labels"));
  const auto adjacency = read_int_rows(file("A"));
  std::optional<std::vector<std::vector<long>>> node_labels;
  if (fs::exists(file("node_labels"))) node_labels = read_int_rows(file("node_labels"));

  const std::size_t num_nodes = indicator.size();
  std::map<long, std::size_t> graph_index;
  for (const auto& row : indicator) graph_index.emplace(row[0], 0);
  std::size_t next = 0;
  for (auto& [id, idx] : graph_index) idx = next++;
  const std::size_t num_graphs = graph_index.size();
  if (graph_labels.size() != num_graphs) {
    throw ParseError(ds + "_graph_labels.txt has " + std::to_string(graph_labels.size()) +
                         " rows but the indicator names " + std::to_string(num_graphs) + " graphs",
                     0);
  }
  if (node_labels && node_labels->size() != num_nodes) {
    throw ParseError(ds + "_node_labels.txt has " + std::to_string(node_labels->size()) +
                         " rows for " + std::to_string(num_nodes) + " nodes",
                     0);
  }

  // Global node -> (graph, local id); locals follow file order.
  std::vector<std::size_t> owner(num_nodes);
  std::vector<NodeId> local(num_nodes);
  std::vector<std::size_t> sizes(num_graphs, 0);
  for (std::size_t v = 0; v < num_nodes; ++v) {
    owner[v] = graph_index.at(indicator[v][0]);
    local[v] = static_cast<NodeId>(sizes[owner[v]]++);
  }

  std::vector<std::vector<Edge>> edges(num_graphs);
  for (std::size_t r = 0; r < adjacency.size(); ++r) {
    const auto& row = adjacency[r];
    if (row.size() != 2) throw ParseError(ds + "_A.txt: expected two node ids", r + 1);
    const long a = row[0];
    const long b = row[1];
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > num_nodes ||
        static_cast<std::size_t>(b) > num_nodes) {
      throw ParseError(ds + "_A.txt: node id out of range", r + 1);
    }
    const auto u = static_cast<std::size_t>(a - 1);
    const auto v = static_cast<std::size_t>(b - 1);
    if (owner[u] != owner[v]) {
      throw ParseError(ds + "_A.txt: edge joins nodes of different graphs", r + 1);
    }
    if (u == v) continue;
    edges[owner[u]].emplace_back(local[u], local[v]);
  }

  std::map<long, std::size_t> label_index;
  for (const auto& row : graph_labels) label_index.emplace(row[0], 0);
  next = 0;
  for (auto& [lab, idx] : label_index) idx = next++;

  AttributedGraphSet set;
  set.graphs.reserve(num_graphs);
  for (std::size_t g = 0; g < num_graphs; ++g) {
    set.graphs.push_back(Graph::from_edges(sizes[g], edges[g]));
    set.graph_labels.push_back(static_cast<int>(label_index.at(graph_labels[g][0])));
  }

  if (node_labels) {
    std::map<long, std::size_t> value_index;
    for (const auto& row : *node_labels) value_index.emplace(row[0], 0);
    next = 0;
    for (auto& [val, idx] : value_index) idx = next++;
    for (std::size_t g = 0; g < num_graphs; ++g) {
      set.node_attributes.emplace_back(sizes[g], value_index.size());
    }
    for (std::size_t v = 0; v < num_nodes; ++v) {
      set.node_attributes[owner[v]](local[v], value_index.at((*node_labels)[v][0])) = 1.0;
    }
  } else {
    const std::size_t cap = max_degree(set.graphs);
    for (const auto& g : set.graphs) set.node_attributes.push_back(degree_one_hot(g, cap));
  }
  return set;
}

}  // namespace vne
