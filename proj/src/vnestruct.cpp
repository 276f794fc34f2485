#include "vne/vnestruct.hpp"

#include <cstdio>
#include <sstream>
#include <string_view>
#include <vector>

#include "vne/parallel.hpp"

namespace vne {

EntropyMode parse_entropy_mode(const std::string& s) {
  if (s == "exact") return EntropyMode::exact;
  if (s == "approx") return EntropyMode::approx;
  throw std::invalid_argument("unknown entropy mode '" + s + "' (expected exact|approx)");
}

const char* to_string(EntropyMode mode) {
  return mode == EntropyMode::exact ? "exact" : "approx";
}

double graph_entropy(const Graph& g, EntropyMode mode, const PowerIterationOptions& power) {
  return mode == EntropyMode::exact ? vnge_exact(g) : vnge_approx(g, power);
}

EmbeddingMatrix embed(const Graph& g, const EmbedOptions& opts) {
  if (opts.radius < 1) throw std::invalid_argument("embedding radius must be >= 1");
  const std::size_t n = g.num_nodes();
  const unsigned radii = opts.radius;

  EmbeddingMatrix emb{Matrix(n, radii)};
  parallel_for(
      n * radii,
      [&](std::size_t cell) {
        const auto v = static_cast<NodeId>(cell / radii);
        const auto r = static_cast<unsigned>(cell % radii) + 1;
        try {
          const auto ego = ego_network(g, v, r);
          emb.values(v, r - 1) = graph_entropy(ego.subgraph, opts.mode, opts.power);
        } catch (const std::exception& e) {
          throw EmbeddingError("node " + std::to_string(v) + ", radius " + std::to_string(r) +
                                   ": " + e.what(),
                               v, r);
        }
      },
      opts.threads);
  return emb;
}

void write_embeddings(const EmbeddingMatrix& emb, std::ostream& out) {
  out << "node";
  for (unsigned r = 1; r <= emb.radius(); ++r) out << ",h" << r;
  out << '\n';
  char buf[32];
  for (std::size_t v = 0; v < emb.num_nodes(); ++v) {
    out << v;
    for (double x : emb.values.row(v)) {
      std::snprintf(buf, sizeof buf, "%.10g", x);
      out << ',' << buf;
    }
    out << '\n';
  }
}

EmbeddingMatrix read_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty embedding file", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 2 || header[0] != "node") throw ParseError("bad embedding header", 1);
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c] != "h" + std::to_string(c)) throw ParseError("bad embedding header", 1);
  }
  const std::size_t cols = header.size() - 1;

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    std::size_t pos = 0;
    std::size_t node = 0;
    try {
      node = std::stoul(cell, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != cell.size() || node != rows) {
      throw ParseError("expected node id " + std::to_string(rows), line_no);
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!std::getline(ss, cell, ',')) throw ParseError("missing embedding value", line_no);
      try {
        values.push_back(std::stod(cell, &pos));
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != cell.size()) throw ParseError("invalid embedding value '" + cell + "'", line_no);
    }
    if (std::getline(ss, cell, ',')) throw ParseError("too many columns", line_no);
    ++rows;
  }

  EmbeddingMatrix emb{Matrix(rows, cols)};
  std::copy(values.begin(), values.end(), emb.values.data().begin());
  return emb;
}

}  // namespace vne
