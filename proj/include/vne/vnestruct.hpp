#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vne/entropy.hpp"
#include "vne/graph.hpp"
#include "vne/matrix.hpp"

namespace vne {

enum class EntropyMode { exact, approx };

EntropyMode parse_entropy_mode(const std::string& s);
const char* to_string(EntropyMode mode);

struct EmbedOptions {
  unsigned radius = 3;
  EntropyMode mode = EntropyMode::approx;
  PowerIterationOptions power{};
  std::size_t threads = 0;  // 0: default_thread_count()
};

/// Structural embedding: row v holds the entropies of v's ego-networks of
/// radius 1..R. Entries are non-negative.
struct EmbeddingMatrix {
  Matrix values;  // n x R
  std::size_t num_nodes() const { return values.rows(); }
  unsigned radius() const { return static_cast<unsigned>(values.cols()); }
};

/// Entropy of one ego-network failed; carries where.
class EmbeddingError : public std::runtime_error {
 public:
  EmbeddingError(const std::string& what, NodeId node, unsigned radius)
      : std::runtime_error(what), node_(node), radius_(radius) {}
  NodeId node() const { return node_; }
  unsigned radius() const { return radius_; }

 private:
  NodeId node_;
  unsigned radius_;
};

/// Entropy of a graph under `mode`; edgeless graphs give 0.
double graph_entropy(const Graph& g, EntropyMode mode, const PowerIterationOptions& power = {});

/// Computes the embedding for every node. Each (node, radius) cell is
/// computed independently against the shared graph, so the result does not
/// depend on the number of workers.
EmbeddingMatrix embed(const Graph& g, const EmbedOptions& opts);

/// CSV with header "node,h1,...,hR", rows by ascending node id, values with
/// 10 significant digits.
void write_embeddings(const EmbeddingMatrix& emb, std::ostream& out);
EmbeddingMatrix read_embeddings(std::istream& in);

}  // namespace vne
