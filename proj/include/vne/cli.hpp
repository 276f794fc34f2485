#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vne/evaluation.hpp"
#include "vne/synthetic.hpp"
#include "vne/vnestruct.hpp"

namespace vne {

inline constexpr const char* kVersion = "0.1.0";

/// Entry point of the `vnestruct` tool. `args` excludes the program name.
/// JSON results go to `out`, logs and usage to `err`.
/// Returns 0 on success, 1 on a runtime failure, 2 on a usage/config error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct BenchOptions {
  std::vector<std::size_t> sizes{1000, 2000, 4000, 8000};
  double avg_degree = 10.0;
  EntropyMode mode = EntropyMode::approx;
  int repeats = 5;
  unsigned embed_radius = 2;
  bool include_embed = true;
  std::size_t exact_limit = 500;  // exact entropy only up to this many nodes
  std::uint64_t seed = 0;
  PowerIterationOptions power{};
};

struct BenchRow {
  std::size_t n = 0;
  std::size_t m = 0;             // mean over the drawn graphs
  double approx_seconds = 0.0;  // median whole-graph vnge_approx
  int approx_iterations = 0;    // median
  std::optional<double> embed_seconds;  // median embed, radius = embed_radius
  std::optional<double> exact_seconds;
  std::optional<double> approx_ratio;  // vs previous row
  std::optional<double> embed_ratio;
};

/// Median-of-`repeats` wall times, one fresh G(n, avg_degree / (n - 1)) draw
/// per repeat.
/// Throws ConfigError when sizes are empty or not ascending.
std::vector<BenchRow> run_bench(const BenchOptions& opts);

struct PipelineOptions {
  ShapeConfig shapes{};
  std::size_t graphs = 20;
  EmbedOptions embed{3, EntropyMode::exact, {}, 0};
  RoleEvalOptions eval{};
};

/// Generates `graphs` seeded datasets, embeds and evaluates each, and
/// aggregates the metrics (mean, stddev across graphs).
MetricsReport run_pipeline(const PipelineOptions& opts);

}  // namespace vne
