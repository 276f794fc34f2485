#include "vne/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vne/jacobi.hpp"
#include "vne/rng.hpp"

namespace vne {

Matrix laplacian(const Graph& g) {
  const std::size_t n = g.num_nodes();
  Matrix l(n, n);
  for (NodeId u = 0; u < n; ++u) {
    l(u, u) = static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u)) l(u, v) = -1.0;
  }
  return l;
}

Matrix density_matrix(const Graph& g) {
  if (g.num_edges() == 0) throw DegenerateGraphError("density matrix of an edgeless graph");
  Matrix rho = laplacian(g);
  const double trace = 2.0 * static_cast<double>(g.num_edges());
  for (double& x : rho.data()) x /= trace;
  return rho;
}

DensitySpectrum density_spectrum(const Graph& g) {
  DensitySpectrum s;
  s.eigenvalues = jacobi_eigen(density_matrix(g)).values;
  for (double& x : s.eigenvalues) x = std::clamp(x, 0.0, 1.0);
  return s;
}

double spectral_entropy(std::span<const double> eigenvalues) {
  double h = 0.0;
  for (double x : eigenvalues) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double vnge_exact(const Graph& g) {
  if (g.num_nodes() == 0) throw GraphError("entropy of a graph with no nodes");
  if (g.num_edges() == 0) return 0.0;
  const auto spectrum = density_spectrum(g);
  return spectral_entropy(spectrum.eigenvalues);
}

double quadratic_q(const Graph& g) {
  const std::size_t m = g.num_edges();
  if (m == 0) throw DegenerateGraphError("quadratic term of an edgeless graph");
  double sum_sq = 0.0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const auto d = static_cast<double>(g.degree(v));
    sum_sq += d * d;
  }
  const auto md = static_cast<double>(m);
  return 1.0 - 1.0 / (2.0 * md) - sum_sq / (4.0 * md * md);
}

LambdaMax power_iteration_lambda_max(const Graph& g, const PowerIterationOptions& opts) {
  const std::size_t n = g.num_nodes();
  if (g.num_edges() == 0) throw DegenerateGraphError("power iteration on an edgeless graph");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("power iteration tolerance must be > 0");

  const double inv_trace = 1.0 / (2.0 * static_cast<double>(g.num_edges()));

  // Reproducible pseudo-random start vector.
  std::vector<double> x(n), y(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(mix64(i) >> 11) * 0x1.0p-52 - 1.0;
    norm += x[i] * x[i];
  }
  norm = std::sqrt(norm);
  for (double& xi : x) xi /= norm;

  double previous = std::numeric_limits<double>::quiet_NaN();
  double rayleigh = 0.0;
  for (int it = 1; it <= opts.max_iters; ++it) {
    double dot = 0.0;
    double sq = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      const auto nbrs = g.neighbors(u);
      double acc = static_cast<double>(nbrs.size()) * x[u];
      for (NodeId v : nbrs) acc -= x[v];
      y[u] = acc * inv_trace;
      dot += x[u] * y[u];
      sq += y[u] * y[u];
    }
    rayleigh = dot;
    if (sq == 0.0) {
      throw ConvergenceError("power iteration collapsed onto the null space", rayleigh, it);
    }
    const double inv = 1.0 / std::sqrt(sq);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] * inv;
    if (std::fabs(rayleigh - previous) < opts.tol) {
      return {std::clamp(rayleigh, std::numeric_limits<double>::min(), 1.0), it};
    }
    previous = rayleigh;
  }
  throw ConvergenceError("power iteration did not converge in " +
                             std::to_string(opts.max_iters) + " iterations",
                         rayleigh, opts.max_iters);
}

ApproxSummary approx_summary(const Graph& g, const PowerIterationOptions& opts) {
  if (g.num_edges() == 0) return {0.0, 1.0, 0};
  const auto lm = power_iteration_lambda_max(g, opts);
  return {quadratic_q(g), lm.value, lm.iterations};
}

double vnge_approx(const Graph& g, const PowerIterationOptions& opts) {
  if (g.num_nodes() == 0) throw GraphError("entropy of a graph with no nodes");
  const auto s = approx_summary(g, opts);
  return std::max(0.0, -s.q * std::log(s.lambda_max));
}

double binary_entropy(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return -t * std::log(t) - (1.0 - t) * std::log1p(-t);
}

ContinuityBound fannes_audenaert_bound(const Graph& g1, const Graph& g2) {
  const std::size_t n = g1.num_nodes();
  if (g2.num_nodes() != n) {
    throw GraphError("continuity bound needs graphs on the same node set (" + std::to_string(n) +
                     " vs " + std::to_string(g2.num_nodes()) + " nodes)");
  }
  if (n < 2) throw GraphError("continuity bound needs at least 2 nodes");

  Matrix diff = density_matrix(g1);
  const Matrix rho2 = density_matrix(g2);
  for (std::size_t i = 0; i < diff.data().size(); ++i) diff.data()[i] -= rho2.data()[i];

  double trace_norm = 0.0;
  for (double mu : jacobi_eigen(std::move(diff)).values) trace_norm += std::fabs(mu);

  ContinuityBound b;
  b.trace_distance = std::min(1.0, 0.5 * trace_norm);
  b.lhs = std::fabs(vnge_exact(g1) - vnge_exact(g2));
  b.rhs = b.trace_distance * std::log(static_cast<double>(n - 1)) +
          binary_entropy(b.trace_distance);
  return b;
}

}  // namespace vne
