#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vne/graph.hpp"
#include "vne/matrix.hpp"

namespace vne {

/// The density matrix rho = L / Tr(L) does not exist for an edgeless graph.
class DegenerateGraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Power iteration gave up. Carries the last Rayleigh-quotient estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, int iterations)
      : std::runtime_error(what), estimate_(estimate), iterations_(iterations) {}
  double estimate() const { return estimate_; }
  int iterations() const { return iterations_; }

 private:
  double estimate_;
  int iterations_;
};

/// Eigenvalues of the Laplacian density matrix, ascending, each in [0, 1],
/// summing to 1.
struct DensitySpectrum {
  std::vector<double> eigenvalues;
};

struct PowerIterationOptions {
  double tol = 1e-10;  // on successive Rayleigh quotients
  int max_iters = 10000;
};

struct LambdaMax {
  double value = 0.0;
  int iterations = 0;
};

/// Ingredients of the linear-time entropy estimate.
struct ApproxSummary {
  double q = 0.0;           // Tr(rho (I - rho)), in [0, 1)
  double lambda_max = 0.0;  // largest eigenvalue of rho, in (0, 1]
  int iterations = 0;
};

Matrix laplacian(const Graph& g);

/// L / 2m. Throws DegenerateGraphError when the graph has no edges.
Matrix density_matrix(const Graph& g);

DensitySpectrum density_spectrum(const Graph& g);

/// Shannon entropy (nats) of a spectrum, with 0 ln 0 = 0. Round-off
/// negatives are treated as zero.
double spectral_entropy(std::span<const double> eigenvalues);

/// Von Neumann entropy of the Laplacian density matrix, in nats, through a
/// dense eigendecomposition. Edgeless graphs have entropy 0.
double vnge_exact(const Graph& g);

/// Closed form of Tr(rho (I - rho)) from the degree sequence:
///   1 - 1/(2m) - sum(d_i^2) / (4 m^2).
/// Throws DegenerateGraphError for m = 0.
double quadratic_q(const Graph& g);

/// Dominant eigenvalue of rho by power iteration on the sparse Laplacian.
/// rho is never formed. Throws DegenerateGraphError for m = 0 and
/// ConvergenceError after `max_iters`.
LambdaMax power_iteration_lambda_max(const Graph& g, const PowerIterationOptions& opts = {});

/// Q and lambda_max for `g`. Edgeless graphs yield {0, 1, 0}.
ApproxSummary approx_summary(const Graph& g, const PowerIterationOptions& opts = {});

/// -Q ln(lambda_max); a lower bound on vnge_exact, tight iff lambda_max = 1.
/// Edgeless graphs have entropy 0.
double vnge_approx(const Graph& g, const PowerIterationOptions& opts = {});

/// h(t) = -t ln t - (1 - t) ln(1 - t), with h(0) = h(1) = 0.
double binary_entropy(double t);

struct ContinuityBound {
  double lhs = 0.0;             // |S(rho1) - S(rho2)|
  double rhs = 0.0;             // T ln(n - 1) + h(T)
  double trace_distance = 0.0;  // T = 1/2 ||rho1 - rho2||_1
};

/// Fannes-Audenaert continuity bound for two graphs on the same labeled node
/// set. Throws GraphError on size mismatch or n < 2, DegenerateGraphError when
/// either graph has no edges.
ContinuityBound fannes_audenaert_bound(const Graph& g1, const Graph& g2);

}  // namespace vne
