#include "vne/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace vne {

namespace {

inline void rotate(Matrix& a, std::size_t i, std::size_t j, std::size_t k, std::size_t l,
                   double s, double tau) {
  const double g = a(i, j);
  const double h = a(k, l);
  a(i, j) = g - s * (h + g * tau);
  a(k, l) = h + s * (g - h * tau);
}

}  // namespace

SymmetricEigen jacobi_eigen(Matrix a, bool want_vectors, int max_sweeps) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigen: matrix is not square");

  SymmetricEigen out;
  Matrix v = want_vectors ? Matrix::identity(n) : Matrix{};
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (std::size_t p = 0; p < n; ++p) b[p] = d[p] = a(p, p);

  bool converged = n <= 1;
  for (int sweep = 1; !converged; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += std::fabs(a(p, q));
    }
    if (off == 0.0) {
      converged = true;
      break;
    }
    if (sweep > max_sweeps) break;
    out.sweeps = sweep;
    const double thresh = sweep < 4 ? 0.2 * off / static_cast<double>(n * n) : 0.0;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = 100.0 * std::fabs(a(p, q));
        // After a few sweeps, drop elements too small to change the diagonal.
        if (sweep > 4 && std::fabs(d[p]) + g == std::fabs(d[p]) &&
            std::fabs(d[q]) + g == std::fabs(d[q])) {
          a(p, q) = 0.0;
          continue;
        }
        if (std::fabs(a(p, q)) <= thresh) continue;

        double h = d[q] - d[p];
        double t;
        if (std::fabs(h) + g == std::fabs(h)) {
          t = a(p, q) / h;
        } else {
          const double theta = 0.5 * h / a(p, q);
          t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        h = t * a(p, q);
        z[p] -= h;
        z[q] += h;
        d[p] -= h;
        d[q] += h;
        a(p, q) = 0.0;
        for (std::size_t j = 0; j < p; ++j) rotate(a, j, p, j, q, s, tau);
        for (std::size_t j = p + 1; j < q; ++j) rotate(a, p, j, j, q, s, tau);
        for (std::size_t j = q + 1; j < n; ++j) rotate(a, p, j, q, j, s, tau);
        if (want_vectors) {
          for (std::size_t j = 0; j < n; ++j) rotate(v, j, p, j, q, s, tau);
        }
      }
    }
    for (std::size_t p = 0; p < n; ++p) {
      b[p] += z[p];
      d[p] = b[p];
      z[p] = 0.0;
    }
  }
  if (!converged) throw EigenSolverError("jacobi_eigen: no convergence");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = d[order[i]];
  if (want_vectors) {
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
  }
  return out;
}

}  // namespace vne
