#pragma once

#include <vector>

#include "vne/matrix.hpp"

namespace vne {

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j pairs with values[j]; empty if not requested
  int sweeps = 0;
};

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix. Only the upper
/// triangle of `a` is read. Throws EigenSolverError when the off-diagonal mass
/// does not vanish within `max_sweeps`.
SymmetricEigen jacobi_eigen(Matrix a, bool want_vectors = false, int max_sweeps = 100);

}  // namespace vne
