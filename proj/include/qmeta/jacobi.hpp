#pragma once

#include <cstddef>
#include <vector>

namespace qmeta {

struct EigenResult {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major, vectors[k*n + i] = component i of vector k
  std::size_t n = 0;
  int sweeps = 0;

  double vec(std::size_t k, std::size_t i) const { return vectors[k * n + i]; }
};

// Cyclic Jacobi for a dense symmetric matrix given row-major. Throws
// PreconditionError when it has not converged after max_sweeps.
EigenResult jacobi_eigen(std::vector<double> a, std::size_t n, int max_sweeps = 100);

}  // namespace qmeta
