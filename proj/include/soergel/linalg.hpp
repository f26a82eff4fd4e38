#pragma once

// Exact sparse linear algebra over Q.
//
// Kernels are computed modulo word-size primes, lifted by rational
// reconstruction and then certified over Q: every returned vector is checked
// to lie in the rational kernel, and since dim ker (mod p) >= dim ker (Q) the
// certified vectors span it. When certification fails the computation falls
// back to plain rational elimination, so results never depend on luck.

#include <utility>
#include <vector>

#include "soergel/rational.hpp"

namespace soergel {

using SparseVec = std::vector<std::pair<int, Rational>>;  // ascending column, nonzero values

struct SparseMatrix {
  int cols = 0;
  std::vector<SparseVec> rows;
};

struct Nullspace {
  std::vector<int> pivot_cols;
  /// One per basis vector, ascending.
  std::vector<int> free_cols;
  /// basis[i] is 1 at free_cols[i] and 0 at every other free column
  /// (the reduced-echelon kernel basis).
  std::vector<SparseVec> basis;
};

Nullspace nullspace(const SparseMatrix& a);
int rank(const SparseMatrix& a);

/// Reference implementation by rational Gauss-Jordan elimination.
Nullspace nullspace_exact(const SparseMatrix& a);

/// True when a * v == 0 exactly.
bool annihilates(const SparseMatrix& a, const SparseVec& v);

/// Coordinates of a kernel element with respect to `ns.basis`: its values at
/// the free columns.
std::vector<Rational> kernel_coordinates(const Nullspace& ns, const SparseVec& v);

}  // namespace soergel
