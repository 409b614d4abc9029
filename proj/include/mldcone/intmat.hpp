#pragma once

#include "mldcone/rational.hpp"

#include <vector>

namespace mldcone {

// Dense matrix over arbitrary-precision integers. Everything here runs on
// matrices of lattice rank (n <= 6 in practice), so the simple cubic
// algorithms below are plenty.
struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  static IntMat identity(int n);
};

IntMat mat_mul(const IntMat& x, const IntMat& y);
bool mat_equal(const IntMat& x, const IntMat& y);

// Determinant by fraction-free (Bareiss) elimination.
Int det(const IntMat& m);

// u * a * v = d with u, v unimodular and d diagonal with d_1 | d_2 | ...,
// all diagonal entries >= 0. Invariant-factor (Smith) form.
struct SmithResult {
  IntMat d, u, v;
};
SmithResult smith_normal_form(const IntMat& a);

// Column-style Hermite form of the column span: returns h (rows x rank),
// lower triangular with positive pivots, columns spanning the same lattice as
// the columns of a. Entries left of each pivot are reduced into [0, pivot).
IntMat hermite_column_basis(const IntMat& a);

}  // namespace mldcone
