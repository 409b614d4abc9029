#include "mldcone/intmat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace mldcone {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat mat_mul(const IntMat& x, const IntMat& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  IntMat z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return z;
}

bool mat_equal(const IntMat& x, const IntMat& y) {
  return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

Int det(const IntMat& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: not square");
  int n = m.rows;
  if (n == 0) return 1;
  IntMat w = m;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign * w.at(n - 1, n - 1);
}

namespace {

void swap_rows(IntMat& m, int i, int j) {
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}
void swap_cols(IntMat& m, int i, int j) {
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}
// row i -= q * row t
void row_sub(IntMat& m, int i, int t, const Int& q) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(t, c);
}
void col_sub(IntMat& m, int j, int t, const Int& q) {
  for (int r = 0; r < m.rows; ++r) m.at(r, j) -= q * m.at(r, t);
}
void negate_row(IntMat& m, int i) {
  for (int c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
}
void negate_col(IntMat& m, int j) {
  for (int r = 0; r < m.rows; ++r) m.at(r, j) = -m.at(r, j);
}

}  // namespace

SmithResult smith_normal_form(const IntMat& a) {
  SmithResult res;
  res.d = a;
  res.u = IntMat::identity(a.rows);
  res.v = IntMat::identity(a.cols);
  IntMat& d = res.d;
  IntMat& u = res.u;
  IntMat& v = res.v;
  int rank_bound = std::min(a.rows, a.cols);

  for (int t = 0; t < rank_bound; ++t) {
    // Bring the submatrix's minimal nonzero entry to (t,t).
    auto pick_pivot = [&]() -> bool {
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < d.rows; ++i)
        for (int j = t; j < d.cols; ++j) {
          if (d.at(i, j) == 0) continue;
          Int mag = abs(d.at(i, j));
          if (pi < 0 || mag < best) { pi = i; pj = j; best = mag; }
        }
      if (pi < 0) return false;
      if (pi != t) { swap_rows(d, t, pi); swap_rows(u, t, pi); }
      if (pj != t) { swap_cols(d, t, pj); swap_cols(v, t, pj); }
      return true;
    };
    if (!pick_pivot()) break;

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);
        row_sub(d, i, t, q);
        row_sub(u, i, t, q);
        if (d.at(i, t) != 0) {  // smaller remainder; promote it
          swap_rows(d, t, i);
          swap_rows(u, t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        col_sub(d, j, t, q);
        col_sub(v, j, t, q);
        if (d.at(t, j) != 0) {
          swap_cols(d, t, j);
          swap_cols(v, t, j);
          clean = false;
        }
      }
      if (!clean) continue;

      // Divisibility: the pivot must divide every remaining entry.
      bool fixed = false;
      for (int i = t + 1; i < d.rows && !fixed; ++i)
        for (int j = t + 1; j < d.cols && !fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_sub(d, t, i, Int(-1));  // row t += row i
            row_sub(u, t, i, Int(-1));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (d.at(t, t) < 0) { negate_row(d, t); negate_row(u, t); }
  }
  return res;
}

IntMat hermite_column_basis(const IntMat& a) {
  IntMat w = a;
  int c = 0;  // next pivot column slot
  for (int r = 0; r < w.rows && c < w.cols; ++r) {
    // Reduce row r across columns >= c until one nonzero entry survives.
    for (;;) {
      int p = -1;
      Int best = 0;
      for (int j = c; j < w.cols; ++j) {
        if (w.at(r, j) == 0) continue;
        Int mag = abs(w.at(r, j));
        if (p < 0 || mag < best) { p = j; best = mag; }
      }
      if (p < 0) break;  // row r has no pivot; move to next row
      if (p != c) swap_cols(w, c, p);
      bool done = true;
      for (int j = c + 1; j < w.cols; ++j) {
        if (w.at(r, j) == 0) continue;
        Int q = w.at(r, j) / w.at(r, c);
        col_sub(w, j, c, q);
        if (w.at(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (c < w.cols && w.at(r, c) != 0) {
      if (w.at(r, c) < 0) negate_col(w, c);
      // Canonical form: entries left of the pivot reduced into [0, pivot).
      for (int j = 0; j < c; ++j) {
        Int q = w.at(r, j) / w.at(r, c);
        if (w.at(r, j) - q * w.at(r, c) < 0) q -= 1;
        col_sub(w, j, c, q);
      }
      ++c;
    }
  }
  IntMat h(w.rows, c);
  for (int i = 0; i < w.rows; ++i)
    for (int j = 0; j < c; ++j) h.at(i, j) = w.at(i, j);
  return h;
}

}  // namespace mldcone
