#pragma once

#include "mldcone/chart.hpp"

#include <cstdint>
#include <vector>

namespace mldcone {

// chi(O(b)) on the football P^1(1,ell): 1 + b/ell - (b mod ell)/ell with
// b mod ell reduced into [0, ell). Integer-valued for every integer b.
Rat chi_orb_line(std::int64_t b, std::int64_t ell);

// Independent section count: monomials x^i y^j of weights (1, ell) with
// i + ell*j = b. Agrees with chi_orb_line wherever h^1 vanishes.
std::int64_t h0_monomial_oracle(std::int64_t b, std::int64_t ell);

struct CurveMark {
  Rat age;
  int fixed_dim = 0;
};

struct MarkedCurveSpec {
  int genus = 0;
  Rat minusK_degree;
  std::vector<CurveMark> marks;
  int dim_Y = 1;
};

// Lower bound for the dimension of the space of deformations of a marked
// orbifold curve with its marked sectors pinned:
// deg + (1 - genus) * dim_Y - sum_i (age_i + fixed_dim_i).
Rat rr_lower_bound(const MarkedCurveSpec& curve);

struct AdmissibleK {
  std::int64_t residue = 0;  // class of k mod ell, in [0, ell)
  std::int64_t k_max = -1;   // largest admissible twist degree, always < 0
};

// Degree constraints for a twisted map whose sector at infinity has order m
// and fiber weight p: k = p*ell/m (mod ell) and k <= p*ell/m - ell.
// Requires 0 <= p < m and m | p*ell.
AdmissibleK admissible_k(std::int64_t m, std::int64_t p, std::int64_t ell);

// -K_Y . f_* C = r * (-k) / ell where f* L^{-1} = O(k), k < 0.
Rat minusK_degree(const Rat& r, std::int64_t k, std::int64_t ell);

// Numerical shadow of a twisted rational curve f: P^1(1,ell) -> Y evaluated
// at the sector of g at infinity. Curves enter only through these numbers;
// no maps or moduli spaces are ever constructed.
struct TwistedMapDatum {
  std::int64_t ell = 1;
  GroupElement target_element;
  std::int64_t k = -1;
  Rat r;
  int dim_Y = 1;
};

// Throws std::invalid_argument unless ell equals the order of the target
// element, k is negative, lies in the admissible class mod ell and does not
// exceed k_max, r is positive, and dim_Y is one less than the chart dim.
void validate_datum(const TwistedMapDatum& datum);

struct DInvariant {
  Rat value;         // -K_Y . f_* C + age(g^{-1})
  Rat bound;         // r(m - p)/m + age(g^{-1})
  bool tight = false;  // value == bound, equivalently k == k_max
};

DInvariant d_invariant(const TwistedMapDatum& datum);

struct CurveMldCheck {
  Rat mld;
  Rat d;
  Rat slack;       // d - mld
  bool ok = false; // slack >= 0
};

// The existence of the curve datum bounds the mld from above by d_{g^{-1}}.
// The datum must live on one of the cone's charts and share its index r.
CurveMldCheck mld_upper_from_curve(const FanoConeData& cone,
                                   const TwistedMapDatum& datum,
                                   std::int64_t max_order = kDefaultMaxOrder);

// Virtual dimension of the genus-0 moduli with len(ages) marked sectors:
// A + dim_Y + len(ages) - 3 - sum(ages).
Rat vdim_multi(const Rat& A_degree, int dim_Y, const std::vector<Rat>& ages);

// Virtual dimension of the one-pointed space with evaluation constrained to
// the sector of g: A + dim_Y - 2 - age(g) - fixed_dim(g). Equals d_{g^{-1}} - 2
// for matching data, by age duality.
Rat vdim_pointed(const Rat& A_degree, int dim_Y, const GroupElement& g);

// All splittings b of a pulled-back tangent bundle: b_i >= 1,
// b_i = a_i (mod ell), sum_i chi(O(b_i)) - d = n + 1 with n = a.size().
// a must be ascending with entries in [1, ell] and d = #{i : a_i = ell}.
// Enumeration over b_i <= a_i + ell*(n+1) is complete since every chi term
// is at least 1. Results in lexicographic order.
std::vector<std::vector<std::int64_t>> splitting_enumerate(
    std::int64_t ell, const std::vector<std::int64_t>& a, int d);

// True when every solution shifts exactly one a_i by ell and keeps the rest.
bool splitting_uniqueness_check(
    std::int64_t ell, const std::vector<std::int64_t>& a,
    const std::vector<std::vector<std::int64_t>>& solutions);

}  // namespace mldcone
