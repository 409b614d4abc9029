#pragma once

#include "mldcone/chart.hpp"
#include "mldcone/intmat.hpp"

#include <string>
#include <vector>

namespace mldcone {

// Overlattice Z^n <= L < Q^n generated by Z^n together with finitely many
// rational vectors. Encodes the (dual side of the) quotient C^n / (L / Z^n).
// The coset group L / Z^n is materialized by closure, so construction is
// bounded by max_index.
class QuotientLattice {
 public:
  QuotientLattice(int dim, std::vector<std::vector<Rat>> extra_generators,
                  std::int64_t max_index = kDefaultMaxOrder);

  int dim() const { return dim_; }
  // Coset representatives of L / Z^n with entries in [0,1), sorted
  // lexicographically; the zero vector is always first.
  const std::vector<std::vector<Rat>>& cosets() const { return cosets_; }
  std::int64_t index() const { return static_cast<std::int64_t>(cosets_.size()); }
  Rat covolume() const { return Rat(Int(1), Int(index())); }
  // Exponent of L / Z^n: every element of L has coordinates in (1/exponent)Z.
  std::int64_t exponent() const { return exponent_; }

  // Membership test via the Hermite basis: solves basis * x = v and checks
  // integrality.
  bool contains(const std::vector<Rat>& v) const;

  // Columns form a Z-basis of L (Hermite form of the generator matrix, so the
  // basis is canonical for a given generator list).
  const std::vector<std::vector<Rat>>& basis() const { return basis_; }

 private:
  int dim_;
  std::vector<std::vector<Rat>> cosets_;
  std::vector<std::vector<Rat>> basis_;  // column vectors
  std::int64_t exponent_ = 1;
};

// Builds the overlattice attached to a chart group: one generator
// (w_{j,0}/d_j, ..., w_{j,n-1}/d_j) per cyclic factor.
QuotientLattice lattice_from_group(const std::vector<CyclicFactor>& factors,
                                   int dim,
                                   std::int64_t max_index = kDefaultMaxOrder);

// Lattice points of L in the half-open box (0,1]^n: one per coset, obtained
// by lifting zero coordinates to 1. Sorted lexicographically.
std::vector<std::vector<Rat>> box_points(const QuotientLattice& lattice);

// Brute-force discrepancy oracle for an isolated cyclic-type quotient
// C^n / (L/Z^n): min over box points of the coordinate sum. Requires the
// action to be isolated in the strong sense that every nonzero coset has all
// coordinates nonzero; throws std::invalid_argument otherwise.
Rat mld_oracle_quotient(const QuotientLattice& lattice);
Rat mld_oracle_quotient(const std::vector<CyclicFactor>& group, int dim,
                        std::int64_t max_index = kDefaultMaxOrder);

// Chart-level oracle: rebuilds the overlattice from the chart's group data and
// minimizes r*x_0 + sum_{i>=1} x_i over box points in (0,1]^n. Matches the
// eq1 chart contribution whenever no non-identity element fixes a base
// coordinate; see mld_oracle_cone for the general box.
Rat mld_oracle_chart(const QuotientChart& chart, const Rat& r,
                     std::int64_t max_order = kDefaultMaxOrder);

// Cone-level oracle: minimizes the same weighted sum over lattice points with
// x_0 in (0,1] and x_i in [0,1] for i >= 1 (base coordinates of a sector may
// lie on the wall), across all charts, together with the bare r point. This is
// the valuative box and agrees with the mld on every valid cone.
Rat mld_oracle_cone(const FanoConeData& data,
                    std::int64_t max_order = kDefaultMaxOrder);

// Primitive generator of the ray through xi inside L: the smallest positive
// t*xi lying in L. xi must be a nonzero nonnegative integer vector.
std::vector<Rat> primitive_ray(const QuotientLattice& lattice,
                               const std::vector<std::int64_t>& xi);

// Sum of coordinates of the primitive ray; the log-Fano index of the cone
// polarization cut out by that ray.
Rat fano_index_r(const std::vector<Rat>& ray);

// Full-dimensional simplicial cone given by its rays in L; rays[distinguished]
// is the subdivision ray (the fiber direction of the chart).
struct SimplicialChart {
  std::vector<std::vector<Rat>> rays;
  int distinguished = 0;
};

// Star subdivision of the positive orthant along a primitive interior ray:
// n charts, the j-th spanned by the ray together with the primitive generators
// of all coordinate rays except e_j. The subdivision ray is always rays[0].
std::vector<SimplicialChart> star_subdivision(const QuotientLattice& lattice,
                                              const std::vector<Rat>& ray);

// Presents L / (Z-span of the chart's rays) in invariant-factor form via the
// Smith normal form of the coordinate matrix of the rays in a basis of L, and
// reads off diagonal weights: one cyclic factor per invariant factor > 1,
// coordinate 0 of each weight vector corresponding to the distinguished ray.
QuotientChart chart_from_cone(const SimplicialChart& cone,
                              const QuotientLattice& lattice,
                              const std::string& label);

// End-to-end converter: the quotient singularity C^n / (1/m)(a_1..a_n) with
// every gcd(a_i, m) = 1 becomes Fano cone data with index r and one chart per
// subdivision cone, using the Reeb direction xi (componentwise positive;
// defaults to all-ones when empty). Carries the unimodularity certificate
// m == 1. Throws ValidationError when some gcd(a_i, m) != 1 (non-isolated).
FanoConeData cone_from_cyclic_quotient(std::int64_t m,
                                       const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& xi = {},
                                       std::int64_t max_order = kDefaultMaxOrder);

}  // namespace mldcone
