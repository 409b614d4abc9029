#pragma once

#include "mldcone/chart.hpp"
#include "mldcone/curves.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mldcone {

struct WeightedProjectiveSpec {
  std::vector<std::int64_t> weights;  // ascending
  bool well_formed = false;           // pairwise coprime
};

// Sorts the weights ascending and records pairwise coprimality. At least two
// positive weights required.
WeightedProjectiveSpec make_wps(std::vector<std::int64_t> weights);

// Fano cone data of C(P(a_0..a_n), O(1)): r = sum of weights, one chart per
// coordinate point with order a_i, fiber weight 1 and base weights
// -a_j mod a_i. Each chart is cross-validated against the star subdivision of
// Z^(n+1) along the weight ray; any disagreement is a hard error. Only
// well-formed weights are accepted; the total space is then smooth, which the
// result certifies via ambient_unimodular.
FanoConeData wps_cone(const WeightedProjectiveSpec& wps);

// Checks by subset-gcd enumeration that every stabilizer order arising on
// P_w divides one of the weights, so the coordinate charts see every inertia
// sector of the base.
bool coordinate_chart_coverage_check(const WeightedProjectiveSpec& wps);

// A twisted rational curve on a catalog cone, pinned to exact expected values.
struct ExampleFixture {
  std::string name;
  FanoConeData cone;
  std::size_t chart_index;
  std::vector<std::int64_t> exponents;
  std::int64_t ell;
  std::int64_t k;
  Rat expected_d;
  bool expected_tight;  // d == dim_Y + 1

  // The datum points into this fixture's own cone; build it after copies.
  TwistedMapDatum datum() const;
};

// The four worked curves on the cones over P(2,3) and P(2,3,5), with
// d values 3, 2, 4, 3.
std::vector<ExampleFixture> example_fixtures();

struct QuotientSingularitySpec {
  std::int64_t m = 1;
  std::vector<std::int64_t> a;  // ascending, entries coprime to m
};

// Canonical representatives of the isolated quotients C^n / (1/m)(a_1..a_n)
// over 1 <= m <= m_max, deduplicated up to coordinate permutation and unit
// rescaling a -> c*a mod m; the representative is the lexicographically
// smallest sorted tuple in the orbit. Ordered by m, then lex. Throws
// FamilyTooLarge past max_count representatives.
std::vector<QuotientSingularitySpec> isolated_quotient_reps(
    int n, std::int64_t m_max, std::size_t max_count = 1000000);

// The same family materialized as cone data through the toric constructor.
std::vector<FanoConeData> isolated_quotient_family(
    int n, std::int64_t m_max, std::size_t max_count = 1000000);

// All well-formed weight tuples with 2..max_weights entries bounded by
// weight_bound, ordered by length then lexicographically.
std::vector<WeightedProjectiveSpec> well_formed_wps_list(
    int max_weights, std::int64_t weight_bound);

}  // namespace mldcone
