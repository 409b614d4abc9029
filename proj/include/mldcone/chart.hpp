#pragma once

#include "mldcone/rational.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mldcone {

// Global guard for group/family enumeration. Anything that would visit more
// elements than this throws FamilyTooLarge instead of grinding.
inline constexpr std::int64_t kDefaultMaxOrder = 1'000'000;

struct FamilyTooLarge : std::runtime_error {
  explicit FamilyTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// One cyclic factor Z/order acting diagonally; weights[i] is the exponent of
// the action on coordinate i. Coordinate 0 is the fiber direction of the cone
// chart, coordinates 1..n-1 sit on the base.
struct CyclicFactor {
  std::int64_t order = 1;
  std::vector<std::int64_t> weights;
};

// Finite abelian group in diagonal form acting on C^dim. The group is the
// product of the listed cyclic factors (not necessarily invariant-factor form;
// factors may overlap).
class QuotientChart {
 public:
  QuotientChart(std::string label, int dim, std::vector<CyclicFactor> factors);

  const std::string& label() const { return label_; }
  int dim() const { return dim_; }
  const std::vector<CyclicFactor>& factors() const { return factors_; }

  // Product of factor orders: the number of exponent tuples, not necessarily
  // the order of the abstract group when factors overlap.
  Int enumeration_size() const;
  bool trivial_group() const;

 private:
  std::string label_;
  int dim_;
  std::vector<CyclicFactor> factors_;
};

// Element of a chart group, as one exponent per factor, each reduced into
// [0, order). Holds a non-owning pointer to its chart; keep the chart alive.
struct GroupElement {
  const QuotientChart* chart = nullptr;
  std::vector<std::int64_t> exponents;

  bool is_identity() const;
  GroupElement inverse() const;
  GroupElement compose(const GroupElement& other) const;
  std::int64_t order() const;
  std::string str() const;  // "2;0" style, ";"-joined exponents, "e" for identity
};

GroupElement identity_element(const QuotientChart& chart);

// Normalized weights theta_i(g) in [0,1), one per coordinate. theta_i(g) =
// frac(sum_j k_j * w_{j,i} / d_j).
std::vector<Rat> element_theta(const GroupElement& g);
Rat theta_fiber(const GroupElement& g);          // theta_0
Rat age_base(const GroupElement& g);             // sum of theta_i, i >= 1
int fixed_dim_base(const GroupElement& g);       // #{i >= 1 : theta_i = 0}
Rat age_full(const GroupElement& g);             // sum over all coordinates

// age_base(g) + age_base(g^-1) + fixed_dim_base(g) == dim - 1, for every g.
bool age_duality_check(const GroupElement& g);

struct InertiaRecord {
  GroupElement element;
  std::vector<Rat> theta;
  Rat theta_fiber;
  Rat age_base;
  int fixed_dim_base = 0;
};

// All elements of the chart group in lexicographic exponent order (identity
// first). Rank of an element in this table is its mixed-radix index, so
// inverse lookups are O(1) via element_rank. Throws FamilyTooLarge when the
// enumeration size exceeds max_order. Age duality is asserted for every row.
std::vector<InertiaRecord> inertia_table(const QuotientChart& chart,
                                         std::int64_t max_order = kDefaultMaxOrder);

std::int64_t element_rank(const GroupElement& g);

// Visit elements in the same order as inertia_table without materializing.
template <typename F>
void for_each_element(const QuotientChart& chart, std::int64_t max_order, F&& fn) {
  if (chart.enumeration_size() > max_order)
    throw FamilyTooLarge("chart group enumeration exceeds max order " +
                         std::to_string(max_order) + " (chart '" + chart.label() + "')");
  GroupElement g;
  g.chart = &chart;
  g.exponents.assign(chart.factors().size(), 0);
  for (;;) {
    fn(g);
    std::size_t j = g.exponents.size();
    for (;;) {
      if (j == 0) return;  // carried past the most significant digit
      --j;
      if (++g.exponents[j] < chart.factors()[j].order) break;
      g.exponents[j] = 0;
    }
  }
}

// Chart-level description of an isolated Fano cone singularity: dim = n, the
// log-Fano index r > 0, and one finite-group chart per torus-fixed point of
// the base.
struct FanoConeData {
  std::string name;
  Rat r;
  int dim = 0;
  std::vector<QuotientChart> charts;
  // Set by constructors that know the ambient lattice: true when the total
  // space sits at a unimodular (hence smooth) toric point. Absent when the
  // data carries no such certificate.
  std::optional<bool> ambient_unimodular;
};

enum class ViolationKind {
  NonPositiveR,
  DimMismatch,
  BadFactor,
  NonEffective,
  NonIsolated,
};

struct Violation {
  ViolationKind kind;
  std::string chart;                     // empty for cone-level violations
  std::vector<std::int64_t> exponents;   // offending element, when there is one
  std::string message;
};

struct ValidationReport {
  bool pass = true;
  std::vector<Violation> violations;
  std::string summary() const;
};

// Checks r > 0, consistent dimensions, factor sanity (order >= 1, weights
// reduced), and isolation: theta_fiber(g) != 0 for every non-identity g in
// every chart. Collects all violations rather than stopping at the first.
ValidationReport validate_cone(const FanoConeData& data,
                               std::int64_t max_order = kDefaultMaxOrder);

// Throws ValidationError unless validate_cone passes.
void require_valid(const FanoConeData& data,
                   std::int64_t max_order = kDefaultMaxOrder);

}  // namespace mldcone
