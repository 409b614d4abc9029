#pragma once

#include "mldcone/chart.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mldcone {

// Where a minimum was attained: either the standalone r term (the exceptional
// divisor of the canonical extraction) or a group element in a named chart.
struct MldWitness {
  bool r_term = false;
  std::string chart;                    // empty when r_term
  std::vector<std::int64_t> exponents;  // empty when r_term
  std::string str() const;
};

struct MldTerm {
  std::string chart;
  std::vector<std::int64_t> exponents;
  Rat value;
};

struct MldResult {
  Rat value;
  MldWitness witness;
  Rat r_term;                // the divisorial term, always equal to r
  std::vector<MldTerm> terms;  // every chart-element term, enumeration order
};

// mld = min(r, min over charts, over g != 1, of r*theta_fiber(g) + age_base(g)).
// Requires valid cone data (throws ValidationError otherwise).
MldResult mld_eq1(const FanoConeData& data,
                  std::int64_t max_order = kDefaultMaxOrder);

// mld = min over charts, over all g (identity included), of
// r*(1 - theta_fiber(g)) + age_base(g^-1); plus the bare r term when the cone
// has no charts. Agrees with mld_eq1 on every valid cone.
MldResult mld_eq2(const FanoConeData& data,
                  std::int64_t max_order = kDefaultMaxOrder);

struct BoundCheck {
  Rat mld;
  int bound = 0;    // = dim
  bool ok = false;  // mld <= dim
};

BoundCheck theorem_bound_check(const FanoConeData& data,
                               std::int64_t max_order = kDefaultMaxOrder);

struct EqualityReport {
  Rat mld;
  bool equality = false;             // mld == dim
  bool all_charts_trivial = false;
  // Smoothness of the cone point, when decidable from the data: an ambient
  // unimodularity certificate decides it outright; with all chart groups
  // trivial it is equivalent to r == dim. Otherwise unknown.
  std::optional<bool> smooth;
  // True when the data certifies a singular cone attaining mld == dim, i.e. a
  // counterexample to "equality only at smooth points".
  bool counterexample = false;
  // True when equality holds but smoothness could not be decided.
  bool unverified_equality = false;
};

EqualityReport equality_diagnostic(const FanoConeData& data,
                                   std::int64_t max_order = kDefaultMaxOrder);

// Same report built from an already computed mld value, with no enumeration.
EqualityReport equality_from_value(const FanoConeData& data, const Rat& mld);

}  // namespace mldcone
