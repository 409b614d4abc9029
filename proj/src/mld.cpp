#include "mldcone/mld.hpp"

namespace mldcone {

std::string MldWitness::str() const {
  if (r_term) return "r-term";
  std::string s = chart + ":";
  if (exponents.empty()) return s + "e";
  bool ident = true;
  for (auto k : exponents)
    if (k != 0) { ident = false; break; }
  if (ident) return s + "e";
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    if (j) s += ';';
    s += std::to_string(exponents[j]);
  }
  return s;
}

namespace {

// Shared scaffolding for the two formulas: both take the minimum of the r term
// and one value per (chart, element) pair; they differ only in which pairs
// contribute and in the term evaluated.
template <typename TermFn>
MldResult run_formula(const FanoConeData& data, std::int64_t max_order,
                      bool skip_identity, TermFn&& term) {
  require_valid(data, max_order);
  MldResult res;
  res.r_term = data.r;
  res.value = data.r;
  res.witness.r_term = true;
  for (const auto& chart : data.charts) {
    auto table = inertia_table(chart, max_order);
    for (const auto& rec : table) {
      if (skip_identity && rec.element.is_identity()) continue;
      Rat v = term(table, rec);
      res.terms.push_back({chart.label(), rec.element.exponents, v});
      if (v < res.value) {
        res.value = v;
        res.witness.r_term = false;
        res.witness.chart = chart.label();
        res.witness.exponents = rec.element.exponents;
      }
    }
  }
  return res;
}

}  // namespace

MldResult mld_eq1(const FanoConeData& data, std::int64_t max_order) {
  return run_formula(data, max_order, /*skip_identity=*/true,
                     [&](const std::vector<InertiaRecord>&, const InertiaRecord& rec) {
                       return data.r * rec.theta_fiber + rec.age_base;
                     });
}

MldResult mld_eq2(const FanoConeData& data, std::int64_t max_order) {
  return run_formula(
      data, max_order, /*skip_identity=*/false,
      [&](const std::vector<InertiaRecord>& table, const InertiaRecord& rec) {
        const InertiaRecord& inv = table[element_rank(rec.element.inverse())];
        return data.r * (Rat(1) - rec.theta_fiber) + inv.age_base;
      });
}

BoundCheck theorem_bound_check(const FanoConeData& data, std::int64_t max_order) {
  BoundCheck b;
  b.mld = mld_eq2(data, max_order).value;
  b.bound = data.dim;
  b.ok = b.mld <= Rat(b.bound);
  return b;
}

EqualityReport equality_diagnostic(const FanoConeData& data,
                                   std::int64_t max_order) {
  return equality_from_value(data, mld_eq2(data, max_order).value);
}

EqualityReport equality_from_value(const FanoConeData& data, const Rat& mld) {
  EqualityReport rep;
  rep.mld = mld;
  rep.equality = rep.mld == Rat(data.dim);
  rep.all_charts_trivial = true;
  for (const auto& chart : data.charts)
    if (!chart.trivial_group()) rep.all_charts_trivial = false;
  if (data.ambient_unimodular.has_value())
    rep.smooth = *data.ambient_unimodular;
  else if (rep.all_charts_trivial)
    rep.smooth = data.r == Rat(data.dim);
  rep.counterexample = rep.equality && rep.smooth.has_value() && !*rep.smooth;
  rep.unverified_equality = rep.equality && !rep.smooth.has_value();
  return rep;
}

}  // namespace mldcone
