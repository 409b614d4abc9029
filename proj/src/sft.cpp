#include "mldcone/sft.hpp"

#include "mldcone/mld.hpp"

#include <stdexcept>

namespace mldcone {

namespace {

Rat closing_round(const GroupElement& g) {
  if (g.is_identity()) return Rat(1);
  return Rat(1) - theta_fiber(g);
}

// lsft_index minus its argument checks, for sweeps that construct the period
// themselves and already know the sector closes up.
Rat lsft_core(const GroupElement& g, const Rat& period, const Rat& r) {
  return Rat(2) * (r * period + age_base(g.inverse()) - Rat(1));
}

}  // namespace

std::int64_t fiber_disk_vdim(std::int64_t k_or_l) {
  if (k_or_l < 1)
    throw std::invalid_argument("fiber_disk_vdim: multiplicity must be >= 1");
  return 2 * k_or_l - 2;
}

ReebOrbitSpec make_orbit(const GroupElement& g, std::int64_t extra_rounds) {
  if (g.chart == nullptr)
    throw std::invalid_argument("make_orbit: sector has no chart");
  if (extra_rounds < 0)
    throw std::invalid_argument("make_orbit: extra_rounds must be >= 0");
  ReebOrbitSpec orbit;
  orbit.sector = g;
  orbit.extra_rounds = extra_rounds;
  orbit.period = closing_round(g) + Rat(extra_rounds);
  return orbit;
}

Rat lsft_index(const ReebOrbitSpec& orbit, const Rat& r) {
  const GroupElement& g = orbit.sector;
  if (g.chart == nullptr)
    throw std::invalid_argument("lsft_index: orbit sector has no chart");
  if (orbit.extra_rounds < 0)
    throw std::invalid_argument("lsft_index: extra_rounds must be >= 0");
  if (orbit.period != closing_round(g) + Rat(orbit.extra_rounds))
    throw std::invalid_argument("lsft_index: period does not match the sector");
  if (r <= Rat(0)) throw std::invalid_argument("lsft_index: r must be positive");
  if (!g.is_identity() && closing_round(g) == Rat(1))
    throw std::invalid_argument(
        "lsft_index: sector fixes the fiber direction (no closed orbit)");
  return lsft_core(g, orbit.period, r);
}

std::vector<OrbitRow> sft_orbit_table(const FanoConeData& cone,
                                      std::int64_t max_order) {
  require_valid(cone, max_order);
  std::vector<OrbitRow> rows;

  // The principal orbit lives on the smooth stratum of the link; present it
  // through a trivial chart so the index formula applies uniformly.
  QuotientChart principal("principal", cone.dim, {});
  auto add = [&](const std::string& chart_label, const GroupElement& g) {
    auto orbit = make_orbit(g, 0);
    OrbitRow row;
    row.chart = chart_label;
    row.element = g.str();
    row.period = orbit.period;
    row.lsft = lsft_index(orbit, cone.r);
    row.candidate = row.lsft / Rat(2) + Rat(1);
    rows.push_back(std::move(row));
  };
  add("principal", identity_element(principal));

  for (const auto& chart : cone.charts)
    for_each_element(chart, max_order, [&](const GroupElement& g) {
      if (g.is_identity()) return;
      add(chart.label(), g);
    });
  return rows;
}

Rat mld_from_sft(const FanoConeData& cone, std::int64_t max_order) {
  require_valid(cone, max_order);
  QuotientChart principal("principal", cone.dim, {});
  GroupElement id = identity_element(principal);
  Rat best = lsft_core(id, closing_round(id), cone.r) / Rat(2) + Rat(1);
  for (const auto& chart : cone.charts)
    for_each_element(chart, max_order, [&](const GroupElement& g) {
      if (g.is_identity()) return;
      Rat candidate =
          lsft_core(g, closing_round(g), cone.r) / Rat(2) + Rat(1);
      if (candidate < best) best = candidate;
    });
  return best;
}

bool sft_consistency(const FanoConeData& cone, std::int64_t max_order) {
  MldResult two = mld_eq2(cone, max_order);  // validates the data first
  if (mld_from_sft(cone, max_order) != two.value) return false;

  // Term-by-term: each orbit candidate must equal the minimand of the
  // corresponding inertia element, not just agree at the minimum. The second
  // formula's term list walks every element in enumeration order, so one
  // aligned pass covers the identity and non-identity sectors alike.
  QuotientChart principal("principal", cone.dim, {});
  auto orbit0 = make_orbit(identity_element(principal), 0);
  if (lsft_index(orbit0, cone.r) / Rat(2) + Rat(1) != cone.r) return false;

  bool ok = true;
  std::size_t idx = 0;
  for (const auto& chart : cone.charts) {
    for_each_element(chart, max_order, [&](const GroupElement& g) {
      if (idx >= two.terms.size() || two.terms[idx].chart != chart.label() ||
          two.terms[idx].exponents != g.exponents)
        throw std::logic_error("sft_consistency: term table misaligned");
      Rat candidate =
          lsft_core(g, closing_round(g), cone.r) / Rat(2) + Rat(1);
      if (candidate != two.terms[idx].value) ok = false;
      ++idx;
    });
  }
  return ok && idx == two.terms.size();
}

}  // namespace mldcone
