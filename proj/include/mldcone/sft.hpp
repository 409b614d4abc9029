#pragma once

#include "mldcone/chart.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mldcone {

// Virtual dimension of the fiber holomorphic disk through the k-fold cover of
// an orbit in the local model: 2k - 2.
std::int64_t fiber_disk_vdim(std::int64_t k_or_l);

// A closed Reeb orbit of the link, indexed by its inertia sector and the
// number of extra principal rounds on top of the fractional closing round.
struct ReebOrbitSpec {
  GroupElement sector;
  std::int64_t extra_rounds = 0;
  Rat period;  // c(g) + extra_rounds
};

// The simple orbit over a nontrivial sector g closes up after the fractional
// round c(g) = 1 - theta_1(g); over the principal stratum (g = 1) after one
// full round, c(1) = 1. This convention is pinned by the requirement that
// lsft_index reproduce the second mld formula term by term and give 2r - 2 on
// the simple principal orbit of a smooth cone.
ReebOrbitSpec make_orbit(const GroupElement& g, std::int64_t extra_rounds = 0);

// lSFT grading of the orbit: 2 * [ r * period + age_base(g^{-1}) - 1 ].
// Strictly increasing in extra_rounds with slope 2r.
Rat lsft_index(const ReebOrbitSpec& orbit, const Rat& r);

// mld(o, X) = (1/2) inf over orbits of lsft_index + 1. Since r > 0 the
// infimum is attained among the finitely many extra_rounds = 0 orbits, so
// only those are enumerated.
Rat mld_from_sft(const FanoConeData& cone,
                 std::int64_t max_order = kDefaultMaxOrder);

// One row per extra_rounds = 0 orbit: the principal orbit first, then every
// nontrivial sector chart by chart in enumeration order.
struct OrbitRow {
  std::string chart;    // chart label, or "principal" for the bare fiber orbit
  std::string element;  // exponent string of the sector
  Rat period;
  Rat lsft;
  Rat candidate;  // lsft / 2 + 1
};

std::vector<OrbitRow> sft_orbit_table(const FanoConeData& cone,
                                      std::int64_t max_order = kDefaultMaxOrder);

// True iff mld_from_sft agrees with the second mld formula exactly AND every
// extra_rounds = 0 orbit satisfies lsft/2 + 1 = the corresponding minimand
// r(1 - theta_1(g)) + age_base(g^{-1}) (with the principal orbit giving r).
bool sft_consistency(const FanoConeData& cone,
                     std::int64_t max_order = kDefaultMaxOrder);

}  // namespace mldcone
