#pragma once

#include "mldcone/mld.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mldcone {

// A scan sweeps the built-in catalog: every deduplicated isolated cyclic
// quotient C^n / (1/m)(a) with n_min <= n <= n_max and m <= m_max, followed
// by the cones over all well-formed weighted projective spaces with up to
// wps_max_weights weights bounded by wps_weight_bound (skipped when
// wps_max_weights < 2). Row order is fixed by the catalog, never by timing.
struct ScanConfig {
  int n_min = 2;
  int n_max = 3;
  std::int64_t m_max = 20;
  int wps_max_weights = 0;
  std::int64_t wps_weight_bound = 0;
  int jobs = 1;
  std::int64_t max_order = kDefaultMaxOrder;
};

struct ScanRow {
  std::string name;
  int n = 0;
  Rat r;
  Rat mld;
  bool ok = false;        // mld <= n
  bool equality = false;  // mld == n
  std::optional<bool> smooth;
  MldWitness witness;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::size_t equalities = 0;
  std::vector<std::string> failing;  // names with mld > n, in row order
};

// Deterministic up to byte equality of scan_csv for any jobs count.
ScanReport run_scan(const ScanConfig& config);

std::string scan_csv(const ScanReport& report);

}  // namespace mldcone
