#include "mldcone/scan.hpp"

#include "mldcone/catalog.hpp"
#include "mldcone/io.hpp"

#include <atomic>
#include <exception>
#include <iterator>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mldcone {

namespace {

// Runs body(0..count-1) on a fixed-size pool. Results land in preallocated
// slots, so the output cannot depend on scheduling; the first exception wins
// and is rethrown after the pool drains.
template <typename F>
void indexed_parallel_for(std::size_t count, int jobs, F&& body) {
  std::size_t workers = jobs < 1 ? 1 : static_cast<std::size_t>(jobs);
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_lock;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> hold(error_lock);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

ScanReport run_scan(const ScanConfig& config) {
  if (config.n_min < 2)
    throw std::invalid_argument("run_scan: n_min must be >= 2");
  if (config.n_max < config.n_min)
    throw std::invalid_argument("run_scan: empty dimension range");

  std::vector<FanoConeData> inputs;
  for (int n = config.n_min; n <= config.n_max; ++n) {
    auto family = isolated_quotient_family(n, config.m_max);
    std::move(family.begin(), family.end(), std::back_inserter(inputs));
  }
  if (config.wps_max_weights >= 2) {
    for (const auto& wps :
         well_formed_wps_list(config.wps_max_weights, config.wps_weight_bound))
      inputs.push_back(wps_cone(wps));
  }

  ScanReport report;
  report.rows.resize(inputs.size());
  indexed_parallel_for(inputs.size(), config.jobs, [&](std::size_t i) {
    const FanoConeData& cone = inputs[i];
    MldResult res = mld_eq2(cone, config.max_order);
    EqualityReport eq = equality_from_value(cone, res.value);
    ScanRow& row = report.rows[i];
    row.name = cone.name;
    row.n = cone.dim;
    row.r = cone.r;
    row.mld = res.value;
    row.ok = !(res.value > Rat(cone.dim));
    row.equality = res.value == Rat(cone.dim);
    row.smooth = eq.smooth;
    row.witness = res.witness;
  });

  report.checked = report.rows.size();
  for (const auto& row : report.rows) {
    if (!row.ok) {
      ++report.failures;
      report.failing.push_back(row.name);
    }
    if (row.equality) ++report.equalities;
  }
  return report;
}

std::string scan_csv(const ScanReport& report) {
  std::ostringstream os;
  os << "name,n,r,mld,ok,equality,smooth,witness_chart,witness_element\n";
  for (const auto& row : report.rows) {
    os << csv_quote(row.name) << ',' << row.n << ',' << row.r.str() << ','
       << row.mld.str() << ',' << (row.ok ? "true" : "false") << ','
       << (row.equality ? "true" : "false") << ','
       << (row.smooth.has_value() ? (*row.smooth ? "true" : "false")
                                  : "unknown")
       << ',' << csv_quote(row.witness.r_term ? "" : row.witness.chart) << ','
       << csv_quote(row.witness.r_term ? "r-term"
                                       : exponents_str(row.witness.exponents))
       << '\n';
  }
  return os.str();
}

}  // namespace mldcone
