#include "mldcone/catalog.hpp"

#include "mldcone/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mldcone {

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// Presentation-independent image of the chart group in (Q/Z)^n.
std::set<std::vector<Rat>> theta_set(const QuotientChart& chart) {
  std::set<std::vector<Rat>> out;
  for_each_element(chart, kDefaultMaxOrder, [&](const GroupElement& g) {
    out.insert(element_theta(g));
  });
  return out;
}

}  // namespace

WeightedProjectiveSpec make_wps(std::vector<std::int64_t> weights) {
  if (weights.size() < 2)
    throw std::invalid_argument("make_wps: need at least two weights");
  for (auto w : weights)
    if (w < 1)
      throw std::invalid_argument("make_wps: weights must be positive");
  std::sort(weights.begin(), weights.end());
  WeightedProjectiveSpec out;
  out.well_formed = true;
  for (std::size_t i = 0; i < weights.size(); ++i)
    for (std::size_t j = i + 1; j < weights.size(); ++j)
      if (gcd64(weights[i], weights[j]) != 1) out.well_formed = false;
  out.weights = std::move(weights);
  return out;
}

FanoConeData wps_cone(const WeightedProjectiveSpec& wps) {
  if (!wps.well_formed)
    throw std::invalid_argument(
        "wps_cone: weights must be pairwise coprime (well-formed)");
  int dim = static_cast<int>(wps.weights.size());

  FanoConeData data;
  std::ostringstream name;
  name << "P(";
  std::int64_t rsum = 0;
  for (int i = 0; i < dim; ++i) {
    if (i) name << ',';
    name << wps.weights[i];
    rsum += wps.weights[i];
  }
  name << ')';
  data.name = name.str();
  data.dim = dim;
  data.r = Rat(rsum);

  for (int i = 0; i < dim; ++i) {
    std::int64_t ai = wps.weights[i];
    std::vector<CyclicFactor> factors;
    if (ai > 1) {
      CyclicFactor f;
      f.order = ai;
      f.weights.push_back(1);
      for (int j = 0; j < dim; ++j)
        if (j != i) f.weights.push_back(mod_pos(-wps.weights[j], ai));
      factors.push_back(std::move(f));
    }
    data.charts.push_back(
        QuotientChart("U" + std::to_string(i), dim, std::move(factors)));
  }
  data.ambient_unimodular = true;

  // The same charts must fall out of the toric subdivision of Z^dim along
  // the weight ray; this pins the direct formula to the lattice route.
  QuotientLattice ambient(dim, {});
  std::vector<Rat> ray;
  for (auto w : wps.weights) ray.push_back(Rat(w));
  auto cones = star_subdivision(ambient, ray);
  for (int i = 0; i < dim; ++i) {
    QuotientChart extracted =
        chart_from_cone(cones[i], ambient, data.charts[i].label());
    if (theta_set(extracted) != theta_set(data.charts[i]))
      throw std::logic_error("wps_cone: chart '" + data.charts[i].label() +
                             "' disagrees with the toric subdivision");
  }

  require_valid(data);
  return data;
}

bool coordinate_chart_coverage_check(const WeightedProjectiveSpec& wps) {
  if (!wps.well_formed)
    throw std::invalid_argument(
        "coordinate_chart_coverage_check: weights must be well-formed");
  int n = static_cast<int>(wps.weights.size());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::int64_t g = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) g = gcd64(g, wps.weights[i]);
    bool at_coordinate_point = false;
    for (auto w : wps.weights)
      if (w % g == 0) at_coordinate_point = true;
    if (!at_coordinate_point) return false;
  }
  return true;
}

TwistedMapDatum ExampleFixture::datum() const {
  TwistedMapDatum d;
  d.ell = ell;
  d.k = k;
  d.r = cone.r;
  d.dim_Y = cone.dim - 1;
  d.target_element.chart = &cone.charts[chart_index];
  d.target_element.exponents = exponents;
  return d;
}

std::vector<ExampleFixture> example_fixtures() {
  FanoConeData p23 = wps_cone(make_wps({2, 3}));
  FanoConeData p235 = wps_cone(make_wps({2, 3, 5}));
  std::vector<ExampleFixture> out;
  out.push_back({"P(2,3) family through the order-2 point", p23, 0, {1}, 2, -1,
                 Rat(3), false});
  out.push_back({"P(2,3) broken curve at the order-3 point", p23, 1, {2}, 3, -1,
                 Rat(2), true});
  out.push_back({"P(2,3,5) family through the order-3 point", p235, 1, {2}, 3,
                 -1, Rat(4), false});
  out.push_back({"P(2,3,5) broken curve at the order-5 point", p235, 2, {4}, 5,
                 -1, Rat(3), true});
  return out;
}

std::vector<QuotientSingularitySpec> isolated_quotient_reps(
    int n, std::int64_t m_max, std::size_t max_count) {
  if (n < 2)
    throw std::invalid_argument("isolated_quotient_reps: n must be >= 2");
  if (m_max < 1)
    throw std::invalid_argument("isolated_quotient_reps: m_max must be >= 1");

  std::vector<QuotientSingularitySpec> out;
  auto push = [&](std::int64_t m, std::vector<std::int64_t> a) {
    if (out.size() >= max_count)
      throw FamilyTooLarge("isolated_quotient_reps: more than " +
                           std::to_string(max_count) + " representatives");
    out.push_back({m, std::move(a)});
  };

  for (std::int64_t m = 1; m <= m_max; ++m) {
    if (m == 1) {
      push(1, std::vector<std::int64_t>(n, 1));
      continue;
    }
    std::vector<std::int64_t> units;
    for (std::int64_t c = 1; c < m; ++c)
      if (gcd64(c, m) == 1) units.push_back(c);
    std::size_t nu = units.size();

    // Nondecreasing index tuples into the unit list = sorted weight tuples.
    std::vector<std::size_t> idx(n, 0);
    bool done = false;
    while (!done) {
      std::vector<std::int64_t> a(n);
      for (int i = 0; i < n; ++i) a[i] = units[idx[i]];

      bool canonical = true;
      std::vector<std::int64_t> b(n);
      for (std::int64_t c : units) {
        for (int i = 0; i < n; ++i) b[i] = (c * a[i]) % m;
        std::sort(b.begin(), b.end());
        if (b < a) {
          canonical = false;
          break;
        }
      }
      if (canonical) push(m, a);

      int j = n;
      for (;;) {
        if (j == 0) {
          done = true;
          break;
        }
        --j;
        if (++idx[j] < nu) {
          for (int i = j + 1; i < n; ++i) idx[i] = idx[j];
          break;
        }
      }
    }
  }
  return out;
}

std::vector<FanoConeData> isolated_quotient_family(int n, std::int64_t m_max,
                                                   std::size_t max_count) {
  std::vector<FanoConeData> out;
  for (const auto& rep : isolated_quotient_reps(n, m_max, max_count))
    out.push_back(cone_from_cyclic_quotient(rep.m, rep.a));
  return out;
}

std::vector<WeightedProjectiveSpec> well_formed_wps_list(
    int max_weights, std::int64_t weight_bound) {
  if (max_weights < 2)
    throw std::invalid_argument("well_formed_wps_list: max_weights must be >= 2");
  if (weight_bound < 1)
    throw std::invalid_argument("well_formed_wps_list: weight_bound must be >= 1");

  std::vector<WeightedProjectiveSpec> out;
  for (int len = 2; len <= max_weights; ++len) {
    std::vector<std::int64_t> w(len, 1);
    bool done = false;
    while (!done) {
      bool coprime = true;
      for (int i = 0; i < len && coprime; ++i)
        for (int j = i + 1; j < len; ++j)
          if (gcd64(w[i], w[j]) != 1) {
            coprime = false;
            break;
          }
      if (coprime) {
        WeightedProjectiveSpec s;
        s.weights = w;
        s.well_formed = true;
        out.push_back(std::move(s));
      }
      int j = len;
      for (;;) {
        if (j == 0) {
          done = true;
          break;
        }
        --j;
        if (++w[j] <= weight_bound) {
          for (int i = j + 1; i < len; ++i) w[i] = w[j];
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace mldcone
