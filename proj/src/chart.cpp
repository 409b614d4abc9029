#include "mldcone/chart.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace mldcone {

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// Largest common denominator served by the int64 theta path; past it the
// exact Rat path takes over, so oversized factor orders stay correct.
constexpr std::int64_t kFastOrderLimit = std::int64_t(1) << 40;

std::int64_t mulmod_i64(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

// lcm of the factor orders, or 0 when it does not fit the fast path.
std::int64_t common_order(const std::vector<CyclicFactor>& factors) {
  std::int64_t D = 1;
  for (const auto& f : factors) {
    std::int64_t step = f.order / gcd64(D, f.order);
    if (step > kFastOrderLimit / D) return 0;
    D *= step;
  }
  return D;
}

// Numerator of theta_i(g) over the common order D.
std::int64_t theta_numerator(const GroupElement& g, int i, std::int64_t D) {
  const auto& factors = g.chart->factors();
  std::int64_t num = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& f = factors[j];
    num = (num + mulmod_i64(g.exponents[j], f.weights[i], f.order) *
                     (D / f.order)) %
          D;
  }
  return num;
}

}  // namespace

QuotientChart::QuotientChart(std::string label, int dim,
                             std::vector<CyclicFactor> factors)
    : label_(std::move(label)), dim_(dim), factors_(std::move(factors)) {
  if (dim_ < 1) throw std::invalid_argument("QuotientChart: dim must be >= 1");
  for (auto& f : factors_) {
    if (f.order < 1)
      throw std::invalid_argument("QuotientChart '" + label_ +
                                  "': factor order must be >= 1");
    if (static_cast<int>(f.weights.size()) != dim_)
      throw std::invalid_argument("QuotientChart '" + label_ +
                                  "': factor weight vector length != dim");
    for (auto& w : f.weights) w = mod_pos(w, f.order);
  }
}

Int QuotientChart::enumeration_size() const {
  Int n = 1;
  for (const auto& f : factors_) n *= f.order;
  return n;
}

bool QuotientChart::trivial_group() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const CyclicFactor& f) { return f.order == 1; });
}

bool GroupElement::is_identity() const {
  return std::all_of(exponents.begin(), exponents.end(),
                     [](std::int64_t k) { return k == 0; });
}

GroupElement GroupElement::inverse() const {
  GroupElement r = *this;
  for (std::size_t j = 0; j < exponents.size(); ++j)
    r.exponents[j] = exponents[j] == 0 ? 0 : chart->factors()[j].order - exponents[j];
  return r;
}

GroupElement GroupElement::compose(const GroupElement& other) const {
  if (chart != other.chart)
    throw std::invalid_argument("GroupElement::compose: different charts");
  GroupElement r = *this;
  for (std::size_t j = 0; j < exponents.size(); ++j)
    r.exponents[j] = mod_pos(exponents[j] + other.exponents[j],
                             chart->factors()[j].order);
  return r;
}

std::int64_t GroupElement::order() const {
  std::int64_t ord = 1;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    std::int64_t d = chart->factors()[j].order;
    std::int64_t k = exponents[j];
    ord = lcm64(ord, d / gcd64(d, k));
  }
  return ord;
}

std::string GroupElement::str() const {
  if (is_identity()) return "e";
  std::ostringstream os;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    if (j) os << ';';
    os << exponents[j];
  }
  return os.str();
}

GroupElement identity_element(const QuotientChart& chart) {
  GroupElement g;
  g.chart = &chart;
  g.exponents.assign(chart.factors().size(), 0);
  return g;
}

std::vector<Rat> element_theta(const GroupElement& g) {
  const auto& factors = g.chart->factors();
  int n = g.chart->dim();
  std::vector<Rat> theta(n, Rat(0));
  std::int64_t D = common_order(factors);
  if (D > 0) {
    for (int i = 0; i < n; ++i) {
      std::int64_t num = theta_numerator(g, i, D);
      if (num != 0) theta[i] = Rat(Int(num), Int(D));
    }
    return theta;
  }
  for (int i = 0; i < n; ++i) {
    Rat acc(0);
    for (std::size_t j = 0; j < factors.size(); ++j)
      acc += Rat(Int(g.exponents[j]) * factors[j].weights[i], Int(factors[j].order));
    theta[i] = acc.frac();
  }
  return theta;
}

Rat theta_fiber(const GroupElement& g) {
  std::int64_t D = common_order(g.chart->factors());
  if (D > 0) {
    std::int64_t num = theta_numerator(g, 0, D);
    return num == 0 ? Rat(0) : Rat(Int(num), Int(D));
  }
  return element_theta(g)[0];
}

Rat age_base(const GroupElement& g) {
  std::int64_t D = common_order(g.chart->factors());
  if (D > 0) {
    std::int64_t total = 0;
    for (int i = 1; i < g.chart->dim(); ++i) total += theta_numerator(g, i, D);
    return total == 0 ? Rat(0) : Rat(Int(total), Int(D));
  }
  auto theta = element_theta(g);
  Rat s(0);
  for (std::size_t i = 1; i < theta.size(); ++i) s += theta[i];
  return s;
}

int fixed_dim_base(const GroupElement& g) {
  std::int64_t D = common_order(g.chart->factors());
  if (D > 0) {
    int c = 0;
    for (int i = 1; i < g.chart->dim(); ++i)
      if (theta_numerator(g, i, D) == 0) ++c;
    return c;
  }
  auto theta = element_theta(g);
  int c = 0;
  for (std::size_t i = 1; i < theta.size(); ++i)
    if (theta[i].is_zero()) ++c;
  return c;
}

Rat age_full(const GroupElement& g) {
  auto theta = element_theta(g);
  Rat s(0);
  for (const auto& t : theta) s += t;
  return s;
}

bool age_duality_check(const GroupElement& g) {
  Rat lhs = age_base(g) + age_base(g.inverse()) + Rat(fixed_dim_base(g));
  return lhs == Rat(g.chart->dim() - 1);
}

std::vector<InertiaRecord> inertia_table(const QuotientChart& chart,
                                         std::int64_t max_order) {
  std::vector<InertiaRecord> table;
  for_each_element(chart, max_order, [&](const GroupElement& g) {
    InertiaRecord rec;
    rec.element = g;
    rec.theta = element_theta(g);
    rec.theta_fiber = rec.theta[0];
    Rat ab(0);
    int fd = 0;
    for (std::size_t i = 1; i < rec.theta.size(); ++i) {
      ab += rec.theta[i];
      if (rec.theta[i].is_zero()) ++fd;
    }
    rec.age_base = ab;
    rec.fixed_dim_base = fd;
    table.push_back(std::move(rec));
  });
  // Age duality is an arithmetic identity; a failure here means the table is
  // corrupt, so treat it as a hard error rather than a validation finding.
  // The inverse row is already in the table, so no theta is recomputed.
  Rat base_dim(chart.dim() - 1);
  for (const auto& rec : table) {
    const InertiaRecord& inv = table[element_rank(rec.element.inverse())];
    if (rec.age_base + inv.age_base + Rat(rec.fixed_dim_base) != base_dim)
      throw std::logic_error("inertia_table: age duality violated in chart '" +
                             chart.label() + "' at " + rec.element.str());
  }
  return table;
}

std::int64_t element_rank(const GroupElement& g) {
  std::int64_t rank = 0;
  const auto& factors = g.chart->factors();
  for (std::size_t j = 0; j < g.exponents.size(); ++j)
    rank = rank * factors[j].order + g.exponents[j];
  return rank;
}

std::string ValidationReport::summary() const {
  if (pass) return "PASS";
  std::ostringstream os;
  os << "FAIL (" << violations.size() << " violation"
     << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : violations) {
    os << "\n  - " << v.message;
  }
  return os.str();
}

ValidationReport validate_cone(const FanoConeData& data, std::int64_t max_order) {
  ValidationReport rep;
  auto add = [&](ViolationKind kind, std::string chart,
                 std::vector<std::int64_t> exponents, std::string msg) {
    rep.pass = false;
    rep.violations.push_back(
        {kind, std::move(chart), std::move(exponents), std::move(msg)});
  };

  if (data.r <= Rat(0))
    add(ViolationKind::NonPositiveR, "", {},
        "index r = " + data.r.str() + " is not positive");
  if (data.dim < 1)
    add(ViolationKind::DimMismatch, "", {},
        "dim = " + std::to_string(data.dim) + " is not >= 1");

  for (const auto& chart : data.charts) {
    if (chart.dim() != data.dim) {
      add(ViolationKind::DimMismatch, chart.label(), {},
          "chart '" + chart.label() + "' has dim " + std::to_string(chart.dim()) +
              ", cone has dim " + std::to_string(data.dim));
      continue;
    }
    for (const auto& f : chart.factors()) {
      if (f.order < 1)
        add(ViolationKind::BadFactor, chart.label(), {},
            "chart '" + chart.label() + "' has factor of order " +
                std::to_string(f.order));
    }
    // Effectiveness: no non-identity element may act trivially everywhere.
    // Isolation: no non-identity element may fix the fiber direction.
    std::int64_t D = common_order(chart.factors());
    for_each_element(chart, max_order, [&](const GroupElement& g) {
      if (g.is_identity()) return;
      bool fiber_zero;
      bool all_zero;
      if (D > 0) {
        fiber_zero = theta_numerator(g, 0, D) == 0;
        all_zero = fiber_zero;
        for (int i = 1; all_zero && i < chart.dim(); ++i)
          all_zero = theta_numerator(g, i, D) == 0;
      } else {
        auto theta = element_theta(g);
        fiber_zero = theta[0].is_zero();
        all_zero = std::all_of(theta.begin(), theta.end(),
                               [](const Rat& t) { return t.is_zero(); });
      }
      if (all_zero) {
        add(ViolationKind::NonEffective, chart.label(), g.exponents,
            "chart '" + chart.label() + "' element " + g.str() +
                " acts trivially in every coordinate (non-effective)");
      } else if (fiber_zero) {
        add(ViolationKind::NonIsolated, chart.label(), g.exponents,
            "chart '" + chart.label() + "' element " + g.str() +
                " acts trivially on the fiber direction (non-isolated)");
      }
    });
  }
  return rep;
}

void require_valid(const FanoConeData& data, std::int64_t max_order) {
  auto rep = validate_cone(data, max_order);
  if (!rep.pass)
    throw ValidationError("cone '" + data.name + "': " + rep.summary());
}

}  // namespace mldcone
