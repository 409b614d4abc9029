#include "mldcone/curves.hpp"

#include "mldcone/mld.hpp"

#include <stdexcept>
#include <string>

namespace mldcone {

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// Fiber weight of g as an integer in [0, order): theta_1(g) * order.
std::int64_t fiber_weight(const GroupElement& g, std::int64_t m) {
  Rat p = theta_fiber(g) * Rat(m);
  return p.num().convert_to<std::int64_t>();
}

}  // namespace

Rat chi_orb_line(std::int64_t b, std::int64_t ell) {
  if (ell < 1) throw std::invalid_argument("chi_orb_line: ell must be positive");
  return Rat(1 + (b - mod_pos(b, ell)) / ell);
}

std::int64_t h0_monomial_oracle(std::int64_t b, std::int64_t ell) {
  if (b < 0) throw std::invalid_argument("h0_monomial_oracle: b must be >= 0");
  if (ell < 1)
    throw std::invalid_argument("h0_monomial_oracle: ell must be positive");
  std::int64_t count = 0;
  for (std::int64_t j = 0; ell * j <= b; ++j) ++count;  // i = b - ell*j >= 0
  return count;
}

Rat rr_lower_bound(const MarkedCurveSpec& curve) {
  if (curve.genus < 0)
    throw std::invalid_argument("rr_lower_bound: genus must be >= 0");
  if (curve.dim_Y < 1)
    throw std::invalid_argument("rr_lower_bound: dim_Y must be >= 1");
  Rat out = curve.minusK_degree + Rat(1 - curve.genus) * Rat(curve.dim_Y);
  for (const auto& mark : curve.marks) {
    if (mark.age < Rat(0))
      throw std::invalid_argument("rr_lower_bound: ages must be >= 0");
    if (mark.fixed_dim < 0 || mark.fixed_dim > curve.dim_Y)
      throw std::invalid_argument(
          "rr_lower_bound: fixed_dim must lie in [0, dim_Y]");
    out -= mark.age + Rat(mark.fixed_dim);
  }
  return out;
}

AdmissibleK admissible_k(std::int64_t m, std::int64_t p, std::int64_t ell) {
  if (m < 1) throw std::invalid_argument("admissible_k: m must be positive");
  if (ell < 1)
    throw std::invalid_argument("admissible_k: ell must be positive");
  if (p < 0 || p >= m)
    throw std::invalid_argument("admissible_k: p must lie in [0, m)");
  if ((p * ell) % m != 0)
    throw std::invalid_argument("admissible_k: m does not divide p*ell");
  AdmissibleK out;
  out.k_max = (p * ell) / m - ell;
  out.residue = mod_pos((p * ell) / m, ell);
  return out;
}

Rat minusK_degree(const Rat& r, std::int64_t k, std::int64_t ell) {
  if (k >= 0) throw std::invalid_argument("minusK_degree: k must be negative");
  if (ell < 1)
    throw std::invalid_argument("minusK_degree: ell must be positive");
  return r * Rat(-k) / Rat(ell);
}

void validate_datum(const TwistedMapDatum& datum) {
  const GroupElement& g = datum.target_element;
  if (g.chart == nullptr)
    throw std::invalid_argument("TwistedMapDatum: missing target element");
  if (datum.r <= Rat(0))
    throw std::invalid_argument("TwistedMapDatum: r must be positive");
  std::int64_t m = g.order();
  if (datum.ell != m)
    throw std::invalid_argument(
        "TwistedMapDatum: ell = " + std::to_string(datum.ell) +
        " must equal the order " + std::to_string(m) +
        " of the target element");
  if (datum.dim_Y != g.chart->dim() - 1)
    throw std::invalid_argument(
        "TwistedMapDatum: dim_Y must be one less than the chart dimension");
  if (datum.k >= 0)
    throw std::invalid_argument("TwistedMapDatum: k must be negative");
  auto adm = admissible_k(m, fiber_weight(g, m), datum.ell);
  if (mod_pos(datum.k, datum.ell) != adm.residue)
    throw std::invalid_argument(
        "TwistedMapDatum: k = " + std::to_string(datum.k) +
        " is not congruent to " + std::to_string(adm.residue) + " mod " +
        std::to_string(datum.ell));
  if (datum.k > adm.k_max)
    throw std::invalid_argument(
        "TwistedMapDatum: k = " + std::to_string(datum.k) + " exceeds k_max = " +
        std::to_string(adm.k_max));
}

DInvariant d_invariant(const TwistedMapDatum& datum) {
  validate_datum(datum);
  const GroupElement& g = datum.target_element;
  std::int64_t m = g.order();
  Rat p(fiber_weight(g, m));
  Rat age_inv = age_base(g.inverse());
  DInvariant out;
  out.value = minusK_degree(datum.r, datum.k, datum.ell) + age_inv;
  out.bound = datum.r * (Rat(m) - p) / Rat(m) + age_inv;
  out.tight = out.value == out.bound;
  if (out.value < out.bound)
    throw std::logic_error("d_invariant: value fell below its lower bound");
  return out;
}

CurveMldCheck mld_upper_from_curve(const FanoConeData& cone,
                                   const TwistedMapDatum& datum,
                                   std::int64_t max_order) {
  require_valid(cone, max_order);
  validate_datum(datum);
  bool member = false;
  for (const auto& chart : cone.charts)
    if (&chart == datum.target_element.chart) member = true;
  if (!member)
    throw std::invalid_argument(
        "mld_upper_from_curve: datum does not live on a chart of '" +
        cone.name + "'");
  if (datum.r != cone.r)
    throw std::invalid_argument(
        "mld_upper_from_curve: datum index r disagrees with the cone");
  CurveMldCheck out;
  out.mld = mld_eq2(cone, max_order).value;
  out.d = d_invariant(datum).value;
  out.slack = out.d - out.mld;
  out.ok = !(out.slack < Rat(0));
  return out;
}

Rat vdim_multi(const Rat& A_degree, int dim_Y, const std::vector<Rat>& ages) {
  if (dim_Y < 1) throw std::invalid_argument("vdim_multi: dim_Y must be >= 1");
  Rat out = A_degree + Rat(dim_Y) + Rat(static_cast<std::int64_t>(ages.size())) -
            Rat(3);
  for (const auto& a : ages) out -= a;
  return out;
}

Rat vdim_pointed(const Rat& A_degree, int dim_Y, const GroupElement& g) {
  if (A_degree <= Rat(0))
    throw std::invalid_argument("vdim_pointed: A_degree must be positive");
  if (dim_Y < 1)
    throw std::invalid_argument("vdim_pointed: dim_Y must be >= 1");
  return A_degree + Rat(dim_Y) - Rat(2) - age_base(g) - Rat(fixed_dim_base(g));
}

std::vector<std::vector<std::int64_t>> splitting_enumerate(
    std::int64_t ell, const std::vector<std::int64_t>& a, int d) {
  if (ell < 1)
    throw std::invalid_argument("splitting_enumerate: ell must be positive");
  int n = static_cast<int>(a.size());
  int top = 0;
  for (int i = 0; i < n; ++i) {
    if (a[i] < 1 || a[i] > ell)
      throw std::invalid_argument(
          "splitting_enumerate: entries of a must lie in [1, ell]");
    if (i > 0 && a[i - 1] > a[i])
      throw std::invalid_argument("splitting_enumerate: a must be ascending");
    if (a[i] == ell) ++top;
  }
  if (d != top)
    throw std::invalid_argument(
        "splitting_enumerate: d must count the entries equal to ell");

  Rat target(n + 1 + d);
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> b(a);
  std::vector<int> shift(n, 0);
  for (;;) {
    Rat sum(0);
    for (int i = 0; i < n; ++i) sum += chi_orb_line(b[i], ell);
    if (sum == target) out.push_back(b);
    int j = n;
    for (;;) {
      if (j == 0) return out;
      --j;
      if (++shift[j] <= n + 1) {
        b[j] += ell;
        break;
      }
      shift[j] = 0;
      b[j] = a[j];
    }
  }
}

bool splitting_uniqueness_check(
    std::int64_t ell, const std::vector<std::int64_t>& a,
    const std::vector<std::vector<std::int64_t>>& solutions) {
  for (const auto& b : solutions) {
    if (b.size() != a.size()) return false;
    int shifted = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (b[i] == a[i]) continue;
      if (b[i] != a[i] + ell) return false;
      ++shifted;
    }
    if (shifted != 1) return false;
  }
  return true;
}

}  // namespace mldcone
