#include "mldcone/lattice.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>

namespace mldcone {

namespace {

std::vector<Rat> frac_vec(std::vector<Rat> v) {
  for (auto& x : v) x = x.frac();
  return v;
}

std::int64_t to_i64(const Int& v, const char* what) {
  if (v > Int(std::numeric_limits<std::int64_t>::max()) ||
      v < Int(std::numeric_limits<std::int64_t>::min()))
    throw std::overflow_error(std::string(what) + ": value out of int64 range");
  return static_cast<std::int64_t>(v);
}

}  // namespace

QuotientLattice::QuotientLattice(int dim,
                                 std::vector<std::vector<Rat>> extra_generators,
                                 std::int64_t max_index)
    : dim_(dim) {
  if (dim_ < 1) throw std::invalid_argument("QuotientLattice: dim must be >= 1");
  for (auto& g : extra_generators) {
    if (static_cast<int>(g.size()) != dim_)
      throw std::invalid_argument("QuotientLattice: generator length != dim");
    g = frac_vec(std::move(g));
  }

  // Close the generators under addition mod Z^n to materialize L / Z^n.
  std::set<std::vector<Rat>> seen;
  std::deque<std::vector<Rat>> queue;
  std::vector<Rat> zero(dim_, Rat(0));
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (const auto& g : extra_generators) {
      std::vector<Rat> w(dim_);
      for (int i = 0; i < dim_; ++i) w[i] = (v[i] + g[i]).frac();
      if (seen.insert(w).second) {
        if (static_cast<std::int64_t>(seen.size()) > max_index)
          throw FamilyTooLarge("lattice index exceeds " + std::to_string(max_index));
        queue.push_back(w);
      }
    }
  }
  cosets_.assign(seen.begin(), seen.end());  // std::set iterates sorted

  for (const auto& c : cosets_) {
    std::int64_t ord = 1;
    for (const auto& x : c) ord = lcm64(ord, to_i64(x.den(), "coset order"));
    exponent_ = lcm64(exponent_, ord);
  }

  // Hermite basis of Q*L for Q the exponent, columns [Q*I | Q*gens].
  Int q(exponent_);
  IntMat gen(dim_, dim_ + static_cast<int>(extra_generators.size()));
  for (int i = 0; i < dim_; ++i) gen.at(i, i) = q;
  for (std::size_t k = 0; k < extra_generators.size(); ++k)
    for (int i = 0; i < dim_; ++i) {
      Rat scaled = extra_generators[k][i] * Rat(q);
      if (!scaled.is_integer())
        throw std::logic_error("QuotientLattice: exponent does not clear generator");
      gen.at(i, dim_ + static_cast<int>(k)) = scaled.num();
    }
  IntMat h = hermite_column_basis(gen);
  if (h.cols != dim_)
    throw std::logic_error("QuotientLattice: generator matrix not full rank");
  basis_.assign(dim_, std::vector<Rat>(dim_, Rat(0)));
  for (int j = 0; j < dim_; ++j)
    for (int i = 0; i < dim_; ++i) basis_[j][i] = Rat(h.at(i, j), q);

  // Cross-check the two presentations: covolume from the Hermite basis must
  // equal 1 / (number of cosets).
  Rat covol(1);
  for (int j = 0; j < dim_; ++j) covol *= basis_[j][j];
  if (covol * Rat(index()) != Rat(1))
    throw std::logic_error("QuotientLattice: coset count disagrees with basis covolume");
}

bool QuotientLattice::contains(const std::vector<Rat>& v) const {
  if (static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("QuotientLattice::contains: wrong length");
  // basis_ is lower triangular (column Hermite form): forward substitution.
  std::vector<Rat> x(dim_);
  for (int i = 0; i < dim_; ++i) {
    Rat acc = v[i];
    for (int j = 0; j < i; ++j) acc -= basis_[j][i] * x[j];
    x[i] = acc / basis_[i][i];
    if (!x[i].is_integer()) return false;
  }
  return true;
}

QuotientLattice lattice_from_group(const std::vector<CyclicFactor>& factors,
                                   int dim, std::int64_t max_index) {
  std::vector<std::vector<Rat>> gens;
  for (const auto& f : factors) {
    if (static_cast<int>(f.weights.size()) != dim)
      throw std::invalid_argument("lattice_from_group: weight length != dim");
    std::vector<Rat> g(dim);
    for (int i = 0; i < dim; ++i) g[i] = Rat(Int(f.weights[i]), Int(f.order));
    gens.push_back(std::move(g));
  }
  return QuotientLattice(dim, std::move(gens), max_index);
}

std::vector<std::vector<Rat>> box_points(const QuotientLattice& lattice) {
  std::vector<std::vector<Rat>> pts;
  pts.reserve(lattice.cosets().size());
  for (const auto& c : lattice.cosets()) {
    std::vector<Rat> p = c;
    for (auto& x : p)
      if (x.is_zero()) x = Rat(1);
    pts.push_back(std::move(p));
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

Rat mld_oracle_quotient(const QuotientLattice& lattice) {
  if (lattice.dim() < 2)
    throw std::invalid_argument("mld_oracle_quotient: dim must be >= 2");
  for (const auto& c : lattice.cosets()) {
    bool zero_coset = std::all_of(c.begin(), c.end(),
                                  [](const Rat& x) { return x.is_zero(); });
    if (zero_coset) continue;
    for (const auto& x : c)
      if (x.is_zero())
        throw std::invalid_argument(
            "mld_oracle_quotient: non-isolated action (coset with zero coordinate)");
  }
  Rat best(0);
  bool first = true;
  for (const auto& p : box_points(lattice)) {
    Rat s(0);
    for (const auto& x : p) s += x;
    if (first || s < best) { best = s; first = false; }
  }
  return best;
}

Rat mld_oracle_quotient(const std::vector<CyclicFactor>& group, int dim,
                        std::int64_t max_index) {
  return mld_oracle_quotient(lattice_from_group(group, dim, max_index));
}

Rat mld_oracle_chart(const QuotientChart& chart, const Rat& r,
                     std::int64_t max_order) {
  QuotientLattice lattice = lattice_from_group(chart.factors(), chart.dim(), max_order);
  Rat best(0);
  bool first = true;
  for (const auto& p : box_points(lattice)) {
    Rat s = r * p[0];
    for (std::size_t i = 1; i < p.size(); ++i) s += p[i];
    if (first || s < best) { best = s; first = false; }
  }
  return best;
}

Rat mld_oracle_cone(const FanoConeData& data, std::int64_t max_order) {
  require_valid(data, max_order);
  // The r point: fiber coordinate 1, base coordinates 0. Always a lattice
  // point of the valuative box, also reached from the zero coset below; kept
  // explicit so the no-chart case is covered.
  Rat best = data.r;
  for (const auto& chart : data.charts) {
    QuotientLattice lattice =
        lattice_from_group(chart.factors(), chart.dim(), max_order);
    for (const auto& c : lattice.cosets()) {
      Rat fiber = c[0].is_zero() ? Rat(1) : c[0];
      // Base coordinates vanishing on the coset lie on the box wall; both
      // lifts x_i = 0 and x_i = 1 are lattice points, so enumerate all
      // combinations honestly and let the minimum decide.
      std::vector<int> zero_idx;
      Rat fixed_sum(0);
      for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i].is_zero())
          zero_idx.push_back(static_cast<int>(i));
        else
          fixed_sum += c[i];
      }
      std::size_t lifts = std::size_t{1} << zero_idx.size();
      for (std::size_t mask = 0; mask < lifts; ++mask) {
        Rat s = data.r * fiber + fixed_sum;
        for (std::size_t b = 0; b < zero_idx.size(); ++b)
          if (mask & (std::size_t{1} << b)) s += Rat(1);
        if (s < best) best = s;
      }
    }
  }
  return best;
}

std::vector<Rat> primitive_ray(const QuotientLattice& lattice,
                               const std::vector<std::int64_t>& xi) {
  int n = lattice.dim();
  if (static_cast<int>(xi.size()) != n)
    throw std::invalid_argument("primitive_ray: wrong length");
  std::int64_t g = 0;
  for (auto v : xi) {
    if (v < 0) throw std::invalid_argument("primitive_ray: negative entry");
    g = gcd64(g, v);
  }
  if (g == 0) throw std::invalid_argument("primitive_ray: zero vector");
  // Any t*xi in L has t in (1/(exponent*g)) * Z, so this scan is exhaustive;
  // s = denom always lands back in Z^n <= L.
  std::int64_t denom = lattice.exponent() * g;
  for (std::int64_t s = 1; s <= denom; ++s) {
    std::vector<Rat> v(n);
    for (int i = 0; i < n; ++i) v[i] = Rat(Int(xi[i]) * s, Int(denom));
    if (lattice.contains(v)) return v;
  }
  throw std::logic_error("primitive_ray: scan found no lattice point");
}

Rat fano_index_r(const std::vector<Rat>& ray) {
  Rat s(0);
  for (const auto& x : ray) s += x;
  if (s <= Rat(0)) throw std::invalid_argument("fano_index_r: sum not positive");
  return s;
}

std::vector<SimplicialChart> star_subdivision(const QuotientLattice& lattice,
                                              const std::vector<Rat>& ray) {
  int n = lattice.dim();
  if (static_cast<int>(ray.size()) != n)
    throw std::invalid_argument("star_subdivision: ray length != dim");
  for (const auto& x : ray)
    if (x <= Rat(0))
      throw std::invalid_argument("star_subdivision: ray must be interior (all entries > 0)");
  if (!lattice.contains(ray))
    throw std::invalid_argument("star_subdivision: ray not in lattice");

  // Primitivity: rescale to an integer direction and recompute.
  std::int64_t q = 1;
  for (const auto& x : ray) q = lcm64(q, to_i64(x.den(), "ray denominator"));
  std::vector<std::int64_t> xi(n);
  std::int64_t g = 0;
  for (int i = 0; i < n; ++i) {
    xi[i] = to_i64((ray[i] * Rat(q)).num(), "ray direction");
    g = gcd64(g, xi[i]);
  }
  for (auto& v : xi) v /= g;
  if (primitive_ray(lattice, xi) != ray)
    throw std::invalid_argument("star_subdivision: ray not primitive");

  std::vector<std::vector<Rat>> prim_axes(n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(n, 0);
    e[i] = 1;
    prim_axes[i] = primitive_ray(lattice, e);
  }

  std::vector<SimplicialChart> charts;
  for (int j = 0; j < n; ++j) {
    SimplicialChart c;
    c.distinguished = 0;
    c.rays.push_back(ray);
    for (int i = 0; i < n; ++i)
      if (i != j) c.rays.push_back(prim_axes[i]);
    charts.push_back(std::move(c));
  }
  return charts;
}

QuotientChart chart_from_cone(const SimplicialChart& cone,
                              const QuotientLattice& lattice,
                              const std::string& label) {
  int n = lattice.dim();
  if (static_cast<int>(cone.rays.size()) != n)
    throw std::invalid_argument("chart_from_cone: need dim rays");
  if (cone.distinguished < 0 || cone.distinguished >= n)
    throw std::invalid_argument("chart_from_cone: bad distinguished index");

  // Ray matrix with the distinguished ray as column 0.
  std::vector<int> perm;
  perm.push_back(cone.distinguished);
  for (int i = 0; i < n; ++i)
    if (i != cone.distinguished) perm.push_back(i);

  // Coordinates of the rays in the lattice basis: solve basis * A = B by
  // forward substitution (the basis is lower triangular).
  const auto& basis = lattice.basis();
  IntMat coords(n, n);
  for (int col = 0; col < n; ++col) {
    const auto& b = cone.rays[perm[col]];
    if (static_cast<int>(b.size()) != n)
      throw std::invalid_argument("chart_from_cone: ray length != dim");
    std::vector<Rat> x(n);
    for (int i = 0; i < n; ++i) {
      Rat acc = b[i];
      for (int j = 0; j < i; ++j) acc -= basis[j][i] * x[j];
      x[i] = acc / basis[i][i];
    }
    for (int i = 0; i < n; ++i) {
      if (!x[i].is_integer())
        throw std::invalid_argument("chart_from_cone: ray not in lattice");
      coords.at(i, col) = x[i].num();
    }
  }
  if (det(coords) == 0)
    throw std::invalid_argument("chart_from_cone: rays not full-dimensional");

  // L / Z-span(rays) in invariant-factor form. With u*coords*v = d, the class
  // of the i-th invariant generator has ray-basis coordinates v[:,i] / d_i.
  SmithResult snf = smith_normal_form(coords);
  std::vector<CyclicFactor> factors;
  for (int i = 0; i < n; ++i) {
    Int di = snf.d.at(i, i);
    if (di <= 1) continue;
    CyclicFactor f;
    f.order = to_i64(di, "invariant factor");
    f.weights.resize(n);
    for (int j = 0; j < n; ++j) {
      Int w = snf.v.at(j, i) % di;
      if (w < 0) w += di;
      f.weights[j] = to_i64(w, "chart weight");
    }
    factors.push_back(std::move(f));
  }
  return QuotientChart(label, n, std::move(factors));
}

FanoConeData cone_from_cyclic_quotient(std::int64_t m,
                                       const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& xi,
                                       std::int64_t max_order) {
  int n = static_cast<int>(a.size());
  if (m < 1) throw std::invalid_argument("cone_from_cyclic_quotient: m must be >= 1");
  if (n < 2) throw std::invalid_argument("cone_from_cyclic_quotient: dim must be >= 2");
  for (auto ai : a) {
    std::int64_t red = ((ai % m) + m) % m;
    std::int64_t g = gcd64(red == 0 ? m : red, m);
    if (m > 1 && g != 1) {
      std::ostringstream os;
      os << "cone_from_cyclic_quotient: 1/" << m << "(";
      for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
      os << ") is not isolated: gcd(" << ai << ", " << m << ") = " << g;
      throw ValidationError(os.str());
    }
  }

  std::vector<std::vector<Rat>> gens;
  if (m > 1) {
    std::vector<Rat> g(n);
    for (int i = 0; i < n; ++i) g[i] = Rat(Int(a[i]), Int(m)).frac();
    gens.push_back(std::move(g));
  }
  QuotientLattice lattice(n, std::move(gens), max_order);

  std::vector<std::int64_t> dir = xi;
  if (dir.empty()) dir.assign(n, 1);
  if (static_cast<int>(dir.size()) != n)
    throw std::invalid_argument("cone_from_cyclic_quotient: xi length != dim");
  for (auto v : dir)
    if (v < 1)
      throw std::invalid_argument("cone_from_cyclic_quotient: xi must be positive");

  std::vector<Rat> ray = primitive_ray(lattice, dir);

  FanoConeData data;
  std::ostringstream name;
  name << m << ":";
  for (std::size_t i = 0; i < a.size(); ++i) name << (i ? "," : "") << a[i];
  data.name = name.str();
  data.dim = n;
  data.r = fano_index_r(ray);
  data.ambient_unimodular = lattice.index() == 1;
  auto cones = star_subdivision(lattice, ray);
  for (std::size_t j = 0; j < cones.size(); ++j)
    data.charts.push_back(
        chart_from_cone(cones[j], lattice, "C" + std::to_string(j + 1)));
  require_valid(data, max_order);
  return data;
}

}  // namespace mldcone
