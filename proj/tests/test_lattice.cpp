#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mldcone/lattice.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace mldcone;

namespace {

Rat rat(std::int64_t p, std::int64_t q) { return Rat(Int(p), Int(q)); }

IntMat from_rows(std::vector<std::vector<std::int64_t>> rows) {
  IntMat m(static_cast<int>(rows.size()),
           rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

bool is_unimodular(const IntMat& m) {
  Int d = det(m);
  return d == 1 || d == -1;
}

// The group an abelian chart presents, as the sorted set of all element theta
// vectors. Two presentations of the same subgroup of (Q/Z)^n compare equal.
std::set<std::vector<Rat>> theta_set(const QuotientChart& c) {
  std::set<std::vector<Rat>> out;
  for_each_element(c, kDefaultMaxOrder,
                   [&](const GroupElement& g) { out.insert(element_theta(g)); });
  return out;
}

// |det| of a square rational matrix given by columns, via integer scaling.
Rat abs_det(const std::vector<std::vector<Rat>>& cols) {
  int n = static_cast<int>(cols.size());
  Int scale = 1;
  for (const auto& c : cols)
    for (const auto& x : c) scale = lcm_int(scale, x.den());
  IntMat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m.at(i, j) = (cols[j][i] * Rat(scale)).num();
  Int d = det(m);
  if (d < 0) d = -d;
  Rat out(d);
  for (int i = 0; i < n; ++i) out = out / Rat(scale);
  return out;
}

}  // namespace

TEST_CASE("determinant (Bareiss)") {
  CHECK(det(from_rows({{2, 0}, {0, 3}})) == 6);
  CHECK(det(from_rows({{0, 1}, {1, 0}})) == -1);
  CHECK(det(from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
  CHECK(det(from_rows({{2, 3, 5}, {1, 0, 0}, {0, 1, 0}})) == 5);
  CHECK(det(IntMat::identity(4)) == 1);
}

TEST_CASE("smith normal form on fixed cases") {
  auto check_snf = [](const IntMat& a) {
    SmithResult s = smith_normal_form(a);
    CHECK(mat_equal(mat_mul(mat_mul(s.u, a), s.v), s.d));
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    for (int i = 0; i < std::min(s.d.rows, s.d.cols); ++i) {
      CHECK(s.d.at(i, i) >= 0);
      if (i > 0 && s.d.at(i, i) != 0)
        CHECK(s.d.at(i, i) % s.d.at(i - 1, i - 1) == 0);
    }
    for (int i = 0; i < s.d.rows; ++i)
      for (int j = 0; j < s.d.cols; ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
    return s;
  };

  SmithResult s = check_snf(from_rows({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}}));
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 2);
  CHECK(s.d.at(2, 2) == 156);

  s = check_snf(from_rows({{1, 0}, {0, 1}}));
  CHECK(s.d.at(0, 0) == 1);
  CHECK(s.d.at(1, 1) == 1);

  check_snf(from_rows({{0, 0}, {0, 0}}));
  check_snf(from_rows({{6, 10, 15}}));
  check_snf(from_rows({{3}, {6}, {9}}));
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> entry(-30, 30);
  for (int trial = 0; trial < 200; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4);
    int c = 1 + static_cast<int>(rng() % 4);
    IntMat a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a.at(i, j) = entry(rng);
    SmithResult s = smith_normal_form(a);
    CHECK(mat_equal(mat_mul(mat_mul(s.u, a), s.v), s.d));
    CHECK(is_unimodular(s.u));
    CHECK(is_unimodular(s.v));
    Int prev = 0;
    for (int i = 0; i < std::min(r, c); ++i) {
      Int di = s.d.at(i, i);
      CHECK(di >= 0);
      if (prev != 0 && di != 0) CHECK(di % prev == 0);
      if (prev == 0 && i > 0) CHECK(di == 0);  // zeros trail
      prev = di;
    }
  }
}

TEST_CASE("hermite column basis") {
  // Lattice spanned by (2,0),(0,2),(1,1): index 2 in Z^2.
  IntMat h = hermite_column_basis(from_rows({{2, 0, 1}, {0, 2, 1}}));
  REQUIRE(h.cols == 2);
  CHECK(h.at(0, 0) == 1);
  CHECK(h.at(1, 0) == 1);
  CHECK(h.at(0, 1) == 0);
  CHECK(h.at(1, 1) == 2);

  // Rank-deficient input keeps only pivot columns.
  IntMat r1 = hermite_column_basis(from_rows({{2, 4}, {3, 6}}));
  REQUIRE(r1.cols == 1);
  CHECK(r1.at(0, 0) == 2);
  CHECK(r1.at(1, 0) == 3);

  // Column span is preserved: same Hermite form after shuffling generators.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMat a(3, 5);
    for (auto& x : a.a) x = static_cast<int>(rng() % 21) - 10;
    IntMat h1 = hermite_column_basis(a);
    IntMat b(3, 5);
    std::vector<int> perm = {0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j) b.at(i, j) = a.at(i, perm[j]);
    IntMat h2 = hermite_column_basis(b);
    CHECK(mat_equal(h1, h2));
  }
}

TEST_CASE("quotient lattice closure and basis") {
  QuotientLattice lat(2, {{rat(1, 3), rat(2, 3)}});
  CHECK(lat.index() == 3);
  CHECK(lat.exponent() == 3);
  CHECK(lat.covolume() == rat(1, 3));
  std::vector<std::vector<Rat>> expect = {
      {Rat(0), Rat(0)}, {rat(1, 3), rat(2, 3)}, {rat(2, 3), rat(1, 3)}};
  CHECK(lat.cosets() == expect);
  CHECK(lat.contains({rat(1, 3), rat(2, 3)}));
  CHECK(lat.contains({rat(4, 3), rat(-1, 3)}));
  CHECK(lat.contains({Rat(1), Rat(5)}));
  CHECK_FALSE(lat.contains({rat(1, 3), rat(1, 3)}));
  CHECK_FALSE(lat.contains({rat(1, 2), rat(1, 2)}));

  // Generators that need closing up: (1/2,0),(0,1/2) plus (1/4,1/4).
  QuotientLattice lat2(2, {{rat(1, 2), Rat(0)}, {rat(1, 4), rat(1, 4)}});
  CHECK(lat2.index() == 8);
  CHECK(lat2.exponent() == 4);
  CHECK(lat2.contains({Rat(0), rat(1, 2)}));

  QuotientLattice trivial(3, {});
  CHECK(trivial.index() == 1);
  CHECK(trivial.contains({Rat(1), Rat(2), Rat(-3)}));
  CHECK_FALSE(trivial.contains({rat(1, 2), Rat(0), Rat(0)}));

  CHECK_THROWS_AS(QuotientLattice(2, {{rat(1, 5000), rat(1, 5000)}}, 100),
                  FamilyTooLarge);
}

TEST_CASE("box points") {
  QuotientLattice lat(2, {{rat(1, 3), rat(2, 3)}});
  std::vector<std::vector<Rat>> expect = {
      {rat(1, 3), rat(2, 3)}, {rat(2, 3), rat(1, 3)}, {Rat(1), Rat(1)}};
  CHECK(box_points(lat) == expect);

  QuotientLattice trivial(2, {});
  std::vector<std::vector<Rat>> ones = {{Rat(1), Rat(1)}};
  CHECK(box_points(trivial) == ones);
}

TEST_CASE("quotient oracle on known singularities") {
  // A_2: C^2 / (1/3)(1,2) is canonical with mld 1.
  CHECK(mld_oracle_quotient({CyclicFactor{3, {1, 2}}}, 2) == Rat(1));
  // (1/3)(1,1): mld 2/3.
  CHECK(mld_oracle_quotient({CyclicFactor{3, {1, 1}}}, 2) == rat(2, 3));
  // (1/5)(1,2): box minimum is 3/5.
  CHECK(mld_oracle_quotient({CyclicFactor{5, {1, 2}}}, 2) == rat(3, 5));
  // (1/7)(1,2,4): terminal threefold quotient, mld 1 at k=1 (1+2+4)/7.
  CHECK(mld_oracle_quotient({CyclicFactor{7, {1, 2, 4}}}, 3) == Rat(1));
  // Smooth: box minimum is the all-ones point.
  CHECK(mld_oracle_quotient({}, 3) == Rat(3));
  // Non-isolated input is refused.
  CHECK_THROWS_AS(mld_oracle_quotient({CyclicFactor{2, {1, 0}}}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(mld_oracle_quotient({CyclicFactor{4, {1, 2}}}, 2),
                  std::invalid_argument);
  // Dimension 1 is outside the oracle's contract.
  CHECK_THROWS_AS(mld_oracle_quotient({CyclicFactor{2, {1}}}, 1),
                  std::invalid_argument);
}

TEST_CASE("chart oracle on the half-open box") {
  // Trivial chart, r = 2: only the all-ones point, value 2*1 + 1 = 3.
  CHECK(mld_oracle_chart(QuotientChart("T", 2, {}), Rat(2)) == Rat(3));
  // (1/3)(1,1) fiber/base, r = 5: min(5/3+1/3, 10/3+2/3, 6) = 2.
  QuotientChart c5("U", 2, {CyclicFactor{3, {1, 1}}});
  CHECK(mld_oracle_chart(c5, Rat(5)) == Rat(2));
  // (1/5)(1,3,2), r = 10: min over box is 3.
  QuotientChart c10("U", 3, {CyclicFactor{5, {1, 3, 2}}});
  CHECK(mld_oracle_chart(c10, Rat(10)) == Rat(3));
}

TEST_CASE("primitive rays") {
  QuotientLattice z2(2, {});
  CHECK(primitive_ray(z2, {2, 3}) == std::vector<Rat>{Rat(2), Rat(3)});
  CHECK(primitive_ray(z2, {2, 4}) == std::vector<Rat>{Rat(1), Rat(2)});

  QuotientLattice a2(2, {{rat(1, 3), rat(2, 3)}});
  CHECK(primitive_ray(a2, {1, 1}) == std::vector<Rat>{Rat(1), Rat(1)});
  CHECK(primitive_ray(a2, {1, 2}) == std::vector<Rat>{rat(1, 3), rat(2, 3)});

  // Non-unit gcd interacts with the exponent: (2,2) in Z^2 + (1/2,1/2).
  QuotientLattice half(2, {{rat(1, 2), rat(1, 2)}});
  CHECK(primitive_ray(half, {2, 2}) == std::vector<Rat>{rat(1, 2), rat(1, 2)});

  CHECK(primitive_ray(z2, {0, 3}) == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK_THROWS_AS(primitive_ray(z2, {0, 0}), std::invalid_argument);
}

TEST_CASE("star subdivision shape and preconditions") {
  QuotientLattice a2(2, {{rat(1, 3), rat(2, 3)}});
  std::vector<Rat> ray = {Rat(1), Rat(1)};
  auto charts = star_subdivision(a2, ray);
  REQUIRE(charts.size() == 2);
  for (const auto& c : charts) {
    CHECK(c.distinguished == 0);
    REQUIRE(c.rays.size() == 2);
    CHECK(c.rays[0] == ray);
  }
  CHECK(charts[0].rays[1] == std::vector<Rat>{Rat(0), Rat(1)});
  CHECK(charts[1].rays[1] == std::vector<Rat>{Rat(1), Rat(0)});

  std::vector<Rat> not_prim = {Rat(2), Rat(2)};
  CHECK_THROWS_AS(star_subdivision(a2, not_prim), std::invalid_argument);
  std::vector<Rat> boundary = {Rat(0), Rat(1)};
  CHECK_THROWS_AS(star_subdivision(a2, boundary), std::invalid_argument);
  std::vector<Rat> outside = {rat(1, 2), rat(1, 2)};
  CHECK_THROWS_AS(star_subdivision(a2, outside), std::invalid_argument);
}

TEST_CASE("chart extraction via smith form") {
  // A_2 cone: both subdivision charts present the group Z/3 acting with
  // weights (1,1) up to choice of generator.
  QuotientLattice a2(2, {{rat(1, 3), rat(2, 3)}});
  auto cones = star_subdivision(a2, {Rat(1), Rat(1)});
  QuotientChart c1 = chart_from_cone(cones[0], a2, "C1");
  QuotientChart c2 = chart_from_cone(cones[1], a2, "C2");
  QuotientChart expect("E", 2, {CyclicFactor{3, {1, 1}}});
  CHECK(theta_set(c1) == theta_set(expect));
  CHECK(theta_set(c2) == theta_set(expect));
  CHECK(c1.label() == "C1");

  // Unimodular cone: trivial chart group.
  QuotientLattice z3(3, {});
  SimplicialChart uni;
  uni.rays = {{Rat(1), Rat(1), Rat(1)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}};
  uni.distinguished = 0;
  CHECK(chart_from_cone(uni, z3, "U").trivial_group());

  // Z^3, ray (2,3,5), chart omitting e2: group Z/5 with weights (1,3,2)
  // seen from the distinguished (fiber) ray.
  SimplicialChart five;
  five.rays = {{Rat(2), Rat(3), Rat(5)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
  five.distinguished = 0;
  // same rays as uni: index |det| = 5
  QuotientChart c5 = chart_from_cone(five, z3, "U2");
  QuotientChart expect5("E", 3, {CyclicFactor{5, {1, 3, 2}}});
  CHECK(theta_set(c5) == theta_set(expect5));

  // Degenerate rays are rejected.
  SimplicialChart degen;
  degen.rays = {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(1), Rat(0)}};
  CHECK_THROWS_AS(chart_from_cone(degen, z3, "D"), std::invalid_argument);
  // Rays outside the lattice are rejected.
  SimplicialChart outside;
  outside.rays = {{rat(1, 2), Rat(0)}, {Rat(0), Rat(1)}};
  QuotientLattice z2(2, {});
  CHECK_THROWS_AS(chart_from_cone(outside, z2, "O"), std::invalid_argument);
}

TEST_CASE("subdivision chart index equals ray determinant over covolume") {
  auto run = [](const QuotientLattice& lat, std::vector<std::int64_t> xi) {
    auto ray = primitive_ray(lat, xi);
    for (const auto& cone : star_subdivision(lat, ray)) {
      QuotientChart c = chart_from_cone(cone, lat, "C");
      CHECK(Rat(c.enumeration_size()) == abs_det(cone.rays) / lat.covolume());
    }
  };
  run(QuotientLattice(2, {{rat(1, 3), rat(2, 3)}}), {1, 1});
  run(QuotientLattice(3, {{rat(1, 5), rat(1, 5), rat(2, 5)}}), {1, 1, 1});
  run(QuotientLattice(3, {}), {2, 3, 5});
  run(QuotientLattice(2, {{rat(1, 2), rat(1, 2)}}), {1, 3});
}

TEST_CASE("cyclic quotient to cone data") {
  FanoConeData a2 = cone_from_cyclic_quotient(3, {1, 2});
  CHECK(a2.name == "3:1,2");
  CHECK(a2.dim == 2);
  CHECK(a2.r == Rat(2));
  REQUIRE(a2.charts.size() == 2);
  CHECK(a2.charts[0].label() == "C1");
  CHECK(a2.ambient_unimodular.has_value());
  CHECK_FALSE(*a2.ambient_unimodular);
  CHECK(validate_cone(a2).pass);

  // (1/3)(1,1): primitive Reeb ray is (1/3,1/3), r = 2/3, charts trivial.
  FanoConeData c11 = cone_from_cyclic_quotient(3, {1, 1});
  CHECK(c11.r == rat(2, 3));
  for (const auto& c : c11.charts) CHECK(c.trivial_group());

  // m = 1: smooth ambient, r = n.
  FanoConeData smooth = cone_from_cyclic_quotient(1, {1, 1, 1});
  CHECK(smooth.r == Rat(3));
  CHECK(*smooth.ambient_unimodular);
  for (const auto& c : smooth.charts) CHECK(c.trivial_group());

  // Non-isolated rejected by name.
  CHECK_THROWS_AS(cone_from_cyclic_quotient(4, {1, 2}), ValidationError);
  CHECK_THROWS_AS(cone_from_cyclic_quotient(6, {2, 3}), ValidationError);
  // Custom Reeb direction.
  FanoConeData skew = cone_from_cyclic_quotient(3, {1, 2}, {1, 2});
  CHECK(skew.r == Rat(1));  // primitive ray (1/3)(1,2), sum 1
  CHECK(validate_cone(skew).pass);
}
