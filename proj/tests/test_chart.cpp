#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mldcone/chart.hpp"

#include <random>

using namespace mldcone;

namespace {

QuotientChart cyclic(std::int64_t m, std::vector<std::int64_t> w,
                     std::string label = "C") {
  int n = static_cast<int>(w.size());
  return QuotientChart(std::move(label), n, {CyclicFactor{m, std::move(w)}});
}

Rat rat(std::int64_t p, std::int64_t q) { return Rat(Int(p), Int(q)); }

}  // namespace

TEST_CASE("chart constructor validates and reduces weights") {
  QuotientChart c = cyclic(3, {4, -1});
  CHECK(c.factors()[0].weights == std::vector<std::int64_t>{1, 2});
  CHECK(c.dim() == 2);
  CHECK(c.enumeration_size() == 3);
  CHECK_FALSE(c.trivial_group());
  CHECK(QuotientChart("T", 2, {}).trivial_group());
  CHECK(QuotientChart("T", 3, {CyclicFactor{1, {0, 0, 0}}}).trivial_group());
  CHECK_THROWS_AS(QuotientChart("X", 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(QuotientChart("X", 2, {CyclicFactor{0, {1, 1}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(QuotientChart("X", 2, {CyclicFactor{3, {1}}}),
                  std::invalid_argument);
}

TEST_CASE("element theta on a cyclic chart") {
  QuotientChart c = cyclic(3, {1, 2});
  GroupElement g = identity_element(c);
  CHECK(g.is_identity());
  CHECK(element_theta(g) == std::vector<Rat>{Rat(0), Rat(0)});
  g.exponents[0] = 1;
  CHECK(element_theta(g) == std::vector<Rat>{rat(1, 3), rat(2, 3)});
  CHECK(theta_fiber(g) == rat(1, 3));
  CHECK(age_base(g) == rat(2, 3));
  CHECK(fixed_dim_base(g) == 0);
  g.exponents[0] = 2;
  CHECK(element_theta(g) == std::vector<Rat>{rat(2, 3), rat(1, 3)});
}

TEST_CASE("multi-factor theta adds contributions") {
  QuotientChart c("C", 2, {CyclicFactor{2, {1, 1}}, CyclicFactor{3, {1, 2}}});
  GroupElement g{&c, {1, 1}};
  // (1/2,1/2) + (1/3,2/3) = (5/6, 7/6) -> (5/6, 1/6)
  CHECK(element_theta(g) == std::vector<Rat>{rat(5, 6), rat(1, 6)});
  CHECK(g.order() == 6);
}

TEST_CASE("inverse, compose, order") {
  QuotientChart c = cyclic(6, {1, 5});
  GroupElement g{&c, {2}};
  CHECK(g.inverse().exponents == std::vector<std::int64_t>{4});
  CHECK(g.compose(g.inverse()).is_identity());
  CHECK(g.order() == 3);
  CHECK(identity_element(c).order() == 1);
  GroupElement gen{&c, {1}};
  CHECK(gen.order() == 6);
  CHECK(g.str() == "2");
  CHECK(identity_element(c).str() == "e");
  QuotientChart c2("D", 2, {CyclicFactor{2, {1, 1}}, CyclicFactor{3, {1, 2}}});
  GroupElement mixed{&c2, {1, 2}};
  CHECK(mixed.str() == "1;2");
}

TEST_CASE("enumeration order and ranks") {
  QuotientChart c("C", 2, {CyclicFactor{2, {1, 1}}, CyclicFactor{3, {1, 2}}});
  std::vector<std::vector<std::int64_t>> seen;
  for_each_element(c, kDefaultMaxOrder,
                   [&](const GroupElement& g) { seen.push_back(g.exponents); });
  std::vector<std::vector<std::int64_t>> expect = {{0, 0}, {0, 1}, {0, 2},
                                                   {1, 0}, {1, 1}, {1, 2}};
  CHECK(seen == expect);

  auto table = inertia_table(c);
  REQUIRE(table.size() == 6);
  for (std::size_t i = 0; i < table.size(); ++i)
    CHECK(element_rank(table[i].element) == static_cast<std::int64_t>(i));

  // Trivial group: identity only.
  auto trivial = inertia_table(QuotientChart("T", 2, {}));
  REQUIRE(trivial.size() == 1);
  CHECK(trivial[0].element.is_identity());
}

TEST_CASE("enumeration guard trips") {
  QuotientChart big = cyclic(5000, {1, 3});
  CHECK_THROWS_AS(inertia_table(big, 1000), FamilyTooLarge);
  CHECK_NOTHROW(inertia_table(big, 5000));
}

TEST_CASE("age duality on random charts") {
  std::mt19937_64 rng(20240818);
  std::uniform_int_distribution<std::int64_t> ord(1, 40);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    int nf = 1 + static_cast<int>(rng() % 2);
    std::vector<CyclicFactor> fs;
    for (int j = 0; j < nf; ++j) {
      CyclicFactor f;
      f.order = ord(rng);
      for (int i = 0; i < n; ++i)
        f.weights.push_back(static_cast<std::int64_t>(rng() % f.order));
      fs.push_back(f);
    }
    QuotientChart c("R", n, fs);
    for_each_element(c, kDefaultMaxOrder, [&](const GroupElement& g) {
      CHECK(age_duality_check(g));
      // theta_i(g) + theta_i(g^-1) is 0 or 1, coordinatewise.
      auto t = element_theta(g);
      auto ti = element_theta(g.inverse());
      for (int i = 0; i < n; ++i) {
        Rat s = t[i] + ti[i];
        CHECK((s == Rat(0) || s == Rat(1)));
      }
    });
  }
}

TEST_CASE("validation catches bad data") {
  FanoConeData good;
  good.name = "good";
  good.r = rat(5, 1);
  good.dim = 2;
  good.charts.push_back(cyclic(2, {1, 1}, "U0"));
  good.charts.push_back(cyclic(3, {1, 1}, "U1"));
  CHECK(validate_cone(good).pass);
  CHECK_NOTHROW(require_valid(good));

  FanoConeData bad_r = good;
  bad_r.r = Rat(0);
  auto rep = validate_cone(bad_r);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == ViolationKind::NonPositiveR);

  FanoConeData bad_dim = good;
  bad_dim.dim = 3;
  rep = validate_cone(bad_dim);
  CHECK_FALSE(rep.pass);
  CHECK(rep.violations.size() == 2);
  CHECK(rep.violations[0].kind == ViolationKind::DimMismatch);

  // Non-isolated: an element acting trivially on the fiber direction.
  FanoConeData noniso = good;
  noniso.charts[0] = cyclic(2, {0, 1}, "U0");
  rep = validate_cone(noniso);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == ViolationKind::NonIsolated);
  CHECK(rep.violations[0].chart == "U0");
  CHECK(rep.violations[0].exponents == std::vector<std::int64_t>{1});
  CHECK_THROWS_AS(require_valid(noniso), ValidationError);

  // Non-effective is reported as such, not as a non-isolation finding.
  FanoConeData noneff = good;
  noneff.charts[0] = cyclic(2, {0, 0}, "U0");
  rep = validate_cone(noneff);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == ViolationKind::NonEffective);
  CHECK(rep.violations[0].chart == "U0");

  // Mixed-order subtlety: fiber weight coprime to one factor but a composite
  // element may still fix the fiber.
  FanoConeData sneaky = good;
  sneaky.charts.clear();
  sneaky.charts.push_back(QuotientChart(
      "S", 2, {CyclicFactor{2, {1, 0}}, CyclicFactor{2, {1, 1}}}));
  rep = validate_cone(sneaky);
  CHECK_FALSE(rep.pass);  // (1,1) has theta_fiber = 0
  CHECK(rep.violations[0].exponents == std::vector<std::int64_t>{1, 1});
}
