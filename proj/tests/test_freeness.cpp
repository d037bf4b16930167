#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shicat/freeness.hpp"

using namespace shicat;

namespace {
CentralArrangement lines(std::vector<std::vector<long long>> forms) {
  int n = static_cast<int>(forms[0].size());
  return CentralArrangement::from_forms(n, std::move(forms));
}
}  // namespace

TEST_CASE("integer root extraction") {
  // (t-1)(t-3)^2 = t^3 - 7t^2 + 15t - 9
  auto r = integer_roots({-9, 15, -7, 1});
  REQUIRE(r.has_value());
  CHECK(*r == std::vector<int>{1, 3, 3});
  CHECK(!integer_roots({2, 0, 1}).has_value());   // t^2 + 2
  CHECK(!integer_roots({-2, 1, 1}).has_value());  // (t+2)(t-1)
  auto z = integer_roots({0, 0, 1});              // t^2
  REQUIRE(z.has_value());
  CHECK(*z == std::vector<int>{0, 0});
}

TEST_CASE("characteristic polynomials of small arrangements") {
  // braid A2 in 2 coordinates: x, y, x+y
  CentralArrangement a2 = lines({{1, 0}, {0, 1}, {1, 1}});
  CHECK(char_poly_central(a2) == std::vector<long long>{2, -3, 1});
  // empty arrangement in 3 vars
  CentralArrangement empty;
  empty.nvars = 3;
  CHECK(char_poly_central(empty) == std::vector<long long>{0, 0, 0, 1});
}

TEST_CASE("derivation spaces: Euler membership and empty arrangement") {
  CentralArrangement a2 = lines({{1, 0}, {0, 1}, {1, 1}});
  std::vector<int> m1(3, 1);
  DerivationSpace d1 = derivation_space(a2, m1, 1);
  CHECK(d1.dim == 1);  // only Euler in degree 1
  CHECK(in_derivation_module(a2, Derivation::euler(2)));
  CentralArrangement empty;
  empty.nvars = 3;
  DerivationSpace d0 = derivation_space(empty, {}, 0);
  CHECK(d0.dim == 3);
}

TEST_CASE("braid arrangement exponents (1,2)") {
  CentralArrangement a2 = lines({{1, 0}, {0, 1}, {1, 1}});
  FreenessResult r = is_free_dense(a2);
  REQUIRE(r.free());
  CHECK(r.exponents == std::vector<int>{1, 2});
  CHECK(r.cert.valid);
  auto [e1, e2] = rank2_multi_exponents(a2, {1, 1, 1});
  CHECK(e1 == 1);
  CHECK(e2 == 2);
}

TEST_CASE("rank-2 multiarrangement exponents and the 2k shift") {
  RootSystem a2 = build("A2");
  CentralArrangement arr = weyl_central(a2);
  auto base = rank2_multi_exponents(arr, {1, 1, 1});
  CHECK(base == std::pair<int, int>(1, 2));
  CHECK(rank2_multi_exponents(arr, {0, 0, 0}) == std::pair<int, int>(0, 0));
  // m = 3 on every line: exponents shift by h = 3 each
  auto shifted = rank2_multi_exponents(arr, {3, 3, 3});
  CHECK(shifted == std::pair<int, int>(4, 5));
  RootSystem b2 = build("B2");
  CentralArrangement arrb = weyl_central(b2);
  auto b = rank2_multi_exponents(arrb, {1, 1, 1, 1});
  auto bs = rank2_multi_exponents(arrb, {3, 3, 3, 3});
  CHECK(bs.first == b.first + 4);
  CHECK(bs.second == b.second + 4);
}

TEST_CASE("Weyl arrangements are free with the classical exponents") {
  CHECK(is_free_dense(weyl_central(build("A2"))).exponents == std::vector<int>{1, 2});
  CHECK(is_free_dense(weyl_central(build("B2"))).exponents == std::vector<int>{1, 3});
  CHECK(is_free_dense(weyl_central(build("G2"))).exponents == std::vector<int>{1, 5});
  CHECK(is_free_dense(weyl_central(build("A3"))).exponents == std::vector<int>{1, 2, 3});
  CHECK(is_free_dense(weyl_central(build("B3"))).exponents == std::vector<int>{1, 3, 5});
}

TEST_CASE("extended Shi and Catalan cones of A2") {
  RootSystem rs = build("A2");
  FreenessResult shi = is_free_shi_cone(rs, 1, {});
  REQUIRE(shi.free());
  CHECK(shi.exponents == std::vector<int>{1, 3, 3});
  FreenessResult cat = is_free_shi_cone(rs, 1, full_positive_set(rs));
  REQUIRE(cat.free());
  CHECK(cat.exponents == std::vector<int>{1, 4, 5});
  FreenessResult shi2 = is_free_shi_cone(rs, 2, {});
  REQUIRE(shi2.free());
  CHECK(shi2.exponents == std::vector<int>{1, 6, 6});
}

TEST_CASE("G2 cone with a non-simple singleton is not free") {
  RootSystem rs = build("G2");
  std::vector<int> sigma = subset_from_roots(rs, {Root{{1, 1}}});
  FreenessResult r = is_free_shi_cone(rs, 1, sigma);
  CHECK(r.verdict == FreenessResult::Verdict::NotFree);
  // simple-root singleton stays free
  std::vector<int> simple = subset_from_roots(rs, {Root{{1, 0}}});
  CHECK(is_free_shi_cone(rs, 1, simple).free());
}

TEST_CASE("Shi-freeness report cross-checks the characterization predicate") {
  RootSystem rs = build("A2");
  SubsetAnalyzer an(rs);
  std::vector<int> bad = subset_from_roots(rs, {Root{{1, 1}}});
  ShiFreeReport rep = is_shi_free(an, bad);
  CHECK(!rep.shi_free);
  CHECK(!rep.predicate);
  CHECK(rep.agree);
  ShiFreeReport good = is_shi_free(an, subset_from_roots(rs, {Root{{1, 0}}, Root{{1, 1}}}));
  CHECK(good.shi_free);
  CHECK(good.predicate);
  CHECK(good.agree);
}

TEST_CASE("exponent duality for the full positive system of A2 at k=1") {
  RootSystem rs = build("A2");
  DualityReport rep = exponent_duality_check(rs, full_positive_set(rs), 1);
  REQUIRE(rep.holds);
  CHECK(rep.plus_exponents == std::vector<int>{1, 4, 5});
  CHECK(rep.minus_exponents == std::vector<int>{1, 1, 2});
  DualityReport empty_rep = exponent_duality_check(rs, {}, 1);
  REQUIRE(empty_rep.holds);
  CHECK(empty_rep.plus_exponents == std::vector<int>{1, 3, 3});
  CHECK(empty_rep.minus_exponents == std::vector<int>{1, 3, 3});
}

TEST_CASE("B3 extended Shi and Catalan cones") {
  RootSystem rs = build("B3");
  FreenessResult shi = is_free_shi_cone(rs, 1, {});
  REQUIRE(shi.free());
  CHECK(shi.exponents == std::vector<int>{1, 6, 6, 6});
  FreenessResult cat = is_free_shi_cone(rs, 1, full_positive_set(rs));
  REQUIRE(cat.free());
  CHECK(cat.exponents == std::vector<int>{1, 7, 9, 11});
}

TEST_CASE("subset arrangement freeness pads with zero exponents") {
  RootSystem rs = build("A3");
  FreenessResult r = is_free_subset(rs, subset_from_roots(rs, {Root{{1, 0, 0}}}));
  REQUIRE(r.free());
  CHECK(r.exponents == std::vector<int>{0, 0, 1});
}

TEST_CASE("full membership check of a core-built basis") {
  RootSystem rs = build("B2");
  std::vector<int> sigma = subset_from_roots(rs, {Root{{1, 0}}, Root{{1, 1}}});
  FreenessResult r = is_free_shi_cone(rs, 1, sigma);
  REQUIRE(r.free());
  CentralArrangement cone = shi_cone(rs, 1, sigma);
  for (const Derivation& d : r.basis) CHECK(in_derivation_module(cone, d));
  SaitoCertificate full_cert = certify_saito(cone, r.basis, true);
  CHECK(full_cert.valid);
}

TEST_CASE("Ziegler restriction of a Shi cone carries multiplicity 2k+chi_Sigma") {
  RootSystem rs = build("B2");
  std::vector<int> sigma = subset_from_roots(rs, {Root{{0, 1}}});
  CentralArrangement cone = shi_cone(rs, 1, sigma);
  auto [restr, mult] = ziegler_restriction_infinity(cone);
  CHECK(restr.nvars == 2);
  CHECK(restr.size() == 4);
  long total = 0;
  for (int m : mult) total += m;
  CHECK(total == 2 * 4 + 1);
}

TEST_CASE("rank-3 freeness criterion: Ziegler exponents against the Saito verdict") {
  // a rank-3 cone is free exactly when its characteristic polynomial factors
  // through the exponents of the rank-2 Ziegler restriction
  for (const std::string& name : std::vector<std::string>{"A2", "B2", "G2"}) {
    RootSystem rs = build(name);
    size_t n = rs.num_positive();
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> sigma;
      for (size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) sigma.push_back(static_cast<int>(i));
      CentralArrangement cone = shi_cone(rs, 1, sigma);
      auto [restr, mult] = ziegler_restriction_infinity(cone);
      auto [e1, e2] = rank2_multi_exponents(restr, mult);
      auto roots = integer_roots(char_poly_central(cone));
      std::vector<int> expect = {1, e1, e2};
      std::sort(expect.begin(), expect.end());
      bool criterion = roots.has_value() && *roots == expect;
      INFO(name, " mask ", mask);
      CHECK(criterion == is_free_shi_cone(rs, 1, sigma).free());
    }
  }
}

TEST_CASE("exact Shi-cone checking refuses rank-4 systems") {
  RootSystem rs = build("D4");
  CHECK_THROWS_AS(is_free_shi_cone(rs, 1, {}), std::invalid_argument);
  // the predicate-level report still works
  SubsetAnalyzer an(rs);
  ShiFreeReport rep = is_shi_free(an, {});
  CHECK(!rep.saito_checked);
  CHECK(rep.predicate);  // the empty subset is Shi-free
}

TEST_CASE("modular mode is labeled and agrees on an easy case") {
  RootSystem rs = build("A2");
  FreenessResult r = is_free_shi_cone(rs, 1, {}, ShiSign::Plus, true);
  CHECK(r.modular_only);
  CHECK(r.free());
  CHECK(r.exponents == std::vector<int>{1, 3, 3});
}
