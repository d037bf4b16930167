#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shicat/quasipoly.hpp"
#include "shicat/subsets.hpp"

using namespace shicat;

TEST_CASE("coefficient matrices of subsets") {
  RootSystem rs = build("A2");
  IntegralArrangement full = from_subset(rs, full_positive_set(rs));
  CHECK(full.columns.size() == 3);
  IntegralArrangement single = from_subset(rs, subset_from_roots(rs, {Root{{1, 1}}}));
  REQUIRE(single.columns.size() == 1);
  CHECK(single.columns[0] == std::vector<long long>{1, 1});
  CHECK(single.b == std::vector<long long>{0});
}

TEST_CASE("Shi arrangement construction counts") {
  RootSystem rs = build("A2");
  CHECK(shi_arrangement(rs, 0, subset_from_roots(rs, {Root{{1, 0}}})).size() == 1);
  CHECK(shi_arrangement(rs, 1, {}).size() == 6);
  CHECK(shi_arrangement(rs, 1, full_positive_set(rs)).size() == 9);
  CHECK(shi_arrangement(rs, 1, full_positive_set(rs), ShiSign::Minus).size() == 3);
  CHECK(shi_arrangement(rs, 2, {}).size() == 12);
}

TEST_CASE("worked counts in A2") {
  RootSystem rs = build("A2");
  IntegralArrangement s1 = from_subset(rs, subset_from_roots(rs, {Root{{1, 0}}, Root{{1, 1}}}));
  IntegralArrangement s2 = from_subset(rs, subset_from_roots(rs, {Root{{1, 1}}}));
  IntegralArrangement s0 = from_subset(rs, {});
  for (long q = 1; q <= 50; ++q) {
    CHECK(count_complement(s0, q) == q * q);
    CHECK(count_complement(s1, q) == (q - 1) * (q - 1));
    CHECK(count_complement(s2, q) == q * (q - 1));
  }
}

TEST_CASE("histogram sweep matches direct counts") {
  RootSystem rs = build("B2");
  for (long q : {2L, 3L, 5L}) {
    auto hist = vanishing_mask_histogram(rs, q);
    for (uint32_t mask = 0; mask < 16; ++mask) {
      std::vector<int> sigma;
      for (int i = 0; i < 4; ++i)
        if (mask & (1u << i)) sigma.push_back(i);
      CHECK(count_from_histogram(hist, mask) == count_complement(from_subset(rs, sigma), q));
    }
  }
}

TEST_CASE("Ehrhart counts of the fundamental alcove") {
  RootSystem a2 = build("A2");
  for (long q = 0; q <= 20; ++q) CHECK(ehrhart_alcove(a2, q) == (q + 1) * (q + 2) / 2);
  CHECK(ehrhart_alcove(a2, -1) == 0);
  CHECK(ehrhart_alcove(a2, 0) == 1);
  RootSystem g2 = build("G2");
  // knapsack with weights (3, 2): frozen from direct enumeration
  std::vector<long long> expect = {1, 1, 2, 3, 4, 5, 7};
  for (long t = 0; t <= 6; ++t) CHECK(ehrhart_alcove(g2, t) == expect[t]);
  RootSystem b2 = build("B2");
  CHECK(ehrhart_alcove(b2, 2) == 4);
  CHECK(ehrhart_alcove(b2, 4) == 9);
}

TEST_CASE("quasi-polynomial fitting: A2 Weyl has period 1") {
  RootSystem rs = build("A2");
  IntegralArrangement arr = from_subset(rs, full_positive_set(rs));
  QuasiPolynomial qp = characteristic_quasipoly(arr);
  CHECK(qp.period == 1);
  REQUIRE(qp.constituents.size() == 1);
  CHECK(qp.constituents[0] == std::vector<Rat>{Rat(2), Rat(-3), Rat(1)});
  CHECK(qp.verified_from == 1);
}

TEST_CASE("quasi-polynomial fitting: B2 Weyl has period 2") {
  RootSystem rs = build("B2");
  IntegralArrangement arr = from_subset(rs, full_positive_set(rs));
  QuasiPolynomial qp = characteristic_quasipoly(arr, 40);
  CHECK(qp.period == 2);
  REQUIRE(qp.constituents.size() == 2);
  CHECK(qp.constituents[0] != qp.constituents[1]);
  // odd constituent is the characteristic polynomial (q-1)(q-3)
  CHECK(qp.constituents[0] == std::vector<Rat>{Rat(3), Rat(-4), Rat(1)});
  for (long q = 1; q <= 40; ++q)
    CHECK(qp.evaluate(q) == Rat(static_cast<long>(count_complement(arr, q))));
}

TEST_CASE("the 1-constituent coincides with the Moebius characteristic polynomial") {
  for (const std::string& name : std::vector<std::string>{"A2", "B2", "G2"}) {
    RootSystem rs = build(name);
    SubsetAnalyzer an(rs);
    Rng rng(5);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<int> sigma;
      for (size_t i = 0; i < rs.num_positive(); ++i)
        if (rng.next() & 1) sigma.push_back(static_cast<int>(i));
      if (sigma.empty()) continue;
      IntegralArrangement arr = from_subset(rs, sigma);
      QuasiPolynomial qp = characteristic_quasipoly(arr, 12 * (rs.rank + 3));
      std::vector<std::vector<long long>> forms;
      for (int s : sigma) {
        const Root& r = rs.positive_roots[s];
        forms.push_back({r.coeffs.begin(), r.coeffs.end()});
      }
      auto chi = char_poly_central(CentralArrangement::from_forms(rs.rank, forms));
      const auto& c1 = qp.constituents[0];
      for (size_t i = 0; i < c1.size(); ++i) CHECK(c1[i] == Rat(static_cast<long>(chi[i])));
    }
  }
}

TEST_CASE("extended Shi quasi-polynomial collapses to (q - kh)^l") {
  RootSystem rs = build("A2");
  IntegralArrangement shi = shi_arrangement(rs, 1, {});
  QuasiPolynomial qp = characteristic_quasipoly(shi, 20);
  CHECK(qp.period == 1);
  CHECK(qp.constituents[0] == std::vector<Rat>{Rat(9), Rat(-6), Rat(1)});  // (q-3)^2
  // counts agree beyond the observed threshold, which is kh here
  CHECK(qp.verified_from == 3);
  for (long q = 3; q <= 20; ++q)
    CHECK(count_complement(shi, q) == (q - 3) * (q - 3));
  // and genuinely differ below it
  CHECK(count_complement(shi, 2) == 0);
}

TEST_CASE("counting identities for the A2 example sets") {
  RootSystem rs = build("A2");
  WeylGroup W(rs);
  // compatible: identity holds
  auto rep1 = verify_identity(rs, W, subset_from_roots(rs, {Root{{1, 0}}, Root{{1, 1}}}), 50);
  CHECK(rep1.counting_identity);
  CHECK(rep1.series_identity);
  auto rep0 = verify_identity(rs, W, {}, 50);
  CHECK(rep0.counting_identity);
  CHECK(rep0.series_identity);
  // incompatible: both identities fail somewhere
  auto rep2 = verify_identity(rs, W, subset_from_roots(rs, {Root{{1, 1}}}), 50);
  CHECK(!rep2.counting_identity);
  CHECK(rep2.first_failure_q > 0);
  // corrected decomposition for the incompatible set: L(q-3) + L(q-1) - 1
  for (long q = 1; q <= 50; ++q)
    CHECK(rep2.counts[q - 1] == ehrhart_alcove(rs, q - 3) + ehrhart_alcove(rs, q - 1) - 1);
}

TEST_CASE("identity decompositions match the worked example") {
  RootSystem rs = build("A2");
  WeylGroup W(rs);
  // chi_{Sigma_1}(q) = L(q-3) + L(q-2)
  for (long q = 1; q <= 30; ++q) {
    long long lhs = (q - 1) * (q - 1);
    CHECK(lhs == ehrhart_alcove(rs, q - 3) + ehrhart_alcove(rs, q - 2));
  }
  // chi_{Sigma_0}(q) = L(q-2) + L(q-1)
  for (long q = 1; q <= 30; ++q)
    CHECK(q * q == ehrhart_alcove(rs, q - 2) + ehrhart_alcove(rs, q - 1));
}

TEST_CASE("period candidate bounds") {
  RootSystem b2 = build("B2");
  CHECK(period_candidate(from_subset(b2, full_positive_set(b2))) % 2 == 0);
  RootSystem a3 = build("A3");
  CHECK(period_candidate(from_subset(a3, full_positive_set(a3))) == 1);  // unimodular
}

TEST_CASE("counting guard rejects huge grids") {
  RootSystem rs = build("A4");
  IntegralArrangement arr = from_subset(rs, full_positive_set(rs));
  CHECK_THROWS(count_complement(arr, 100000));
}

TEST_CASE("cone characteristic polynomial of the extended Shi arrangement") {
  RootSystem rs = build("A2");
  CentralArrangement cone = cone_of(shi_arrangement(rs, 1, {}));
  CHECK(cone.size() == 7);
  // (t-1)(t-3)^2
  CHECK(char_poly_central(cone) == std::vector<long long>{-9, 15, -7, 1});
}
