#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shicat/weyl.hpp"
#include "shicat/subsets.hpp"

using namespace shicat;

TEST_CASE("group orders") {
  CHECK(WeylGroup(build("A2")).size() == 6);
  CHECK(WeylGroup(build("G2")).size() == 12);
  CHECK(WeylGroup(build("B3")).size() == 48);
  CHECK(WeylGroup(build("F4")).size() == 1152);
}

TEST_CASE("enumeration guard") {
  CHECK_THROWS(WeylGroup(build("B8")));  // 2^8 8! > 10^6
}

TEST_CASE("identity descent counts only the affine node") {
  RootSystem rs = build("B2");
  WeylGroup W(rs);
  // w = identity is element 0 by construction
  std::vector<int> empty_sigma;
  CHECK(W.descent(0, empty_sigma) == 1);  // alpha_0 maps to -highest, c_0 = 1
  CHECK(W.descent(0, full_positive_set(rs)) == 0);
}

TEST_CASE("worked Eulerian polynomials in A2") {
  RootSystem rs = build("A2");
  WeylGroup W(rs);
  // coefficients ascending: E(t) indexed 0..h
  CHECK(W.eulerian_polynomial({}) == std::vector<long long>{0, 1, 1, 0});
  std::vector<int> s1 = subset_from_roots(rs, {Root{{1, 0}}, Root{{1, 1}}});
  CHECK(W.eulerian_polynomial(s1) == std::vector<long long>{0, 0, 1, 1});
  std::vector<int> s2 = subset_from_roots(rs, {Root{{1, 1}}});
  CHECK(W.eulerian_polynomial(s2) == std::vector<long long>{0, 1, 0, 1});
}

TEST_CASE("coefficient sums equal |W|/f") {
  for (const std::string& name : std::vector<std::string>{"A2", "B2", "G2", "A3", "B3"}) {
    RootSystem rs = build(name);
    WeylGroup W(rs);
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> sigma;
      for (size_t i = 0; i < rs.num_positive(); ++i)
        if (rng.next() & 1) sigma.push_back(static_cast<int>(i));
      auto e = W.eulerian_polynomial(sigma);
      long long total = 0;
      for (long long c : e) {
        CHECK(c >= 0);
        total += c;
      }
      CHECK(total == rs.weyl_order / rs.index_of_connection);
    }
  }
}

TEST_CASE("full positive set in G2 sums to 12") {
  RootSystem rs = build("G2");
  WeylGroup W(rs);
  auto e = W.eulerian_polynomial(full_positive_set(rs));
  long long total = 0;
  for (long long c : e) total += c;
  CHECK(total == 12);
}
