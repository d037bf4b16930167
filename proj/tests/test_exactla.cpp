#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shicat/exactla.hpp"
#include "shicat/hompoly.hpp"

#include <random>

using namespace shicat;

TEST_CASE("monomial basis ranks invert enumeration") {
  for (int n = 1; n <= 4; ++n)
    for (int d = 0; d <= 6; ++d) {
      const auto& mb = detail::monomials(n, d);
      CHECK(mb.size() == monomial_count(n, d));
      for (long i = 0; i < mb.size(); ++i) CHECK(mb.rank(mb.exps[i]) == i);
    }
}

TEST_CASE("polynomial product matches evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3;
    HomPoly a(n, 2), b(n, 3);
    for (auto& c : a.c) c = static_cast<long>(rng() % 11) - 5;
    for (auto& c : b.c) c = static_cast<long>(rng() % 11) - 5;
    HomPoly p = a * b;
    std::vector<Int> pt = {Int(static_cast<long>(rng() % 7) - 3), Int(static_cast<long>(rng() % 7) - 3),
                           Int(static_cast<long>(rng() % 7) - 3)};
    CHECK(p.evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
  }
}

TEST_CASE("linear reduction is zero exactly on multiples") {
  std::vector<Int> form = {Int(2), Int(-3), Int(1)};
  LinearReducer red(form);
  HomPoly lin = HomPoly::linear(form);
  HomPoly q(3, 2);
  q.c[0] = 1;
  q.c[2] = -4;
  q.c[4] = 7;
  HomPoly multiple = lin * q;
  CHECK(red.reduce(multiple).is_zero());
  HomPoly not_multiple = multiple;
  not_multiple.c[1] += 1;
  CHECK(!red.reduce(not_multiple).is_zero());
}

TEST_CASE("reduction is multiplicative") {
  std::vector<Int> form = {Int(1), Int(2), Int(-1)};
  LinearReducer red(form);
  std::mt19937_64 rng(11);
  HomPoly a(3, 2), b(3, 2);
  for (auto& c : a.c) c = static_cast<long>(rng() % 9) - 4;
  for (auto& c : b.c) c = static_cast<long>(rng() % 9) - 4;
  HomPoly lhs = red.reduce(a * b);
  HomPoly rhs = red.reduce(a) * red.reduce(b);
  rhs -= lhs;
  CHECK(rhs.is_zero());
}

TEST_CASE("modular kernel agrees with exact elimination on random systems") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    long rows = 4 + rng() % 4, cols = 5 + rng() % 5;
    IntMat m(rows, std::vector<Int>(cols));
    for (auto& row : m)
      for (auto& x : row) x = static_cast<long>(rng() % 15) - 7;
    ExactKernel k = kernel_exact(m);
    auto ref = kernel_exact_mpq(m);
    CHECK(k.dim == static_cast<long>(ref.size()));
    for (const auto& v : k.basis) CHECK(verify_in_kernel(m, v));
  }
}

TEST_CASE("rational reconstruction round-trips small fractions") {
  Int p("2305843009213693951");
  for (long num = -20; num <= 20; ++num)
    for (long den = 1; den <= 17; ++den) {
      if (std::gcd(num < 0 ? -num : num, den) != 1) continue;
      // residue = num * den^{-1} mod p
      Int dinv;
      Int d(den);
      mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
      Int r = (Int(num) % p + p) * dinv % p;
      auto rec = modp::rational_reconstruct(r, p);
      REQUIRE(rec.has_value());
      CHECK(*rec == make_rat(num, den));
    }
}

TEST_CASE("integer determinant and rank") {
  IntMat m = {{Int(2), Int(0), Int(1)}, {Int(1), Int(1), Int(0)}, {Int(0), Int(3), Int(-1)}};
  CHECK(det_int(m) == Int(1));
  CHECK(rank_int(m) == 3);
  IntMat m2 = {{Int(3), Int(7)}, {Int(2), Int(5)}};
  CHECK(det_int(m2) == Int(1));
  IntMat m3 = {{Int(0), Int(2)}, {Int(5), Int(0)}};
  CHECK(det_int(m3) == Int(-10));
  IntMat sing = {{Int(1), Int(2)}, {Int(2), Int(4)}};
  CHECK(det_int(sing) == 0);
  CHECK(rank_int(sing) == 1);
}
