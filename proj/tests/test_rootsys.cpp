#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shicat/rootsys.hpp"

using namespace shicat;

TEST_CASE("A2 construction") {
  RootSystem rs = build("A2");
  CHECK(rs.num_positive() == 3);
  CHECK(rs.highest_root.coeffs == std::vector<int>{1, 1});
  CHECK(rs.coxeter_number == 3);
  CHECK(rs.index_of_connection == 3);
  CHECK(rs.weyl_order == 6);
  CHECK(rs.inner(rs.simple(0), rs.simple(1)) < 0);
}

TEST_CASE("G2 construction") {
  RootSystem rs = build("G2");
  CHECK(rs.num_positive() == 6);
  CHECK(rs.highest_root.coeffs == std::vector<int>{3, 2});
  CHECK(rs.coxeter_number == 6);
  CHECK(rs.index_of_connection == 1);
  CHECK(rs.highest_root.height() == 5);
  // alpha_2 is the long simple root
  CHECK(rs.inner(rs.simple(1), rs.simple(1)) == 6);
  CHECK(rs.inner(rs.simple(0), rs.simple(0)) == 2);
}

TEST_CASE("B2 follows the short-first convention") {
  RootSystem rs = build("B2");
  CHECK(rs.num_positive() == 4);
  CHECK(rs.is_root({2, 1}));
  CHECK(!rs.is_root({1, 2}));
  // alpha_1 and alpha_1 + alpha_2 are orthogonal
  CHECK(rs.inner(rs.simple(0), Root{{1, 1}}) == 0);
  CHECK(rs.index_of_connection == 2);
}

TEST_CASE("F4 contains the sum of all simple roots") {
  RootSystem rs = build("F4");
  CHECK(rs.num_positive() == 24);
  CHECK(rs.is_positive_root(Root{{1, 1, 1, 1}}));
  CHECK(rs.coxeter_number == 12);
  CHECK(rs.weyl_order == 1152);
  // worked inner product: (a1+a2, a3+a4) = (a2, a3) < 0
  Root x{{1, 1, 0, 0}}, y{{0, 0, 1, 1}};
  CHECK(rs.inner(x, y) == rs.inner(rs.simple(1), rs.simple(2)));
  CHECK(rs.inner(x, y) < 0);
  CHECK(rs.is_positive_root(Root{{0, 1, 2, 0}}));
}

TEST_CASE("index of connection matches the classification table") {
  auto f = [](const std::string& s) { return build(s).index_of_connection; };
  CHECK(f("A1") == 2);
  CHECK(f("A4") == 5);
  CHECK(f("A7") == 8);
  CHECK(f("B3") == 2);
  CHECK(f("B5") == 2);
  CHECK(f("C4") == 2);
  CHECK(f("D4") == 4);
  CHECK(f("D6") == 4);
  CHECK(f("E6") == 3);
  CHECK(f("E7") == 2);
  CHECK(f("E8") == 1);
  CHECK(f("F4") == 1);
  CHECK(f("G2") == 1);
}

TEST_CASE("positive root count, poset covers, reflection closure") {
  std::vector<std::string> names = {"A2", "A3", "A4", "B2", "B3", "B4",
                                    "C3", "C4", "D4", "G2", "F4", "E6"};
  for (const std::string& name : names) {
    RootSystem rs = build(name);
    INFO(name);
    CHECK(2 * rs.num_positive() == static_cast<size_t>(rs.rank) * rs.coxeter_number);
    // highest root dominates everything
    for (const Root& r : rs.positive_roots) CHECK(RootSystem::poset_leq(r, rs.highest_root));
    // every non-simple positive root covers one
    for (const Root& r : rs.positive_roots) {
      if (r.height() == 1) continue;
      bool covers = false;
      for (int i = 0; i < rs.rank && !covers; ++i)
        if (rs.is_positive_root(r - rs.simple(i))) covers = true;
      CHECK(covers);
    }
    // reflection closure
    for (const Root& r : rs.positive_roots)
      for (int i = 0; i < rs.rank; ++i) {
        Root img = rs.reflect(i, r);
        CHECK(rs.is_root(img.coeffs));
      }
    // marks are positive
    for (int c : rs.marks) CHECK(c > 0);
    // gram symmetric
    for (int i = 0; i < rs.rank; ++i)
      for (int j = 0; j < rs.rank; ++j) CHECK(rs.gram[i][j] == rs.gram[j][i]);
  }
}

TEST_CASE("poset comparisons and heights") {
  RootSystem rs = build("A2");
  CHECK(RootSystem::poset_leq(rs.simple(0), Root{{1, 1}}));
  CHECK(!RootSystem::poset_leq(Root{{1, 1}}, rs.simple(0)));
  RootSystem g2 = build("G2");
  CHECK(Root{{3, 2}}.height() == 5);
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS(build("E5"));
  CHECK_THROWS(build("F3"));
  CHECK_THROWS(build("G3"));
  CHECK_THROWS(build("D2"));
  CHECK_THROWS(build("B1"));
  CHECK_THROWS(build("A9"));
}

TEST_CASE("root parse and print round-trip") {
  Root r = Root::parse("[3,2]");
  CHECK(r.coeffs == std::vector<int>{3, 2});
  CHECK(r.str() == "[3,2]");
}
