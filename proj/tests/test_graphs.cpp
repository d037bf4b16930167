#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shicat/graphs.hpp"

using namespace shicat;

TEST_CASE("edge parsing and masks") {
  SimpleGraph g = SimpleGraph::parse(3, "1-2,2-3");
  CHECK(g.edges.size() == 2);
  CHECK(g.has_edge(2, 1));
  CHECK(!g.has_edge(1, 3));
  CHECK_THROWS(SimpleGraph::parse(3, "1-1"));
  CHECK_THROWS(SimpleGraph::parse(3, "1-4"));
}

TEST_CASE("sigma of labeled paths and triangles") {
  RootSystem rs = build("A2");
  SimpleGraph path = SimpleGraph::parse(3, "1-2,2-3");
  auto s = sigma_of(rs, path, identity_labeling(3));
  REQUIRE(s.size() == 2);
  CHECK(rs.positive_roots[s[0]].height() == 1);
  CHECK(rs.positive_roots[s[1]].height() == 1);

  SimpleGraph tri = SimpleGraph::parse(3, "1-2,2-3,1-3");
  CHECK(sigma_of(rs, tri, identity_labeling(3)) == full_positive_set(rs));

  // path relabeled 1-3-2: edges {1,3} and {2,3} give {a1+a2, a2}
  auto relabeled = sigma_of(rs, path, {1, 3, 2});
  std::vector<Root> expect = {Root{{0, 1}}, Root{{1, 1}}};
  CHECK(relabeled == subset_from_roots(rs, expect));
}

TEST_CASE("interval orderability") {
  CHECK(has_interval_ordering(SimpleGraph::parse(4, "1-2,2-3,3-4")));
  CHECK(has_interval_ordering(SimpleGraph::parse(4, "1-2,1-3,1-4,2-3,2-4,3-4")));
  CHECK(has_interval_ordering(SimpleGraph::from_edge_mask(4, 0)));
  // the 4-cycle is the smallest failure here
  CHECK(!has_interval_ordering(SimpleGraph::parse(4, "1-2,2-3,3-4,1-4")));
  // disjoint unions of paths stay interval
  CHECK(has_interval_ordering(SimpleGraph::parse(5, "1-2,3-4,4-5")));
  CHECK_THROWS(has_interval_ordering(SimpleGraph::from_edge_mask(11, 0)));
}

TEST_CASE("chordality agrees with graphic arrangement freeness") {
  RootSystem rs = build("A3");
  for (uint64_t mask = 0; mask < 64; ++mask) {
    SimpleGraph g = SimpleGraph::from_edge_mask(4, mask);
    bool free = is_free_subset(rs, sigma_of(rs, g, identity_labeling(4))).free();
    CHECK(free == is_chordal(g));
  }
}

TEST_CASE("three-way equivalence for 3 and 4 vertices") {
  CorollaryReport r3 = verify_interval_corollary(3);
  CHECK(r3.graphs_checked == 8);
  CHECK(r3.interval_count == 8);
  CHECK(r3.equivalence_holds);

  CorollaryReport r4 = verify_interval_corollary(4);
  CHECK(r4.graphs_checked == 64);
  CHECK(r4.equivalence_holds);
  // exactly the 3 labeled 4-cycles fail intervality
  CHECK(r4.interval_count == 61);
}
