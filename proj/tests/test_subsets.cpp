#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shicat/subsets.hpp"

using namespace shicat;

namespace {
std::vector<int> mask_to_subset(uint32_t mask, size_t n) {
  std::vector<int> s;
  for (size_t i = 0; i < n; ++i)
    if (mask & (1u << i)) s.push_back(static_cast<int>(i));
  return s;
}
}  // namespace

TEST_CASE("ideals") {
  RootSystem rs = build("A2");
  SubsetAnalyzer an(rs);
  CHECK(an.is_ideal({}));
  CHECK(an.is_ideal(full_positive_set(rs)));
  std::string w;
  CHECK(!an.is_ideal(subset_from_roots(rs, {Root{{1, 1}}}), &w));
  CHECK(!w.empty());

  RootSystem g2 = build("G2");
  SubsetAnalyzer ang(g2);
  CHECK(ang.is_ideal(subset_from_roots(g2, {Root{{1, 0}}, Root{{0, 1}}, Root{{1, 1}}})));
  CHECK(!ang.is_ideal(subset_from_roots(g2, {Root{{1, 1}}})));
}

TEST_CASE("coclosed versus negatively coclosed in B2") {
  RootSystem rs = build("B2");
  SubsetAnalyzer an(rs);
  std::vector<int> s = subset_from_roots(rs, {Root{{2, 1}}, Root{{0, 1}}});
  CHECK(!an.is_coclosed(s));  // 2a1+a2 = a1 + (a1+a2) with neither present
  CHECK(an.is_neg_coclosed(s));  // those two parts are orthogonal
  CHECK(an.is_coclosed({}));
  // census: exactly one subset is negatively coclosed but not coclosed
  int count = 0;
  std::vector<int> unique_witness;
  for (uint32_t m = 0; m < 16; ++m) {
    auto sub = mask_to_subset(m, 4);
    if (an.is_neg_coclosed(sub) && !an.is_coclosed(sub)) {
      ++count;
      unique_witness = sub;
    }
  }
  CHECK(count == 1);
  CHECK(unique_witness == s);
}

TEST_CASE("every ideal is coclosed (exhaustive small systems)") {
  for (const std::string& name : std::vector<std::string>{"A2", "B2", "G2", "A3"}) {
    RootSystem rs = build(name);
    SubsetAnalyzer an(rs);
    size_t n = rs.num_positive();
    for (uint32_t m = 0; m < (1u << n); ++m) {
      auto sub = mask_to_subset(m, n);
      if (an.is_ideal(sub)) CHECK(an.is_coclosed(sub));
    }
  }
}

TEST_CASE("F4 worked example") {
  RootSystem rs = build("F4");
  SubsetAnalyzer an(rs);
  std::vector<int> s1 = subset_from_roots(rs, {Root{{0, 1, 0, 0}}, Root{{0, 1, 2, 0}}});
  std::vector<int> s2 = subset_from_roots(
      rs, {Root{{0, 1, 0, 0}}, Root{{0, 1, 2, 0}}, Root{{1, 1, 1, 1}}});
  CHECK(an.is_neg_coclosed(s1));
  CHECK(an.is_compatible(s1));
  std::string w;
  CHECK(!an.is_neg_coclosed(s2, &w));
  CHECK(!an.is_compatible(s2));
  CHECK(w.find("negative inner product") != std::string::npos);
  // the decomposition through (a1+a2) + (a3+a4) is among the violations, with
  // a negative inner product between its parts
  int top = rs.index_of(Root{{1, 1, 1, 1}});
  int left = rs.index_of(Root{{1, 1, 0, 0}});
  int right = rs.index_of(Root{{0, 0, 1, 1}});
  bool found = false;
  for (const Decomposition& d : an.violations(s2, true)) {
    if (d.alpha != top) continue;
    int lo = std::min(d.beta1, d.beta2), hi = std::max(d.beta1, d.beta2);
    if (lo == std::min(left, right) && hi == std::max(left, right) && d.d1 == 1 && d.d2 == 1) {
      CHECK(d.negative_inner);
      found = true;
    }
  }
  CHECK(found);
  CHECK(rs.inner(Root{{1, 1, 0, 0}}, Root{{0, 0, 1, 1}}) < 0);
}

TEST_CASE("compatibility in A2 and B2 is exactly 2-local simplicity") {
  for (const std::string& name : std::vector<std::string>{"A2", "B2"}) {
    RootSystem rs = build(name);
    SubsetAnalyzer an(rs);
    size_t n = rs.num_positive();
    for (uint32_t m = 0; m < (1u << n); ++m) {
      auto sub = mask_to_subset(m, n);
      CHECK(an.is_compatible(sub) == an.is_2loc_simple(sub));
      CHECK(an.is_compatible(sub) == an.is_neg_coclosed(sub));
      CHECK(an.is_compatible(sub) == an.is_2loc_compatible(sub));
    }
  }
}

TEST_CASE("A3: negative coclosedness equals 2-local compatibility on all 64 subsets") {
  RootSystem rs = build("A3");
  SubsetAnalyzer an(rs);
  for (uint32_t m = 0; m < 64; ++m) {
    auto sub = mask_to_subset(m, 6);
    CHECK(an.is_neg_coclosed(sub) == an.is_2loc_compatible(sub));
    CHECK(an.is_coclosed(sub) == an.is_neg_coclosed(sub));  // simply laced
  }
}

TEST_CASE("G2 exception tables") {
  RootSystem rs = build("G2");
  SubsetAnalyzer an(rs);
  // the seven compatible-but-not-NC subsets
  CHECK(an.g2_compat_exceptions().size() == 7);
  for (const auto& s : an.g2_compat_exceptions()) {
    CHECK(an.is_compatible(s));
    CHECK(!an.is_neg_coclosed(s));
  }
  int census = 0;
  for (uint32_t m = 0; m < 64; ++m) {
    auto sub = mask_to_subset(m, 6);
    if (an.is_compatible(sub) && !an.is_neg_coclosed(sub)) ++census;
  }
  CHECK(census == 7);

  auto shi_exc = an.g2_shi_exceptions();
  CHECK(shi_exc.size() == 4);
  std::vector<int> smallest = subset_from_roots(rs, {Root{{1, 0}}, Root{{3, 2}}});
  CHECK(shi_exc.front() == smallest);
  for (const auto& s : shi_exc) {
    CHECK(an.is_2loc_simple(s));
    CHECK(!an.is_compatible(s));
  }
}

TEST_CASE("specific G2 subsets from the rank-2 analysis") {
  RootSystem rs = build("G2");
  SubsetAnalyzer an(rs);
  CHECK(an.is_2loc_simple(subset_from_roots(rs, {Root{{1, 0}}, Root{{3, 2}}})));
  CHECK(an.is_compatible(subset_from_roots(rs, {Root{{0, 1}}, Root{{2, 1}}})));
  CHECK(!an.is_2loc_compatible(subset_from_roots(rs, {Root{{1, 1}}, Root{{2, 1}}})));
  CHECK(an.is_compatible(subset_from_roots(rs, {Root{{0, 1}}, Root{{3, 2}}})));
  CHECK(!an.is_neg_coclosed(subset_from_roots(rs, {Root{{0, 1}}, Root{{3, 2}}})));
}

TEST_CASE("property chain holds exhaustively on small systems") {
  for (const std::string& name : std::vector<std::string>{"A2", "B2", "G2", "A3", "B3", "C3"}) {
    RootSystem rs = build(name);
    SubsetAnalyzer an(rs);
    size_t n = rs.num_positive();
    bool all_consistent = true;
    for (uint32_t m = 0; m < (1u << n); ++m) {
      PropertyReport rep = an.classify(mask_to_subset(m, n));
      all_consistent = all_consistent && rep.chain_consistent();
    }
    INFO(name);
    CHECK(all_consistent);
  }
}

TEST_CASE("property chain holds on random rank-4 subsets") {
  Rng rng(20240811);
  for (const std::string& name : std::vector<std::string>{"A4", "B4", "C4", "D4", "F4"}) {
    RootSystem rs = build(name);
    SubsetAnalyzer an(rs);
    size_t n = rs.num_positive();
    bool all_consistent = true;
    for (int trial = 0; trial < 10000; ++trial) {
      std::vector<int> sub;
      for (size_t i = 0; i < n; ++i)
        if (rng.next() & 1) sub.push_back(static_cast<int>(i));
      PropertyReport rep = an.classify(sub);
      all_consistent = all_consistent && rep.chain_consistent();
    }
    INFO(name);
    CHECK(all_consistent);
  }
}

TEST_CASE("simply-laced collapse: coclosed equals negatively coclosed") {
  Rng rng(7);
  for (const std::string& name : std::vector<std::string>{"A4", "D4"}) {
    RootSystem rs = build(name);
    SubsetAnalyzer an(rs);
    size_t n = rs.num_positive();
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<int> sub;
      for (size_t i = 0; i < n; ++i)
        if (rng.next() & 1) sub.push_back(static_cast<int>(i));
      CHECK(an.is_coclosed(sub) == an.is_neg_coclosed(sub));
    }
  }
}
