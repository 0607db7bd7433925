#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "ncfa/errors.hpp"
#include "ncfa/group.hpp"

using namespace ncfa;

namespace {

// Independent closure oracle: repeatedly multiply until no new elements.
std::set<int> closure_oracle(const FiniteGroup& g, std::set<int> seed) {
  seed.insert(g.identity());
  for (;;) {
    std::set<int> next = seed;
    for (int a : seed)
      for (int b : seed) next.insert(g.mul(a, b));
    if (next == seed) return seed;
    seed = std::move(next);
  }
}

int involution_count(const FiniteGroup& g) {
  int count = 0;
  for (int x = 0; x < g.order(); ++x)
    if (x != g.identity() && g.mul(x, x) == g.identity()) ++count;
  return count;
}

}  // namespace

TEST_CASE("cyclic groups") {
  const FiniteGroup c1 = make_cyclic(1);
  CHECK(c1.order() == 1);
  CHECK(c1.mul(0, 0) == 0);

  const FiniteGroup c2 = make_cyclic(2);
  CHECK(c2.mul(0, 0) == 0);
  CHECK(c2.mul(0, 1) == 1);
  CHECK(c2.mul(1, 0) == 1);
  CHECK(c2.mul(1, 1) == 0);

  const FiniteGroup c4 = make_cyclic(4);
  CHECK(c4.inverse(1) == 3);
  CHECK(c4.is_abelian());

  CHECK_THROWS_AS(make_cyclic(0), InvalidArgument);
}

TEST_CASE("dihedral groups") {
  const FiniteGroup d3 = make_dihedral(3);
  CHECK(d3.order() == 6);
  CHECK_FALSE(d3.is_abelian());

  // D1 has the same table as C2.
  const FiniteGroup d1 = make_dihedral(1);
  const FiniteGroup c2 = make_cyclic(2);
  REQUIRE(d1.order() == 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(d1.mul(x, y) == c2.mul(x, y));

  // Reflections are involutions: (s r)^2 = e in D4.
  const FiniteGroup d4 = make_dihedral(4);
  const int sr = 1 * 4 + 1;  // index of s r
  CHECK(d4.mul(sr, sr) == d4.identity());
  for (int k = 0; k < 4; ++k) CHECK(d4.mul(4 + k, 4 + k) == d4.identity());

  CHECK_THROWS_AS(make_dihedral(0), InvalidArgument);
}

TEST_CASE("symmetric groups") {
  CHECK(make_symmetric(3).order() == 6);
  CHECK(make_symmetric(1).order() == 1);

  // Order-2 elements of S4, counted by brute force over the table.
  const FiniteGroup s4 = make_symmetric(4);
  CHECK(s4.order() == 24);
  CHECK(involution_count(s4) == 9);

  CHECK_THROWS_AS(make_symmetric(0), InvalidArgument);
  CHECK_THROWS_AS(make_symmetric(8), InvalidArgument);
}

TEST_CASE("permutation ranking matches lexicographic element order") {
  const int n = 4;
  for (int r = 0; r < 24; ++r) {
    const std::vector<int> p = perm_unrank(n, r);
    CHECK(perm_rank(p) == r);
  }
  // index 0 is the identity permutation
  const std::vector<int> id = perm_unrank(n, 0);
  for (int i = 0; i < n; ++i) CHECK(id[i] == i);
}

TEST_CASE("direct products") {
  const FiniteGroup c2xc2 = direct_product(make_cyclic(2), make_cyclic(2));
  CHECK(c2xc2.order() == 4);
  CHECK(involution_count(c2xc2) == 3);

  const FiniteGroup s3 = make_symmetric(3);
  const FiniteGroup c1xs3 = direct_product(make_cyclic(1), s3);
  REQUIRE(c1xs3.order() == 6);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) CHECK(c1xs3.mul(x, y) == s3.mul(x, y));

  const FiniteGroup c2xs3 = direct_product(make_cyclic(2), s3);
  CHECK(c2xs3.order() == 12);
  CHECK_FALSE(c2xs3.is_abelian());
  CHECK(c2xs3.label() == "C2xS3");
}

TEST_CASE("subgroup closure") {
  const FiniteGroup s3 = make_symmetric(3);
  const int t12 = perm_rank(std::vector<int>{1, 0, 2});  // transposition (12)
  const Subgroup h = subgroup_from_generators(s3, {t12});
  CHECK(h.size() == 2);

  const FiniteGroup c6 = make_cyclic(6);
  const Subgroup even = subgroup_from_generators(c6, {2});
  CHECK(even.members == std::vector<int>{0, 2, 4});

  // A3 from a 3-cycle, cross-checked against an independent closure oracle.
  const int cyc = perm_rank(std::vector<int>{1, 2, 0});
  const Subgroup a3 = subgroup_from_generators(s3, {cyc});
  const std::set<int> oracle = closure_oracle(s3, {cyc});
  CHECK(a3.size() == 3);
  CHECK(std::set<int>(a3.members.begin(), a3.members.end()) == oracle);
}

TEST_CASE("subgroup enumeration") {
  CHECK(all_subgroups(make_cyclic(4)).size() == 3);
  CHECK(all_subgroups(make_cyclic(1)).size() == 1);

  const FiniteGroup s3 = make_symmetric(3);
  const std::vector<Subgroup> subs = all_subgroups(s3);
  REQUIRE(subs.size() == 6);
  std::vector<int> sizes;
  for (const Subgroup& h : subs) sizes.push_back(h.size());
  CHECK(sizes == std::vector<int>{1, 2, 2, 2, 3, 6});

  // Exhaustive oracle on S3: every subset that is closed must be in the list.
  int closed_subsets = 0;
  for (int mask = 1; mask < 64; ++mask) {
    Subgroup h;
    for (int x = 0; x < 6; ++x)
      if (mask & (1 << x)) h.members.push_back(x);
    if (is_subgroup(s3, h)) ++closed_subsets;
  }
  CHECK(closed_subsets == 6);

  for (const Subgroup& h : subs) {
    CHECK(is_subgroup(s3, h));
    CHECK(6 % h.size() == 0);  // Lagrange
  }
  CHECK(subs.front().size() == 1);
  CHECK(subs.back().size() == s3.order());

  CHECK_THROWS_AS(all_subgroups(make_symmetric(5)), InvalidArgument);  // 120 > 48

  // the cap is configurable up to 64
  const FiniteGroup d28 = make_dihedral(28);
  CHECK_THROWS_AS(all_subgroups(d28), InvalidArgument);  // order 56 > default 48
  const std::vector<Subgroup> d28_subs = all_subgroups(d28, 64);
  CHECK(d28_subs.front().size() == 1);
  CHECK(d28_subs.back().size() == 56);
  for (const Subgroup& h : d28_subs) CHECK(56 % h.size() == 0);
  CHECK_THROWS_AS(all_subgroups(d28, 70), InvalidArgument);  // hard limit 64
}

TEST_CASE("normality") {
  const FiniteGroup s3 = make_symmetric(3);
  const Subgroup a3 = subgroup_from_generators(s3, {perm_rank(std::vector<int>{1, 2, 0})});
  CHECK(is_normal(s3, a3));

  const Subgroup h12 = subgroup_from_generators(s3, {perm_rank(std::vector<int>{1, 0, 2})});
  CHECK_FALSE(is_normal(s3, h12));

  const FiniteGroup c12 = make_cyclic(12);
  for (const Subgroup& h : all_subgroups(c12)) CHECK(is_normal(c12, h));

  Subgroup not_subgroup;
  not_subgroup.members = {1, 2};  // no identity, not closed
  CHECK_THROWS_AS(is_normal(s3, not_subgroup), InvalidArgument);
}

TEST_CASE("group axioms hold for every constructed family") {
  const char* specs[] = {"C1", "C5", "C12", "D1", "D4", "D6", "S3", "S4", "C2xS3", "C2xC2xC2"};
  for (const char* spec : specs) {
    CAPTURE(spec);
    const FiniteGroup g = make_group(spec);
    CHECK_NOTHROW(validate_group(g));
    const int e = g.identity();
    for (int x = 0; x < g.order(); ++x) {
      CHECK(g.mul(x, e) == x);
      CHECK(g.mul(g.inverse(x), x) == e);
    }
  }
}

TEST_CASE("group specification grammar") {
  CHECK(parse_group_spec("c2xs3").label() == "C2xS3");
  CHECK(parse_group_spec("C12").label() == "C12");
  CHECK(parse_group_spec("d4XC2").label() == "D4xC2");

  CHECK_THROWS_AS(parse_group_spec("C2 xS3"), ParseError);
  CHECK_THROWS_AS(parse_group_spec(" C2"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("Q8"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("C"), ParseError);
  CHECK_THROWS_AS(parse_group_spec("C2x"), ParseError);
  CHECK_THROWS_AS(parse_group_spec(""), ParseError);

  CHECK_THROWS_AS(make_group("C0"), InvalidArgument);
  CHECK(make_group("C2xS3").order() == 12);
}
