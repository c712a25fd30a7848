#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <vector>

#include "forge/sem.hpp"

using namespace forge;

namespace {

// independent oracle: filter all n! permutations for consecutive distinct sums
std::vector<std::vector<int>> sn_by_filter(int n) {
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    std::vector<int> sums(n);
    for (int i = 0; i < n; ++i) sums[i] = i + 1 + pi[i];
    std::sort(sums.begin(), sums.end());
    bool ok = true;
    for (int i = 1; i < n; ++i) ok &= (sums[i] == sums[i - 1] + 1);
    if (ok) out.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

}  // namespace

TEST_CASE("is_sem_labeled") {
  auto r = is_sem_labeled(Digraph(5, {{1, 5}, {5, 2}, {2, 3}, {3, 1}, {4, 4}}));
  CHECK(r.sem);
  CHECK(r.min_sum == 4);  // sums {6,7,5,4,8}

  CHECK_FALSE(is_sem_labeled(Digraph(2, {{1, 1}, {2, 2}})).sem);  // sums {2,4}

  auto cyc = is_sem_labeled(Digraph(3, {{1, 2}, {2, 3}, {3, 1}}));
  CHECK(cyc.sem);
  CHECK(cyc.min_sum == 3);

  CHECK_THROWS_AS(is_sem_labeled(Digraph(2)), Error);  // no arcs
}

TEST_CASE("enumerate_Sn small cases") {
  auto s1 = enumerate_Sn(1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].perm() == std::vector<int>{1});

  CHECK(enumerate_Sn(2).empty());

  auto s3 = enumerate_Sn(3);
  REQUIRE(s3.size() == 2);
  CHECK(s3[0].perm() == std::vector<int>{2, 3, 1});
  CHECK(s3[1].perm() == std::vector<int>{3, 1, 2});
}

TEST_CASE("enumerate_Sn agrees with the n! filter oracle") {
  for (int n = 1; n <= 7; ++n) {
    auto fast = enumerate_Sn(n);
    auto slow = sn_by_filter(n);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i].perm() == slow[i]);
    // members are SEM, non-members are not
    for (const auto& p : fast) CHECK(is_sem_labeled(p.to_digraph()).sem);
  }
  // exhaustive negative check: non-members fail the SEM test
  for (int n = 3; n <= 7; ++n) {
    auto members = sn_by_filter(n);
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 1);
    do {
      bool in_family = std::find(members.begin(), members.end(), pi) != members.end();
      CHECK(is_sem_labeled(PermDigraph(pi).to_digraph()).sem == in_family);
    } while (std::next_permutation(pi.begin(), pi.end()));
  }
}

TEST_CASE("enumerate_RSn") {
  auto rs3 = enumerate_RSn(3);
  REQUIRE(rs3.size() == 2);
  CHECK(rs3[0].arcs == Digraph(3, {{1, 1}, {2, 3}, {3, 2}}));  // F1
  CHECK(rs3[1].arcs == Digraph(3, {{1, 2}, {2, 1}, {3, 3}}));  // F2

  auto rs1 = enumerate_RSn(1);
  REQUIRE(rs1.size() == 1);
  CHECK(rs1[0].arcs == Digraph(1, {{1, 1}}));

  for (const auto& r : enumerate_RSn(5)) {
    CHECK(r.arcs.arc_count() == 5);
    CHECK(check_difference_bijection(r));
  }
}

TEST_CASE("rotation is a bijection from Sn onto RSn") {
  for (int n : {1, 3, 5, 7}) {
    auto sn = enumerate_Sn(n);
    auto rsn = enumerate_RSn(n);
    REQUIRE(sn.size() == rsn.size());
    for (std::size_t i = 0; i < sn.size(); ++i)
      CHECK(unrotate(rsn[i].arcs) == sn[i].to_digraph());
  }
}

TEST_CASE("check_difference_bijection") {
  CHECK(check_difference_bijection(Digraph(3, {{1, 1}, {2, 3}, {3, 2}})));
  CHECK(check_difference_bijection(Digraph(5, {{1, 3}, {3, 4}, {4, 2}, {2, 1}, {5, 5}})));
  CHECK(check_difference_bijection(Digraph(1, {{1, 1}})));
  CHECK_FALSE(check_difference_bijection(Digraph(3, {{1, 1}, {2, 2}, {3, 3}})));
  CHECK_THROWS_AS(check_difference_bijection(Digraph(4, {{1, 2}})), Error);  // EvenOrder

  // difference bijection holds across the whole family for odd n
  for (int n : {3, 5, 7})
    for (const auto& r : enumerate_RSn(n)) CHECK(check_difference_bijection(r));
}

TEST_CASE("is_rotation_member matches the enumerated family") {
  for (int n : {1, 3, 5}) {
    auto family = enumerate_RSn(n);
    for (const auto& r : family) CHECK(is_rotation_member(r.arcs));
  }
  CHECK_FALSE(is_rotation_member(Digraph(3, {{1, 1}, {2, 2}, {3, 3}})));
  CHECK_FALSE(is_rotation_member(Digraph(2, {{1, 2}, {2, 1}})));  // even order
  // 1-regular of odd order but differences collide
  CHECK_FALSE(is_rotation_member(Digraph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}})));
}

TEST_CASE("canonical_cycle_labeling") {
  CHECK(canonical_cycle_labeling(5) == std::vector<int>{1, 4, 2, 5, 3});
  CHECK(canonical_cycle_labeling(3) == std::vector<int>{1, 3, 2});
  CHECK_THROWS_AS(canonical_cycle_labeling(4), Error);
  CHECK_THROWS_AS(canonical_cycle_labeling(1), Error);

  for (int n = 3; n <= 99; n += 2) {
    auto f = canonical_cycle_labeling(n);
    auto sorted = f;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> want(n);
    std::iota(want.begin(), want.end(), 1);
    CHECK(sorted == want);
  }
}

TEST_CASE("loop_digon_rotations") {
  auto [r1, r2] = loop_digon_rotations(5);
  CHECK(r1 == Digraph(5, {{4, 5}, {5, 4}, {2, 2}, {3, 1}, {1, 3}}));
  CHECK(is_loop_plus_digons(r2));

  for (int n : {3, 5, 7, 9}) {
    auto [a, b] = loop_digon_rotations(n);
    for (const auto& g : {a, b}) {
      CHECK(is_loop_plus_digons(g));
      CHECK(check_difference_bijection(g));
      CHECK(is_rotation_member(g));
      int loops = 0, proper = 0;
      g.for_each_arc([&](int u, int v) { (u == v ? loops : proper)++; });
      CHECK(loops == 1);
      CHECK(proper == n - 1);  // (n-1)/2 digons
    }
  }
  CHECK_THROWS_AS(loop_digon_rotations(4), Error);
}

TEST_CASE("is_loop_plus_digons rejects near misses") {
  CHECK_FALSE(is_loop_plus_digons(Digraph(3, {{1, 2}, {2, 1}, {3, 1}})));   // stray arc
  CHECK_FALSE(is_loop_plus_digons(Digraph(3, {{1, 1}, {2, 2}, {3, 3}})));   // three loops
  CHECK_FALSE(is_loop_plus_digons(Digraph(3, {{1, 2}, {2, 1}, {3, 3}, {1, 1}})));
}

TEST_CASE("cycle labeling count for the triangle") {
  // every bijection labels K3 = C3 with sums {3,4,5}
  auto c = count_sem_cycle_labelings(3);
  REQUIRE(c.has_value());
  CHECK(*c == 6);

  auto even = count_sem_cycle_labelings(4);
  REQUIRE(even.has_value());
  CHECK(*even == 0);
}
