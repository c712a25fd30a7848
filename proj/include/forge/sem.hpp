#pragma once

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "forge/digraphs.hpp"
#include "forge/errors.hpp"

// Super edge-magic (SEM) machinery. A labeled (p,q)-graph is SEM when the
// multiset of adjacent-label sums {f(u)+f(v)} consists of q distinct
// consecutive integers; a loop at u contributes 2f(u). Vertices are
// identified with their labels everywhere in this library.
//
// Sn is the family of 1-regular SEM labeled digraphs of order n, encoded as
// permutations pi of [1,n] with arc set {(i, pi(i))}. RSn holds their
// adjacency-matrix quarter-turn rotations.

namespace forge {

/// 1-regular digraph of order n encoded as a permutation of [1,n].
class PermDigraph {
 public:
  explicit PermDigraph(std::vector<int> pi) : pi_(std::move(pi)) {
    int n = static_cast<int>(pi_.size());
    if (n < 1) throw Error(Errc::BadArgument, "permutation must be nonempty");
    std::vector<char> seen(n, 0);
    for (int v : pi_) {
      if (v < 1 || v > n || seen[v - 1])
        throw Error(Errc::BadArgument, "not a permutation of [1,n]").with("value", v);
      seen[v - 1] = 1;
    }
  }

  int order() const noexcept { return static_cast<int>(pi_.size()); }
  const std::vector<int>& perm() const noexcept { return pi_; }
  int image(int i) const { return pi_[i - 1]; }

  /// The multiset {i + pi(i)} in index order.
  std::vector<int> sums() const {
    std::vector<int> s(pi_.size());
    for (int i = 1; i <= order(); ++i) s[i - 1] = i + pi_[i - 1];
    return s;
  }

  Digraph to_digraph() const {
    Digraph g(order());
    for (int i = 1; i <= order(); ++i) g.add_arc(i, pi_[i - 1]);
    return g;
  }

  friend bool operator==(const PermDigraph& a, const PermDigraph& b) {
    return a.pi_ == b.pi_;
  }
  friend bool operator<(const PermDigraph& a, const PermDigraph& b) {
    return a.pi_ < b.pi_;
  }

 private:
  std::vector<int> pi_;
};

struct SemCheck {
  bool sem = false;
  int min_sum = 0;  // meaningful only when sem is true
  explicit operator bool() const noexcept { return sem; }
};

/// Tests whether a digraph whose vertices are its labels is SEM: the sums
/// label(u)+label(v) over its arcs (2*label(u) for a loop) must be pairwise
/// distinct and consecutive. Returns the minimum sum as witness.
inline SemCheck is_sem_labeled(const Digraph& g) {
  if (g.arc_count() == 0)
    throw Error(Errc::BadArgument, "digraph has no arcs");
  std::vector<int> sums;
  sums.reserve(g.arc_count());
  g.for_each_arc([&](int u, int v) { sums.push_back(u + v); });
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 1; i < sums.size(); ++i)
    if (sums[i] != sums[i - 1] + 1) return {};
  return {true, sums.front()};
}

/// All members of Sn in lexicographic order of one-line permutation
/// notation. Backtracks over the consecutive-sum window instead of
/// filtering all n! permutations: since the sums of any permutation add up
/// to n(n+1), the window [k, k+n-1] must satisfy nk + n(n-1)/2 = n(n+1),
/// which pins k = (n+3)/2 and rules out every even n.
inline std::vector<PermDigraph> enumerate_Sn(int n) {
  if (n < 1) throw Error(Errc::BadArgument, "n must be >= 1").with("n", n);
  if (n > 62) throw Error(Errc::TooLarge, "enumeration limited to n <= 62").with("n", n);

  std::vector<PermDigraph> out;
  if ((n + 3) % 2 != 0) return out;
  const int k = (n + 3) / 2;  // the only feasible window start

  const std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  std::vector<int> pi(n);
  std::uint64_t used_values = 0, used_sums = 0;  // bit v-1; bit s-k

  // assign pi(i) for i = 1..n in increasing value order => lexicographic output
  auto dfs = [&](auto&& self, int i) -> void {
    if (i > n) {
      out.emplace_back(pi);
      return;
    }
    // value bit b corresponds to sum bit b + (i + 1 - k)
    const int shift = i + 1 - k;
    std::uint64_t sums_free = ~used_sums & full;
    std::uint64_t candidates =
        ~used_values & full &
        (shift >= 0 ? (sums_free >> shift) : (sums_free << -shift));
    while (candidates) {
      int b = std::countr_zero(candidates);
      candidates &= candidates - 1;
      pi[i - 1] = b + 1;
      used_values |= 1ull << b;
      used_sums |= 1ull << (b + shift);
      self(self, i + 1);
      used_values &= ~(1ull << b);
      used_sums &= ~(1ull << (b + shift));
    }
  };
  dfs(dfs, 1);
  return out;
}

/// Rotation of an Sn member together with its source.
struct RotationMember {
  PermDigraph source;
  Digraph arcs;  // rotate(source.to_digraph())

  int order() const { return source.order(); }

  static RotationMember of(PermDigraph p) {
    Digraph r = rotate(p.to_digraph());
    return {std::move(p), std::move(r)};
  }
};

/// Rotations of enumerate_Sn(n), in the same order.
inline std::vector<RotationMember> enumerate_RSn(int n) {
  std::vector<RotationMember> out;
  for (auto& p : enumerate_Sn(n)) out.push_back(RotationMember::of(std::move(p)));
  return out;
}

/// True iff the map arc -> i-j is a bijection onto [-(n-1)/2, (n-1)/2].
/// Rotation members of odd order have this property.
inline bool check_difference_bijection(const Digraph& r) {
  const int n = r.order();
  if (n % 2 == 0)
    throw Error(Errc::EvenOrder, "difference bijection is defined for odd order")
        .with("order", n);
  if (r.arc_count() != n) return false;
  const int half = (n - 1) / 2;
  std::vector<char> seen(n, 0);
  bool ok = true;
  r.for_each_arc([&](int u, int v) {
    int d = u - v;
    if (d < -half || d > half || seen[d + half]) {
      ok = false;
      return;
    }
    seen[d + half] = 1;
  });
  return ok;
}

inline bool check_difference_bijection(const RotationMember& r) {
  return check_difference_bijection(r.arcs);
}

/// Exact membership test for RSn. A digraph of odd order n is the rotation
/// of an Sn member iff it is 1-regular and difference-bijective: unrotating
/// turns the differences i-j back into the sums shifted by n+1, and a
/// 1-regular digraph is forced into the unique sum window starting (n+3)/2.
inline bool is_rotation_member(const Digraph& g) {
  if (g.order() % 2 == 0) return false;
  return g.is_one_regular() && check_difference_bijection(g);
}

/// SEM vertex labels (f(v_1),...,f(v_n)) for the n-cycle with consecutive
/// vertices adjacent: odd positions take the low half of [1,n] in order,
/// even positions the high half.
inline std::vector<int> canonical_cycle_labeling(int n) {
  if (n % 2 == 0) throw Error(Errc::EvenOrder, "cycle labeling requires odd n").with("n", n);
  if (n < 3) throw Error(Errc::BadArgument, "cycle needs n >= 3").with("n", n);
  std::vector<int> f(n);
  for (int i = 1; i <= n; ++i) f[i - 1] = (i % 2 == 1) ? (i + 1) / 2 : (n + i + 1) / 2;
  return f;
}

/// One loop plus a vertex-disjoint union of digons (antiparallel arc pairs).
inline bool is_loop_plus_digons(const Digraph& g) {
  int loops = 0;
  bool ok = true;
  g.for_each_arc([&](int u, int v) {
    if (u == v)
      ++loops;
    else if (!g.has_arc(v, u))
      ok = false;
  });
  if (!ok || loops != 1 || g.arc_count() != g.order()) return false;
  // digons vertex-disjoint <=> every vertex meets exactly one arc pair
  return g.is_one_regular();
}

/// The two rotations R1, R2 of the strong orientations of the canonically
/// labeled n-cycle (vertices renamed to their labels). S1 orients
/// v_1 -> v_2 -> ... -> v_n -> v_1; S2 is its reversal. Each result is one
/// loop plus (n-1)/2 digons and is difference-bijective.
inline std::pair<Digraph, Digraph> loop_digon_rotations(int n) {
  std::vector<int> f = canonical_cycle_labeling(n);  // throws on bad n
  Digraph s1(n);
  for (int i = 1; i <= n; ++i) s1.add_arc(f[i - 1], f[i % n]);
  return {rotate(s1), rotate(s1.reversed())};
}

/// Number of SEM labelings of the n-cycle, counted as distinct bijections
/// f: {v_1..v_n} -> [1,n] (brute force with window pruning). Returns
/// nullopt if `budget` elapses first; a zero budget means unlimited.
inline std::optional<std::uint64_t> count_sem_cycle_labelings(
    int n, std::chrono::milliseconds budget = std::chrono::milliseconds::zero()) {
  if (n < 3) throw Error(Errc::BadArgument, "cycle needs n >= 3").with("n", n);
  if (n > 62) throw Error(Errc::TooLarge, "count limited to n <= 62").with("n", n);
  // edge sums total 2 * n(n+1)/2, so a consecutive window [k, k+n-1] forces
  // k = (n+3)/2; even n admits no SEM labeling of the cycle
  if ((n + 3) % 2 != 0) return 0;
  const int k = (n + 3) / 2;

  const bool timed = budget != std::chrono::milliseconds::zero();
  const auto deadline = std::chrono::steady_clock::now() + budget;
  std::uint64_t nodes = 0;
  bool expired = false;

  std::vector<int> label(n + 1, 0);
  std::uint64_t used_values = 0, used_sums = 0;
  std::uint64_t count = 0;

  // assign labels around the cycle; the closing edge v_n v_1 is checked last
  auto dfs = [&](auto&& self, int i) -> void {
    if (expired) return;
    if (timed && (++nodes & 0xFFFF) == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      expired = true;
      return;
    }
    if (i > n) {
      int s = label[n] + label[1] - k;
      if (s >= 0 && s < n && !(used_sums & (1ull << s))) ++count;
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used_values & (1ull << (v - 1))) continue;
      int s = (i == 1) ? -1 : label[i - 1] + v - k;
      if (i > 1 && (s < 0 || s >= n || (used_sums & (1ull << s)))) continue;
      label[i] = v;
      used_values |= 1ull << (v - 1);
      if (i > 1) used_sums |= 1ull << s;
      self(self, i + 1);
      used_values &= ~(1ull << (v - 1));
      if (i > 1) used_sums &= ~(1ull << s);
      if (expired) return;
    }
  };
  dfs(dfs, 1);
  if (expired) return std::nullopt;
  return count;
}

}  // namespace forge
