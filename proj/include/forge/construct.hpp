#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "forge/digraphs.hpp"
#include "forge/errors.hpp"
#include "forge/sem.hpp"
#include "forge/sequences.hpp"

// Sequences as labeled directed matchings, and the expansion constructions.
//
// A Langford sequence of order m corresponds to a directed matching on the
// position set [1,2m]: symbol k becomes the arc (i,j) between its two
// positions, oriented so i < j, with difference j-i = k. An extended Skolem
// sequence adds one loop at the position of the zero. Multiplying such a
// matching by difference-bijective 1-regular digraphs of odd order n and
// flattening vertex (a,x) to n(a-1)+x yields the matching of a longer
// sequence; this is the expansion implemented here.

namespace forge {

/// A labeled directed matching over [1, 2m] (plus one loop over [1, 2m+1]
/// in the extended case). Arcs are stored (u,v) with u < v, sorted.
class LabeledMatching {
 public:
  /// m proper arcs over [1, 2m], no loop.
  static LabeledMatching langford_case(std::vector<Arc> arcs) {
    return LabeledMatching(std::move(arcs), std::nullopt);
  }

  /// m proper arcs plus a loop vertex, over [1, 2m+1].
  static LabeledMatching extended_case(std::vector<Arc> arcs, int loop_vertex) {
    return LabeledMatching(std::move(arcs), loop_vertex);
  }

  int order() const noexcept { return static_cast<int>(arcs_.size()); }
  /// Number of vertices: 2m, or 2m+1 with a loop.
  int span() const noexcept { return 2 * order() + (loop_ ? 1 : 0); }
  bool has_loop() const noexcept { return loop_.has_value(); }
  int loop_vertex() const { return loop_.value(); }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  /// Sorted differences v-u of the proper arcs.
  std::vector<int> differences() const {
    std::vector<int> d;
    d.reserve(arcs_.size());
    for (auto [u, v] : arcs_) d.push_back(v - u);
    std::sort(d.begin(), d.end());
    return d;
  }

  /// The matching without its loop, as a digraph on [1, span].
  Digraph arcs_digraph() const {
    Digraph g(span());
    for (auto [u, v] : arcs_) g.add_arc(u, v);
    return g;
  }

  /// The full digraph including the loop, if any.
  Digraph digraph() const {
    Digraph g = arcs_digraph();
    if (loop_) g.add_arc(*loop_, *loop_);
    return g;
  }

 private:
  LabeledMatching(std::vector<Arc> arcs, std::optional<int> loop)
      : arcs_(std::move(arcs)), loop_(loop) {
    const int p = 2 * static_cast<int>(arcs_.size()) + (loop_ ? 1 : 0);
    std::vector<char> used(p, 0);
    auto take = [&](int x) {
      if (x < 1 || x > p)
        throw Error(Errc::BadVertex, "matching vertex outside [1, span]")
            .with("vertex", x)
            .with("span", p);
      if (used[x - 1])
        throw Error(Errc::VertexReuse, "vertex used by two arcs").with("vertex", x);
      used[x - 1] = 1;
    };
    for (auto [u, v] : arcs_) {
      if (u >= v)
        throw Error(Errc::BadArgument, "arc must satisfy u < v").with("u", u).with("v", v);
      take(u);
      take(v);
    }
    if (loop_) take(*loop_);
    std::sort(arcs_.begin(), arcs_.end());
  }

  std::vector<Arc> arcs_;
  std::optional<int> loop_;
};

/// Matching of a Langford sequence: symbol k's two positions i < j give
/// the arc (i, j).
inline LabeledMatching seq_to_matching(const LangfordSeq& s) {
  const auto& vals = s.values();
  std::vector<int> first(s.order(), 0);
  std::vector<Arc> arcs;
  arcs.reserve(s.order());
  for (int p = 1; p <= static_cast<int>(vals.size()); ++p) {
    int idx = vals[p - 1] - s.defect();
    if (first[idx] == 0)
      first[idx] = p;
    else
      arcs.emplace_back(first[idx], p);
  }
  return LabeledMatching::langford_case(std::move(arcs));
}

/// Matching of an extended Skolem sequence, with the loop at the position
/// of the zero.
inline LabeledMatching seq_to_loop_matching(const ExtendedSkolemSeq& s) {
  const auto& vals = s.values();
  std::vector<int> first(s.order(), 0);
  std::vector<Arc> arcs;
  arcs.reserve(s.order());
  for (int p = 1; p <= static_cast<int>(vals.size()); ++p) {
    int v = vals[p - 1];
    if (v == 0) continue;
    if (first[v - 1] == 0)
      first[v - 1] = p;
    else
      arcs.emplace_back(first[v - 1], p);
  }
  return LabeledMatching::extended_case(std::move(arcs), s.zero_pos());
}

using AnySeq = std::variant<LangfordSeq, ExtendedSkolemSeq>;

/// Inverse of the bijections above. The arc differences must be pairwise
/// distinct (NotInjective) and form a consecutive run (NotConsecutive);
/// the run's minimum becomes the defect. A loop forces the extended form,
/// whose differences must then be exactly [1, m].
inline AnySeq matching_to_seq(const LabeledMatching& m) {
  std::vector<int> diffs = m.differences();
  for (std::size_t i = 1; i < diffs.size(); ++i) {
    if (diffs[i] == diffs[i - 1])
      throw Error(Errc::NotInjective, "two arcs share the same difference")
          .with("difference", diffs[i]);
    if (diffs[i] != diffs[i - 1] + 1)
      throw Error(Errc::NotConsecutive, "arc differences are not consecutive")
          .with("after", diffs[i - 1])
          .with("next", diffs[i]);
  }
  std::vector<int> values(m.span(), 0);
  for (auto [u, v] : m.arcs()) {
    values[u - 1] = v - u;
    values[v - 1] = v - u;
  }
  if (m.has_loop()) {
    if (!diffs.empty() && diffs.front() != 1)
      throw Error(Errc::NotConsecutive, "extended case needs differences [1, m]")
          .with("minimum", diffs.front());
    return ExtendedSkolemSeq::validate(std::move(values));
  }
  return LangfordSeq::validate(std::move(values), diffs.empty() ? 1 : diffs.front());
}

enum class LoopChoice { r1 = 1, r2 = 2 };

namespace detail {

inline void require_odd(int n) {
  if (n < 1 || n % 2 == 0)
    throw Error(Errc::EvenOrder, "expansion requires odd n >= 1").with("n", n);
}

inline void require_rotation_images(const ArcAssignment& h, const Digraph& base) {
  if (h.base() != base)
    throw Error(Errc::BadArgument, "assignment base differs from the sequence's matching");
  base.for_each_arc([&](int u, int v) {
    const Digraph& img = h.image({u, v});  // MissingArc if absent
    if (!is_rotation_member(img))
      throw Error(Errc::NotRotationMember, "image is not the rotation of a 1-regular SEM digraph")
          .with("u", u)
          .with("v", v);
  });
}

// product arcs -> matching: orient every arc by final label order, keep one
// arc per digon (the positive one), and pick up the loop if present
inline LabeledMatching product_to_matching(const Digraph& prod, bool expect_loop) {
  std::vector<Arc> arcs;
  std::optional<int> loop;
  bool dup_loop = false;
  prod.for_each_arc([&](int x, int y) {
    if (x == y) {
      if (loop) dup_loop = true;
      loop = x;
    } else if (x < y) {
      arcs.emplace_back(x, y);
    } else if (!prod.has_arc(y, x)) {
      arcs.emplace_back(y, x);  // lone negative arc, reorient
    }  // else: negative half of a digon, dropped
  });
  if (expect_loop && (dup_loop || !loop))
    throw Error(Errc::NotLoopDigon, "product must contain exactly one loop");
  if (!expect_loop && loop)
    throw Error(Errc::NotLoopDigon, "unexpected loop in product");
  if (expect_loop) return LabeledMatching::extended_case(std::move(arcs), *loop);
  return LabeledMatching::langford_case(std::move(arcs));
}

}  // namespace detail

/// Expands a Langford sequence of order m and defect d into one of order mn
/// and defect nd-(n-1)/2, odd n. `h` assigns a difference-bijective
/// 1-regular image of order n to every arc of the sequence's matching.
inline LangfordSeq expand_langford(const LangfordSeq& s, int n, const ArcAssignment& h) {
  detail::require_odd(n);
  if (h.family_order() != n)
    throw Error(Errc::OrderMismatch, "assignment family order differs from n")
        .with("family_order", h.family_order())
        .with("n", n);
  Digraph base = seq_to_matching(s).arcs_digraph();
  detail::require_rotation_images(h, base);

  LabeledMatching out = detail::product_to_matching(oxh_product(h), false);
  auto seq = std::get<LangfordSeq>(matching_to_seq(out));
  const int want = n * s.defect() - (n - 1) / 2;
  if (seq.order() != s.order() * n || seq.defect() != want)
    throw Error(Errc::BadArgument, "expansion produced an unexpected order or defect")
        .with("order", seq.order())
        .with("defect", seq.defect());
  return seq;
}

/// Expands a hooked or extended Skolem sequence of order m into an extended
/// one of order mn+(n-1)/2, odd n >= 3. `h` covers the m proper arcs; the
/// loop maps to R1 or R2 of loop_digon_rotations(n). Negative digon halves
/// in the loop block are dropped; the output zero lands at n(z-1)+c where z
/// is the input zero position and c the loop vertex of the chosen rotation.
inline ExtendedSkolemSeq expand_extended(const ExtendedSkolemSeq& s, int n,
                                         const ArcAssignment& h, const Digraph& loop_image) {
  detail::require_odd(n);
  if (n < 3)
    throw Error(Errc::BadArgument, "extended expansion needs n >= 3").with("n", n);
  if (h.family_order() != n || loop_image.order() != n)
    throw Error(Errc::OrderMismatch, "assignment family order differs from n")
        .with("family_order", h.family_order())
        .with("n", n);
  if (!is_loop_plus_digons(loop_image))
    throw Error(Errc::NotLoopDigon, "loop image must be one loop plus digons");
  if (!is_rotation_member(loop_image))
    throw Error(Errc::NotRotationMember, "loop image is not a rotation member");

  LabeledMatching base = seq_to_loop_matching(s);
  detail::require_rotation_images(h, base.arcs_digraph());

  ArcAssignment full(base.digraph(), n);
  for (auto [u, v] : base.arcs()) full.assign({u, v}, h.image({u, v}));
  full.assign({base.loop_vertex(), base.loop_vertex()}, loop_image);

  LabeledMatching out = detail::product_to_matching(oxh_product(full), true);
  auto seq = std::get<ExtendedSkolemSeq>(matching_to_seq(out));
  if (seq.order() != s.order() * n + (n - 1) / 2)
    throw Error(Errc::BadArgument, "expansion produced an unexpected order")
        .with("order", seq.order());
  return seq;
}

inline ExtendedSkolemSeq expand_extended(const ExtendedSkolemSeq& s, int n,
                                         const ArcAssignment& h, LoopChoice choice) {
  detail::require_odd(n);
  if (n < 3)
    throw Error(Errc::BadArgument, "extended expansion needs n >= 3").with("n", n);
  auto [r1, r2] = loop_digon_rotations(n);
  return expand_extended(s, n, h, choice == LoopChoice::r1 ? r1 : r2);
}

}  // namespace forge
