#pragma once

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/errors.hpp"

// Finite digraphs on vertex set [1, p], loops allowed, no multi-arcs.
// Rows of the adjacency matrix are stored as bitsets; enumeration and
// product workloads operate on this representation directly.

namespace forge {

using Arc = std::pair<int, int>;

class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(int order) : order_(order) {
    if (order < 1) throw Error(Errc::BadArgument, "order must be >= 1").with("order", order);
    rows_.assign(order_, boost::dynamic_bitset<>(order_));
  }

  Digraph(int order, std::initializer_list<Arc> arcs) : Digraph(order) {
    for (auto [u, v] : arcs) add_arc(u, v);
  }

  Digraph(int order, const std::vector<Arc>& arcs) : Digraph(order) {
    for (auto [u, v] : arcs) add_arc(u, v);
  }

  int order() const noexcept { return order_; }
  int arc_count() const noexcept { return arc_count_; }

  bool has_arc(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return rows_[u - 1].test(v - 1);
  }

  /// Inserts (u,v); duplicate insertion is a no-op (set semantics).
  void add_arc(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (!rows_[u - 1].test(v - 1)) {
      rows_[u - 1].set(v - 1);
      ++arc_count_;
    }
  }

  /// Arcs in lexicographic order on (u, v).
  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    out.reserve(arc_count_);
    for (int u = 1; u <= order_; ++u)
      for (auto v = rows_[u - 1].find_first(); v != boost::dynamic_bitset<>::npos;
           v = rows_[u - 1].find_next(v))
        out.emplace_back(u, static_cast<int>(v) + 1);
    return out;
  }

  template <class F>
  void for_each_arc(F&& f) const {
    for (int u = 1; u <= order_; ++u)
      for (auto v = rows_[u - 1].find_first(); v != boost::dynamic_bitset<>::npos;
           v = rows_[u - 1].find_next(v))
        f(u, static_cast<int>(v) + 1);
  }

  Digraph reversed() const {
    Digraph r(order_);
    for_each_arc([&](int u, int v) { r.add_arc(v, u); });
    return r;
  }

  int out_degree(int u) const {
    check_vertex(u);
    return static_cast<int>(rows_[u - 1].count());
  }

  int in_degree(int v) const {
    check_vertex(v);
    int d = 0;
    for (int u = 1; u <= order_; ++u) d += rows_[u - 1].test(v - 1);
    return d;
  }

  bool is_one_regular() const {
    for (int u = 1; u <= order_; ++u)
      if (rows_[u - 1].count() != 1) return false;
    for (int v = 1; v <= order_; ++v)
      if (in_degree(v) != 1) return false;
    return true;
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.order_ == b.order_ && a.rows_ == b.rows_;
  }
  friend bool operator!=(const Digraph& a, const Digraph& b) { return !(a == b); }
  friend bool operator<(const Digraph& a, const Digraph& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_;
    return a.arcs() < b.arcs();
  }

 private:
  void check_vertex(int u) const {
    if (u < 1 || u > order_)
      throw Error(Errc::BadVertex, "vertex outside [1, order]")
          .with("vertex", u)
          .with("order", order_);
  }

  int order_ = 0;
  int arc_count_ = 0;
  std::vector<boost::dynamic_bitset<>> rows_;
};

/// Quarter-turn clockwise rotation of the adjacency matrix: the result has
/// arc (i,j) exactly when the input has arc (n+1-j, i); equivalently every
/// input arc (u,v) becomes (v, n+1-u). Rotation has period 4.
inline Digraph rotate(const Digraph& g) {
  Digraph r(g.order());
  int n = g.order();
  g.for_each_arc([&](int u, int v) { r.add_arc(v, n + 1 - u); });
  return r;
}

/// Inverse of rotate (three more quarter turns): (u,v) -> (n+1-v, u).
inline Digraph unrotate(const Digraph& g) {
  Digraph r(g.order());
  int n = g.order();
  g.for_each_arc([&](int u, int v) { r.add_arc(n + 1 - v, u); });
  return r;
}

/// Total map from the arcs of a base digraph to digraphs on a shared vertex
/// set [1, n]. Images are checked for the right order on assignment.
class ArcAssignment {
 public:
  ArcAssignment(Digraph base, int family_order)
      : base_(std::move(base)), family_order_(family_order) {
    if (family_order < 1)
      throw Error(Errc::BadArgument, "family order must be >= 1").with("n", family_order);
  }

  const Digraph& base() const noexcept { return base_; }
  int family_order() const noexcept { return family_order_; }

  void assign(Arc arc, Digraph image) {
    if (!base_.has_arc(arc.first, arc.second))
      throw Error(Errc::BadArgument, "assignment key is not an arc of the base digraph")
          .with("u", arc.first)
          .with("v", arc.second);
    if (image.order() != family_order_)
      throw Error(Errc::OrderMismatch, "image order differs from the family order")
          .with("image_order", image.order())
          .with("family_order", family_order_);
    images_.insert_or_assign(arc, std::move(image));
  }

  const Digraph& image(Arc arc) const {
    auto it = images_.find(arc);
    if (it == images_.end())
      throw Error(Errc::MissingArc, "no image assigned to this arc")
          .with("u", arc.first)
          .with("v", arc.second);
    return it->second;
  }

  bool has_image(Arc arc) const { return images_.count(arc) != 0; }

  bool total() const {
    bool ok = true;
    base_.for_each_arc([&](int u, int v) {
      if (!images_.count({u, v})) ok = false;
    });
    return ok;
  }

  static ArcAssignment constant(Digraph base, const Digraph& image) {
    ArcAssignment h(std::move(base), image.order());
    h.base_.for_each_arc([&](int u, int v) { h.assign({u, v}, image); });
    return h;
  }

 private:
  Digraph base_;
  int family_order_;
  std::map<Arc, Digraph> images_;
};

/// The product digraph on p*n vertices: vertex (a,x) is flattened to the
/// integer n(a-1)+x, and ((a,x),(b,y)) is an arc iff (a,b) is an arc of the
/// base and (x,y) an arc of its image. For a constant assignment the
/// adjacency matrix is the Kronecker product of the two matrices.
inline Digraph oxh_product(const ArcAssignment& h) {
  const Digraph& d = h.base();
  const int n = h.family_order();
  Digraph out(d.order() * n);
  d.for_each_arc([&](int a, int b) {
    const Digraph& f = h.image({a, b});  // throws MissingArc if not total
    f.for_each_arc([&](int x, int y) {
      out.add_arc(n * (a - 1) + x, n * (b - 1) + y);
    });
  });
  return out;
}

/// True iff g is a vertex-disjoint union of exactly `expected_count` single
/// arcs (no loops; isolated vertices permitted).
inline bool is_disjoint_arc_union(const Digraph& g, int expected_count) {
  if (g.arc_count() != expected_count) return false;
  boost::dynamic_bitset<> seen(g.order());
  bool ok = true;
  g.for_each_arc([&](int u, int v) {
    if (u == v || seen.test(u - 1) || seen.test(v - 1)) {
      ok = false;
      return;
    }
    seen.set(u - 1);
    seen.set(v - 1);
  });
  return ok;
}

// --- JSON format -------------------------------------------------------------
// {"order": p, "arcs": [[u,v], ...]} with arcs sorted lexicographically.

inline nlohmann::json digraph_to_json(const Digraph& g) {
  nlohmann::json arr = nlohmann::json::array();
  g.for_each_arc([&](int u, int v) { arr.push_back({u, v}); });
  return nlohmann::json{{"order", g.order()}, {"arcs", std::move(arr)}};
}

inline Digraph digraph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("arcs") ||
      !j["order"].is_number_integer() || !j["arcs"].is_array())
    throw Error(Errc::BadFormat, "digraph JSON must be {\"order\": p, \"arcs\": [[u,v],...]}");
  Digraph g(j["order"].get<int>());
  for (const auto& e : j["arcs"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer())
      throw Error(Errc::BadFormat, "each arc must be a pair of integers");
    g.add_arc(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

}  // namespace forge
