#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "forge/construct.hpp"
#include "forge/errors.hpp"
#include "forge/sem.hpp"
#include "forge/sequences.hpp"

// Brute-force oracles for sequence counts and checks of the counting lower
// bounds. Counts are exact big integers; one bound is a non-integral
// rational for small n and is kept exact instead of floored.

namespace forge {

using BoundValue = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

/// Refuse-rather-than-stall limits. `max_positions` bounds the sequence
/// length 2m a backtracking oracle will accept; `max_outputs` bounds how
/// many sequences a constructive census may generate.
struct CensusGuards {
  int max_positions = 32;
  BoundValue max_outputs = 1000000;
};

namespace detail {

// placements of symbols k0 down to d into the free positions of `occ`
// (bit p-1 = position p occupied); emits completed value arrays
inline void place_symbols(int k, int d, int len, std::uint64_t occ,
                          std::vector<int>& vals,
                          std::vector<std::vector<int>>& out) {
  if (k < d) {
    out.push_back(vals);
    return;
  }
  for (int i = 1; i + k <= len; ++i) {
    const std::uint64_t pair = (1ull << (i - 1)) | (1ull << (i + k - 1));
    if (occ & pair) continue;
    vals[i - 1] = vals[i + k - 1] = k;
    place_symbols(k - 1, d, len, occ | pair, vals, out);
    vals[i - 1] = vals[i + k - 1] = 0;
  }
}

// same search split over the first symbol's placement across async tasks;
// results are merged in placement order and canonically sorted by callers
inline std::vector<std::vector<int>> enumerate_placements(int k0, int d, int len,
                                                          std::uint64_t occ0,
                                                          std::vector<int> vals0) {
  std::vector<std::vector<int>> out;
  if (k0 < d) {
    out.push_back(std::move(vals0));
    return out;
  }
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (len < 22 || hw < 2) {
    place_symbols(k0, d, len, occ0, vals0, out);
    return out;
  }
  std::vector<std::future<std::vector<std::vector<int>>>> tasks;
  for (int i = 1; i + k0 <= len; ++i) {
    const std::uint64_t pair = (1ull << (i - 1)) | (1ull << (i + k0 - 1));
    if (occ0 & pair) continue;
    tasks.push_back(std::async(std::launch::async, [=]() {
      std::vector<int> vals = vals0;
      vals[i - 1] = vals[i + k0 - 1] = k0;
      std::vector<std::vector<int>> part;
      place_symbols(k0 - 1, d, len, occ0 | pair, vals, part);
      return part;
    }));
  }
  for (auto& t : tasks) {
    auto part = t.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

inline void check_guard(int m, const CensusGuards& g) {
  if (2 * m > g.max_positions || 2 * m + 1 > 62)
    throw Error(Errc::TooLarge, "sequence length exceeds the backtracking guard")
        .with("m", m)
        .with("max_positions", g.max_positions);
}

// count-only twin of place_symbols, for reports that never need the list
inline std::uint64_t count_symbol_placements(int k, int d, int len, std::uint64_t occ) {
  if (k < d) return 1;
  std::uint64_t total = 0;
  for (int i = 1; i + k <= len; ++i) {
    const std::uint64_t pair = (1ull << (i - 1)) | (1ull << (i + k - 1));
    if (!(occ & pair)) total += count_symbol_placements(k - 1, d, len, occ | pair);
  }
  return total;
}

inline std::uint64_t count_placements(int k0, int d, int len, std::uint64_t occ0) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (k0 < d || len < 22 || hw < 2) return count_symbol_placements(k0, d, len, occ0);
  std::vector<std::future<std::uint64_t>> tasks;
  for (int i = 1; i + k0 <= len; ++i) {
    const std::uint64_t pair = (1ull << (i - 1)) | (1ull << (i + k0 - 1));
    if (occ0 & pair) continue;
    tasks.push_back(std::async(std::launch::async, [=]() {
      return count_symbol_placements(k0 - 1, d, len, occ0 | pair);
    }));
  }
  std::uint64_t total = 0;
  for (auto& t : tasks) total += t.get();
  return total;
}

}  // namespace detail

/// All Langford sequences of order m and defect d, lexicographically sorted.
inline std::vector<LangfordSeq> brute_force_langford(int m, int d,
                                                     const CensusGuards& guards = {}) {
  if (m < 1 || d < 1) throw Error(Errc::BadArgument, "m and d must be >= 1");
  detail::check_guard(m, guards);
  std::vector<int> vals(2 * m, 0);
  auto raw = detail::enumerate_placements(d + m - 1, d, 2 * m, 0, std::move(vals));
  std::sort(raw.begin(), raw.end());
  std::vector<LangfordSeq> out;
  out.reserve(raw.size());
  for (auto& v : raw) out.push_back(LangfordSeq::validate(std::move(v), d));
  return out;
}

inline std::vector<LangfordSeq> brute_force_skolem(int m, const CensusGuards& guards = {}) {
  return brute_force_langford(m, 1, guards);
}

/// |brute_force_langford(m, d)| without materializing the list.
inline BoundValue count_langford(int m, int d, const CensusGuards& guards = {}) {
  if (m < 1 || d < 1) throw Error(Errc::BadArgument, "m and d must be >= 1");
  detail::check_guard(m, guards);
  return BoundValue(detail::count_placements(d + m - 1, d, 2 * m, 0));
}

/// |brute_force_extended(m, include_trivial)| without materializing the list.
inline BoundValue count_extended(int m, bool include_trivial,
                                 const CensusGuards& guards = {}) {
  if (m < 1) throw Error(Errc::BadArgument, "m must be >= 1");
  detail::check_guard(m, guards);
  const int len = 2 * m + 1;
  BoundValue total = 0;
  for (int z = 1; z <= len; ++z) {
    if (!include_trivial && (z == 1 || z == len)) continue;
    total += detail::count_placements(m, 1, len, 1ull << (z - 1));
  }
  return total;
}

/// All extended Skolem sequences of order m (zero in every feasible
/// position; first/last position only when include_trivial is set).
inline std::vector<ExtendedSkolemSeq> brute_force_extended(int m, bool include_trivial,
                                                           const CensusGuards& guards = {}) {
  if (m < 1) throw Error(Errc::BadArgument, "m must be >= 1");
  detail::check_guard(m, guards);
  const int len = 2 * m + 1;
  std::vector<std::vector<int>> raw;
  for (int z = 1; z <= len; ++z) {
    if (!include_trivial && (z == 1 || z == len)) continue;
    std::vector<int> vals(len, 0);
    auto part = detail::enumerate_placements(m, 1, len, 1ull << (z - 1), std::move(vals));
    raw.insert(raw.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  std::sort(raw.begin(), raw.end());
  std::vector<ExtendedSkolemSeq> out;
  out.reserve(raw.size());
  for (auto& v : raw) out.push_back(ExtendedSkolemSeq::validate(std::move(v)));
  return out;
}

/// Report emitted by the bound and census operations; `bound_value` stays an
/// exact rational because one bound is non-integral for small n.
struct CountReport {
  std::string bound_name;
  nlohmann::json params;
  ExactRational bound_value = 0;
  std::optional<BoundValue> exact_count;
  std::optional<BoundValue> census_count;
  bool satisfied = false;
  std::vector<std::string> notes;

  nlohmann::json to_json() const {
    nlohmann::json j{{"format", 1},
                     {"bound_name", bound_name},
                     {"params", params},
                     {"bound", rational_str(bound_value)},
                     {"satisfied", satisfied}};
    j["exact"] = exact_count ? nlohmann::json(exact_count->str()) : nlohmann::json();
    if (census_count) j["census"] = census_count->str();
    if (!notes.empty()) j["notes"] = notes;
    return j;
  }

  static std::string rational_str(const ExactRational& r) {
    BoundValue num = boost::multiprecision::numerator(r);
    BoundValue den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
  }
};

/// Every expansion of every (sequence, assignment) pair at the given
/// parameters: all s of order m and defect d times all |RSn|^m arc-image
/// tuples, deduplicated and sorted. The expansions are pairwise distinct,
/// so the cardinality equals |Sn|^m * (number of input sequences).
inline std::vector<LangfordSeq> constructive_census(int m, int n, int d,
                                                    const CensusGuards& guards = {}) {
  detail::require_odd(n);
  auto family = enumerate_RSn(n);
  // size the census before materializing anything
  BoundValue total = boost::multiprecision::pow(BoundValue(family.size()),
                                                static_cast<unsigned>(m)) *
                     count_langford(m, d, guards);
  if (total > guards.max_outputs)
    throw Error(Errc::TooLarge, "census would exceed the output guard");
  if (family.empty()) return {};
  auto inputs = brute_force_langford(m, d, guards);

  std::set<std::vector<int>> seen;
  for (const auto& s : inputs) {
    Digraph base = seq_to_matching(s).arcs_digraph();
    auto arcs = base.arcs();
    std::vector<std::size_t> idx(arcs.size(), 0);
    while (true) {
      ArcAssignment h(base, n);
      for (std::size_t a = 0; a < arcs.size(); ++a)
        h.assign(arcs[a], family[idx[a]].arcs);
      seen.insert(expand_langford(s, n, h).values());
      std::size_t a = 0;
      for (; a < idx.size(); ++a) {
        if (++idx[a] < family.size()) break;
        idx[a] = 0;
      }
      if (a == idx.size()) break;
    }
  }
  const int d_out = n * d - (n - 1) / 2;
  std::vector<LangfordSeq> out;
  out.reserve(seen.size());
  for (const auto& v : seen) out.push_back(LangfordSeq::validate(v, d_out));
  return out;
}

/// Extended analogue over all (s, h, loop choice) triples.
inline std::vector<ExtendedSkolemSeq> constructive_census_extended(
    int m, int n, bool include_trivial, const CensusGuards& guards = {}) {
  detail::require_odd(n);
  if (n < 3) throw Error(Errc::BadArgument, "extended census needs n >= 3").with("n", n);
  auto family = enumerate_RSn(n);
  BoundValue total = 2 *
                     boost::multiprecision::pow(BoundValue(family.size()),
                                                static_cast<unsigned>(m)) *
                     count_extended(m, include_trivial, guards);
  if (total > guards.max_outputs)
    throw Error(Errc::TooLarge, "census would exceed the output guard");
  if (family.empty()) return {};
  auto inputs = brute_force_extended(m, include_trivial, guards);

  std::set<std::vector<int>> seen;
  for (const auto& s : inputs) {
    Digraph base = seq_to_loop_matching(s).arcs_digraph();
    auto arcs = base.arcs();
    std::vector<std::size_t> idx(arcs.size(), 0);
    while (true) {
      ArcAssignment h(base, n);
      for (std::size_t a = 0; a < arcs.size(); ++a)
        h.assign(arcs[a], family[idx[a]].arcs);
      for (LoopChoice c : {LoopChoice::r1, LoopChoice::r2})
        seen.insert(expand_extended(s, n, h, c).values());
      std::size_t a = 0;
      for (; a < idx.size(); ++a) {
        if (++idx[a] < family.size()) break;
        idx[a] = 0;
      }
      if (a == idx.size()) break;
    }
  }
  std::vector<ExtendedSkolemSeq> out;
  out.reserve(seen.size());
  for (const auto& v : seen) out.push_back(ExtendedSkolemSeq::validate(v));
  return out;
}

namespace detail {

inline BoundValue pow_count(std::size_t base, int exp) {
  return boost::multiprecision::pow(BoundValue(base), static_cast<unsigned>(exp));
}

inline void require_residue_01(int m) {
  if (m % 4 != 0 && m % 4 != 1)
    throw Error(Errc::BadResidue, "m must be 0 or 1 (mod 4)").with("m", m);
}

// exact count at the target (order, defect) when the backtracking guard
// allows it; otherwise fall back to the constructive census
inline void settle_langford_report(CountReport& r, int m, int n, int d,
                                   const CensusGuards& guards) {
  const int d_out = n * d - (n - 1) / 2;
  if (2 * m * n <= guards.max_positions) {
    r.exact_count = count_langford(m * n, d_out, guards);
    r.satisfied = ExactRational(*r.exact_count) >= r.bound_value;
  } else {
    r.census_count = BoundValue(constructive_census(m, n, d, guards).size());
    r.satisfied = ExactRational(*r.census_count) >= r.bound_value;
    r.notes.push_back("exact count not computed: target length exceeds the guard; "
                      "satisfied via constructive census");
  }
}

}  // namespace detail

/// Census plus its report: the constructive outputs must hit the counting
/// bound exactly (the expansion is injective over (sequence, assignment)).
struct LangfordCensus {
  CountReport report;
  std::vector<LangfordSeq> outputs;
};

inline LangfordCensus run_census_langford(int m, int n, int d,
                                          const CensusGuards& guards = {}) {
  LangfordCensus res;
  res.outputs = constructive_census(m, n, d, guards);
  auto& r = res.report;
  r.bound_name = "theorem-3-3-census";
  r.params = {{"m", m}, {"n", n}, {"d", d}, {"order_out", m * n},
              {"defect_out", n * d - (n - 1) / 2}};
  r.bound_value = detail::pow_count(enumerate_Sn(n).size(), m) * count_langford(m, d, guards);
  r.census_count = BoundValue(res.outputs.size());
  r.satisfied = ExactRational(*r.census_count) == r.bound_value;
  return res;
}

struct ExtendedCensus {
  CountReport report;
  std::vector<ExtendedSkolemSeq> outputs;
};

inline ExtendedCensus run_census_extended(int m, int n, bool include_trivial,
                                          const CensusGuards& guards = {}) {
  ExtendedCensus res;
  res.outputs = constructive_census_extended(m, n, include_trivial, guards);
  auto& r = res.report;
  r.bound_name = "theorem-4-4-census";
  r.params = {{"m", m}, {"n", n}, {"include_trivial", include_trivial},
              {"order_out", m * n + (n - 1) / 2}};
  r.bound_value = 2 * detail::pow_count(enumerate_Sn(n).size(), m) *
                  count_extended(m, include_trivial, guards);
  r.census_count = BoundValue(res.outputs.size());
  r.satisfied = ExactRational(*r.census_count) == r.bound_value;
  return res;
}

/// sigma_m >= 2^floor(m/3) for m = 0,1 (mod 4).
inline CountReport bound_theorem_1_1(int m, const CensusGuards& guards = {}) {
  detail::require_residue_01(m);
  CountReport r;
  r.bound_name = "theorem-1-1";
  r.params = {{"m", m}, {"d", 1}};
  r.bound_value = detail::pow_count(2, m / 3);
  r.exact_count = count_langford(m, 1, guards);
  r.satisfied = ExactRational(*r.exact_count) >= r.bound_value;
  return r;
}

/// lambda_{mn}^{d'} >= |Sn|^m * lambda_m^d with d' = nd-(n-1)/2, odd n.
inline CountReport bound_theorem_3_3(int m, int n, int d, const CensusGuards& guards = {}) {
  detail::require_odd(n);
  CountReport r;
  r.bound_name = "theorem-3-3";
  const int d_out = n * d - (n - 1) / 2;
  r.params = {{"m", m}, {"n", n}, {"d", d}, {"order_out", m * n}, {"defect_out", d_out}};
  r.bound_value = detail::pow_count(enumerate_Sn(n).size(), m) * count_langford(m, d, guards);
  detail::settle_langford_report(r, m, n, d, guards);
  return r;
}

/// lambda_{mn}^{(n+1)/2} >= |Sn|^m * 2^floor(m/3), m = 0,1 (mod 4), odd n.
inline CountReport bound_corollary_3_4(int m, int n, const CensusGuards& guards = {}) {
  detail::require_odd(n);
  detail::require_residue_01(m);
  CountReport r;
  r.bound_name = "corollary-3-4";
  r.params = {{"m", m}, {"n", n}, {"order_out", m * n}, {"defect_out", (n + 1) / 2}};
  r.bound_value = detail::pow_count(enumerate_Sn(n).size(), m) * detail::pow_count(2, m / 3);
  detail::settle_langford_report(r, m, n, 1, guards);
  return r;
}

/// lambda_{mn}^{(n+1)/2} >= (5/2 * 2^floor((n-1)/3) + 2)^m * 2^floor(m/3).
/// The base is non-integral when floor((n-1)/3) = 0, so the bound is kept
/// as an exact rational. The cycle-count bound feeding this inequality is
/// only established for n >= 11; smaller n is reported as out of range.
inline CountReport bound_remark(int m, int n, const CensusGuards& guards = {}) {
  detail::require_odd(n);
  detail::require_residue_01(m);
  CountReport r;
  r.bound_name = "remark";
  r.params = {{"m", m}, {"n", n}, {"order_out", m * n}, {"defect_out", (n + 1) / 2}};
  ExactRational base = ExactRational(5, 2) * detail::pow_count(2, (n - 1) / 3) + 2;
  ExactRational b = 1;
  for (int i = 0; i < m; ++i) b *= base;
  r.bound_value = b * detail::pow_count(2, m / 3);
  if (n < 11) r.notes.push_back("n < 11 is outside the range of the cycle-count bound");
  detail::settle_langford_report(r, m, n, 1, guards);
  return r;
}

/// Extended-sequence bound 2 * |Sn|^m * epsilon_m, odd n, compared against
/// the exact count at the construction's output order mn+(n-1)/2.
inline CountReport bound_theorem_4_4(int m, int n, bool include_trivial = false,
                                     const CensusGuards& guards = {}) {
  detail::require_odd(n);
  if (n < 3) throw Error(Errc::BadArgument, "bound needs n >= 3").with("n", n);
  CountReport r;
  r.bound_name = "theorem-4-4";
  const int m_out = m * n + (n - 1) / 2;
  const BoundValue eps_all = count_extended(m, true, guards);
  const BoundValue eps_nontrivial = count_extended(m, false, guards);
  const BoundValue& eps = include_trivial ? eps_all : eps_nontrivial;
  r.params = {{"m", m},
              {"n", n},
              {"order_out", m_out},
              {"include_trivial", include_trivial},
              {"epsilon_m_with_trivial", eps_all.str()},
              {"epsilon_m_without_trivial", eps_nontrivial.str()}};
  r.bound_value = 2 * detail::pow_count(enumerate_Sn(n).size(), m) * eps;
  r.notes.push_back("bound compared at the construction's output order mn+(n-1)/2");
  if (2 * m_out <= guards.max_positions) {
    r.exact_count = count_extended(m_out, include_trivial, guards);
    r.satisfied = ExactRational(*r.exact_count) >= r.bound_value;
  } else {
    r.census_count =
        BoundValue(constructive_census_extended(m, n, include_trivial, guards).size());
    r.satisfied = ExactRational(*r.census_count) >= r.bound_value;
    r.notes.push_back("exact count not computed: target length exceeds the guard; "
                      "satisfied via constructive census");
  }
  return r;
}

}  // namespace forge
