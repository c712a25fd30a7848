#pragma once

#include <algorithm>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "forge/errors.hpp"

// Langford / Skolem / extended Skolem sequences with strict validators.
//
// A Langford sequence of order m and defect d holds every symbol
// k in [d, d+m-1] exactly twice, the two copies exactly k positions apart.
// Defect 1 is the Skolem case. The extended variant has odd length 2m+1
// and one extra position holding a single 0; symbols are [1, m].
//
// Positions are 1-based throughout, including in error details.

namespace forge {

namespace detail {

// shared two-copies-gap-k check over symbols [lo, lo+m-1]; values are
// 1-based positions of each symbol's first/second occurrence
inline void check_pairs(const std::vector<int>& values, int lo, int m) {
  std::vector<int> first(m, 0), second(m, 0), count(m, 0);
  for (int p = 1; p <= static_cast<int>(values.size()); ++p) {
    int v = values[p - 1];
    if (v == 0) continue;  // extended case: zero handled by the caller
    if (v < lo || v >= lo + m)
      throw Error(Errc::BadSymbol, "symbol outside the admissible range")
          .with("symbol", v)
          .with("position", p);
    int idx = v - lo;
    if (count[idx] == 0)
      first[idx] = p;
    else
      second[idx] = p;
    ++count[idx];
  }
  for (int idx = 0; idx < m; ++idx) {
    if (count[idx] != 2)
      throw Error(Errc::BadMultiplicity, "symbol must occur exactly twice")
          .with("symbol", lo + idx)
          .with("count", count[idx]);
  }
  for (int idx = 0; idx < m; ++idx) {
    int k = lo + idx;
    if (second[idx] - first[idx] != k)
      throw Error(Errc::BadGap, "occurrences are not k apart")
          .with("symbol", k)
          .with("first", first[idx])
          .with("second", second[idx]);
  }
}

}  // namespace detail

class LangfordSeq {
 public:
  /// Validates `values` as a Langford sequence of defect `d`; the order is
  /// recomputed from the length. Throws Error on any violation.
  static LangfordSeq validate(std::vector<int> values, int d) {
    if (d < 1) throw Error(Errc::BadArgument, "defect must be >= 1").with("defect", d);
    if (values.empty() || values.size() % 2 != 0)
      throw Error(Errc::WrongLength, "length must be a positive even number")
          .with("length", static_cast<long long>(values.size()));
    int m = static_cast<int>(values.size()) / 2;
    detail::check_pairs(values, d, m);
    return LangfordSeq(std::move(values), m, d);
  }

  int order() const noexcept { return order_; }
  int defect() const noexcept { return defect_; }
  bool is_skolem() const noexcept { return defect_ == 1; }
  const std::vector<int>& values() const noexcept { return values_; }

  friend bool operator==(const LangfordSeq& a, const LangfordSeq& b) {
    return a.values_ == b.values_ && a.defect_ == b.defect_;
  }
  friend bool operator<(const LangfordSeq& a, const LangfordSeq& b) {
    return a.values_ < b.values_;
  }

 private:
  LangfordSeq(std::vector<int> values, int m, int d)
      : values_(std::move(values)), order_(m), defect_(d) {}

  std::vector<int> values_;
  int order_;
  int defect_;
};

class ExtendedSkolemSeq {
 public:
  /// Validates `values` as an extended Skolem sequence (2m+1 entries, one
  /// zero anywhere, symbols [1,m] in Skolem position pairs).
  static ExtendedSkolemSeq validate(std::vector<int> values) {
    if (values.size() < 3 || values.size() % 2 != 1)
      throw Error(Errc::WrongLength, "length must be odd and at least 3")
          .with("length", static_cast<long long>(values.size()));
    int m = (static_cast<int>(values.size()) - 1) / 2;
    int zeros = 0, zero_pos = 0;
    for (int p = 1; p <= static_cast<int>(values.size()); ++p) {
      if (values[p - 1] == 0) {
        ++zeros;
        zero_pos = p;
      }
    }
    if (zeros != 1)
      throw Error(Errc::ZeroCount, "exactly one zero entry required").with("zeros", zeros);
    detail::check_pairs(values, 1, m);
    return ExtendedSkolemSeq(std::move(values), m, zero_pos);
  }

  int order() const noexcept { return order_; }
  const std::vector<int>& values() const noexcept { return values_; }
  /// 1-based position of the unique zero.
  int zero_pos() const noexcept { return zero_pos_; }
  /// zero at the second-to-last position
  bool is_hooked() const noexcept { return zero_pos_ == 2 * order_; }
  /// zero at the first or last position
  bool is_trivial() const noexcept {
    return zero_pos_ == 1 || zero_pos_ == 2 * order_ + 1;
  }

  friend bool operator==(const ExtendedSkolemSeq& a, const ExtendedSkolemSeq& b) {
    return a.values_ == b.values_;
  }
  friend bool operator<(const ExtendedSkolemSeq& a, const ExtendedSkolemSeq& b) {
    return a.values_ < b.values_;
  }

 private:
  ExtendedSkolemSeq(std::vector<int> values, int m, int zero_pos)
      : values_(std::move(values)), order_(m), zero_pos_(zero_pos) {}

  std::vector<int> values_;
  int order_;
  int zero_pos_;
};

/// Existence predicate for Langford sequences of order m and defect d:
/// m >= 2d-1, and m = 0,1 (mod 4) for odd d, m = 0,3 (mod 4) for even d.
inline bool langford_exists(int m, int d) {
  if (m < 1 || d < 1) throw Error(Errc::BadArgument, "m and d must be >= 1");
  if (m < 2 * d - 1) return false;
  int r = m % 4;
  return (d % 2 == 1) ? (r == 0 || r == 1) : (r == 0 || r == 3);
}

inline bool skolem_exists(int m) { return langford_exists(m, 1); }

// --- text format -----------------------------------------------------------
// One sequence per line: base-10 symbols joined by single commas, no spaces.

inline std::string format_sequence(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

inline std::vector<int> parse_sequence_line(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' ||
                           line.back() == ' ' || line.back() == '\t'))
    line.remove_suffix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
    line.remove_prefix(1);
  if (line.empty()) throw Error(Errc::BadFormat, "empty sequence line");

  std::vector<int> values;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (true) {
    int v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || next == p)
      throw Error(Errc::BadFormat, "expected a base-10 integer")
          .with("offset", p - line.data());
    values.push_back(v);
    p = next;
    if (p == end) break;
    if (*p != ',')
      throw Error(Errc::BadFormat, "expected ',' between symbols")
          .with("offset", p - line.data());
    ++p;
    if (p == end) throw Error(Errc::BadFormat, "trailing comma");
  }
  return values;
}

}  // namespace forge
