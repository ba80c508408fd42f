#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hbf/field.hpp"
#include "hbf/parallel.hpp"
#include "hbf/poly.hpp"

namespace hbf {

/// (r, s) of the Weil polynomial x^4 + r x^3 + s x^2 + 2^m r x + 2^(2m).
struct WeilPair {
  std::int64_t r = 0;
  std::int64_t s = 0;
  friend bool operator==(const WeilPair&, const WeilPair&) = default;
};

/// Point counts of y^2 + y = a(x^5 + x^3 + x), point at infinity included.
struct CurveCounts {
  std::int64_t n1 = 0;  ///< over GF(2^m)
  std::int64_t n2 = 0;  ///< over GF(2^(2m))
};

// Direct summations over the degree-m subfield of `field`. `a` must lie in
// that subfield; NotInSubfield otherwise.

/// K_m(a) = sum_x (-1)^Tr(ax + 1/x), with 1/0 := 0 (so K_m(0) = 0).
std::int64_t kloosterman(const Field& field, int m, Elem a);

/// Q_m(a) = sum_x (-1)^Tr(a(x^5 + x^3 + x)); a != 0.
std::int64_t weil_q(const Field& field, int m, Elem a);

/// 1 + 2 #{x in GF(2^degree) : Tr(a(x^5+x^3+x)) = 0}; a != 0 in GF(2^degree).
std::int64_t curve_points(const Field& field, int degree, Elem a);

/// Both point counts; needs 2m | field degree.
CurveCounts curve_counts(const Field& field, int m, Elem a);

/// Row of the (r, s) table for `pattern` whose r equals q_value. Even m uses
/// the four-row table, odd m the three-row one. Throws PatternMismatch.
WeilPair weil_pair_resolve(const FactorPattern& pattern, int m, std::int64_t q_value);

/// 1 - K_{2 m1}(a) == (1 - K_{m1}(a))^2 - 2 * 2^m1, each side summed independently.
bool kloosterman_descent_check(const Field& field, int m1, Elem a);

/// Lower/upper ends of the interval [1 - 2^((m+2)/2), 1 + 2^((m+2)/2)], floored/ceiled
/// to integers (the bound is irrational for odd m).
std::pair<std::int64_t, std::int64_t> kloosterman_bounds(int m);

/// K_d(a) and Q_d(a) for every a in GF(2^d) at once, via discrete-log
/// indexed trace tables: a = gamma^A, x = gamma^j turns both sums into cyclic
/// correlations of a +-1 sequence. Independent of the element-wise sums above,
/// which the tests hold it against.
class SubfieldSums {
 public:
  SubfieldSums(const Field& field, int d, unsigned workers = default_workers());

  int degree() const noexcept { return d_; }
  std::int64_t kloosterman(Elem a) const;
  std::int64_t weil_q(Elem a) const;

  /// Nonzero subfield elements in discrete-log order gamma^0, gamma^1, ...
  const std::vector<Elem>& elements() const noexcept { return exp_; }
  /// Values aligned with `elements()`.
  const std::vector<std::int32_t>& kloosterman_values() const noexcept { return k_; }
  const std::vector<std::int32_t>& weil_q_values() const noexcept { return q_; }

 private:
  std::size_t log_of(Elem a) const;

  int d_;
  std::vector<Elem> exp_;
  std::unordered_map<std::uint32_t, std::uint32_t> log_;
  std::vector<std::int32_t> k_;
  std::vector<std::int32_t> q_;
};

}  // namespace hbf
