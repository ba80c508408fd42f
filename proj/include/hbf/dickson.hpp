#pragma once

#include <bitset>
#include <cstdint>
#include <string>

#include "hbf/field.hpp"

namespace hbf {

inline constexpr int kMaxDicksonIndex = 64;

/// Dickson polynomial D_r over GF(2): D_0 = 0, D_1 = x, D_{i+2} = x D_{i+1} + D_i.
struct DicksonPoly {
  int r = 0;
  std::bitset<kMaxDicksonIndex + 1> coeffs;  ///< bit j = coefficient of x^j

  int degree() const;
  std::string to_string() const;  ///< "x + x^3 + x^5"
};

/// Coefficients of D_r, 0 <= r <= 64 (cached table).
const DicksonPoly& dickson(int r);

/// D_r(x) in the field of x. Uses the coefficient table for r <= 64 and the
/// value recurrence beyond.
Elem dickson_eval(const Field& field, int r, Elem x);

/// D_r(x) by running the three-term recurrence on values.
Elem dickson_eval_recurrence(const Field& field, int r, Elem x);

/// Brute-force count #{x in GF(2^m) : D_k(x) = D_k(x0)} against the
/// gcd(k, 2^m - 1) / gcd(k, 2^m + 1) preimage law. m = field degree.
bool preimage_count_check(const Field& field, int k, Elem x0);

/// The count predicted by the preimage law (same case split as above).
std::uint64_t preimage_count_predicted(const Field& field, int k, Elem x0);

class Family;

/// sum_{u in U} (-1)^Tr_1^n(a u^(p(2^m-1)))  ==  1 + 2 sum_{x : Tr_1^m(1/x) = 1} (-1)^Tr_1^m(a D_p(x)),
/// both sides summed independently. a != 0 in GF(2^m), p >= 1.
bool coset_sum_identity_check(const Family& family, int p, Elem a);

struct CosetSumSides {
  std::int64_t unity_side = 0;
  std::int64_t dickson_side = 0;
};
CosetSumSides coset_sum_sides(const Family& family, int p, Elem a);

}  // namespace hbf
