#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hbf {

using BigInt = boost::multiprecision::cpp_int;

/// d1 x^2 + d2 = eta_sq * p^k, searched for 0 <= k <= k_max.
struct RNEquation {
  std::uint64_t d1 = 1;
  std::uint64_t d2 = 1;
  std::uint64_t eta_sq = 1;  ///< 1, 2 or 4
  std::uint64_t p = 2;
  int k_max = 64;            ///< at most 128

  std::string to_string() const;  ///< "15x^2 + 1 = 2*2^k"
};

struct RNSolution {
  BigInt x;
  int k = 0;
  friend bool operator==(const RNSolution&, const RNSolution&) = default;
};

/// All (x, k) with x >= 0, k <= k_max, sorted by k. Complete only up to k_max.
/// PreconditionViolated on d1 = 0, d2 = 0, eta_sq outside {1, 2, 4}, composite p
/// or k_max outside [0, 128].
std::vector<RNSolution> rn_solve(const RNEquation& eq);

/// One Kloosterman value admitted by a Diophantine branch of the subfield
/// hyper-bentness condition.
struct RNCandidate {
  std::string equation;       ///< equation the pair solves
  std::string q_branch;       ///< which value of Q_m(a) the branch assumes
  std::int64_t x = 0;
  std::int64_t k_value = 0;   ///< K_{m1}(a) candidate
  bool divisible_by_4 = false;
};

/// For subfield a and b = beta^i, Lambda = 1 reads 3(1 - K_m) + Q_m = -5 with
/// 1 - K_m = (1 - K_{m1})^2 - 2 * 2^m1 and Q_m in {0, 2 * 2^m1, -4 * 2^m1}:
///   Q = 2 * 2^m1   ->  3 (1 - K_{m1})^2 + 5 = 4 * 2^m1
///   Q = -4 * 2^m1  ->  15 ((1 - K_{m1}) / 5)^2 + 1 = 2 * 2^m1
///   Q = 0          ->  3 (1 - K_{m1})^2 + 5 = 6 * 2^m1, impossible mod 3.
struct RNLinkReport {
  int m1 = 0;
  int k_max = 64;
  bool q_zero_branch_empty = true;
  std::vector<RNCandidate> candidates;    ///< every K from the two solvable branches at k = m1
  std::vector<std::int64_t> surviving_k;  ///< those with 4 | K
};

/// m1 odd, 3 <= m1 <= 64.
RNLinkReport rn_link_to_kloosterman(int m1, int k_max = 64);

}  // namespace hbf
