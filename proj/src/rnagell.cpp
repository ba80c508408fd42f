#include "hbf/rnagell.hpp"

#include "hbf/error.hpp"

namespace hbf {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

std::string RNEquation::to_string() const {
  std::string lhs = (d1 == 1 ? "" : std::to_string(d1)) + "x^2 + " + std::to_string(d2);
  std::string rhs = (eta_sq == 1 ? "" : std::to_string(eta_sq) + "*") + std::to_string(p) + "^k";
  return lhs + " = " + rhs;
}

std::vector<RNSolution> rn_solve(const RNEquation& eq) {
  if (eq.d1 == 0 || eq.d2 == 0) throw Error(ErrorCode::PreconditionViolated, "d1 and d2 must be positive");
  if (eq.eta_sq != 1 && eq.eta_sq != 2 && eq.eta_sq != 4) {
    throw Error(ErrorCode::PreconditionViolated, "eta^2 must be 1, 2 or 4");
  }
  if (!is_prime(eq.p)) throw Error(ErrorCode::PreconditionViolated, std::to_string(eq.p) + " is not prime");
  if (eq.k_max < 0 || eq.k_max > 128) throw Error(ErrorCode::PreconditionViolated, "k_max must lie in [0, 128]");

  std::vector<RNSolution> out;
  BigInt power = 1;
  for (int k = 0; k <= eq.k_max; ++k, power *= eq.p) {
    const BigInt rhs = power * eq.eta_sq;
    if (rhs < eq.d2) continue;
    const BigInt diff = rhs - eq.d2;
    if (diff % eq.d1 != 0) continue;
    const BigInt sq = diff / eq.d1;
    const BigInt x = boost::multiprecision::sqrt(sq);
    if (x * x == sq) out.push_back(RNSolution{x, k});
  }
  return out;
}

RNLinkReport rn_link_to_kloosterman(int m1, int k_max) {
  if (m1 < 3 || m1 % 2 == 0 || m1 > 64) {
    throw Error(ErrorCode::PreconditionViolated, "m1 must be odd in [3, 64], got " + std::to_string(m1));
  }
  RNLinkReport report;
  report.m1 = m1;
  report.k_max = k_max;
  // 6 * 2^m1 - 5 = 1 (mod 3), never 3 X^2
  const BigInt six = BigInt(6) << m1;
  report.q_zero_branch_empty = (six - 5) % 3 != 0;

  auto add = [&](const RNEquation& eq, const char* branch, std::int64_t scale) {
    for (const RNSolution& s : rn_solve(eq)) {
      if (s.k != m1) continue;
      const auto x = static_cast<std::int64_t>(s.x);
      // 1 - K = +-scale * x
      for (const std::int64_t one_minus_k : {scale * x, -scale * x}) {
        RNCandidate c{eq.to_string(), branch, x, 1 - one_minus_k, (1 - one_minus_k) % 4 == 0};
        if (one_minus_k == 0 && !report.candidates.empty() && report.candidates.back().k_value == 1) continue;
        report.candidates.push_back(c);
        if (c.divisible_by_4) report.surviving_k.push_back(c.k_value);
      }
    }
  };
  add(RNEquation{3, 5, 4, 2, k_max}, "Q = 2*2^m1", 1);
  add(RNEquation{15, 1, 2, 2, k_max}, "Q = -4*2^m1", 5);
  return report;
}

}  // namespace hbf
