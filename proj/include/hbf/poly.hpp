#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hbf/field.hpp"

namespace hbf {

/// Univariate polynomial, coeffs[i] = coefficient of x^i, no trailing zeros.
struct Poly {
  std::vector<Elem> coeffs;

  Poly() = default;
  explicit Poly(std::vector<Elem> c) : coeffs(std::move(c)) { normalize(); }

  static Poly constant(Elem c) { return Poly({c}); }
  static Poly x() { return Poly({Elem{0}, Elem{1}}); }

  bool is_zero() const noexcept { return coeffs.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  Elem lead() const noexcept { return coeffs.empty() ? Elem{0} : coeffs.back(); }
  Elem coeff(int i) const noexcept {
    return i >= 0 && i < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(i)] : Elem{0};
  }

  void normalize() {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  }

  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Multiset of irreducible-factor degrees: degree -> number of distinct factors.
class FactorPattern {
 public:
  FactorPattern() = default;
  explicit FactorPattern(std::map<int, int> counts);

  /// Parses the "(1)(2)^2" notation.
  static FactorPattern parse(std::string_view text);

  const std::map<int, int>& counts() const noexcept { return counts_; }
  int count(int degree) const;
  int total_degree() const;
  bool is_irreducible() const { return counts_.size() == 1 && counts_.begin()->second == 1; }

  /// "(1)(2)^2", ascending degree.
  std::string to_string() const;

  friend bool operator==(const FactorPattern&, const FactorPattern&) = default;
  friend auto operator<=>(const FactorPattern&, const FactorPattern&) = default;

 private:
  std::map<int, int> counts_;
};

/// GF(2^base_degree)[x], with coefficients held as elements of `field`
/// (which must contain GF(2^base_degree) as a subfield). Only operations that
/// need the base field (Frobenius powers of x) look at `base_degree`.
class PolyRing {
 public:
  PolyRing(const Field& field, int base_degree);
  explicit PolyRing(const Field& field) : PolyRing(field, field.degree()) {}

  const Field& field() const noexcept { return *field_; }
  int base_degree() const noexcept { return base_degree_; }

  Poly add(const Poly& p, const Poly& q) const;
  Poly mul(const Poly& p, const Poly& q) const;
  Poly scale(const Poly& p, Elem c) const;
  /// Quotient and remainder; throws DivisionByZeroPoly.
  std::pair<Poly, Poly> divmod(const Poly& p, const Poly& q) const;
  Poly rem(const Poly& p, const Poly& q) const { return divmod(p, q).second; }
  Poly div_exact(const Poly& p, const Poly& q) const;
  Poly monic(const Poly& p) const;
  /// Monic gcd; gcd(0, 0) = 0.
  Poly gcd(const Poly& p, const Poly& q) const;
  Poly derivative(const Poly& p) const;
  Elem eval(const Poly& p, Elem x) const;

  /// x^((2^base_degree)^d) mod modulus, by base_degree*d squarings.
  Poly frobenius_power_x(int d, const Poly& modulus) const;

  /// "c_d x^d + ... + c_0" with hex coefficients.
  std::string to_string(const Poly& p) const;

 private:
  const Field* field_;
  int base_degree_;
};

/// Factor-degree pattern of x^5 + x + a^-1 over GF(2^m), a a nonzero element
/// of the degree-m subfield of `field`. Distinct-degree factorization with
/// d = 1, 2; the cofactor's degree settles the rest.
FactorPattern quintic_pattern(const Field& field, int m, Elem a);
inline FactorPattern quintic_pattern(const Field& field, Elem a) { return quintic_pattern(field, field.degree(), a); }

/// x^5 + x + a^-1 as a polynomial.
Poly quintic_polynomial(const Field& field, Elem a);

/// x^2 + x0 x + 1 is reducible over GF(2^m) iff Tr_1^m(1/x0) = 0.
bool quadratic_reducible(const Field& field, int m, Elem x0);
inline bool quadratic_reducible(const Field& field, Elem x0) { return quadratic_reducible(field, field.degree(), x0); }

/// Patterns of x^5+x+c admitted for even m: (5), (1)^2(3), (1)(2)^2, (1)^5.
const std::vector<FactorPattern>& even_degree_quintic_patterns();
/// Patterns admitted for odd m: (1)(4), (2)(3), (1)^3(2).
const std::vector<FactorPattern>& odd_degree_quintic_patterns();

}  // namespace hbf
