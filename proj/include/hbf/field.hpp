#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbf/detail/gf2x.hpp"
#include "hbf/error.hpp"
#include "hbf/modulus_table.hpp"

namespace hbf {

/// Element of GF(2^k) in polynomial basis: bit i is the coefficient of x^i.
struct Elem {
  std::uint32_t bits = 0;

  constexpr bool is_zero() const noexcept { return bits == 0; }
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct FieldSpec {
  int degree = 0;
  std::uint64_t modulus = 0;  ///< degree-k polynomial, bit i = coefficient of x^i
};

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

std::uint64_t parse_hex(std::string_view text);
std::string format_hex(std::uint64_t value);

/// Trial-division factorization; n >= 1.
std::vector<PrimePower> factorize(std::uint64_t n);

/// Binary field GF(2^k), 2 <= k <= 32. Immutable after construction and safe
/// to share between threads.
///
/// Subfields GF(2^d), d | k, live inside this field: membership is
/// Frobenius-fixedness and enumeration goes through the cyclic subgroup of
/// order 2^d - 1. There are no embedding maps between separate fields.
class Field {
 public:
  static constexpr int kMinDegree = 2;
  static constexpr int kMaxDegree = 32;

  /// Builds GF(2^degree). Without an explicit modulus the entry from `table`
  /// is used. The modulus is checked for irreducibility in either case.
  explicit Field(int degree, std::optional<std::uint64_t> modulus = std::nullopt,
                 const ModulusTable& table = ModulusTable::builtin());

  static std::shared_ptr<const Field> make(int degree, std::optional<std::uint64_t> modulus = std::nullopt,
                                           const ModulusTable& table = ModulusTable::builtin());

  int degree() const noexcept { return spec_.degree; }
  std::uint64_t modulus() const noexcept { return spec_.modulus; }
  const FieldSpec& spec() const noexcept { return spec_; }
  /// 2^k - 1, the order of the multiplicative group.
  std::uint64_t group_order() const noexcept { return (std::uint64_t{1} << spec_.degree) - 1; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << spec_.degree; }
  Elem generator() const noexcept { return generator_; }
  const std::vector<PrimePower>& group_order_factors() const noexcept { return factors_; }

  bool contains(Elem x) const noexcept { return (std::uint64_t{x.bits} >> spec_.degree) == 0; }
  /// Throws ContextMismatch when `x` is not a k-bit vector.
  void check(Elem x) const;

  static constexpr Elem zero() noexcept { return Elem{0}; }
  static constexpr Elem one() noexcept { return Elem{1}; }

  static constexpr Elem add(Elem x, Elem y) noexcept { return Elem{x.bits ^ y.bits}; }

  Elem mul(Elem x, Elem y) const noexcept {
    std::uint64_t p = detail::clmul32(x.bits, y.bits);
    const int k = spec_.degree;
    for (std::uint64_t hi = p >> k; hi != 0; hi = p >> k) {
      p = (p & low_mask_) ^ detail::clmul32(static_cast<std::uint32_t>(hi), tail_);
    }
    return Elem{static_cast<std::uint32_t>(p)};
  }

  Elem sqr(Elem x) const noexcept { return mul(x, x); }

  /// Multiplicative inverse; throws NonInvertibleZero for 0.
  Elem inv(Elem x) const;
  /// Inverse with the convention 1/0 := 0.
  Elem inv0(Elem x) const noexcept;

  /// x^e for any 64-bit exponent, 0^0 = 1.
  Elem pow(Elem x, std::uint64_t e) const noexcept;

  /// x^(2^times).
  Elem frobenius(Elem x, int times = 1) const noexcept;

  /// Absolute trace Tr_1^k(x) as a bit.
  bool abs_trace(Elem x) const noexcept { return std::popcount(x.bits & trace_mask_) & 1; }

  /// Sum of x^(2^(d*i)) for i < k/d; lands in GF(2^d). Throws InvalidSubfieldDegree.
  Elem rel_trace(int d, Elem x) const;

  /// Tr_1^d(x) for x already in GF(2^d). Precondition not checked (hot path);
  /// use `subfield_trace_checked` at API boundaries.
  bool subfield_trace(int d, Elem x) const noexcept {
    return std::popcount(x.bits & subfield_trace_masks_[d]) & 1;
  }
  bool subfield_trace_checked(int d, Elem x) const;

  bool divides_degree(int d) const noexcept { return d >= 1 && d <= spec_.degree && spec_.degree % d == 0; }
  void check_subfield_degree(int d) const;
  bool in_subfield(int d, Elem x) const;
  void require_in_subfield(int d, Elem x, std::string_view what) const;

  /// g^((2^k-1)/(2^d-1)), generator of GF(2^d)*.
  Elem subfield_generator(int d) const;
  /// 0 followed by gamma^0 .. gamma^(2^d-2), gamma = subfield_generator(d).
  std::vector<Elem> subfield_elements(int d) const;

  /// g^((2^k-1)/r * t) for t = 0..r-1. Throws OrderNotDividing.
  std::vector<Elem> unity_roots(std::uint64_t r) const;

  /// Multiplicative order of a nonzero element, via the factored group order.
  std::uint64_t order(Elem x) const;

  std::string to_hex(Elem x) const { return format_hex(x.bits); }
  /// Parses hex and checks the value fits in k bits.
  Elem from_hex(std::string_view text) const;

 private:
  FieldSpec spec_;
  std::uint64_t low_mask_ = 0;
  std::uint32_t tail_ = 0;  ///< modulus - x^k
  std::uint32_t trace_mask_ = 0;
  std::vector<std::uint32_t> subfield_trace_masks_;  ///< indexed by d; 0 where d does not divide k
  std::vector<PrimePower> factors_;
  Elem generator_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Evaluates a GF(2)[x] polynomial (bit-vector) at a field element.
Elem eval_gf2_poly(const Field& field, std::uint64_t poly_bits, Elem x);

}  // namespace hbf
