#include "hbf/field.hpp"

#include <cctype>
#include <utility>

namespace hbf {

std::uint64_t parse_hex(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.empty() || text.size() > 16) {
    throw Error(ErrorCode::ParseError, "bad hex literal '" + std::string(text) + "'");
  }
  std::uint64_t value = 0;
  for (const char c : text) {
    int digit;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      digit = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      digit = c - 'A' + 10;
    } else {
      throw Error(ErrorCode::ParseError, "bad hex literal '" + std::string(text) + "'");
    }
    value = (value << 4) | static_cast<std::uint64_t>(digit);
  }
  return value;
}

std::string format_hex(std::uint64_t value) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string digits;
  do {
    digits.insert(digits.begin(), kDigits[value & 0xF]);
    value >>= 4;
  } while (value != 0);
  return "0x" + digits;
}

std::vector<PrimePower> factorize(std::uint64_t n) {
  std::vector<PrimePower> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

Field::Field(int degree, std::optional<std::uint64_t> modulus, const ModulusTable& table) {
  if (degree < kMinDegree || degree > kMaxDegree) {
    throw Error(ErrorCode::DegreeUnsupported, "field degree " + std::to_string(degree) + " outside [2, 32]");
  }
  if (!modulus) {
    modulus = table.lookup(degree);
    if (!modulus) {
      throw Error(ErrorCode::InvalidFieldSpec, "no modulus for degree " + std::to_string(degree));
    }
  }
  if (detail::degree(*modulus) != degree) {
    throw Error(ErrorCode::InvalidFieldSpec,
                "modulus " + format_hex(*modulus) + " does not have degree " + std::to_string(degree));
  }
  if (!detail::is_irreducible(*modulus)) {
    throw Error(ErrorCode::InvalidFieldSpec, "modulus " + format_hex(*modulus) + " is reducible");
  }
  spec_ = FieldSpec{degree, *modulus};
  low_mask_ = (std::uint64_t{1} << degree) - 1;
  tail_ = static_cast<std::uint32_t>(*modulus & low_mask_);

  for (int i = 0; i < degree; ++i) {
    Elem basis{std::uint32_t{1} << i};
    Elem acc = basis;
    Elem y = basis;
    for (int j = 1; j < degree; ++j) {
      y = sqr(y);
      acc = add(acc, y);
    }
    if (acc.bits & 1u) trace_mask_ |= std::uint32_t{1} << i;
  }

  // Tr_1^d on GF(2^d) is bit 0 of the linear map y -> sum_{i<d} y^(2^i).
  subfield_trace_masks_.assign(static_cast<std::size_t>(degree) + 1, 0);
  for (int d = 1; d <= degree; ++d) {
    if (degree % d != 0) continue;
    std::uint32_t mask = 0;
    for (int i = 0; i < degree; ++i) {
      Elem y{std::uint32_t{1} << i};
      Elem acc = y;
      for (int j = 1; j < d; ++j) {
        y = sqr(y);
        acc = add(acc, y);
      }
      if (acc.bits & 1u) mask |= std::uint32_t{1} << i;
    }
    subfield_trace_masks_[static_cast<std::size_t>(d)] = mask;
  }

  factors_ = factorize(group_order());
  for (std::uint64_t candidate = 1; candidate <= low_mask_; ++candidate) {
    const Elem g{static_cast<std::uint32_t>(candidate)};
    if (order(g) == group_order()) {
      generator_ = g;
      break;
    }
  }
}

FieldPtr Field::make(int degree, std::optional<std::uint64_t> modulus, const ModulusTable& table) {
  return std::make_shared<const Field>(degree, modulus, table);
}

void Field::check(Elem x) const {
  if (!contains(x)) {
    throw Error(ErrorCode::ContextMismatch,
                "element " + format_hex(x.bits) + " is not in GF(2^" + std::to_string(degree()) + ")");
  }
}

Elem Field::inv0(Elem x) const noexcept {
  if (x.is_zero()) return zero();
  // extended Euclid in GF(2)[x]; invariants g1*x = u, g2*x = v (mod f)
  std::uint64_t u = x.bits, v = spec_.modulus;
  std::uint64_t g1 = 1, g2 = 0;
  while (u != 1) {
    int shift = detail::degree(u) - detail::degree(v);
    if (shift < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      shift = -shift;
    }
    u ^= v << shift;
    g1 ^= g2 << shift;
  }
  return Elem{static_cast<std::uint32_t>(detail::mod(g1, spec_.modulus))};
}

Elem Field::inv(Elem x) const {
  if (x.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "inverse of zero");
  return inv0(x);
}

Elem Field::pow(Elem x, std::uint64_t e) const noexcept {
  if (e == 0) return one();
  if (x.is_zero()) return zero();
  e %= group_order();
  Elem result = one();
  Elem base = x;
  while (e != 0) {
    if (e & 1u) result = mul(result, base);
    e >>= 1;
    if (e != 0) base = sqr(base);
  }
  return result;
}

Elem Field::frobenius(Elem x, int times) const noexcept {
  times %= degree();
  if (times < 0) times += degree();
  for (int i = 0; i < times; ++i) x = sqr(x);
  return x;
}

void Field::check_subfield_degree(int d) const {
  if (!divides_degree(d)) {
    throw Error(ErrorCode::InvalidSubfieldDegree,
                std::to_string(d) + " does not divide field degree " + std::to_string(degree()));
  }
}

Elem Field::rel_trace(int d, Elem x) const {
  check_subfield_degree(d);
  Elem acc = x;
  Elem y = x;
  for (int i = 1; i < degree() / d; ++i) {
    y = frobenius(y, d);
    acc = add(acc, y);
  }
  return acc;
}

bool Field::subfield_trace_checked(int d, Elem x) const {
  require_in_subfield(d, x, "subfield trace argument");
  return subfield_trace(d, x);
}

bool Field::in_subfield(int d, Elem x) const {
  check_subfield_degree(d);
  return contains(x) && frobenius(x, d) == x;
}

void Field::require_in_subfield(int d, Elem x, std::string_view what) const {
  if (!in_subfield(d, x)) {
    throw Error(ErrorCode::NotInSubfield,
                std::string(what) + " " + format_hex(x.bits) + " is not in GF(2^" + std::to_string(d) + ")");
  }
}

Elem Field::subfield_generator(int d) const {
  check_subfield_degree(d);
  const std::uint64_t sub_order = (std::uint64_t{1} << d) - 1;
  return pow(generator_, group_order() / sub_order);
}

std::vector<Elem> Field::subfield_elements(int d) const {
  const Elem gamma = subfield_generator(d);
  const std::uint64_t count = std::uint64_t{1} << d;
  std::vector<Elem> out;
  out.reserve(count);
  out.push_back(zero());
  Elem y = one();
  for (std::uint64_t j = 0; j + 1 < count; ++j) {
    out.push_back(y);
    y = mul(y, gamma);
  }
  return out;
}

std::vector<Elem> Field::unity_roots(std::uint64_t r) const {
  if (r == 0 || group_order() % r != 0) {
    throw Error(ErrorCode::OrderNotDividing,
                std::to_string(r) + " does not divide " + std::to_string(group_order()));
  }
  const Elem step = pow(generator_, group_order() / r);
  std::vector<Elem> out;
  out.reserve(r);
  Elem y = one();
  for (std::uint64_t t = 0; t < r; ++t) {
    out.push_back(y);
    y = mul(y, step);
  }
  return out;
}

std::uint64_t Field::order(Elem x) const {
  if (x.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "order of zero");
  std::uint64_t ord = group_order();
  for (const auto& [p, e] : factors_) {
    for (int i = 0; i < e && pow(x, ord / p) == one(); ++i) ord /= p;
  }
  return ord;
}

Elem Field::from_hex(std::string_view text) const {
  const std::uint64_t value = parse_hex(text);
  if ((value >> degree()) != 0) {
    throw Error(ErrorCode::ContextMismatch,
                "element " + std::string(text) + " is not in GF(2^" + std::to_string(degree()) + ")");
  }
  return Elem{static_cast<std::uint32_t>(value)};
}

Elem eval_gf2_poly(const Field& field, std::uint64_t poly_bits, Elem x) {
  Elem acc = Field::zero();
  for (int i = detail::degree(poly_bits); i >= 0; --i) {
    acc = field.mul(acc, x);
    if ((poly_bits >> i) & 1u) acc = Field::add(acc, Field::one());
  }
  return acc;
}

}  // namespace hbf
