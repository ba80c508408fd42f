#include "hbf/dickson.hpp"

#include <array>
#include <numeric>

#include "hbf/family.hpp"
#include "hbf/poly.hpp"

namespace hbf {

namespace {

void check_index(int r) {
  if (r < 0) throw Error(ErrorCode::PreconditionViolated, "Dickson index must be >= 0, got " + std::to_string(r));
}

const std::array<DicksonPoly, kMaxDicksonIndex + 1>& table() {
  static const auto t = [] {
    std::array<DicksonPoly, kMaxDicksonIndex + 1> d;
    d[0].r = 0;
    d[1].r = 1;
    d[1].coeffs.set(1);
    for (int i = 2; i <= kMaxDicksonIndex; ++i) {
      d[i].r = i;
      d[i].coeffs = (d[i - 1].coeffs << 1) ^ d[i - 2].coeffs;
    }
    return d;
  }();
  return t;
}

}  // namespace

int DicksonPoly::degree() const {
  for (int j = kMaxDicksonIndex; j >= 0; --j) {
    if (coeffs.test(j)) return j;
  }
  return -1;
}

std::string DicksonPoly::to_string() const {
  std::string out;
  for (int j = 0; j <= kMaxDicksonIndex; ++j) {
    if (!coeffs.test(j)) continue;
    if (!out.empty()) out += " + ";
    out += j == 0 ? "1" : j == 1 ? "x" : "x^" + std::to_string(j);
  }
  return out.empty() ? "0" : out;
}

const DicksonPoly& dickson(int r) {
  check_index(r);
  if (r > kMaxDicksonIndex) {
    throw Error(ErrorCode::PreconditionViolated,
                "Dickson coefficients are tabled up to r = " + std::to_string(kMaxDicksonIndex));
  }
  return table()[r];
}

Elem dickson_eval_recurrence(const Field& field, int r, Elem x) {
  check_index(r);
  field.check(x);
  Elem d0 = Field::zero();
  Elem d1 = x;
  for (int i = 0; i < r; ++i) {
    const Elem next = Field::add(field.mul(x, d1), d0);
    d0 = d1;
    d1 = next;
  }
  return d0;
}

Elem dickson_eval(const Field& field, int r, Elem x) {
  check_index(r);
  if (r > kMaxDicksonIndex) return dickson_eval_recurrence(field, r, x);
  field.check(x);
  const DicksonPoly& d = table()[r];
  Elem acc = Field::zero();
  for (int j = d.degree(); j >= 0; --j) {
    acc = field.mul(acc, x);
    if (d.coeffs.test(j)) acc = Field::add(acc, Field::one());
  }
  return acc;
}

std::uint64_t preimage_count_predicted(const Field& field, int k, Elem x0) {
  if (k < 1) throw Error(ErrorCode::PreconditionViolated, "preimage law needs k >= 1");
  const int m = field.degree();
  const std::uint64_t d1 = std::gcd<std::uint64_t>(k, (std::uint64_t{1} << m) - 1);
  const std::uint64_t d2 = std::gcd<std::uint64_t>(k, (std::uint64_t{1} << m) + 1);
  if (dickson_eval(field, k, x0).is_zero()) return (d1 + d2) / 2;
  // x0 != 0 here since D_k(0) = 0. A reducible x^2 + x0 x + 1 puts the
  // roots y, 1/y in GF(2^m)*, where y^k has gcd(k, 2^m - 1) k-th roots;
  // otherwise they lie in the order-(2^m + 1) group.
  return quadratic_reducible(field, m, x0) ? d1 : d2;
}

bool preimage_count_check(const Field& field, int k, Elem x0) {
  const Elem y0 = dickson_eval(field, k, x0);
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < field.size(); ++x) {
    if (dickson_eval(field, k, Elem{static_cast<std::uint32_t>(x)}) == y0) ++count;
  }
  return count == preimage_count_predicted(field, k, x0);
}

CosetSumSides coset_sum_sides(const Family& family, int p, Elem a) {
  family.require_a(a);
  if (a.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "coset sum identity needs a != 0");
  if (p < 1) throw Error(ErrorCode::PreconditionViolated, "coset sum identity needs p >= 1");
  const Field& f = family.field();
  const int m = family.m();
  CosetSumSides out;
  const std::vector<Elem>& ud = *family.invariance_batch().powers(family.dillon_exponent());
  for (std::size_t t = 0; t < family.unity_group().size(); ++t) {
    out.unity_side += f.abs_trace(f.mul(a, f.pow(ud[t], static_cast<std::uint64_t>(p)))) ? -1 : 1;
  }
  std::int64_t acc = 0;
  for (const Elem x : f.subfield_elements(m)) {
    if (x.is_zero() || !f.subfield_trace(m, f.inv(x))) continue;
    acc += f.subfield_trace(m, f.mul(a, dickson_eval(f, p, x))) ? -1 : 1;
  }
  out.dickson_side = 1 + 2 * acc;
  return out;
}

bool coset_sum_identity_check(const Family& family, int p, Elem a) {
  const CosetSumSides s = coset_sum_sides(family, p, a);
  return s.unity_side == s.dickson_side;
}

}  // namespace hbf
