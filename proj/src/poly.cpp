#include "hbf/poly.hpp"

#include <cctype>

namespace hbf {

FactorPattern::FactorPattern(std::map<int, int> counts) {
  for (const auto& [degree, count] : counts) {
    if (degree < 1 || count < 0) throw Error(ErrorCode::ParseError, "invalid factor pattern entry");
    if (count > 0) counts_[degree] = count;
  }
}

FactorPattern FactorPattern::parse(std::string_view text) {
  std::map<int, int> counts;
  std::size_t i = 0;
  auto read_int = [&](std::size_t& pos) {
    const std::size_t start = pos;
    int v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    if (pos == start) throw Error(ErrorCode::ParseError, "bad factor pattern '" + std::string(text) + "'");
    return v;
  };
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorCode::ParseError, "bad factor pattern '" + std::string(text) + "'");
    ++i;
    const int degree = read_int(i);
    if (i >= text.size() || text[i] != ')') {
      throw Error(ErrorCode::ParseError, "bad factor pattern '" + std::string(text) + "'");
    }
    ++i;
    int count = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      count = read_int(i);
    }
    counts[degree] += count;
  }
  return FactorPattern(std::move(counts));
}

int FactorPattern::count(int degree) const {
  auto it = counts_.find(degree);
  return it == counts_.end() ? 0 : it->second;
}

int FactorPattern::total_degree() const {
  int total = 0;
  for (const auto& [degree, count] : counts_) total += degree * count;
  return total;
}

std::string FactorPattern::to_string() const {
  std::string out;
  for (const auto& [degree, count] : counts_) {
    out += "(" + std::to_string(degree) + ")";
    if (count > 1) out += "^" + std::to_string(count);
  }
  return out;
}

PolyRing::PolyRing(const Field& field, int base_degree) : field_(&field), base_degree_(base_degree) {
  field.check_subfield_degree(base_degree);
}

Poly PolyRing::add(const Poly& p, const Poly& q) const {
  std::vector<Elem> out(std::max(p.coeffs.size(), q.coeffs.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int idx = static_cast<int>(i);
    out[i] = Field::add(p.coeff(idx), q.coeff(idx));
  }
  return Poly(std::move(out));
}

Poly PolyRing::mul(const Poly& p, const Poly& q) const {
  if (p.is_zero() || q.is_zero()) return Poly{};
  std::vector<Elem> out(p.coeffs.size() + q.coeffs.size() - 1);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (p.coeffs[i].is_zero()) continue;
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
      out[i + j] = Field::add(out[i + j], field_->mul(p.coeffs[i], q.coeffs[j]));
    }
  }
  return Poly(std::move(out));
}

Poly PolyRing::scale(const Poly& p, Elem c) const {
  std::vector<Elem> out(p.coeffs.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->mul(p.coeffs[i], c);
  return Poly(std::move(out));
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& p, const Poly& q) const {
  if (q.is_zero()) throw Error(ErrorCode::DivisionByZeroPoly, "polynomial division by zero");
  if (p.degree() < q.degree()) return {Poly{}, p};
  std::vector<Elem> r = p.coeffs;
  std::vector<Elem> quo(static_cast<std::size_t>(p.degree() - q.degree() + 1));
  const Elem lead_inv = field_->inv(q.lead());
  const int dq = q.degree();
  for (int i = p.degree(); i >= dq; --i) {
    const Elem c = field_->mul(r[static_cast<std::size_t>(i)], lead_inv);
    if (c.is_zero()) continue;
    quo[static_cast<std::size_t>(i - dq)] = c;
    for (int j = 0; j <= dq; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - dq + j)];
      slot = Field::add(slot, field_->mul(c, q.coeffs[static_cast<std::size_t>(j)]));
    }
  }
  r.resize(static_cast<std::size_t>(dq));
  return {Poly(std::move(quo)), Poly(std::move(r))};
}

Poly PolyRing::div_exact(const Poly& p, const Poly& q) const {
  auto [quo, r] = divmod(p, q);
  if (!r.is_zero()) throw Error(ErrorCode::CrossCheckFailure, "inexact polynomial division");
  return quo;
}

Poly PolyRing::monic(const Poly& p) const {
  if (p.is_zero()) return p;
  return scale(p, field_->inv(p.lead()));
}

Poly PolyRing::gcd(const Poly& p, const Poly& q) const {
  Poly a = p, b = q;
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly PolyRing::derivative(const Poly& p) const {
  if (p.degree() < 1) return Poly{};
  std::vector<Elem> out(static_cast<std::size_t>(p.degree()));
  for (std::size_t i = 1; i < p.coeffs.size(); i += 2) out[i - 1] = p.coeffs[i];
  return Poly(std::move(out));
}

Elem PolyRing::eval(const Poly& p, Elem x) const {
  Elem acc = Field::zero();
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = Field::add(field_->mul(acc, x), *it);
  return acc;
}

Poly PolyRing::frobenius_power_x(int d, const Poly& modulus) const {
  if (modulus.degree() < 1) throw Error(ErrorCode::PreconditionViolated, "Frobenius modulus must be nonconstant");
  if (d < 1) throw Error(ErrorCode::PreconditionViolated, "Frobenius power must be >= 1");
  Poly acc = rem(Poly::x(), modulus);
  const long squarings = static_cast<long>(base_degree_) * d;
  for (long i = 0; i < squarings; ++i) {
    // squaring is additive in characteristic 2: (sum c_i x^i)^2 = sum c_i^2 x^(2i)
    std::vector<Elem> sq(acc.coeffs.empty() ? 0 : 2 * acc.coeffs.size() - 1);
    for (std::size_t j = 0; j < acc.coeffs.size(); ++j) sq[2 * j] = field_->sqr(acc.coeffs[j]);
    acc = rem(Poly(std::move(sq)), modulus);
  }
  return acc;
}

std::string PolyRing::to_string(const Poly& p) const {
  if (p.is_zero()) return "0x0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Elem c = p.coeff(i);
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += field_->to_hex(c);
    if (i >= 2) {
      out += " x^" + std::to_string(i);
    } else if (i == 1) {
      out += " x";
    }
  }
  return out;
}

Poly quintic_polynomial(const Field& field, Elem a) {
  const Elem a_inv = field.inv(a);
  return Poly({a_inv, Field::one(), Elem{0}, Elem{0}, Elem{0}, Field::one()});
}

FactorPattern quintic_pattern(const Field& field, int m, Elem a) {
  field.require_in_subfield(m, a, "quintic parameter a");
  const PolyRing ring(field, m);
  const Poly p = quintic_polynomial(field, a);

  // Squarefree: P(1) = a^-1 != 0 and P' = (x+1)^4.
  std::map<int, int> counts;
  const Poly x = Poly::x();
  const Poly linear = ring.gcd(p, ring.add(ring.frobenius_power_x(1, p), x));
  if (linear.degree() > 0) counts[1] = linear.degree();
  const Poly rest1 = ring.div_exact(p, linear);
  int remaining = rest1.degree();
  if (remaining >= 2) {
    const Poly quadratic = ring.gcd(rest1, ring.add(ring.frobenius_power_x(2, rest1), x));
    if (quadratic.degree() > 0) counts[2] = quadratic.degree() / 2;
    remaining -= quadratic.degree();
  }
  if (remaining == 1 || remaining == 2) {
    throw Error(ErrorCode::CrossCheckFailure, "distinct-degree factorization left degree " + std::to_string(remaining));
  }
  // every remaining factor has degree >= 3 and they sum to <= 5: exactly one
  if (remaining >= 3) counts[remaining] = 1;
  FactorPattern pattern(std::move(counts));
  if (pattern.total_degree() != 5) {
    throw Error(ErrorCode::CrossCheckFailure, "quintic pattern " + pattern.to_string() + " does not sum to 5");
  }
  return pattern;
}

bool quadratic_reducible(const Field& field, int m, Elem x0) {
  field.require_in_subfield(m, x0, "quadratic coefficient x0");
  return !field.subfield_trace(m, field.inv(x0));
}

const std::vector<FactorPattern>& even_degree_quintic_patterns() {
  static const std::vector<FactorPattern> patterns = {
      FactorPattern::parse("(5)"), FactorPattern::parse("(1)^2(3)"), FactorPattern::parse("(1)(2)^2"),
      FactorPattern::parse("(1)^5")};
  return patterns;
}

const std::vector<FactorPattern>& odd_degree_quintic_patterns() {
  static const std::vector<FactorPattern> patterns = {FactorPattern::parse("(1)(4)"), FactorPattern::parse("(2)(3)"),
                                                      FactorPattern::parse("(1)^3(2)")};
  return patterns;
}

}  // namespace hbf
