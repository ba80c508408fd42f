#include "hbf/boolfn.hpp"

#include <bit>
#include <cstdlib>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "hbf/family.hpp"

namespace hbf {

namespace {

std::uint64_t rotate_left(std::uint64_t j, int n) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return ((j << 1) | (j >> (n - 1))) & mask;
}

void check_exponent(std::uint64_t j, int n) {
  if (j >= (std::uint64_t{1} << n) - 1) {
    throw Error(ErrorCode::PreconditionViolated, "exponent " + std::to_string(j) + " is not below 2^" +
                                                     std::to_string(n) + " - 1");
  }
}

void require_degree(int n, int cap, std::string_view what) {
  if (n > cap) {
    throw Error(ErrorCode::DegreeUnsupported,
                std::string(what) + " needs n <= " + std::to_string(cap) + ", got " + std::to_string(n));
  }
}

}  // namespace

std::uint64_t coset_leader(std::uint64_t j, int n) {
  check_exponent(j, n);
  std::uint64_t best = j;
  std::uint64_t r = j;
  for (int s = 1; s < n; ++s) {
    r = rotate_left(r, n);
    best = std::min(best, r);
  }
  return best;
}

int coset_size(std::uint64_t j, int n) {
  check_exponent(j, n);
  std::uint64_t r = j;
  for (int s = 1; s <= n; ++s) {
    r = rotate_left(r, n);
    if (r == j) return s;
  }
  return n;
}

TraceTerm make_trace_term(const Field& field, std::uint64_t exponent, Elem coefficient) {
  const int n = field.degree();
  field.check(coefficient);
  const int o = coset_size(exponent, n);
  field.require_in_subfield(o, coefficient, "trace-term coefficient");
  // exponent = leader * 2^s
  const std::uint64_t leader = coset_leader(exponent, n);
  std::uint64_t r = leader;
  int s = 0;
  while (r != exponent) {
    r = rotate_left(r, n);
    ++s;
  }
  // c^(2^-s) = c^(2^(o-s)) inside GF(2^o)
  const Elem c = field.frobenius(coefficient, (o - s % o) % o);
  return TraceTerm{leader, c, o};
}

PointBatch::PointBatch(const Field& field, std::vector<Elem> points, std::span<const std::uint64_t> exponents)
    : points_(std::move(points)) {
  for (const Elem x : points_) field.check(x);
  for (const std::uint64_t e : exponents) {
    if (powers(e) != nullptr) continue;
    std::vector<Elem> p(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) p[i] = field.pow(points_[i], e);
    powers_.emplace_back(e, std::move(p));
  }
}

const std::vector<Elem>* PointBatch::powers(std::uint64_t exponent) const noexcept {
  for (const auto& [e, p] : powers_) {
    if (e == exponent) return &p;
  }
  return nullptr;
}

BooleanFunction::BooleanFunction(FieldPtr field, std::vector<TraceTerm> terms, bool epsilon)
    : field_(std::move(field)), terms_(std::move(terms)), epsilon_(epsilon) {
  for (const TraceTerm& t : terms_) {
    if (coset_leader(t.exponent, n()) != t.exponent || coset_size(t.exponent, n()) != t.trace_degree) {
      throw Error(ErrorCode::PreconditionViolated, "trace term exponent " + std::to_string(t.exponent) +
                                                       " is not a coset leader with matching degree");
    }
    field_->require_in_subfield(t.trace_degree, t.coefficient, "trace-term coefficient");
  }
}

bool BooleanFunction::evaluate_unchecked(Elem x) const {
  if (!table_.empty()) return table_[x.bits] != 0;
  bool v = epsilon_ && x.is_zero();
  for (const TraceTerm& t : terms_) {
    v ^= field_->subfield_trace(t.trace_degree, field_->mul(t.coefficient, field_->pow(x, t.exponent)));
  }
  return v;
}

bool BooleanFunction::evaluate(Elem x) const {
  field_->check(x);
  return evaluate_unchecked(x);
}

std::vector<std::uint8_t> BooleanFunction::evaluate(const PointBatch& batch) const {
  const auto& pts = batch.points();
  std::vector<std::uint8_t> out(pts.size(), 0);
  if (!table_.empty()) {
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = table_[pts[i].bits];
    return out;
  }
  if (epsilon_) {
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = pts[i].is_zero();
  }
  for (const TraceTerm& t : terms_) {
    const std::vector<Elem>* p = batch.powers(t.exponent);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Elem xj = p ? (*p)[i] : field_->pow(pts[i], t.exponent);
      out[i] ^= field_->subfield_trace(t.trace_degree, field_->mul(t.coefficient, xj));
    }
  }
  return out;
}

std::vector<std::uint8_t> BooleanFunction::build_table() const {
  require_degree(n(), kMaxSpectrumDegree, "truth table");
  if (!table_.empty()) return table_;
  const Field& f = *field_;
  const std::uint64_t order = f.group_order();
  std::vector<std::uint8_t> table(f.size(), 0);
  table[0] = evaluate_unchecked(Field::zero());
  // walk x = g^e; keep each term's c * x^j current by one multiply
  std::vector<Elem> step(terms_.size());
  std::vector<Elem> cur(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    step[t] = f.pow(f.generator(), terms_[t].exponent);
    cur[t] = terms_[t].coefficient;
  }
  Elem x = Field::one();
  for (std::uint64_t e = 0; e < order; ++e) {
    bool v = false;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      v ^= f.subfield_trace(terms_[t].trace_degree, cur[t]);
      cur[t] = f.mul(cur[t], step[t]);
    }
    table[x.bits] = v;
    x = f.mul(x, f.generator());
  }
  return table;
}

BooleanFunction BooleanFunction::materialized() const {
  BooleanFunction copy = *this;
  if (copy.table_.empty()) copy.table_ = build_table();
  return copy;
}

std::uint64_t BooleanFunction::weight() const {
  if (!table_.empty()) return std::accumulate(table_.begin(), table_.end(), std::uint64_t{0});
  const Field& f = *field_;
  std::uint64_t w = evaluate_unchecked(Field::zero());
  std::vector<Elem> step(terms_.size());
  std::vector<Elem> cur(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    step[t] = f.pow(f.generator(), terms_[t].exponent);
    cur[t] = terms_[t].coefficient;
  }
  for (std::uint64_t e = 0; e < f.group_order(); ++e) {
    bool v = false;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      v ^= f.subfield_trace(terms_[t].trace_degree, cur[t]);
      cur[t] = f.mul(cur[t], step[t]);
    }
    w += v;
  }
  return w;
}

void fwht(std::span<std::int32_t> data) {
  const std::size_t n = data.size();
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int32_t x = data[j];
        const std::int32_t y = data[j + h];
        data[j] = x + y;
        data[j + h] = x - y;
      }
    }
  }
}

std::vector<std::int32_t> vector_walsh(std::span<const std::uint8_t> table) {
  std::vector<std::int32_t> h(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) h[i] = table[i] ? -1 : 1;
  fwht(h);
  return h;
}

WalshSpectrum walsh_spectrum(const BooleanFunction& f) {
  const int n = f.n();
  require_degree(n, kMaxSpectrumDegree, "Walsh spectrum");
  const Field& field = f.field();
  std::vector<std::int32_t> h;
  if (f.has_table()) {
    h = vector_walsh(f.table());
  } else {
    h = vector_walsh(f.build_table());
  }
  // t(e_i) has bit j = Tr(x^i * x^j)
  std::vector<std::uint32_t> t_basis(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Elem p = field.mul(Elem{1u << i}, Elem{1u << j});
      if (field.abs_trace(p)) t_basis[i] |= 1u << j;
    }
  }
  WalshSpectrum out;
  out.values.assign(h.size(), 0);
  // Gray-code walk over w keeps t(w) current with one XOR
  std::uint32_t t = 0;
  out.values[0] = h[0];
  for (std::size_t i = 1; i < h.size(); ++i) {
    t ^= t_basis[std::countr_zero(i)];
    const std::size_t w = i ^ (i >> 1);
    out.values[w] = h[t];
  }
  for (const std::int32_t v : out.values) out.max_abs = std::max<std::int64_t>(out.max_abs, std::abs(v));
  return out;
}

std::int64_t walsh_direct(const BooleanFunction& f, Elem w) {
  const Field& field = f.field();
  field.check(w);
  std::int64_t sum = 0;
  for (std::uint64_t x = 0; x < field.size(); ++x) {
    const Elem e{static_cast<std::uint32_t>(x)};
    const bool bit = f.evaluate(e) ^ field.abs_trace(field.mul(w, e));
    sum += bit ? -1 : 1;
  }
  return sum;
}

bool is_bent_table(std::span<const std::uint8_t> table, int n) {
  if (n % 2 != 0) return false;
  const std::int32_t r = std::int32_t{1} << (n / 2);
  for (const std::int32_t v : vector_walsh(table)) {
    if (v != r && v != -r) return false;
  }
  return true;
}

bool is_bent(const BooleanFunction& f) {
  require_degree(f.n(), kMaxSpectrumDegree, "bentness test");
  if (f.n() % 2 != 0) return false;
  if (f.has_table()) return is_bent_table(f.table(), f.n());
  return is_bent_table(f.build_table(), f.n());
}

std::vector<std::uint64_t> coprime_class_representatives(int n) {
  const std::uint64_t order = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> reps;
  for (std::uint64_t i = 1; i < order; ++i) {
    if (std::gcd(i, order) == 1 && coset_leader(i, n) == i) reps.push_back(i);
  }
  if (order == 1) reps.push_back(0);
  return reps;
}

DefinitionalReport hyper_bent_definitional(const BooleanFunction& f) {
  const int n = f.n();
  require_degree(n, kMaxDefinitionalDegree, "definitional hyper-bent test");
  DefinitionalReport report;
  if (n % 2 != 0) return report;
  const Field& field = f.field();
  const std::uint64_t order = field.group_order();
  const std::vector<std::uint8_t> table = f.has_table() ? std::vector<std::uint8_t>(f.table().begin(), f.table().end())
                                                        : f.build_table();
  std::vector<std::uint32_t> exp(order);
  Elem y = Field::one();
  for (std::uint64_t e = 0; e < order; ++e) {
    exp[e] = y.bits;
    y = field.mul(y, field.generator());
  }
  const std::int32_t r = std::int32_t{1} << (n / 2);
  std::vector<std::int32_t> buf(field.size());
  for (const std::uint64_t i : coprime_class_representatives(n)) {
    ++report.classes_tested;
    // g(x) = f(x^i): g(0) = f(0), g(g^e) = f(g^(e i))
    buf[0] = table[0] ? -1 : 1;
    std::uint64_t ei = 0;
    for (std::uint64_t e = 0; e < order; ++e) {
      buf[exp[e]] = table[exp[ei]] ? -1 : 1;
      ei += i;
      if (ei >= order) ei -= order;
    }
    fwht(buf);
    for (const std::int32_t v : buf) {
      if (v != r && v != -r) {
        report.first_failing_exponent = i;
        return report;
      }
    }
  }
  report.hyper_bent = true;
  return report;
}

bool is_hyper_bent_definitional(const BooleanFunction& f) { return hyper_bent_definitional(f).hyper_bent; }

int anf_degree_table(std::span<const std::uint8_t> table, int n) {
  if (n < 0 || n > 32 || table.size() != (std::size_t{1} << n)) {
    throw Error(ErrorCode::PreconditionViolated, "truth table size does not match n = " + std::to_string(n));
  }
  std::vector<std::uint8_t> a(table.begin(), table.end());
  for (std::size_t h = 1; h < a.size(); h <<= 1) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i & h) a[i] ^= a[i ^ h];
    }
  }
  int deg = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i]) deg = std::max(deg, std::popcount(i));
  }
  return deg;
}

int anf_degree(const BooleanFunction& f) {
  require_degree(f.n(), kMaxSpectrumDegree, "ANF degree");
  if (f.has_table()) return anf_degree_table(f.table(), f.n());
  return anf_degree_table(f.build_table(), f.n());
}

URestrictionReport u_restriction(const BooleanFunction& f, const Family& family) {
  if (f.n() != family.n() || f.field().modulus() != family.field().modulus()) {
    throw Error(ErrorCode::ContextMismatch, "function and family live in different fields");
  }
  const Field& field = family.field();
  if (f.evaluate(Field::zero())) throw Error(ErrorCode::PreconditionViolated, "U-weight test needs f(0) = 0");

  URestrictionReport report;
  const std::size_t u_size = family.unity_group().size();
  if (f.n() <= kMaxDefinitionalDegree) {
    const std::vector<std::uint8_t> table =
        f.has_table() ? std::vector<std::uint8_t>(f.table().begin(), f.table().end()) : f.build_table();
    for (std::uint64_t x = 0; x < field.size(); ++x) {
      const Elem e{static_cast<std::uint32_t>(x)};
      if (table[x] != table[field.mul(family.lambda(), e).bits]) {
        throw Error(ErrorCode::InvarianceViolated, "f(lambda x) != f(x) at x = " + format_hex(x));
      }
    }
    report.invariance_points = field.size();
    for (const Elem u : family.unity_group()) report.weight_on_u += table[u.bits];
  } else {
    // batch layout: U, lambda U, R, lambda R
    const PointBatch& batch = family.invariance_batch();
    const std::vector<std::uint8_t> v = f.evaluate(batch);
    const std::size_t r = family.random_sample_size();
    auto check_block = [&](std::size_t base, std::size_t count) {
      for (std::size_t i = 0; i < count; ++i) {
        if (v[base + i] != v[base + count + i]) {
          throw Error(ErrorCode::InvarianceViolated,
                      "f(lambda x) != f(x) at x = " + format_hex(batch.points()[base + i].bits));
        }
      }
    };
    check_block(0, u_size);
    check_block(2 * u_size, r);
    report.invariance_points = u_size + r;
    for (std::size_t i = 0; i < u_size; ++i) report.weight_on_u += v[i];
  }
  report.hyper_bent = report.weight_on_u == (std::uint64_t{1} << (family.m() - 1));
  return report;
}

bool u_restriction_test(const BooleanFunction& f, const Family& family) { return u_restriction(f, family).hyper_bent; }

void write_spectrum(const std::string& path, const WalshSpectrum& spectrum, const BooleanFunction& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot open " + path + " for writing");
  for (const std::int32_t v : spectrum.values) {
    const auto u = static_cast<std::uint32_t>(v);
    const char bytes[4] = {static_cast<char>(u & 0xFF), static_cast<char>((u >> 8) & 0xFF),
                           static_cast<char>((u >> 16) & 0xFF), static_cast<char>((u >> 24) & 0xFF)};
    out.write(bytes, 4);
  }
  nlohmann::ordered_json side;
  side["schema"] = 1;
  side["n"] = f.n();
  side["modulus"] = format_hex(f.field().modulus());
  side["epsilon"] = f.epsilon();
  side["max_abs"] = spectrum.max_abs;
  auto terms = nlohmann::ordered_json::array();
  for (const TraceTerm& t : f.terms()) {
    terms.push_back({{"exponent", t.exponent}, {"coefficient", format_hex(t.coefficient.bits)},
                     {"trace_degree", t.trace_degree}});
  }
  side["terms"] = terms;
  std::ofstream meta(path + ".json");
  if (!meta) throw Error(ErrorCode::ParseError, "cannot open " + path + ".json for writing");
  meta << side.dump(2) << '\n';
}

}  // namespace hbf
