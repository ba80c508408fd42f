#include "hbf/family.hpp"

#include <algorithm>
#include <cctype>
#include <random>

#include "hbf/detail/gf2x.hpp"
#include "hbf/expsums.hpp"

namespace hbf {

namespace {

inline int chi(bool bit) { return bit ? -1 : 1; }

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void crosscheck(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::CrossCheckFailure, what);
}

}  // namespace

Family::Family(int n, std::uint64_t seed, const ModulusTable& table) : n_(n), seed_(seed) {
  if (n != 12 && n != 20 && n != 28) {
    throw Error(ErrorCode::UnsupportedN, "n must be one of 12, 20, 28 (n = 2m, m = 2 mod 4), got " + std::to_string(n));
  }
  field_ = Field::make(n, std::nullopt, table);
  const Field& f = *field_;
  const std::uint64_t u_order = (std::uint64_t{1} << m()) + 1;
  xi_ = f.pow(alpha(), dillon_exponent());
  beta_ = f.pow(alpha(), fifth_exponent());
  lambda_ = f.pow(alpha(), u_order);

  u_.reserve(u_order);
  Elem y = Field::one();
  for (std::uint64_t t = 0; t < u_order; ++t) {
    u_.push_back(y);
    y = f.mul(y, xi_);
  }
  crosscheck(y == Field::one() && f.order(xi_) == u_order, "xi does not have order 2^m + 1");
  for (std::uint64_t s = 0; 5 * s < u_order; ++s) v_.push_back(u_[5 * s]);
  crosscheck(v_.size() * 5 == u_order, "|V| != (2^m + 1) / 5");
  crosscheck(f.order(beta_) == 5 && f.in_subfield(4, beta_), "beta is not a primitive 5th root of unity in GF(16)");

  Elem powers[4] = {Field::one(), beta_, f.sqr(beta_), f.mul(f.sqr(beta_), beta_)};
  for (unsigned c = 0; c < 16; ++c) {
    Elem b = Field::zero();
    for (int i = 0; i < 4; ++i) {
      if (c & (1u << i)) b = Field::add(b, powers[i]);
    }
    gf16_[c] = b;
  }
  std::array<Elem, 16> sorted = gf16_;
  std::sort(sorted.begin(), sorted.end());
  crosscheck(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "{1, beta, beta^2, beta^3} is not a basis");

  // U, lambda U, R, lambda R
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(0, f.size() - 1);
  std::vector<Elem> pts;
  random_count_ = kInvarianceSamples;
  pts.reserve(2 * (u_.size() + random_count_));
  pts.insert(pts.end(), u_.begin(), u_.end());
  for (const Elem u : u_) pts.push_back(f.mul(lambda_, u));
  std::vector<Elem> r(random_count_);
  for (Elem& x : r) x = Elem{static_cast<std::uint32_t>(dist(rng))};
  pts.insert(pts.end(), r.begin(), r.end());
  for (const Elem x : r) pts.push_back(f.mul(lambda_, x));
  const std::uint64_t exps[2] = {dillon_exponent(), fifth_exponent()};
  batch_ = PointBatch(f, std::move(pts), exps);
}

Elem Family::b_from_coords(unsigned coords) const {
  if (coords > 15) throw Error(ErrorCode::ParseError, "b coordinates must be 4 bits, got " + std::to_string(coords));
  return gf16_[coords];
}

unsigned Family::coords_of(Elem b) const {
  for (unsigned c = 0; c < 16; ++c) {
    if (gf16_[c] == b) return c;
  }
  throw Error(ErrorCode::NotInSubfield, "b = " + format_hex(b.bits) + " is not in GF(16)");
}

Elem Family::parse_b(std::string_view text) const {
  const std::string s = lower(trim(text));
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty b");
  if (s.rfind("coords:", 0) == 0) {
    const std::string bits = s.substr(7);
    if (bits.size() != 4 || bits.find_first_not_of("01") != std::string::npos) {
      throw Error(ErrorCode::ParseError, "coords must be four binary digits, got '" + bits + "'");
    }
    unsigned c = 0;
    for (int i = 0; i < 4; ++i) c |= static_cast<unsigned>(bits[i] - '0') << i;
    return gf16_[c];
  }
  if (s.rfind("0x", 0) == 0) {
    const Elem b = field_->from_hex(s);
    require_b(b);
    return b;
  }
  Elem b = Field::zero();
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t plus = s.find('+', pos);
    const std::string term = trim(s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos));
    if (term == "0") {
    } else if (term == "1") {
      b = Field::add(b, Field::one());
    } else if (term == "beta") {
      b = Field::add(b, beta_);
    } else if (term.rfind("beta^", 0) == 0 && term.size() > 5 &&
               term.find_first_not_of("0123456789", 5) == std::string::npos && term.size() < 15) {
      b = Field::add(b, field_->pow(beta_, std::stoull(term.substr(5)) % 5));
    } else {
      throw Error(ErrorCode::ParseError, "cannot parse b term '" + term + "' in '" + std::string(text) + "'");
    }
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  return b;
}

std::string Family::b_name(Elem b) const {
  require_b(b);
  if (b.is_zero()) return "0";
  // two subsets of {1, beta, ..., beta^4} sum to b (they are complements); take the smaller
  Elem p[5];
  p[0] = Field::one();
  for (int i = 1; i < 5; ++i) p[i] = field_->mul(p[i - 1], beta_);
  unsigned best = 0;
  int best_size = 6;
  for (unsigned mask = 1; mask < 32; ++mask) {
    Elem s = Field::zero();
    for (int i = 0; i < 5; ++i) {
      if (mask & (1u << i)) s = Field::add(s, p[i]);
    }
    if (s == b && std::popcount(mask) < best_size) {
      best = mask;
      best_size = std::popcount(mask);
    }
  }
  std::string out;
  for (int i = 0; i < 5; ++i) {
    if (!(best & (1u << i))) continue;
    if (!out.empty()) out += "+";
    out += i == 0 ? "1" : i == 1 ? "beta" : "beta^" + std::to_string(i);
  }
  return out;
}

std::vector<Elem> Family::a_domain(bool subfield_only) const {
  return field_->subfield_elements(subfield_only ? m1() : m());
}

std::vector<Elem> Family::b_domain() const { return {gf16_.begin(), gf16_.end()}; }

BClass classify_b(const Family& family, Elem b) {
  family.require_b(b);
  const Field& f = family.field();
  const Elem one = Field::one();
  const Elem be = family.beta();
  const Elem b2 = f.pow(be, 2), b3 = f.pow(be, 3), b4 = f.pow(be, 4);
  if (b.is_zero()) return BClass::Zero;
  if (b == one) return BClass::One;
  if (Field::add(Field::add(f.pow(b, 4), b), one).is_zero()) return BClass::PrimitiveTraceZero;
  if (b == be || b == b4) return BClass::BetaOrBeta4;
  if (b == b2 || b == b3) return BClass::Beta2OrBeta3;
  if (b == Field::add(one, be) || b == Field::add(one, b4)) return BClass::OnePlusBetaOrBeta4;
  if (b == Field::add(one, b2) || b == Field::add(one, b3)) return BClass::OnePlusBeta2OrBeta3;
  if (b == Field::add(be, b4)) return BClass::BetaPlusBeta4;
  if (b == Field::add(b2, b3)) return BClass::Beta2PlusBeta3;
  throw Error(ErrorCode::CrossCheckFailure, "b = " + format_hex(b.bits) + " falls in no case of the table");
}

std::string_view bclass_name(BClass c) {
  switch (c) {
    case BClass::Zero: return "zero";
    case BClass::One: return "one";
    case BClass::PrimitiveTraceZero: return "primitive-trace-zero";
    case BClass::BetaOrBeta4: return "beta|beta^4";
    case BClass::Beta2OrBeta3: return "beta^2|beta^3";
    case BClass::OnePlusBetaOrBeta4: return "1+beta|1+beta^4";
    case BClass::OnePlusBeta2OrBeta3: return "1+beta^2|1+beta^3";
    case BClass::BetaPlusBeta4: return "beta+beta^4";
    case BClass::Beta2PlusBeta3: return "beta^2+beta^3";
  }
  return "?";
}

std::array<int, 3> bclass_coefficients(BClass c) {
  switch (c) {
    case BClass::Zero: return {1, 2, 2};
    case BClass::One: return {1, -2, -2};
    case BClass::PrimitiveTraceZero: return {1, 0, 0};
    case BClass::BetaOrBeta4: return {-1, -2, 0};
    case BClass::Beta2OrBeta3: return {-1, 0, -2};
    case BClass::OnePlusBetaOrBeta4: return {-1, 2, 0};
    case BClass::OnePlusBeta2OrBeta3: return {-1, 0, 2};
    case BClass::BetaPlusBeta4: return {1, 2, -2};
    case BClass::Beta2PlusBeta3: return {1, -2, 2};
  }
  return {0, 0, 0};
}

BooleanFunction f_ab(const Family& family, Elem a, Elem b) {
  family.require_a(a);
  family.require_b(b);
  const Field& f = family.field();
  std::vector<TraceTerm> terms;
  if (!a.is_zero()) terms.push_back(make_trace_term(f, family.dillon_exponent(), a));
  if (!b.is_zero()) terms.push_back(make_trace_term(f, family.fifth_exponent(), b));
  return BooleanFunction(family.field_ptr(), std::move(terms));
}

bool ps_ap_flag(const Family& family, Elem b) {
  family.require_b(b);
  return !family.field().subfield_trace(4, b);
}

CharacterSums s_sums(const Family& family, Elem a) {
  family.require_a(a);
  const Field& f = family.field();
  // the first |U| batch points are U itself, xi^t in order
  const std::vector<Elem>& ud = *family.invariance_batch().powers(family.dillon_exponent());
  const std::size_t u_size = family.unity_group().size();
  CharacterSums out;
  for (std::size_t t = 0; t < u_size; ++t) {
    const int c = chi(f.abs_trace(f.mul(a, ud[t])));
    out.s[t % 5] += c;
    out.lambda0 += c;
  }
  return out;
}

std::int64_t lambda_direct(const Family& family, Elem a, Elem b) {
  family.require_a(a);
  family.require_b(b);
  const Field& f = family.field();
  const PointBatch& batch = family.invariance_batch();
  const std::vector<Elem>& ud = *batch.powers(family.dillon_exponent());
  const std::vector<Elem>& u5 = *batch.powers(family.fifth_exponent());
  std::int64_t sum = 0;
  for (std::size_t t = 0; t < family.unity_group().size(); ++t) {
    sum += chi(f.abs_trace(f.mul(a, ud[t])) ^ f.subfield_trace(4, f.mul(b, u5[t])));
  }
  return sum;
}

namespace {

std::int64_t lambda_from_sums(const Family& family, Elem b, const CharacterSums& s) {
  const Field& f = family.field();
  const Elem be = family.beta();
  auto tr4 = [&](Elem x) { return chi(f.subfield_trace(4, x)); };
  const std::int64_t general = tr4(b) * s.s[0] +
                               (tr4(f.mul(b, f.pow(be, 2))) + tr4(f.mul(b, f.pow(be, 3)))) * s.s[1] +
                               (tr4(f.mul(b, be)) + tr4(f.mul(b, f.pow(be, 4)))) * s.s[2];
  const auto c = bclass_coefficients(classify_b(family, b));
  const std::int64_t tabled = c[0] * s.s[0] + c[1] * s.s[1] + c[2] * s.s[2];
  crosscheck(general == tabled, "trace-weighted S combination " + std::to_string(general) +
                                    " disagrees with the case table " + std::to_string(tabled) + " at b = " +
                                    format_hex(b.bits));
  return general;
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, Elem a, Elem b) {
  if (num % den != 0) {
    throw Error(ErrorCode::NonIntegralLambda, std::to_string(num) + " is not divisible by " + std::to_string(den) +
                                                  " at a = " + format_hex(a.bits) + ", b = " + format_hex(b.bits));
  }
  return num / den;
}

}  // namespace

std::int64_t lambda_prop32(const Family& family, Elem a, Elem b) {
  family.require_b(b);
  return lambda_from_sums(family, b, s_sums(family, a));
}

bool closed_form_applicable(const Family& family, Elem a, Elem b) {
  family.require_a(a);
  if (a.is_zero()) return false;
  const BClass c = classify_b(family, b);
  if (c == BClass::Zero || c == BClass::One || c == BClass::PrimitiveTraceZero) return true;
  return family.field().in_subfield(family.m1(), a);
}

std::int64_t lambda_closed_from(const Family& family, Elem a, Elem b, std::int64_t k, std::int64_t q) {
  if (!closed_form_applicable(family, a, b)) {
    throw Error(ErrorCode::PreconditionViolated,
                "no closed form for a = " + format_hex(a.bits) + ", b = " + family.b_name(b) +
                    " (needs a != 0, and a in GF(2^m1) unless b is 0, 1 or primitive of trace 0)");
  }
  const std::int64_t one_k = 1 - k;
  switch (classify_b(family, b)) {
    case BClass::Zero: return one_k;
    case BClass::One: return -exact_div(3 * one_k - 4 * q, 5, a, b);
    case BClass::PrimitiveTraceZero:
    case BClass::BetaPlusBeta4:
    case BClass::Beta2PlusBeta3: return exact_div(one_k + 2 * q, 5, a, b);
    case BClass::BetaOrBeta4:
    case BClass::Beta2OrBeta3: return -exact_div(3 * one_k + q, 5, a, b);
    case BClass::OnePlusBetaOrBeta4:
    case BClass::OnePlusBeta2OrBeta3: return exact_div(one_k - 3 * q, 5, a, b);
  }
  throw Error(ErrorCode::CrossCheckFailure, "unreachable b class");
}

std::int64_t lambda_closed(const Family& family, Elem a, Elem b) {
  if (!closed_form_applicable(family, a, b)) return lambda_closed_from(family, a, b, 0, 0);
  const Field& f = family.field();
  return lambda_closed_from(family, a, b, kloosterman(f, family.m(), a), weil_q(f, family.m(), a));
}

LambdaMethod parse_method(std::string_view text) {
  if (text == "direct") return LambdaMethod::Direct;
  if (text == "prop32") return LambdaMethod::Prop32;
  if (text == "closed") return LambdaMethod::Closed;
  if (text == "definitional") return LambdaMethod::Definitional;
  throw Error(ErrorCode::ParseError, "unknown method '" + std::string(text) + "'");
}

std::string_view method_name(LambdaMethod method) {
  switch (method) {
    case LambdaMethod::Direct: return "direct";
    case LambdaMethod::Prop32: return "prop32";
    case LambdaMethod::Closed: return "closed";
    case LambdaMethod::Definitional: return "definitional";
  }
  return "?";
}

bool is_hyperbent(const Family& family, Elem a, Elem b, LambdaMethod method) {
  switch (method) {
    case LambdaMethod::Direct: return lambda_direct(family, a, b) == 1;
    case LambdaMethod::Prop32: return lambda_prop32(family, a, b) == 1;
    case LambdaMethod::Closed: return lambda_closed(family, a, b) == 1;
    case LambdaMethod::Definitional: return is_hyper_bent_definitional(f_ab(family, a, b).materialized());
  }
  return false;
}

bool thm31_characterize(const Family& family, Elem a) {
  family.require_a(a);
  if (a.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "characterization needs a != 0");
  const Field& f = family.field();
  const int m = family.m();
  const std::int64_t h = std::int64_t{1} << family.m1();
  if (quintic_pattern(f, m, a) != FactorPattern::parse("(5)")) return false;
  if (weil_q(f, m, a) != h) return false;
  return 3 * kloosterman(f, m, a) == 4 * (2 - h);
}

bool thm32_characterize(const Family& family, Elem a, Elem b) {
  family.require_a(a);
  if (a.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "characterization needs a != 0");
  if (classify_b(family, b) != BClass::PrimitiveTraceZero) {
    throw Error(ErrorCode::PreconditionViolated, "b = " + family.b_name(b) + " is not primitive with Tr(b) = 0");
  }
  const Field& f = family.field();
  const int m = family.m();
  const std::int64_t h = std::int64_t{1} << family.m1();
  const FactorPattern p = quintic_pattern(f, m, a);
  const std::int64_t k = kloosterman(f, m, a);
  if (p == FactorPattern::parse("(1)(2)^2")) return k == -4;
  if (p == FactorPattern::parse("(5)")) return weil_q(f, m, a) == h && k == 2 * h - 4;
  return false;
}

std::vector<SearchRecord> search_all(const Family& family, const std::vector<Elem>& a_domain,
                                     const std::vector<Elem>& b_domain, const SearchOptions& options) {
  const Field& f = family.field();
  const int m = family.m();
  for (const Elem a : a_domain) family.require_a(a);
  for (const Elem b : b_domain) family.require_b(b);
  if (options.definitional && family.n() > kMaxDefinitionalDegree) {
    throw Error(ErrorCode::DegreeUnsupported, "definitional oracle needs n <= " +
                                                  std::to_string(kMaxDefinitionalDegree));
  }
  // large a-domains share one table-driven pass for K and Q
  std::optional<SubfieldSums> batch;
  if (a_domain.size() > 256) batch.emplace(f, m, options.workers);

  std::vector<SearchRecord> out(a_domain.size() * b_domain.size());
  parallel_chunks(a_domain.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t ai = begin; ai < end; ++ai) {
      const Elem a = a_domain[ai];
      const CharacterSums s = s_sums(family, a);
      std::int64_t k = 0;
      std::optional<std::int64_t> q;
      std::optional<FactorPattern> pattern;
      if (!a.is_zero()) {
        k = batch ? batch->kloosterman(a) : kloosterman(f, m, a);
        q = batch ? batch->weil_q(a) : weil_q(f, m, a);
        pattern = quintic_pattern(f, m, a);
      }
      crosscheck(s.lambda0 == s.s[0] + 2 * (s.s[1] + s.s[2]), "S-sum decomposition of Lambda(a, 0) failed");
      for (std::size_t bi = 0; bi < b_domain.size(); ++bi) {
        const Elem b = b_domain[bi];
        SearchRecord& r = out[ai * b_domain.size() + bi];
        r.a = a;
        r.b = b;
        r.b_coords = family.coords_of(b);
        r.b_name = family.b_name(b);
        r.k = k;
        r.q = q;
        r.pattern = pattern;
        r.lambda_direct = lambda_direct(family, a, b);
        r.lambda_prop32 = lambda_from_sums(family, b, s);
        if (q && closed_form_applicable(family, a, b)) r.lambda_closed = lambda_closed_from(family, a, b, k, *q);
        const std::string where = " at a = " + format_hex(a.bits) + ", b = " + r.b_name;
        crosscheck(r.lambda_direct == r.lambda_prop32,
                   "direct " + std::to_string(r.lambda_direct) + " != S-sum " + std::to_string(r.lambda_prop32) + where);
        crosscheck(!r.lambda_closed || *r.lambda_closed == r.lambda_direct,
                   "direct " + std::to_string(r.lambda_direct) + " != closed form" + where);
        r.hyperbent = r.lambda_direct == 1;
        r.ps_ap = ps_ap_flag(family, b);
        if (options.definitional || (options.anf_degree && r.hyperbent)) {
          const BooleanFunction fn = f_ab(family, a, b).materialized();
          if (options.definitional) {
            r.definitional = is_hyper_bent_definitional(fn);
            crosscheck(*r.definitional == r.hyperbent, "definitional oracle disagrees" + where);
          }
          if (options.anf_degree && r.hyperbent && family.n() <= kMaxSpectrumDegree) r.anf_degree = anf_degree(fn);
        }
      }
    }
  });
  return out;
}

std::vector<SearchRecord> thm34_enumerate(const Family& family, const SearchOptions& options) {
  std::vector<SearchRecord> all = search_all(family, family.a_domain(true), family.b_domain(), options);
  std::vector<SearchRecord> hits;
  for (SearchRecord& r : all) {
    if (r.hyperbent) hits.push_back(std::move(r));
  }
  return hits;
}

std::vector<std::pair<Elem, Elem>> thm34_predicted(const Family& family) {
  std::uint64_t poly = 0;
  if (family.n() == 12) {
    poly = detail::clmul32(0x3, 0xD);  // (a+1)(a^3+a^2+1)
  } else if (family.n() == 28) {
    poly = detail::clmul32(0x3, 0xFD);  // (a+1)(a^7+a^6+a^5+a^4+a^3+a^2+1)
  } else {
    return {};
  }
  const Field& f = family.field();
  std::vector<std::pair<Elem, Elem>> out;
  for (const Elem a : family.a_domain(true)) {
    if (!eval_gf2_poly(f, poly, a).is_zero()) continue;
    for (int i = 1; i <= 4; ++i) out.emplace_back(a, f.pow(family.beta(), i));
  }
  return out;
}

}  // namespace hbf
