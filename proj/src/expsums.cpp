#include "hbf/expsums.hpp"

#include <cmath>

namespace hbf {

namespace {

inline int chi(bool bit) { return bit ? -1 : 1; }

Elem d5(const Field& f, Elem x) {
  const Elem x2 = f.sqr(x);
  const Elem x3 = f.mul(x2, x);
  const Elem x5 = f.mul(x3, x2);
  return Field::add(Field::add(x5, x3), x);
}

}  // namespace

std::int64_t kloosterman(const Field& field, int m, Elem a) {
  field.require_in_subfield(m, a, "Kloosterman parameter");
  std::int64_t sum = 0;
  for (const Elem x : field.subfield_elements(m)) {
    sum += chi(field.subfield_trace(m, Field::add(field.mul(a, x), field.inv0(x))));
  }
  return sum;
}

std::int64_t weil_q(const Field& field, int m, Elem a) {
  field.require_in_subfield(m, a, "Weil sum parameter");
  if (a.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "Q_m(a) needs a != 0");
  std::int64_t sum = 0;
  for (const Elem x : field.subfield_elements(m)) sum += chi(field.subfield_trace(m, field.mul(a, d5(field, x))));
  return sum;
}

std::int64_t curve_points(const Field& field, int degree, Elem a) {
  field.require_in_subfield(degree, a, "curve parameter");
  if (a.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "curve needs a != 0");
  // walk GF(2^degree)* multiplicatively; streams without tables
  const Elem gamma = field.subfield_generator(degree);
  const std::uint64_t count = (std::uint64_t{1} << degree) - 1;
  std::int64_t affine_x = 1;  // x = 0: Tr(0) = 0
  Elem x = Field::one();
  for (std::uint64_t j = 0; j < count; ++j) {
    if (!field.subfield_trace(degree, field.mul(a, d5(field, x)))) ++affine_x;
    x = field.mul(x, gamma);
  }
  return 1 + 2 * affine_x;
}

CurveCounts curve_counts(const Field& field, int m, Elem a) {
  field.require_in_subfield(m, a, "curve parameter");
  return CurveCounts{curve_points(field, m, a), curve_points(field, 2 * m, a)};
}

WeilPair weil_pair_resolve(const FactorPattern& pattern, int m, std::int64_t q_value) {
  struct Row {
    const char* pattern;
    std::int64_t r_abs;
    std::int64_t s;
  };
  const std::int64_t q = std::int64_t{1} << m;
  std::vector<Row> rows;
  if (m % 2 == 0) {
    const std::int64_t h = std::int64_t{1} << (m / 2);
    rows = {{"(5)", h, q}, {"(1)^2(3)", 2 * h, 3 * q}, {"(1)(2)^2", 0, 2 * q}, {"(1)^5", 4 * h, 6 * q}};
  } else {
    rows = {{"(1)(4)", 0, 0}, {"(2)(3)", 0, q}, {"(1)^3(2)", 0, -2 * q}};
  }
  const std::string key = pattern.to_string();
  for (const Row& row : rows) {
    if (key != row.pattern) continue;
    if (std::llabs(q_value) != row.r_abs) {
      throw Error(ErrorCode::PatternMismatch, "pattern " + key + " needs |r| = " + std::to_string(row.r_abs) +
                                                  ", got " + std::to_string(q_value));
    }
    return WeilPair{q_value, row.s};
  }
  throw Error(ErrorCode::PatternMismatch,
              "pattern " + key + " is not admissible for " + (m % 2 == 0 ? "even" : "odd") + " m");
}

bool kloosterman_descent_check(const Field& field, int m1, Elem a) {
  field.require_in_subfield(m1, a, "descent parameter");
  if (a.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "descent needs a != 0");
  const std::int64_t k_small = kloosterman(field, m1, a);
  const std::int64_t k_big = kloosterman(field, 2 * m1, a);
  const std::int64_t lhs = 1 - k_big;
  const std::int64_t rhs = (1 - k_small) * (1 - k_small) - 2 * (std::int64_t{1} << m1);
  return lhs == rhs;
}

std::pair<std::int64_t, std::int64_t> kloosterman_bounds(int m) {
  // 2^((m+2)/2), exact for even m
  const double radius = std::ldexp(1.0, (m + 2) / 2) * ((m % 2 == 0) ? 1.0 : std::sqrt(2.0));
  return {static_cast<std::int64_t>(std::ceil(1.0 - radius)), static_cast<std::int64_t>(std::floor(1.0 + radius))};
}

SubfieldSums::SubfieldSums(const Field& field, int d, unsigned workers) : d_(d) {
  const Elem gamma = field.subfield_generator(d);
  const std::size_t n = (std::size_t{1} << d) - 1;
  exp_.resize(n);
  log_.reserve(n);
  Elem y = Field::one();
  for (std::size_t j = 0; j < n; ++j) {
    exp_[j] = y;
    log_.emplace(y.bits, static_cast<std::uint32_t>(j));
    y = field.mul(y, gamma);
  }
  // chi(Tr(gamma^j)), doubled so index (A + j) needs no reduction
  std::vector<std::int8_t> sign(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    sign[j] = sign[j + n] = static_cast<std::int8_t>(chi(field.subfield_trace(d, exp_[j])));
  }
  // log of 1/x = gamma^(n - j)
  std::vector<std::int8_t> inv_sign(n);
  for (std::size_t j = 0; j < n; ++j) inv_sign[j] = sign[(n - j) % n];

  std::int32_t d5_zeros = 1;  // x = 0
  std::vector<std::uint32_t> d5_logs;
  d5_logs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Elem v = d5(field, exp_[j]);
    if (v.is_zero()) {
      ++d5_zeros;
    } else {
      d5_logs.push_back(log_.at(v.bits));
    }
  }

  k_.assign(n, 0);
  q_.assign(n, 0);
  parallel_chunks(n, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a_log = begin; a_log < end; ++a_log) {
      const std::int8_t* shifted = sign.data() + a_log;
      std::int32_t k = 1;  // x = 0 term
      for (std::size_t j = 0; j < n; ++j) k += shifted[j] * inv_sign[j];
      std::int32_t q = d5_zeros;
      for (const std::uint32_t l : d5_logs) q += shifted[l];
      k_[a_log] = k;
      q_[a_log] = q;
    }
  });
}

std::size_t SubfieldSums::log_of(Elem a) const {
  auto it = log_.find(a.bits);
  if (it == log_.end()) {
    throw Error(ErrorCode::NotInSubfield, format_hex(a.bits) + " is not a nonzero element of GF(2^" +
                                              std::to_string(d_) + ")");
  }
  return it->second;
}

std::int64_t SubfieldSums::kloosterman(Elem a) const {
  if (a.is_zero()) return 0;
  return k_[log_of(a)];
}

std::int64_t SubfieldSums::weil_q(Elem a) const {
  if (a.is_zero()) throw Error(ErrorCode::NonInvertibleZero, "Q_m(a) needs a != 0");
  return q_[log_of(a)];
}

}  // namespace hbf
