#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hbf/field.hpp"

namespace hbf {

class Family;

/// Smallest element of the cyclotomic coset of j modulo 2^n - 1 (j < 2^n - 1).
std::uint64_t coset_leader(std::uint64_t j, int n);
/// Size of that coset, o(j).
int coset_size(std::uint64_t j, int n);

/// One term Tr_1^o(j)(c x^j) of a trace expansion.
struct TraceTerm {
  std::uint64_t exponent = 0;  ///< coset leader
  Elem coefficient;            ///< lies in GF(2^trace_degree)
  int trace_degree = 1;        ///< o(exponent)
};

/// Builds a term, moving (j, c) to the coset leader: Tr(c x^(L 2^s)) = Tr(c^(2^-s) x^L).
/// Throws NotInSubfield if c is not in GF(2^o(j)).
TraceTerm make_trace_term(const Field& field, std::uint64_t exponent, Elem coefficient);

/// A fixed list of points with x^e precomputed for a few exponents, so that
/// many functions sharing those exponents evaluate in one multiply per term.
class PointBatch {
 public:
  PointBatch() = default;
  PointBatch(const Field& field, std::vector<Elem> points, std::span<const std::uint64_t> exponents);

  const std::vector<Elem>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  /// nullptr when `exponent` was not precomputed.
  const std::vector<Elem>* powers(std::uint64_t exponent) const noexcept;

 private:
  std::vector<Elem> points_;
  std::vector<std::pair<std::uint64_t, std::vector<Elem>>> powers_;
};

/// Boolean function on GF(2^n) in polynomial (trace-expansion) form
///   f(x) = sum_j Tr_1^o(j)(a_j x^j) + eps (1 + x^(2^n - 1)),
/// optionally carrying its truth table indexed by the element bit pattern.
class BooleanFunction {
 public:
  BooleanFunction(FieldPtr field, std::vector<TraceTerm> terms, bool epsilon = false);

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  int n() const noexcept { return field_->degree(); }
  const std::vector<TraceTerm>& terms() const noexcept { return terms_; }
  bool epsilon() const noexcept { return epsilon_; }

  /// Throws ContextMismatch for elements outside the field.
  bool evaluate(Elem x) const;
  std::vector<std::uint8_t> evaluate(const PointBatch& batch) const;

  bool has_table() const noexcept { return !table_.empty(); }
  /// Empty unless materialized.
  std::span<const std::uint8_t> table() const noexcept { return table_; }
  /// Truth table (computed if not materialized).
  std::vector<std::uint8_t> build_table() const;
  BooleanFunction materialized() const;

  std::uint64_t weight() const;

 private:
  bool evaluate_unchecked(Elem x) const;

  FieldPtr field_;
  std::vector<TraceTerm> terms_;
  bool epsilon_ = false;
  std::vector<std::uint8_t> table_;
};

/// Walsh spectrum indexed by w's bit pattern: values[w] = sum_x (-1)^(f(x) + Tr(wx)).
struct WalshSpectrum {
  std::vector<std::int32_t> values;
  std::int64_t max_abs = 0;
};

inline constexpr int kMaxSpectrumDegree = 24;
inline constexpr int kMaxDefinitionalDegree = 16;

/// In-place fast Walsh-Hadamard transform.
void fwht(std::span<std::int32_t> data);
/// sum_x (-1)^(f(x) + v.x) over coefficient vectors (dot-product pairing).
std::vector<std::int32_t> vector_walsh(std::span<const std::uint8_t> table);

/// Field-pairing spectrum: the vector transform re-indexed through
/// t(w)_j = Tr(w x^j), a bijection by nondegeneracy of the trace form.
WalshSpectrum walsh_spectrum(const BooleanFunction& f);
/// One coefficient by direct summation.
std::int64_t walsh_direct(const BooleanFunction& f, Elem w);

bool is_bent(const BooleanFunction& f);
/// Every vector-pairing coefficient is +-2^(n/2) (equivalent, the pairings differ by a bijection).
bool is_bent_table(std::span<const std::uint8_t> table, int n);

/// Representatives (coset leaders) of the cyclotomic classes of exponents
/// coprime to 2^n - 1.
std::vector<std::uint64_t> coprime_class_representatives(int n);

struct DefinitionalReport {
  bool hyper_bent = false;
  std::size_t classes_tested = 0;
  std::uint64_t first_failing_exponent = 0;  ///< 0 when none failed
};

/// f(x^i) is bent for one i per cyclotomic class coprime to 2^n - 1. n <= 16.
DefinitionalReport hyper_bent_definitional(const BooleanFunction& f);
bool is_hyper_bent_definitional(const BooleanFunction& f);

/// Algebraic degree from the Moebius transform of the truth table.
int anf_degree(const BooleanFunction& f);
int anf_degree_table(std::span<const std::uint8_t> table, int n);

struct URestrictionReport {
  bool hyper_bent = false;
  std::uint64_t weight_on_u = 0;     ///< #{i : f(xi^i) = 1, 0 <= i <= 2^m}
  std::size_t invariance_points = 0;  ///< points where f(lambda x) = f(x) was checked
};

/// Hyper-bentness through the weight of f on the (2^m+1)-th roots of unity.
/// Checks f(0) = 0 and f(alpha^(2^m+1) x) = f(x) first (all x for n <= 16,
/// otherwise all of U plus the family's random sample); InvarianceViolated if not.
URestrictionReport u_restriction(const BooleanFunction& f, const Family& family);
bool u_restriction_test(const BooleanFunction& f, const Family& family);

/// Writes `spectrum` as 2^n little-endian int32 to `path` and a JSON sidecar
/// `{n, modulus, terms}` to `path + ".json"`.
void write_spectrum(const std::string& path, const WalshSpectrum& spectrum, const BooleanFunction& f);

}  // namespace hbf
