#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbf/boolfn.hpp"
#include "hbf/field.hpp"
#include "hbf/parallel.hpp"
#include "hbf/poly.hpp"

namespace hbf {

/// The binomial family f_{a,b}(x) = Tr_1^n(a x^(2^m-1)) + Tr_1^4(b x^((2^n-1)/5))
/// on GF(2^n), n = 2m, m = 2 m1 with m1 odd, a in GF(2^m), b in GF(16).
///
/// Holds alpha (the field's generator), xi = alpha^(2^m-1) generating U,
/// beta = alpha^((2^n-1)/5), V = <xi^5>, and precomputed powers of U and of
/// the invariance sample points for the family's two exponents.
class Family {
 public:
  static constexpr std::uint64_t kDefaultSeed = 20260101;
  static constexpr std::size_t kInvarianceSamples = 10000;

  /// n in {12, 20, 28}; UnsupportedN otherwise.
  explicit Family(int n, std::uint64_t seed = kDefaultSeed, const ModulusTable& table = ModulusTable::builtin());

  int n() const noexcept { return n_; }
  int m() const noexcept { return n_ / 2; }
  int m1() const noexcept { return n_ / 4; }
  std::uint64_t seed() const noexcept { return seed_; }

  const Field& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }

  Elem alpha() const noexcept { return field_->generator(); }
  Elem xi() const noexcept { return xi_; }
  Elem beta() const noexcept { return beta_; }
  /// alpha^(2^m+1), the multiplier f_{a,b} is invariant under.
  Elem lambda() const noexcept { return lambda_; }

  std::uint64_t dillon_exponent() const noexcept { return (std::uint64_t{1} << m()) - 1; }
  std::uint64_t fifth_exponent() const noexcept { return field_->group_order() / 5; }

  /// xi^t, t = 0..2^m.
  const std::vector<Elem>& unity_group() const noexcept { return u_; }
  /// (xi^5)^s, s = 0..(2^m+1)/5 - 1.
  const std::vector<Elem>& subgroup_v() const noexcept { return v_; }

  /// Points: U, lambda*U, random sample R, lambda*R (in that order), with
  /// powers for both family exponents.
  const PointBatch& invariance_batch() const noexcept { return batch_; }
  std::size_t random_sample_size() const noexcept { return random_count_; }

  /// GF(16) in the basis {1, beta, beta^2, beta^3}: bit i of `coords` is the
  /// coefficient of beta^i.
  Elem b_from_coords(unsigned coords) const;
  unsigned coords_of(Elem b) const;
  /// Accepts "0", "1", "beta", "beta^3", "1+beta^2", "beta+beta^4", or a
  /// 4-bit coordinate literal "coords:0101" (beta^0 first).
  Elem parse_b(std::string_view text) const;
  /// Canonical symbolic name, e.g. "beta+beta^2", using powers 0..4 where a
  /// shorter form exists.
  std::string b_name(Elem b) const;

  /// Subfield elements for the a-domain: GF(2^m), or GF(2^m1) if subfield_only.
  std::vector<Elem> a_domain(bool subfield_only) const;
  /// All 16 elements of GF(16) ordered by coordinates 0..15.
  std::vector<Elem> b_domain() const;

  void require_a(Elem a) const { field_->require_in_subfield(m(), a, "a"); }
  void require_b(Elem b) const { field_->require_in_subfield(4, b, "b"); }

 private:
  int n_;
  std::uint64_t seed_;
  FieldPtr field_;
  Elem xi_, beta_, lambda_;
  std::vector<Elem> u_, v_;
  std::array<Elem, 16> gf16_{};
  PointBatch batch_;
  std::size_t random_count_ = 0;
};

/// Cases of the eight-way table for b in GF(16)*; Zero for b = 0.
enum class BClass {
  Zero,
  One,                 // b = 1
  PrimitiveTraceZero,  // b^4 + b + 1 = 0
  BetaOrBeta4,         // beta, beta^4
  Beta2OrBeta3,        // beta^2, beta^3
  OnePlusBetaOrBeta4,  // 1+beta, 1+beta^4
  OnePlusBeta2OrBeta3, // 1+beta^2, 1+beta^3
  BetaPlusBeta4,
  Beta2PlusBeta3,
};

BClass classify_b(const Family& family, Elem b);
std::string_view bclass_name(BClass c);
/// (c0, c1, c2) with Lambda(a,b) = c0 S0 + c1 S1 + c2 S2, from the case table.
std::array<int, 3> bclass_coefficients(BClass c);

/// f_{a,b}(0) = 0; f_{a,b}(1) = Tr_1^4(b).
BooleanFunction f_ab(const Family& family, Elem a, Elem b);

/// Membership in the PS_ap class for a hyper-bent f_{a,b}: Tr_1^4(b) = 0.
bool ps_ap_flag(const Family& family, Elem b);

struct CharacterSums {
  std::array<std::int64_t, 5> s{};  ///< S_0 .. S_4
  std::int64_t lambda0 = 0;         ///< Lambda(a, 0) summed over U
};

/// S_i = sum_{v in V} (-1)^Tr_1^n(a (xi^i v)^(2^m-1)), direct over V.
CharacterSums s_sums(const Family& family, Elem a);

/// Lambda(a,b) = sum_{u in U} (-1)^f_{a,b}(u), directly.
std::int64_t lambda_direct(const Family& family, Elem a, Elem b);
/// Lambda from S_0, S_1, S_2 with trace-of-b weights; checked against the case table.
std::int64_t lambda_prop32(const Family& family, Elem a, Elem b);
/// Whether a closed form in K_m(a), Q_m(a) exists for (a, b).
bool closed_form_applicable(const Family& family, Elem a, Elem b);
/// Lambda from K_m(a) and Q_m(a) only. PreconditionViolated if not applicable;
/// NonIntegralLambda if a division by 5 (or 2) is inexact.
std::int64_t lambda_closed(const Family& family, Elem a, Elem b);
/// Same, with K and Q supplied by the caller (e.g. from SubfieldSums).
std::int64_t lambda_closed_from(const Family& family, Elem a, Elem b, std::int64_t k, std::int64_t q);

enum class LambdaMethod { Direct, Prop32, Closed, Definitional };
LambdaMethod parse_method(std::string_view text);
std::string_view method_name(LambdaMethod method);

bool is_hyperbent(const Family& family, Elem a, Elem b, LambdaMethod method);

/// f_{a,1} hyper-bent iff x^5+x+1/a is irreducible over GF(2^m), Q_m(a) = +2^m1
/// and K_m(a) = (4/3)(2 - 2^m1). a != 0.
bool thm31_characterize(const Family& family, Elem a);
/// For b primitive with Tr_1^4(b) = 0: hyper-bent iff [(1)(2)^2 and K = -4] or
/// [(5), Q = +2^m1 and K = 2*2^m1 - 4].
bool thm32_characterize(const Family& family, Elem a, Elem b);

struct SearchRecord {
  Elem a;
  Elem b;
  unsigned b_coords = 0;
  std::string b_name;
  std::int64_t k = 0;                ///< K_m(a)
  std::optional<std::int64_t> q;     ///< Q_m(a), a != 0
  std::optional<FactorPattern> pattern;
  std::int64_t lambda_direct = 0;
  std::int64_t lambda_prop32 = 0;
  std::optional<std::int64_t> lambda_closed;
  bool hyperbent = false;
  bool ps_ap = false;
  std::optional<bool> definitional;  ///< Def-level oracle, when requested (n <= 16)
  std::optional<int> anf_degree;     ///< for hyper-bent records, when requested (n <= 24)
};

struct SearchOptions {
  bool definitional = false;
  bool anf_degree = false;
  unsigned workers = default_workers();
};

/// One record per (a, b), a-major. Every record's lambdas must agree, else CrossCheckFailure.
std::vector<SearchRecord> search_all(const Family& family, const std::vector<Elem>& a_domain,
                                     const std::vector<Elem>& b_domain, const SearchOptions& options = {});

/// Hyper-bent (a, b) with a in GF(2^m1), b in GF(16).
std::vector<SearchRecord> thm34_enumerate(const Family& family, const SearchOptions& options = {});

/// Closed-form prediction for the subfield search: empty for n = 20; for n = 12 the
/// roots of (a+1)(a^3+a^2+1), for n = 28 of (a+1)(a^7+a^6+a^5+a^4+a^3+a^2+1), each
/// paired with beta^1..beta^4.
std::vector<std::pair<Elem, Elem>> thm34_predicted(const Family& family);

}  // namespace hbf
