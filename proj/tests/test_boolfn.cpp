#include <gtest/gtest.h>

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numeric>
#include <set>

#include "hbf/boolfn.hpp"
#include "hbf/family.hpp"
#include "oracles.hpp"

using namespace hbf;

namespace {

std::set<std::uint64_t> orbit(std::uint64_t j, int n) {
  const std::uint64_t mod = (std::uint64_t{1} << n) - 1;
  std::set<std::uint64_t> s;
  for (int i = 0; i < n; ++i) s.insert(j * (std::uint64_t{1} << i) % mod);
  return s;
}

BooleanFunction monomial(const FieldPtr& f, std::uint64_t j, Elem c = Field::one()) {
  return BooleanFunction(f, {make_trace_term(*f, j, c)});
}

void expect_code(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "no exception, wanted " << error_code_name(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Cosets, LeaderAndSizeMatchOrbits) {
  for (const int n : {6, 8, 12}) {
    const std::uint64_t mod = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t j = 0; j < mod; ++j) {
      const auto o = orbit(j, n);
      ASSERT_EQ(coset_leader(j, n), *o.begin());
      ASSERT_EQ(coset_size(j, n), static_cast<int>(o.size()));
    }
    EXPECT_THROW(coset_leader(mod, n), Error);
  }
}

TEST(Cosets, CoprimeRepresentatives) {
  for (const int n : {4, 6, 8, 12}) {
    const std::uint64_t mod = (std::uint64_t{1} << n) - 1;
    std::set<std::uint64_t> leaders;
    for (std::uint64_t j = 1; j < mod; ++j) {
      if (std::gcd(j, mod) == 1) leaders.insert(*orbit(j, n).begin());
    }
    const auto reps = coprime_class_representatives(n);
    EXPECT_EQ(std::set<std::uint64_t>(reps.begin(), reps.end()), leaders) << n;
  }
  EXPECT_EQ(coprime_class_representatives(12).size(), 144u);
}

TEST(TraceTerm, NormalizesToLeaderWithoutChangingTheFunction) {
  const auto f = Field::make(12);
  const oracle::NaiveField o{12, f->modulus()};
  // exponent 65 * 4 = 260 lies in the coset of 65 (size 6); coefficient from GF(2^6)
  const Elem c = f->subfield_elements(6)[13];
  const TraceTerm t = make_trace_term(*f, 260, c);
  EXPECT_EQ(t.exponent, 65u);
  EXPECT_EQ(t.trace_degree, 6);
  const BooleanFunction g(f, {t});
  for (std::uint32_t x = 0; x < f->size(); x += 3) {
    const std::uint32_t v = o.mul(c.bits, o.pow(x, 260));
    ASSERT_EQ(g.evaluate(Elem{x}), o.trace(v, 6)) << x;
  }
  expect_code(ErrorCode::NotInSubfield, [&] { make_trace_term(*f, 65, f->generator()); });
}

TEST(BooleanFunction, EvaluationMatchesOracle) {
  const auto f = Field::make(10);
  const oracle::NaiveField o{10, f->modulus()};
  const Elem c{0x155};
  const BooleanFunction g(f, {make_trace_term(*f, 1, Field::one()), make_trace_term(*f, 7, c)}, true);
  for (std::uint32_t x = 0; x < f->size(); ++x) {
    bool want = o.trace(x) ^ o.trace(o.mul(c.bits, o.pow(x, 7)));
    if (x == 0) want ^= true;
    ASSERT_EQ(g.evaluate(Elem{x}), want) << x;
  }
  const auto table = g.build_table();
  EXPECT_EQ(g.materialized().weight(), g.weight());
  EXPECT_EQ(g.weight(), static_cast<std::uint64_t>(std::count(table.begin(), table.end(), 1)));
  EXPECT_THROW(g.evaluate(Elem{1u << 10}), Error);
}

TEST(BooleanFunction, BatchEvaluationMatchesPointwise) {
  const Family fam(12);
  const BooleanFunction g = f_ab(fam, fam.field().subfield_elements(6)[5], fam.beta());
  const auto v = g.evaluate(fam.invariance_batch());
  ASSERT_EQ(v.size(), fam.invariance_batch().size());
  for (std::size_t i = 0; i < v.size(); ++i) ASSERT_EQ(v[i] != 0, g.evaluate(fam.invariance_batch().points()[i]));
}

TEST(BooleanFunction, AbsoluteTraceIsBalancedAndAffine) {
  for (const int n : {6, 9, 12}) {
    const auto f = Field::make(n);
    const BooleanFunction tr = monomial(f, 1);
    EXPECT_EQ(tr.weight(), std::uint64_t{1} << (n - 1));
    const WalshSpectrum s = walsh_spectrum(tr);
    EXPECT_EQ(s.max_abs, std::int64_t{1} << n);
    EXPECT_EQ(s.values[1], std::int32_t{1} << n);  // only at w = 1
    EXPECT_FALSE(is_bent(tr));
  }
}

TEST(BooleanFunction, EpsilonTermFlipsOnlyZero) {
  const auto f = Field::make(8);
  const BooleanFunction a(f, {make_trace_term(*f, 3, Field::one())}, false);
  const BooleanFunction b(f, {make_trace_term(*f, 3, Field::one())}, true);
  EXPECT_EQ(a.weight() % 2, 0u);
  EXPECT_EQ(b.weight(), a.weight() + 1);
}

TEST(Walsh, SpectrumMatchesDirectSumsAndParseval) {
  const auto f = Field::make(10);
  const BooleanFunction g(f, {make_trace_term(*f, 3, Elem{0x2f}), make_trace_term(*f, 11, Elem{0x101})});
  const WalshSpectrum s = walsh_spectrum(g);
  ASSERT_EQ(s.values.size(), f->size());
  std::int64_t energy = 0;
  for (const std::int32_t v : s.values) energy += std::int64_t{v} * v;
  EXPECT_EQ(energy, std::int64_t{1} << 20);
  for (std::uint32_t w = 0; w < f->size(); w += 17) ASSERT_EQ(s.values[w], walsh_direct(g, Elem{w})) << w;
}

TEST(Walsh, FwhtOfDeltaIsConstant) {
  std::vector<std::int32_t> d(16, 0);
  d[0] = 1;
  fwht(d);
  for (const auto v : d) EXPECT_EQ(v, 1);
}

TEST(Walsh, QuadraticNormFormIsBent) {
  // Tr_1^m(x^(2^m + 1)) on GF(2^(2m))
  for (const int n : {6, 8, 12}) {
    const auto f = Field::make(n);
    const BooleanFunction g = monomial(f, (std::uint64_t{1} << (n / 2)) + 1);
    EXPECT_EQ(g.terms()[0].trace_degree, n / 2);
    EXPECT_TRUE(is_bent(g)) << n;
    EXPECT_TRUE(is_bent_table(g.build_table(), n));
    EXPECT_EQ(walsh_spectrum(g).max_abs, std::int64_t{1} << (n / 2));
  }
}

TEST(Walsh, OddDegreeIsNeverBent) {
  const auto f = Field::make(7);
  EXPECT_FALSE(is_bent(monomial(f, 3)));
}

TEST(Anf, DegreeOfMonomialTraceIsBinaryWeight) {
  const auto f = Field::make(10);
  for (const std::uint64_t j : {1u, 3u, 5u, 7u, 11u, 31u, 93u, 511u}) {
    const BooleanFunction g = monomial(f, j);
    if (g.weight() == 0) continue;
    EXPECT_EQ(anf_degree(g), std::popcount(j)) << j;
  }
  EXPECT_EQ(anf_degree_table(std::vector<std::uint8_t>(16, 0), 4), 0);  // zero function by convention
  EXPECT_EQ(anf_degree_table(std::vector<std::uint8_t>(16, 1), 4), 0);
  EXPECT_THROW(anf_degree_table(std::vector<std::uint8_t>(8, 0), 4), Error);
}

TEST(Definitional, AgreesWithUnityGroupWeight) {
  const Family fam(12);
  int hits = 0;
  std::size_t tried = 0;
  for (const Elem a : fam.a_domain(true)) {
    for (const Elem b : fam.b_domain()) {
      if ((a.bits + b.bits) % 3 != 0 && a.bits != 1) continue;
      const BooleanFunction g = f_ab(fam, a, b);
      const DefinitionalReport d = hyper_bent_definitional(g);
      if (d.hyper_bent) EXPECT_EQ(d.classes_tested, 144u);
      ASSERT_EQ(d.hyper_bent, u_restriction_test(g, fam)) << a.bits << " " << b.bits;
      hits += d.hyper_bent;
      ++tried;
    }
  }
  EXPECT_GT(hits, 0);
  EXPECT_GT(tried, 16u);
}

TEST(Definitional, BentButNotHyperBent) {
  // the norm form is bent yet fails for some coprime exponent
  const auto f = Field::make(8);
  const BooleanFunction g = monomial(f, 17);
  ASSERT_TRUE(is_bent(g));
  const DefinitionalReport d = hyper_bent_definitional(g);
  EXPECT_FALSE(d.hyper_bent);
  EXPECT_NE(d.first_failing_exponent, 0u);
  EXPECT_THROW(hyper_bent_definitional(monomial(Field::make(18), 1)), Error);
}

TEST(URestriction, ErrorPaths) {
  const Family fam(12);
  const Elem a = fam.field().subfield_elements(6)[3];
  expect_code(ErrorCode::ContextMismatch, [] {
    const Family other(20);
    const Family fam12(12);
    u_restriction(f_ab(other, Field::one(), Field::zero()), fam12);
  });
  const BooleanFunction base = f_ab(fam, a, Field::zero());
  const BooleanFunction with_eps(base.field_ptr(), base.terms(), true);
  expect_code(ErrorCode::PreconditionViolated, [&] { u_restriction(with_eps, fam); });
  expect_code(ErrorCode::InvarianceViolated, [&] { u_restriction(monomial(fam.field_ptr(), 1), fam); });
  const URestrictionReport r = u_restriction(base, fam);
  EXPECT_EQ(r.invariance_points, fam.field().size());
  EXPECT_LE(r.weight_on_u, 65u);
}

TEST(URestriction, LargeFieldUsesSampledInvariance) {
  const Family fam(20);
  const URestrictionReport r = u_restriction(f_ab(fam, Field::one(), Field::zero()), fam);
  EXPECT_EQ(r.invariance_points, fam.unity_group().size() + fam.random_sample_size());
}

TEST(SpectrumFile, RoundTrip) {
  const auto f = Field::make(8);
  const BooleanFunction g = monomial(f, 17);
  const WalshSpectrum s = walsh_spectrum(g);
  const auto path = (std::filesystem::temp_directory_path() / "hbf_spectrum_test.bin").string();
  write_spectrum(path, s, g);
  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ASSERT_EQ(bytes.size(), 4 * s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    const std::uint32_t u = bytes[4 * i] | bytes[4 * i + 1] << 8 | bytes[4 * i + 2] << 16 |
                            static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24;
    ASSERT_EQ(static_cast<std::int32_t>(u), s.values[i]);
  }
  std::ifstream meta(path + ".json");
  const auto j = nlohmann::json::parse(meta);
  EXPECT_EQ(j["n"], 8);
  EXPECT_EQ(j["max_abs"], 16);
  EXPECT_EQ(j["terms"][0]["exponent"], 17);
  EXPECT_EQ(j["terms"][0]["trace_degree"], 4);
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}
