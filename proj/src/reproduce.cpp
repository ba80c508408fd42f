#include "hbf/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "hbf/dickson.hpp"
#include "hbf/expsums.hpp"
#include "hbf/records.hpp"
#include "hbf/rnagell.hpp"

namespace hbf {

namespace {

struct Checker {
  std::vector<std::string> failures;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 20) failures.push_back(what);
  }
};

using PairSet = std::set<std::pair<std::uint32_t, std::uint32_t>>;

PairSet hyperbent_pairs(const std::vector<SearchRecord>& records) {
  PairSet out;
  for (const SearchRecord& r : records) {
    if (r.hyperbent) out.emplace(r.a.bits, r.b.bits);
  }
  return out;
}

PairSet predicted_pairs(const Family& family) {
  PairSet out;
  for (const auto& [a, b] : thm34_predicted(family)) out.emplace(a.bits, b.bits);
  return out;
}

std::string hex(Elem x) { return format_hex(x.bits); }

void subfield_search_n12(const ReproduceOptions& o, Checker& c) {
  const Family fam(12, o.seed);
  SearchOptions so;
  so.workers = o.workers;
  so.definitional = true;
  const auto records = search_all(fam, fam.a_domain(true), fam.b_domain(), so);
  const PairSet found = hyperbent_pairs(records);
  c.expect(found == predicted_pairs(fam), "hyper-bent set differs from the predicted roots x {beta^i}");
  c.expect(found.size() == 16, "expected 16 hyper-bent functions, found " + std::to_string(found.size()));
  std::size_t confirmed = 0;
  for (const SearchRecord& r : records) {
    if (!r.hyperbent) continue;
    const DefinitionalReport rep = hyper_bent_definitional(f_ab(fam, r.a, r.b).materialized());
    c.expect(rep.hyper_bent && rep.classes_tested == 144,
             "definitional oracle rejects a = " + hex(r.a) + ", b = " + r.b_name);
    confirmed += rep.hyper_bent;
  }
  c.summary = std::to_string(records.size()) + " pairs, " + std::to_string(found.size()) + " hyper-bent, " +
              std::to_string(confirmed) + " confirmed over 144 exponent classes";
}

void subfield_search_n20(const ReproduceOptions& o, Checker& c) {
  const Family fam(20, o.seed);
  SearchOptions so;
  so.workers = o.workers;
  const auto records = search_all(fam, fam.a_domain(true), fam.b_domain(), so);
  const PairSet found = hyperbent_pairs(records);
  c.expect(records.size() == 512, "expected 512 evaluations, got " + std::to_string(records.size()));
  c.expect(found.empty(), std::to_string(found.size()) + " hyper-bent functions found, expected none");
  c.expect(fam.unity_group().size() == 1025, "|U| != 1025");
  c.summary = std::to_string(records.size()) + " pairs over |U| = 1025, " + std::to_string(found.size()) + " hyper-bent";
}

void subfield_search_n28(const ReproduceOptions& o, Checker& c) {
  const Family fam(28, o.seed);
  SearchOptions so;
  so.workers = o.workers;
  const auto records = search_all(fam, fam.a_domain(true), fam.b_domain(), so);
  const PairSet found = hyperbent_pairs(records);
  c.expect(found == predicted_pairs(fam), "hyper-bent set differs from the predicted roots x {beta^i}");
  const FactorPattern two_three = FactorPattern::parse("(2)(3)");
  std::size_t certified = 0;
  for (const SearchRecord& r : records) {
    const URestrictionReport rep = u_restriction(f_ab(fam, r.a, r.b), fam);
    c.expect(rep.hyper_bent == r.hyperbent, "U-weight verdict disagrees with Lambda at a = " + hex(r.a) + ", b = " +
                                                r.b_name);
    c.expect(rep.invariance_points == fam.unity_group().size() + Family::kInvarianceSamples,
             "invariance not checked on U plus the random sample");
    if (!r.hyperbent) continue;
    certified += rep.hyper_bent;
    c.expect(quintic_pattern(fam.field(), 7, r.a) == two_three, "pattern over GF(2^7) is not (2)(3) at a = " + hex(r.a));
    c.expect(kloosterman(fam.field(), 7, r.a) == -12, "K_7(a) != -12 at a = " + hex(r.a));
  }
  c.summary = std::to_string(records.size()) + " pairs, " + std::to_string(found.size()) + " hyper-bent, " +
              std::to_string(certified) + " certified by U-weight";
}

void lambda_zero_identities(const ReproduceOptions& o, Checker& c) {
  std::size_t checked = 0;
  for (const int m : {6, 10, 14}) {
    const Family fam(2 * m, o.seed);
    const Field& f = fam.field();
    const SubfieldSums sums(f, m, o.workers);
    const auto& elems = sums.elements();
    std::vector<std::string> bad(elems.size());
    parallel_chunks(elems.size(), o.workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        const Elem a = elems[i];
        const std::int64_t k = sums.kloosterman_values()[i];
        const std::int64_t q = sums.weil_q_values()[i];
        if (m <= 10 && (k != kloosterman(f, m, a) || q != weil_q(f, m, a))) {
          bad[i] = "table sums disagree with direct sums";
          continue;
        }
        const CharacterSums s = s_sums(fam, a);
        if (s.lambda0 != 1 - k) bad[i] = "Lambda(a,0) != 1 - K";
        else if (5 * s.s[0] != 1 - k + 2 * q) bad[i] = "5 S_0 != 1 - K + 2Q";
      }
    });
    for (std::size_t i = 0; i < elems.size(); ++i) {
      c.expect(bad[i].empty(), "m = " + std::to_string(m) + ", a = " + hex(elems[i]) + ": " + bad[i]);
    }
    checked += elems.size();
  }
  c.summary = std::to_string(checked) + " nonzero a over m = 6, 10, 14";
}

void characterizations(const ReproduceOptions& o, Checker& c) {
  const Family fam(12, o.seed);
  const Field& f = fam.field();
  std::vector<Elem> ptz;
  for (const Elem b : fam.b_domain()) {
    if (classify_b(fam, b) == BClass::PrimitiveTraceZero) ptz.push_back(b);
  }
  std::vector<Elem> named;
  for (const char* s : {"beta+beta^2", "beta+beta^3", "beta^2+beta^4", "beta^3+beta^4"}) named.push_back(fam.parse_b(s));
  std::sort(ptz.begin(), ptz.end());
  std::sort(named.begin(), named.end());
  c.expect(ptz == named, "roots of b^4+b+1 differ from the four named sums of beta powers");
  std::size_t agree = 0;
  std::size_t hits = 0;
  for (const Elem a : f.subfield_elements(6)) {
    if (a.is_zero()) continue;
    const bool direct1 = lambda_direct(fam, a, Field::one()) == 1;
    c.expect(thm31_characterize(fam, a) == direct1, "b = 1 characterization disagrees at a = " + hex(a));
    agree += thm31_characterize(fam, a) == direct1;
    hits += direct1;
    for (const Elem b : ptz) {
      const bool direct = lambda_direct(fam, a, b) == 1;
      const bool thm = thm32_characterize(fam, a, b);
      c.expect(thm == direct, "trace-0 primitive b characterization disagrees at a = " + hex(a) + ", b = " +
                                  fam.b_name(b));
      agree += thm == direct;
      hits += direct;
    }
  }
  c.summary = std::to_string(agree) + "/315 verdicts agree, " + std::to_string(hits) + " hyper-bent";
}

void curve_counts_check(const ReproduceOptions&, Checker& c) {
  const Field f(12);
  std::size_t checked = 0;
  for (const Elem a : f.subfield_elements(6)) {
    if (a.is_zero()) continue;
    const std::int64_t q = weil_q(f, 6, a);
    const CurveCounts n = curve_counts(f, 6, a);
    c.expect(q == n.n1 - 65, "Q_6(a) != N1 - 65 at a = " + hex(a));
    const WeilPair p = weil_pair_resolve(quintic_pattern(f, 6, a), 6, q);
    c.expect(n.n2 == 4096 + 1 + 2 * p.s - p.r * p.r, "N2 != 2^12 + 1 + 2s - r^2 at a = " + hex(a));
    ++checked;
  }
  c.summary = std::to_string(checked) + " nonzero a in GF(2^6)";
}

void coset_sums(const ReproduceOptions& o, Checker& c) {
  const Family fam(12, o.seed);
  std::size_t checked = 0;
  for (const int p : {1, 3, 5, 7}) {
    for (const Elem a : fam.field().subfield_elements(6)) {
      if (a.is_zero()) continue;
      const CosetSumSides s = coset_sum_sides(fam, p, a);
      c.expect(s.unity_side == s.dickson_side, "p = " + std::to_string(p) + ", a = " + hex(a) + ": " +
                                                   std::to_string(s.unity_side) + " != " +
                                                   std::to_string(s.dickson_side));
      ++checked;
    }
  }
  c.summary = std::to_string(checked) + " (p, a) pairs";
}

void kloosterman_descent(const ReproduceOptions&, Checker& c) {
  std::size_t checked = 0;
  for (const int m1 : {3, 5, 7}) {
    const Field f(2 * m1);
    for (const Elem a : f.subfield_elements(m1)) {
      if (a.is_zero()) continue;
      c.expect(kloosterman_descent_check(f, m1, a), "descent fails at m1 = " + std::to_string(m1) + ", a = " + hex(a));
      c.expect(kloosterman(f, 2 * m1, a) != -4, "K = -4 at m1 = " + std::to_string(m1) + ", a = " + hex(a));
      ++checked;
    }
  }
  c.summary = std::to_string(checked) + " subfield a over m1 = 3, 5, 7";
}

void ramanujan_nagell(const ReproduceOptions&, Checker& c) {
  auto sols = [](std::uint64_t d1, std::uint64_t d2, std::uint64_t eta, int kmax) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (const RNSolution& s : rn_solve(RNEquation{d1, d2, eta, 2, kmax})) {
      out.emplace_back(static_cast<std::int64_t>(s.x), s.k);
    }
    return out;
  };
  using V = std::vector<std::pair<std::int64_t, int>>;
  c.expect(sols(15, 1, 2, 64) == V{{1, 3}}, "15x^2+1 = 2*2^k solutions differ from {(1,3)}");
  c.expect(sols(3, 5, 4, 64) == V{{1, 1}, {3, 3}, {13, 7}}, "3x^2+5 = 4*2^k solutions differ");
  c.expect(sols(15, 1, 2, 128) == sols(15, 1, 2, 64) && sols(3, 5, 4, 128) == sols(3, 5, 4, 64),
           "raising k_max to 128 changes the solution sets");
  std::set<std::pair<std::int64_t, int>> survivors;
  for (const int m1 : {3, 5, 7}) {
    const RNLinkReport r = rn_link_to_kloosterman(m1);
    c.expect(r.q_zero_branch_empty, "Q = 0 branch admits a solution at m1 = " + std::to_string(m1));
    for (const std::int64_t k : r.surviving_k) survivors.emplace(k, m1);
  }
  c.expect(survivors == std::set<std::pair<std::int64_t, int>>{{4, 3}, {-12, 7}, {-4, 3}},
           "surviving (K, m1) pairs differ from (4,3), (-12,7), (-4,3)");
  c.summary = "{(1,3)}, {(1,1),(3,3),(13,7)}; survivors (4,3) (-4,3) (-12,7)";
}

void property_suites(const ReproduceOptions& o, Checker& c) {
  std::size_t groups = 0;
  // trace additivity and transitivity
  {
    const Field f(12);
    bool additive = true;
    for (std::uint32_t x = 0; x < 4096 && additive; ++x) {
      for (std::uint32_t y = 0; y < 4096; ++y) {
        if (f.abs_trace(Elem{x ^ y}) != (f.abs_trace(Elem{x}) ^ f.abs_trace(Elem{y}))) {
          additive = false;
          break;
        }
      }
    }
    c.expect(additive, "absolute trace is not additive on GF(2^12)");
    for (const int d : {1, 2, 3, 4, 6, 12}) {
      for (std::uint32_t x = 0; x < 4096; ++x) {
        if (f.subfield_trace(d, f.rel_trace(d, Elem{x})) != f.abs_trace(Elem{x})) {
          c.expect(false, "trace transitivity fails through d = " + std::to_string(d));
          break;
        }
      }
    }
    ++groups;
  }
  // Parseval and the zero coefficient on random trace-form functions
  {
    const FieldPtr f = Field::make(12);
    std::mt19937_64 rng(o.seed);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<TraceTerm> terms;
      std::set<std::uint64_t> used;
      for (int t = 0; t < 4; ++t) {
        const std::uint64_t j = coset_leader(1 + rng() % 4094, 12);
        if (!used.insert(j).second) continue;
        const int o_j = coset_size(j, 12);
        terms.push_back(TraceTerm{j, f->rel_trace(o_j, Elem{static_cast<std::uint32_t>(rng() % 4096)}), o_j});
      }
      const BooleanFunction fn(f, terms, rng() & 1);
      const WalshSpectrum w = walsh_spectrum(fn);
      std::int64_t energy = 0;
      for (const std::int32_t v : w.values) energy += std::int64_t{v} * v;
      c.expect(energy == (std::int64_t{1} << 24), "Parseval fails on random function " + std::to_string(trial));
      c.expect(w.values[0] == 4096 - 2 * static_cast<std::int64_t>(fn.weight()), "W(0) != 2^n - 2 wt(f)");
    }
    ++groups;
  }
  // S-sum symmetries, b -> b^4 invariance, case table vs direct Lambda
  {
    const Family fam(12, o.seed);
    const Field& f = fam.field();
    for (const Elem a : f.subfield_elements(6)) {
      const CharacterSums s = s_sums(fam, a);
      const std::string at = " at a = " + hex(a);
      c.expect(s.s[1] == s.s[4] && s.s[2] == s.s[3], "S_1 != S_4 or S_2 != S_3" + at);
      c.expect(s.s[0] + 2 * (s.s[1] + s.s[2]) == s.lambda0, "S_0 + 2(S_1 + S_2) != Lambda(a,0)" + at);
      if (f.in_subfield(3, a)) {
        c.expect(s.s[1] == s.s[2] && s.s[0] + 4 * s.s[1] == s.lambda0, "subfield S relations fail" + at);
      }
      for (const Elem b : fam.b_domain()) {
        const std::int64_t direct = lambda_direct(fam, a, b);
        c.expect(direct == lambda_direct(fam, a, f.pow(b, 4)), "Lambda(a, b^4) != Lambda(a, b)" + at);
        const auto k = bclass_coefficients(classify_b(fam, b));
        c.expect(k[0] * s.s[0] + k[1] * s.s[1] + k[2] * s.s[2] == direct,
                 "case table disagrees with direct Lambda" + at + ", b = " + fam.b_name(b));
      }
    }
    groups += 3;
  }
  // Kloosterman range and divisibility
  {
    for (int m = 4; m <= 14; ++m) {
      const Field f(m);
      const SubfieldSums sums(f, m, o.workers);
      const auto [lo, hi] = kloosterman_bounds(m);
      for (const std::int32_t k : sums.kloosterman_values()) {
        if (k % 4 != 0 || k < lo || k > hi) {
          c.expect(false, "K out of range or not divisible by 4 at m = " + std::to_string(m));
          break;
        }
      }
    }
    ++groups;
  }
  // quintic squarefree, admissible patterns
  {
    for (const int m : {6, 7}) {
      const Field f(m);
      const PolyRing ring(f);
      const auto& allowed = m % 2 == 0 ? even_degree_quintic_patterns() : odd_degree_quintic_patterns();
      for (const Elem a : f.subfield_elements(m)) {
        if (a.is_zero()) continue;
        const Poly p = quintic_polynomial(f, a);
        c.expect(ring.gcd(p, ring.derivative(p)) == Poly::constant(Field::one()),
                 "quintic not squarefree at a = " + hex(a));
        const FactorPattern pat = quintic_pattern(f, m, a);
        c.expect(std::find(allowed.begin(), allowed.end(), pat) != allowed.end(),
                 "pattern " + pat.to_string() + " not admissible at m = " + std::to_string(m));
      }
    }
    ++groups;
  }
  // degree n/2 for every hyper-bent function of the full n = 12 family, both oracles
  {
    const Family fam(12, o.seed);
    SearchOptions so;
    so.workers = o.workers;
    so.anf_degree = true;
    const auto records = search_all(fam, fam.a_domain(false), fam.b_domain(), so);
    std::size_t hits = 0;
    for (const SearchRecord& r : records) {
      c.expect(u_restriction_test(f_ab(fam, r.a, r.b), fam) == r.hyperbent,
               "U-weight oracle disagrees at a = " + hex(r.a) + ", b = " + r.b_name);
      if (!r.hyperbent) continue;
      ++hits;
      c.expect(r.anf_degree == 6, "hyper-bent function of degree != 6 at a = " + hex(r.a));
    }
    c.expect(records.size() == 1024, "full n = 12 search size != 1024");
    c.summary = std::to_string(groups + 1) + " suites; " + std::to_string(hits) + " hyper-bent in full n = 12 family";
  }
}

struct Entry {
  CriterionInfo info;
  void (*run)(const ReproduceOptions&, Checker&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> e = {
      {{1, "n=12 subfield search: 16 hyper-bent, each passes the definitional oracle", 60}, subfield_search_n12},
      {{2, "n=20 subfield search: no hyper-bent functions", 5}, subfield_search_n20},
      {{3, "n=28 subfield search: predicted set, certified by U-weight, (2)(3) and K_7 = -12", 120},
       subfield_search_n28},
      {{4, "Lambda(a,0) = 1 - K and 5 S_0 = 1 - K + 2Q for m = 6, 10, 14", 60}, lambda_zero_identities},
      {{5, "b = 1 and trace-0 primitive b characterizations match direct Lambda (m = 6)", 30}, characterizations},
      {{6, "curve point counts match Q_6 and the (r, s) table", 30}, curve_counts_check},
      {{7, "unity-group vs Dickson coset sums, p = 1, 3, 5, 7 (n = 12)", 30}, coset_sums},
      {{8, "Kloosterman descent and K != -4 for subfield a, m1 = 3, 5, 7", 0}, kloosterman_descent},
      {{9, "bounded Ramanujan-Nagell solutions and surviving (K, m1) pairs", 0}, ramanujan_nagell},
      {{10, "property suites", 300}, property_suites},
  };
  return e;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list = [] {
    std::vector<CriterionInfo> out;
    for (const Entry& e : entries()) out.push_back(e.info);
    return out;
  }();
  return list;
}

CriterionResult run_criterion(int id, const ReproduceOptions& options) {
  const auto& list = entries();
  const auto it = std::find_if(list.begin(), list.end(), [&](const Entry& e) { return e.info.id == id; });
  if (it == list.end()) throw Error(ErrorCode::PreconditionViolated, "no criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.title = it->info.title;
  r.budget_seconds = it->info.budget_seconds;
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    it->run(options, c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.budget_seconds > 0 && r.seconds > r.budget_seconds) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "runtime %.2fs exceeds budget %.0fs", r.seconds, r.budget_seconds);
    c.failures.emplace_back(buf);
  }
  r.failures = std::move(c.failures);
  r.summary = std::move(c.summary);
  r.passed = r.failures.empty();
  return r;
}

std::string format_result_line(const CriterionResult& r) {
  char buf[64];
  if (r.budget_seconds > 0) {
    std::snprintf(buf, sizeof buf, "%-4s %2d  %7.2fs / %3.0fs  ", r.passed ? "PASS" : "FAIL", r.id, r.seconds,
                  r.budget_seconds);
  } else {
    std::snprintf(buf, sizeof buf, "%-4s %2d  %7.2fs /   -   ", r.passed ? "PASS" : "FAIL", r.id, r.seconds);
  }
  std::string line = buf + r.title;
  if (!r.summary.empty()) line += "  [" + r.summary + "]";
  return line;
}

}  // namespace hbf
