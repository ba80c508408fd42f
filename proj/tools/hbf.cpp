// hbf: command-line front end for the hyperbent library.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "hbf/dickson.hpp"
#include "hbf/family.hpp"
#include "hbf/records.hpp"
#include "hbf/reproduce.hpp"
#include "hbf/rnagell.hpp"

#ifndef HBF_VERSION
#define HBF_VERSION "0.0.0"
#endif

using namespace hbf;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string config_path;
  std::string moduli_path;
  std::string out_path;
  std::string manifest_path;
  bool csv = false;
  std::uint64_t seed = Family::kDefaultSeed;
  unsigned workers = default_workers();
};

struct Check {
  std::string name;
  bool passed;
};

struct Stage {
  std::string name;
  double seconds;
};

// Shared state of one invocation: resolved settings, output sink, manifest data.
class Run {
 public:
  Run(Settings s, std::string command_line) : settings_(std::move(s)), command_line_(std::move(command_line)) {}

  void open() {
    table_ = settings_.moduli_path.empty() ? ModulusTable::from_environment() : ModulusTable::load(settings_.moduli_path);
    if (!settings_.out_path.empty()) {
      file_.open(settings_.out_path);
      if (!file_) throw UsageError("cannot open " + settings_.out_path + " for writing");
    }
  }

  const Settings& settings() const { return settings_; }
  const ModulusTable& table() const { return table_; }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

  void emit(const Json& j) { out() << j.dump() << '\n'; }
  void line(const std::string& s) { out() << s << '\n'; }

  void check(std::string name, bool passed) {
    checks_.push_back({std::move(name), passed});
    failed_ |= !passed;
  }
  bool failed() const { return failed_; }

  template <typename Fn>
  auto stage(const std::string& name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto finish = [&] {
      stages_.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()});
    };
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      finish();
    } else {
      auto r = fn();
      finish();
      return r;
    }
  }

  void write_manifest(int exit_code) const {
    Json m;
    m["schema"] = kSchemaVersion;
    m["command"] = command_line_;
    m["version"] = HBF_VERSION;
#if defined(__clang__)
    m["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    m["compiler"] = std::string("gcc ") + __VERSION__;
#endif
    m["modulus_table_hash"] = format_hex(table_.hash());
    m["seed"] = settings_.seed;
    m["workers"] = settings_.workers;
    const std::time_t now = std::time(nullptr);
    std::ostringstream ts;
    ts << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ");
    m["timestamp"] = ts.str();
    Json checks = Json::array();
    for (const auto& c : checks_) checks.push_back({{"name", c.name}, {"passed", c.passed}});
    m["checks"] = checks;
    Json stages = Json::array();
    for (const auto& s : stages_) stages.push_back({{"name", s.name}, {"seconds", s.seconds}});
    m["stages"] = stages;
    m["exit_code"] = exit_code;
    if (settings_.manifest_path.empty()) {
      std::cerr << m.dump() << '\n';
    } else {
      std::ofstream f(settings_.manifest_path);
      f << m.dump(2) << '\n';
    }
  }

 private:
  Settings settings_;
  std::string command_line_;
  ModulusTable table_;
  std::ofstream file_;
  std::vector<Check> checks_;
  std::vector<Stage> stages_;
  bool failed_ = false;
};

std::uint64_t parse_hex(const std::string& text, const char* what) {
  std::string t = text;
  if (t.rfind("0x", 0) == 0 || t.rfind("0X", 0) == 0) t = t.substr(2);
  if (t.empty() || t.size() > 16 || t.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
    throw UsageError(std::string("bad hex value for ") + what + ": '" + text + "'");
  }
  return std::stoull(t, nullptr, 16);
}

Elem parse_elem(const Field& f, const std::string& text, const char* what) {
  const std::uint64_t v = parse_hex(text, what);
  if (v >> f.degree()) throw UsageError(std::string(what) + " = " + text + " is not an element of GF(2^" +
                                        std::to_string(f.degree()) + ")");
  return Elem{static_cast<std::uint32_t>(v)};
}

// key=value lines; '#' comments. Known keys: moduli, workers, seed.
void apply_config(const std::string& path, Settings& s, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r");
      const auto e = v.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "moduli") {
        if (app.count("--moduli") == 0) s.moduli_path = value;
      } else if (key == "workers") {
        if (app.count("--workers") == 0) s.workers = static_cast<unsigned>(std::stoul(value));
      } else if (key == "seed") {
        if (app.count("--seed") == 0) s.seed = std::stoull(value);
      } else {
        throw UsageError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": bad value for " + key);
    }
  }
  if (s.workers == 0) throw UsageError("workers must be >= 1");
}

// ---- field -------------------------------------------------------------------

struct FieldArgs {
  int k = 0;
  std::string modulus, x, y;
  std::uint64_t e = 0;
  int d = 0;
};

Field make_field(Run& run, int k, const std::string& modulus) {
  std::optional<std::uint64_t> mod;
  if (!modulus.empty()) mod = parse_hex(modulus, "modulus");
  return Field(k, mod, run.table());
}

void cmd_field(Run& run, const std::string& op, const FieldArgs& a) {
  const Field f = make_field(run, a.k, a.modulus);
  Json j;
  j["schema"] = kSchemaVersion;
  j["k"] = f.degree();
  j["modulus"] = format_hex(f.modulus());
  if (op == "info") {
    j["generator"] = f.to_hex(f.generator());
    j["group_order"] = f.group_order();
    Json factors = Json::array();
    for (const auto& p : f.group_order_factors()) factors.push_back({p.prime, p.exponent});
    j["group_order_factors"] = factors;
    run.emit(j);
    return;
  }
  const Elem x = parse_elem(f, a.x, "x");
  j["x"] = f.to_hex(x);
  if (op == "mul") {
    const Elem y = parse_elem(f, a.y, "y");
    j["y"] = f.to_hex(y);
    j["result"] = f.to_hex(f.mul(x, y));
  } else if (op == "inv") {
    j["result"] = f.to_hex(f.inv(x));
  } else if (op == "pow") {
    j["e"] = a.e;
    j["result"] = f.to_hex(f.pow(x, a.e));
  } else if (op == "trace") {
    const int d = a.d == 0 ? f.degree() : a.d;
    j["d"] = d;
    j["result"] = static_cast<int>(f.subfield_trace_checked(d, x));
  }
  run.emit(j);
}

// ---- sums / factor -------------------------------------------------------------

struct SumsArgs {
  int m = 0;
  int ambient = 0;
  std::string a;
  bool all = false;
};

void emit_sums(Run& run, const SumsRecord& r) {
  if (run.settings().csv) {
    run.line(to_csv(r));
  } else {
    run.emit(to_json(r));
  }
}

void cmd_sums(Run& run, const std::string& kind, const SumsArgs& args) {
  const bool curve = kind == "curve";
  const int ambient = args.ambient != 0 ? args.ambient : (curve ? 2 * args.m : args.m);
  if (ambient > Field::kMaxDegree) throw UsageError("ambient degree " + std::to_string(ambient) + " exceeds 32");
  if (ambient % args.m != 0 || (curve && ambient % (2 * args.m) != 0)) {
    throw UsageError("ambient degree must be a multiple of " + std::to_string(curve ? 2 * args.m : args.m));
  }
  if (args.all == !args.a.empty()) throw UsageError("give exactly one of --a and --all");
  const Field f(ambient, std::nullopt, run.table());
  if (run.settings().csv) run.line(csv_header_sums());

  if (!args.all) {
    const Elem a = parse_elem(f, args.a, "a");
    emit_sums(run, run.stage("sums", [&] { return make_sums_record(f, args.m, a, curve); }));
    run.check("record self-consistency", true);
    return;
  }
  if (curve && args.m > 10) throw UsageError("curve --all is limited to m <= 10");
  std::vector<SumsRecord> recs = run.stage("sums", [&] {
    std::vector<SumsRecord> out;
    const SubfieldSums sums(f, args.m, run.settings().workers);
    std::map<std::uint32_t, std::size_t> index;
    for (std::size_t i = 0; i < sums.elements().size(); ++i) index[sums.elements()[i].bits] = i;
    out.push_back(make_sums_record(f, args.m, Field::zero(), false));
    for (const auto& [bits, i] : index) {
      const Elem a{bits};
      SumsRecord r;
      r.m = args.m;
      r.a = a;
      r.k = sums.kloosterman_values()[i];
      r.q = sums.weil_q_values()[i];
      r.pattern = quintic_pattern(f, args.m, a);
      r.pair = weil_pair_resolve(*r.pattern, args.m, *r.q);
      if (curve) {
        r = make_sums_record(f, args.m, a, true);
        if (r.k != sums.kloosterman_values()[i] || r.q != sums.weil_q_values()[i]) {
          throw Error(ErrorCode::CrossCheckFailure, "table and direct sums disagree at a = " + format_hex(bits));
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  });
  std::sort(recs.begin(), recs.end(), [](const SumsRecord& x, const SumsRecord& y) { return x.a.bits < y.a.bits; });
  for (const auto& r : recs) emit_sums(run, r);
  run.check("record self-consistency", true);
}

void cmd_factor(Run& run, const SumsArgs& args) {
  if (args.all == !args.a.empty()) throw UsageError("give exactly one of --a and --all");
  const Field f(args.m, std::nullopt, run.table());
  const PolyRing ring(f);
  if (run.settings().csv) run.line("m,a_hex,pattern");
  auto one = [&](Elem a) {
    const FactorPattern p = quintic_pattern(f, a);
    if (run.settings().csv) {
      run.line(std::to_string(args.m) + "," + f.to_hex(a) + "," + p.to_string());
      return;
    }
    Json j;
    j["schema"] = kSchemaVersion;
    j["m"] = args.m;
    j["a_hex"] = f.to_hex(a);
    j["polynomial"] = ring.to_string(quintic_polynomial(f, a));
    j["pattern"] = p.to_string();
    run.emit(j);
  };
  if (args.all) {
    for (std::uint64_t a = 1; a < f.size(); ++a) one(Elem{static_cast<std::uint32_t>(a)});
  } else {
    one(parse_elem(f, args.a, "a"));
  }
}

// ---- dickson -------------------------------------------------------------------

void cmd_dickson_coeffs(Run& run, int r) {
  const DicksonPoly& d = dickson(r);
  Json j;
  j["schema"] = kSchemaVersion;
  j["r"] = r;
  j["degree"] = d.degree();
  j["polynomial"] = d.to_string();
  Json exps = Json::array();
  for (int i = 0; i <= kMaxDicksonIndex; ++i) {
    if (d.coeffs.test(i)) exps.push_back(i);
  }
  j["exponents"] = exps;
  run.emit(j);
}

void report_suite(Run& run, int m, const std::string& name, std::uint64_t checked, std::uint64_t failed) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["m"] = m;
  j["suite"] = name;
  j["checked"] = checked;
  j["failed"] = failed;
  j["passed"] = failed == 0;
  run.emit(j);
  run.check(name, failed == 0);
}

void cmd_dickson_verify(Run& run, int m) {
  if (m < 2 || 2 * m > Field::kMaxDegree) throw UsageError("dickson verify needs 2 <= m <= 16");
  const std::vector<int> indices = {1, 2, 3, 4, 5, 6, 7, 9, 11, 13, 15, 17, 21, 31, 33, 63, 64};

  run.stage("defining identity", [&] {
    // y in GF(2^m)* and y in the order-(2^m+1) group both give y + 1/y in GF(2^m)
    const Field big(2 * m, std::nullopt, run.table());
    std::vector<Elem> ys = big.subfield_elements(m);
    ys.erase(ys.begin());
    for (const Elem u : big.unity_roots((std::uint64_t{1} << m) + 1)) ys.push_back(u);
    std::uint64_t checked = 0, failed = 0;
    const std::size_t step = std::max<std::size_t>(1, ys.size() / 4096);
    for (std::size_t i = 0; i < ys.size(); i += step) {
      const Elem y = ys[i], yi = big.inv(y);
      for (const int r : indices) {
        ++checked;
        failed += dickson_eval(big, r, Field::add(y, yi)) != Field::add(big.pow(y, r), big.pow(yi, r));
      }
    }
    report_suite(run, m, "defining_identity", checked, failed);
  });

  const Field f(m, std::nullopt, run.table());
  const std::uint64_t step = std::max<std::uint64_t>(1, f.size() / 4096);

  run.stage("table vs recurrence", [&] {
    std::uint64_t checked = 0, failed = 0;
    for (std::uint64_t x = 0; x < f.size(); x += step) {
      for (int r = 0; r <= kMaxDicksonIndex; ++r) {
        const Elem e{static_cast<std::uint32_t>(x)};
        ++checked;
        failed += dickson_eval(f, r, e) != dickson_eval_recurrence(f, r, e);
      }
    }
    report_suite(run, m, "table_vs_recurrence", checked, failed);
  });

  run.stage("composition", [&] {
    std::uint64_t checked = 0, failed = 0;
    for (std::uint64_t x = 0; x < f.size(); x += step) {
      const Elem e{static_cast<std::uint32_t>(x)};
      for (const auto& [r, s] : std::vector<std::pair<int, int>>{{3, 5}, {5, 7}, {2, 9}, {7, 9}}) {
        ++checked;
        failed += dickson_eval(f, r * s, e) != dickson_eval(f, r, dickson_eval(f, s, e));
      }
    }
    report_suite(run, m, "composition", checked, failed);
  });

  run.stage("preimage law", [&] {
    std::uint64_t checked = 0, failed = 0;
    if (m <= 16) {
      std::vector<std::uint32_t> count(f.size());
      std::vector<std::uint32_t> image(f.size());
      for (const int k : {1, 3, 5, 7, 9, 11, 15, 17, 21, 33}) {
        std::fill(count.begin(), count.end(), 0);
        for (std::uint64_t x = 0; x < f.size(); ++x) {
          image[x] = dickson_eval(f, k, Elem{static_cast<std::uint32_t>(x)}).bits;
          ++count[image[x]];
        }
        for (std::uint64_t x = 0; x < f.size(); x += step) {
          ++checked;
          failed += preimage_count_predicted(f, k, Elem{static_cast<std::uint32_t>(x)}) != count[image[x]];
        }
      }
    }
    report_suite(run, m, "preimage_law", checked, failed);
  });

  if (m % 4 == 2 && 2 * m <= 28) {
    run.stage("coset sums", [&] {
      const Family fam(2 * m, run.settings().seed, run.table());
      std::uint64_t checked = 0, failed = 0;
      for (const Elem a : fam.a_domain(false)) {
        if (a.is_zero()) continue;
        for (const int p : {1, 3, 5, 7}) {
          ++checked;
          failed += !coset_sum_identity_check(fam, p, a);
        }
      }
      report_suite(run, m, "coset_sum_identity", checked, failed);
    });
  }
}

// ---- hyperbent -----------------------------------------------------------------

struct HyperArgs {
  int n = 0;
  bool subfield_a = false;
  std::string b = "all";
  std::string a;
  std::string method = "direct";
  bool definitional = false;
  bool anf = false;
  std::string spectrum_path;
};

std::vector<Elem> b_selection(const Family& fam, const std::string& text) {
  if (text == "all") return fam.b_domain();
  if (text.size() == 4 && text.find_first_not_of("01") == std::string::npos) {
    return {fam.parse_b("coords:" + text)};
  }
  return {fam.parse_b(text)};
}

void emit_search(Run& run, const Family& fam, const std::vector<SearchRecord>& recs) {
  if (run.settings().csv) {
    run.line(csv_header_search());
    for (const auto& r : recs) run.line(to_csv(fam, r));
  } else {
    for (const auto& r : recs) run.emit(to_json(fam, r));
  }
}

void cmd_search(Run& run, const HyperArgs& args) {
  const Family fam = run.stage("family", [&] { return Family(args.n, run.settings().seed, run.table()); });
  const auto bs = b_selection(fam, args.b);
  const auto as = fam.a_domain(args.subfield_a);
  SearchOptions opt;
  opt.definitional = args.definitional;
  opt.anf_degree = args.anf;
  opt.workers = run.settings().workers;
  const auto recs = run.stage("search", [&] { return search_all(fam, as, bs, opt); });
  emit_search(run, fam, recs);
  run.check("lambda methods agree", true);
  if (args.definitional) {
    bool ok = true;
    for (const auto& r : recs) ok &= r.definitional.value_or(r.hyperbent) == r.hyperbent;
    run.check("definitional oracle agrees", ok);
  }
}

void cmd_check(Run& run, const HyperArgs& args) {
  const Family fam(args.n, run.settings().seed, run.table());
  const Elem a = parse_elem(fam.field(), args.a, "a");
  fam.require_a(a);
  const Elem b = fam.parse_b(args.b);
  const LambdaMethod method = parse_method(args.method);
  Json j;
  j["schema"] = kSchemaVersion;
  j["n"] = fam.n();
  j["a_hex"] = fam.field().to_hex(a);
  j["b_coords"] = coords_string(fam.coords_of(b));
  j["b_name"] = fam.b_name(b);
  j["method"] = method_name(method);
  switch (method) {
    case LambdaMethod::Direct: j["lambda"] = lambda_direct(fam, a, b); break;
    case LambdaMethod::Prop32: j["lambda"] = lambda_prop32(fam, a, b); break;
    case LambdaMethod::Closed: j["lambda"] = lambda_closed(fam, a, b); break;
    case LambdaMethod::Definitional: break;
  }
  const bool verdict = is_hyperbent(fam, a, b, method);
  j["hyperbent"] = verdict;
  // every other method that applies must agree
  bool agree = is_hyperbent(fam, a, b, LambdaMethod::Direct) == verdict &&
               is_hyperbent(fam, a, b, LambdaMethod::Prop32) == verdict;
  if (!a.is_zero() && closed_form_applicable(fam, a, b)) agree &= is_hyperbent(fam, a, b, LambdaMethod::Closed) == verdict;
  j["methods_agree"] = agree;
  run.emit(j);
  run.check("methods agree", agree);
}

void cmd_spectrum(Run& run, const HyperArgs& args) {
  if (args.spectrum_path.empty()) throw UsageError("spectrum needs --spectrum-out PATH");
  const Family fam(args.n, run.settings().seed, run.table());
  const Elem a = parse_elem(fam.field(), args.a, "a");
  fam.require_a(a);
  const Elem b = fam.parse_b(args.b);
  const BooleanFunction g = f_ab(fam, a, b);
  const WalshSpectrum s = run.stage("spectrum", [&] { return walsh_spectrum(g); });
  write_spectrum(args.spectrum_path, s, g);
  const bool bent = s.max_abs == (std::int64_t{1} << fam.m());
  Json j;
  j["schema"] = kSchemaVersion;
  j["n"] = fam.n();
  j["a_hex"] = fam.field().to_hex(a);
  j["b_coords"] = coords_string(fam.coords_of(b));
  j["max_abs"] = s.max_abs;
  j["bent"] = bent;
  j["path"] = args.spectrum_path;
  run.emit(j);
  const bool hyper = lambda_direct(fam, a, b) == 1;
  run.check("hyper-bent implies bent", !hyper || bent);
}

void identity(Run& run, int n, const std::string& name, const std::string& domain, std::uint64_t checked,
              std::uint64_t failed) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["n"] = n;
  j["identity"] = name;
  j["a_domain"] = domain;
  j["checked"] = checked;
  j["failed"] = failed;
  j["passed"] = failed == 0;
  run.emit(j);
  run.check(name, failed == 0);
}

void cmd_verify_identities(Run& run, const HyperArgs& args) {
  const Family fam = run.stage("family", [&] { return Family(args.n, run.settings().seed, run.table()); });
  const Field& f = fam.field();
  const bool subfield_only = fam.n() > 20;
  const std::string domain = subfield_only ? "subfield" : "full";
  const auto as = fam.a_domain(subfield_only);
  std::set<std::uint32_t> sub;
  for (const Elem a : fam.a_domain(true)) sub.insert(a.bits);

  SearchOptions opt;
  opt.workers = run.settings().workers;
  const auto recs = run.stage("search", [&] { return search_all(fam, as, fam.b_domain(), opt); });
  identity(run, fam.n(), "lambda_three_methods", domain, recs.size(), 0);

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> lam;
  for (const auto& r : recs) lam[{r.a.bits, r.b.bits}] = r.lambda_direct;
  const std::int64_t bound = (std::int64_t{1} << fam.m()) + 1;

  run.stage("identities", [&] {
    std::uint64_t c = 0, bad = 0;
    for (const Elem a : as) {
      const CharacterSums s = s_sums(fam, a);
      ++c;
      bad += s.s[1] != s.s[4] || s.s[2] != s.s[3] || s.s[0] + 2 * (s.s[1] + s.s[2]) != s.lambda0 ||
             s.lambda0 != lam.at({a.bits, 0}) ||
             (sub.count(a.bits) && (s.s[1] != s.s[2] || s.s[0] + 4 * s.s[1] != s.lambda0));
    }
    identity(run, fam.n(), "s_sum_symmetries", domain, c, bad);

    c = bad = 0;
    for (const auto& r : recs) {
      ++c;
      bad += lam.at({r.a.bits, f.pow(r.b, 4).bits}) != r.lambda_direct;
    }
    identity(run, fam.n(), "lambda_b4_invariance", domain, c, bad);

    c = bad = 0;
    for (const auto& r : recs) {
      if (classify_b(fam, r.b) != BClass::PrimitiveTraceZero && !sub.count(r.a.bits)) continue;
      ++c;
      bad += lam.at({r.a.bits, f.sqr(r.b).bits}) != r.lambda_direct;
    }
    identity(run, fam.n(), "lambda_b2_invariance", domain, c, bad);

    c = bad = 0;
    for (const auto& r : recs) {
      if (r.a.is_zero()) continue;
      ++c;
      bad += (r.b.is_zero() && r.lambda_direct != 1 - r.k) || (1 - r.k + 2 * *r.q) % 5 != 0;
    }
    identity(run, fam.n(), "kloosterman_and_s0_integrality", domain, c, bad);

    c = bad = 0;
    for (const auto& r : recs) {
      ++c;
      bad += r.lambda_direct % 2 == 0 || std::abs(r.lambda_direct) > bound;
    }
    identity(run, fam.n(), "lambda_odd_and_bounded", domain, c, bad);

    c = bad = 0;
    for (const auto& r : recs) {
      if (r.a.is_zero()) continue;
      const BClass cls = classify_b(fam, r.b);
      if (cls == BClass::One) {
        ++c;
        bad += thm31_characterize(fam, r.a) != r.hyperbent;
      } else if (cls == BClass::PrimitiveTraceZero) {
        ++c;
        bad += thm32_characterize(fam, r.a, r.b) != r.hyperbent;
      }
    }
    identity(run, fam.n(), "characterizations", domain, c, bad);
  });
}

// ---- rnagell -------------------------------------------------------------------

void cmd_rn_solve(Run& run, const RNEquation& eq) {
  const auto sols = rn_solve(eq);
  Json j;
  j["schema"] = kSchemaVersion;
  j["equation"] = eq.to_string();
  j["k_max"] = eq.k_max;
  j["complete_up_to_k_max"] = true;
  Json arr = Json::array();
  for (const auto& s : sols) arr.push_back({{"x", s.x.str()}, {"k", s.k}});
  j["solutions"] = arr;
  run.emit(j);
}

void cmd_rn_link(Run& run, int m1, int k_max) {
  const RNLinkReport r = rn_link_to_kloosterman(m1, k_max);
  Json j;
  j["schema"] = kSchemaVersion;
  j["m1"] = r.m1;
  j["k_max"] = r.k_max;
  j["q_zero_branch_empty"] = r.q_zero_branch_empty;
  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"equation", c.equation},
                     {"q_branch", c.q_branch},
                     {"x", c.x},
                     {"K", c.k_value},
                     {"divisible_by_4", c.divisible_by_4}});
  }
  j["candidates"] = cands;
  j["surviving_K"] = r.surviving_k;
  run.emit(j);
}

// ---- reproduce -----------------------------------------------------------------

void cmd_reproduce(Run& run, bool all, int criterion) {
  if (all == (criterion != 0)) throw UsageError("give exactly one of --all and --criterion");
  ReproduceOptions opt;
  opt.seed = run.settings().seed;
  opt.workers = run.settings().workers;
  std::vector<int> ids;
  if (all) {
    for (const auto& c : criteria()) ids.push_back(c.id);
  } else {
    ids.push_back(criterion);
  }
  for (const int id : ids) {
    const CriterionResult r = run.stage("criterion " + std::to_string(id), [&] { return run_criterion(id, opt); });
    run.line(format_result_line(r));
    for (const auto& msg : r.failures) run.line("      " + msg);
    run.check("criterion " + std::to_string(id), r.passed);
  }
}

std::string join_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyper-bent functions, exponential sums and Dickson polynomials over binary fields"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_version_flag("--version", HBF_VERSION);

  Settings s;
  app.add_option("--config", s.config_path, "key=value file (moduli, workers, seed)");
  app.add_option("--moduli", s.moduli_path, "modulus table file, lines 'k: hex' (default: $HBF_MODULI or builtin)");
  app.add_option("--out", s.out_path, "write results here instead of stdout");
  app.add_option("--manifest", s.manifest_path, "write the run manifest here instead of stderr");
  app.add_flag("--csv", s.csv, "CSV instead of JSON lines where supported");
  app.add_option("--seed", s.seed, "seed for the random invariance sample");
  app.add_option("--workers", s.workers, "worker threads")->check(CLI::PositiveNumber);

  std::function<void(Run&)> action;

  // field
  auto* field = app.add_subcommand("field", "field arithmetic");
  field->require_subcommand(1);
  FieldArgs fa;
  for (const char* op : {"info", "mul", "inv", "pow", "trace"}) {
    auto* sub = field->add_subcommand(op);
    sub->add_option("--k", fa.k, "degree")->required()->check(CLI::Range(2, 32));
    sub->add_option("--modulus", fa.modulus, "explicit modulus (hex)");
    if (std::string(op) != "info") sub->add_option("--x", fa.x, "element (hex)")->required();
    if (std::string(op) == "mul") sub->add_option("--y", fa.y, "element (hex)")->required();
    if (std::string(op) == "pow") sub->add_option("--e", fa.e, "exponent")->required();
    if (std::string(op) == "trace") sub->add_option("--d", fa.d, "subfield degree (default k)");
    sub->callback([&, op] { action = [&, o = std::string(op)](Run& r) { cmd_field(r, o, fa); }; });
  }

  // sums
  auto* sums = app.add_subcommand("sums", "Kloosterman sums, Weil sums and curve point counts");
  sums->require_subcommand(1);
  SumsArgs sa;
  for (const char* kind : {"kloosterman", "weil", "curve"}) {
    auto* sub = sums->add_subcommand(kind);
    sub->add_option("--m", sa.m, "subfield degree")->required()->check(CLI::Range(2, 32));
    sub->add_option("--a", sa.a, "parameter (hex, in the ambient field)");
    sub->add_flag("--all", sa.all, "every a in GF(2^m)");
    sub->add_option("--ambient", sa.ambient, "ambient field degree (default m, or 2m for curve)");
    sub->callback([&, kind] { action = [&, k = std::string(kind)](Run& r) { cmd_sums(r, k, sa); }; });
  }

  // factor
  auto* factor = app.add_subcommand("factor", "factor-degree pattern of x^5 + x + 1/a over GF(2^m)");
  factor->add_option("--m", sa.m, "field degree")->required()->check(CLI::Range(2, 32));
  factor->add_option("--a", sa.a, "parameter (hex)");
  factor->add_flag("--all", sa.all, "every nonzero a");
  factor->callback([&] { action = [&](Run& r) { cmd_factor(r, sa); }; });

  // dickson
  auto* dick = app.add_subcommand("dickson", "Dickson polynomials");
  dick->require_subcommand(1);
  int dr = 0, dm = 0;
  auto* coeffs = dick->add_subcommand("coeffs", "coefficients of D_r over GF(2)");
  coeffs->add_option("--r", dr, "index")->required()->check(CLI::Range(0, kMaxDicksonIndex));
  coeffs->callback([&] { action = [&](Run& r) { cmd_dickson_coeffs(r, dr); }; });
  auto* dverify = dick->add_subcommand("verify", "run the identity suites over GF(2^m)");
  dverify->add_option("--m", dm, "field degree")->required()->check(CLI::Range(2, 16));
  dverify->callback([&] { action = [&](Run& r) { cmd_dickson_verify(r, dm); }; });

  // hyperbent
  auto* hb = app.add_subcommand("hyperbent", "the f_{a,b} family on GF(2^n), n in {12, 20, 28}");
  hb->require_subcommand(1);
  HyperArgs ha;
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", ha.n, "field degree")->required(); };
  auto* search = hb->add_subcommand("search", "one record per (a, b)");
  add_n(search);
  search->add_flag("--subfield-a", ha.subfield_a, "restrict a to GF(2^(n/4))");
  search->add_option("--b", ha.b, "all, four coordinate bits (1, beta, beta^2, beta^3) or a name");
  search->add_flag("--definitional", ha.definitional, "also run the definitional test (n <= 16)");
  search->add_flag("--anf", ha.anf, "algebraic degree of hyper-bent records (n <= 24)");
  search->callback([&] { action = [&](Run& r) { cmd_search(r, ha); }; });
  auto* check = hb->add_subcommand("check", "verdict for one (a, b)");
  add_n(check);
  check->add_option("--a", ha.a, "a (hex)")->required();
  check->add_option("--b", ha.b, "b name, e.g. beta^2 or 1+beta")->required();
  check->add_option("--method", ha.method, "direct|prop32|closed|definitional");
  check->callback([&] { action = [&](Run& r) { cmd_check(r, ha); }; });
  auto* verify = hb->add_subcommand("verify-identities", "character-sum and Lambda identities");
  add_n(verify);
  verify->callback([&] { action = [&](Run& r) { cmd_verify_identities(r, ha); }; });
  auto* spec = hb->add_subcommand("spectrum", "export the Walsh spectrum of one f_{a,b}");
  add_n(spec);
  spec->add_option("--a", ha.a, "a (hex)")->required();
  spec->add_option("--b", ha.b, "b name")->required();
  spec->add_option("--spectrum-out", ha.spectrum_path, "binary spectrum path (sidecar gets .json)")->required();
  spec->callback([&] { action = [&](Run& r) { cmd_spectrum(r, ha); }; });

  // rnagell
  auto* rn = app.add_subcommand("rnagell", "d1 x^2 + d2 = eta^2 p^k");
  rn->require_subcommand(1);
  RNEquation eq;
  auto* solve = rn->add_subcommand("solve", "bounded solver");
  solve->add_option("--d1", eq.d1)->required();
  solve->add_option("--d2", eq.d2)->required();
  solve->add_option("--eta2", eq.eta_sq, "eta squared: 1, 2 or 4")->required();
  solve->add_option("--p", eq.p)->required();
  solve->add_option("--kmax", eq.k_max);
  solve->callback([&] { action = [&](Run& r) { cmd_rn_solve(r, eq); }; });
  int m1 = 0, link_kmax = 64;
  auto* link = rn->add_subcommand("link", "Kloosterman values admitted for subfield a");
  link->add_option("--m1", m1, "odd m1 >= 3")->required();
  link->add_option("--kmax", link_kmax);
  link->callback([&] { action = [&](Run& r) { cmd_rn_link(r, m1, link_kmax); }; });

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "run the acceptance checks");
  bool rep_all = false;
  int rep_id = 0;
  rep->add_flag("--all", rep_all, "all ten checks");
  rep->add_option("--criterion", rep_id, "one check")->check(CLI::Range(1, 10));
  rep->callback([&] { action = [&](Run& r) { cmd_reproduce(r, rep_all, rep_id); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  int exit_code = kExitOk;
  std::unique_ptr<Run> run;
  try {
    if (!s.config_path.empty()) apply_config(s.config_path, s, app);
    run = std::make_unique<Run>(s, join_argv(argc, argv));
    run->open();
    action(*run);
    exit_code = run->failed() ? kExitCheckFailed : kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    exit_code = kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::CrossCheckFailure:
      case ErrorCode::InvarianceViolated:
      case ErrorCode::PatternMismatch:
      case ErrorCode::NonIntegralLambda:
        exit_code = kExitCheckFailed;
        break;
      default:
        exit_code = kExitUsage;
    }
  }
  if (run) {
    run->out().flush();
    run->write_manifest(exit_code);
  }
  return exit_code;
}
