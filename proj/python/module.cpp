#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hbf/dickson.hpp"
#include "hbf/family.hpp"
#include "hbf/records.hpp"
#include "hbf/reproduce.hpp"
#include "hbf/rnagell.hpp"

namespace py = pybind11;
using namespace hbf;

namespace {

Elem elem(std::uint64_t v) { return Elem{static_cast<std::uint32_t>(v)}; }

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<std::uint32_t> bits(const std::vector<Elem>& v) {
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (const Elem e : v) out.push_back(e.bits);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Binary-field exponential sums and the hyper-bent f_{a,b} family";

  static py::exception<Error> hbf_error(m, "HbfError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = hbf_error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(exc.ptr(), inst.ptr());
    }
  });

  py::class_<Field, std::shared_ptr<Field>>(m, "Field")
      .def(py::init([](int k, std::optional<std::uint64_t> modulus) { return std::make_shared<Field>(k, modulus); }),
           py::arg("k"), py::arg("modulus") = py::none())
      .def_property_readonly("degree", &Field::degree)
      .def_property_readonly("modulus", &Field::modulus)
      .def_property_readonly("generator", [](const Field& f) { return f.generator().bits; })
      .def_property_readonly("size", &Field::size)
      .def("mul", [](const Field& f, std::uint64_t x, std::uint64_t y) {
        f.check(elem(x));
        f.check(elem(y));
        return f.mul(elem(x), elem(y)).bits;
      })
      .def("inv", [](const Field& f, std::uint64_t x) { return f.inv(elem(x)).bits; })
      .def("pow", [](const Field& f, std::uint64_t x, std::uint64_t e) {
        f.check(elem(x));
        return f.pow(elem(x), e).bits;
      })
      .def(
          "trace",
          [](const Field& f, std::uint64_t x, std::optional<int> d) {
            return static_cast<int>(f.subfield_trace_checked(d.value_or(f.degree()), elem(x)));
          },
          py::arg("x"), py::arg("d") = py::none())
      .def("subfield_elements", [](const Field& f, int d) { return bits(f.subfield_elements(d)); })
      .def("__repr__", [](const Field& f) {
        return "Field(k=" + std::to_string(f.degree()) + ", modulus=" + format_hex(f.modulus()) + ")";
      });

  m.def("kloosterman", [](const Field& f, int m_, std::uint64_t a) { return kloosterman(f, m_, elem(a)); },
        py::arg("field"), py::arg("m"), py::arg("a"));
  m.def("weil_q", [](const Field& f, int m_, std::uint64_t a) { return weil_q(f, m_, elem(a)); }, py::arg("field"),
        py::arg("m"), py::arg("a"));
  m.def("quintic_pattern",
        [](const Field& f, int m_, std::uint64_t a) { return quintic_pattern(f, m_, elem(a)).to_string(); },
        py::arg("field"), py::arg("m"), py::arg("a"));
  m.def(
      "sums_record",
      [](const Field& f, int m_, std::uint64_t a, bool with_curve) {
        return to_py(to_json(make_sums_record(f, m_, elem(a), with_curve)));
      },
      py::arg("field"), py::arg("m"), py::arg("a"), py::arg("with_curve") = false,
      "K, Q, pattern, (r, s) and optionally the curve counts n1, n2 as a dict.");
  m.def(
      "subfield_sums",
      [](const Field& f, int d) {
        const SubfieldSums s(f, d);
        py::dict out;
        for (std::size_t i = 0; i < s.elements().size(); ++i) {
          out[py::int_(s.elements()[i].bits)] = py::make_tuple(s.kloosterman_values()[i], s.weil_q_values()[i]);
        }
        return out;
      },
      py::arg("field"), py::arg("d"), "{a: (K_d(a), Q_d(a))} for every nonzero a in GF(2^d).");

  m.def("dickson_exponents", [](int r) {
    std::vector<int> e;
    const DicksonPoly& d = dickson(r);
    for (int i = 0; i <= kMaxDicksonIndex; ++i) {
      if (d.coeffs.test(i)) e.push_back(i);
    }
    return e;
  });
  m.def("dickson_eval", [](const Field& f, int r, std::uint64_t x) { return dickson_eval(f, r, elem(x)).bits; });
  m.def("dickson_preimage_count",
        [](const Field& f, int k, std::uint64_t x) { return preimage_count_predicted(f, k, elem(x)); });

  py::class_<Family>(m, "Family")
      .def(py::init<int, std::uint64_t>(), py::arg("n"), py::arg("seed") = Family::kDefaultSeed)
      .def_property_readonly("n", &Family::n)
      .def_property_readonly("m", &Family::m)
      .def_property_readonly("m1", &Family::m1)
      .def_property_readonly("field", [](const Family& f) { return std::const_pointer_cast<Field>(f.field_ptr()); })
      .def_property_readonly("beta", [](const Family& f) { return f.beta().bits; })
      .def_property_readonly("xi", [](const Family& f) { return f.xi().bits; })
      .def("a_domain", [](const Family& f, bool subfield_only) { return bits(f.a_domain(subfield_only)); },
           py::arg("subfield_only") = false)
      .def("b_domain", [](const Family& f) { return bits(f.b_domain()); })
      .def("parse_b", [](const Family& f, const std::string& s) { return f.parse_b(s).bits; })
      .def("b_name", [](const Family& f, std::uint64_t b) { return f.b_name(elem(b)); })
      .def("lambda_direct", [](const Family& f, std::uint64_t a, std::uint64_t b) {
        return lambda_direct(f, elem(a), elem(b));
      })
      .def("lambda_prop32", [](const Family& f, std::uint64_t a, std::uint64_t b) {
        return lambda_prop32(f, elem(a), elem(b));
      })
      .def("lambda_closed", [](const Family& f, std::uint64_t a, std::uint64_t b) {
        return lambda_closed(f, elem(a), elem(b));
      })
      .def(
          "is_hyperbent",
          [](const Family& f, std::uint64_t a, std::uint64_t b, const std::string& method) {
            return is_hyperbent(f, elem(a), elem(b), parse_method(method));
          },
          py::arg("a"), py::arg("b"), py::arg("method") = "direct")
      .def("s_sums",
           [](const Family& f, std::uint64_t a) {
             const CharacterSums s = s_sums(f, elem(a));
             return py::make_tuple(std::vector<std::int64_t>(s.s.begin(), s.s.end()), s.lambda0);
           })
      .def(
          "search",
          [](const Family& f, bool subfield_a, bool definitional, std::optional<unsigned> workers) {
            SearchOptions opt;
            opt.definitional = definitional;
            if (workers) opt.workers = *workers;
            std::vector<SearchRecord> recs;
            {
              py::gil_scoped_release release;
              recs = search_all(f, f.a_domain(subfield_a), f.b_domain(), opt);
            }
            py::list out;
            for (const auto& r : recs) out.append(to_py(to_json(f, r)));
            return out;
          },
          py::arg("subfield_a") = false, py::arg("definitional") = false, py::arg("workers") = py::none())
      .def(
          "walsh_spectrum",
          [](const Family& f, std::uint64_t a, std::uint64_t b) {
            const WalshSpectrum s = walsh_spectrum(f_ab(f, elem(a), elem(b)));
            return py::array_t<std::int32_t>(static_cast<py::ssize_t>(s.values.size()), s.values.data());
          },
          "Walsh coefficients of f_{a,b} indexed by the bit pattern of w.")
      .def("u_restriction", [](const Family& f, std::uint64_t a, std::uint64_t b) {
        const URestrictionReport r = u_restriction(f_ab(f, elem(a), elem(b)), f);
        return py::dict(py::arg("hyper_bent") = r.hyper_bent, py::arg("weight_on_u") = r.weight_on_u,
                        py::arg("invariance_points") = r.invariance_points);
      });

  m.def(
      "rn_solve",
      [](std::uint64_t d1, std::uint64_t d2, std::uint64_t eta_sq, std::uint64_t p, int k_max) {
        py::list out;
        for (const auto& s : rn_solve(RNEquation{d1, d2, eta_sq, p, k_max})) {
          out.append(py::make_tuple(py::int_(py::str(s.x.str())), s.k));
        }
        return out;
      },
      py::arg("d1"), py::arg("d2"), py::arg("eta_sq"), py::arg("p"), py::arg("k_max") = 64,
      "All (x, k) with d1 x^2 + d2 = eta_sq p^k and k <= k_max.");

  m.def(
      "run_criterion",
      [](int id, std::uint64_t seed) {
        ReproduceOptions opt;
        opt.seed = seed;
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(id, opt);
        }
        return py::dict(py::arg("id") = r.id, py::arg("title") = r.title, py::arg("passed") = r.passed,
                        py::arg("seconds") = r.seconds, py::arg("failures") = r.failures,
                        py::arg("summary") = r.summary);
      },
      py::arg("id"), py::arg("seed") = Family::kDefaultSeed);
}
