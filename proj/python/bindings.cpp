#include <sstream>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zeckpow/bounds.hpp"
#include "zeckpow/cli.hpp"
#include "zeckpow/fib.hpp"
#include "zeckpow/linforms.hpp"
#include "zeckpow/matveev.hpp"
#include "zeckpow/report.hpp"
#include "zeckpow/search.hpp"
#include "zeckpow/verify.hpp"

namespace py = pybind11;
using namespace zeckpow;

namespace {

// Python ints cross the boundary as decimal strings.
BigInt to_big(const py::int_& v) { return BigInt(py::str(v).cast<std::string>(), 10); }
py::int_ to_py(const BigInt& v) { return py::int_(py::str(v.get_str())); }

py::object to_py(const Json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

BigRational to_rational(const py::object& v) {
  return parse_rational(py::str(v).cast<std::string>());
}

py::tuple bound_tuple(const BoundExpr& b) { return py::make_tuple(b.c.get_str(), b.x); }

BoundExpr from_tuple(const py::tuple& t) {
  if (t.size() != 2) throw std::invalid_argument("expected a (c, x) pair");
  return BoundExpr{to_rational(t[0]), t[1].cast<unsigned>()};
}

}  // namespace

PYBIND11_MODULE(_zeckpow, m) {
  m.doc() = "Fibonacci perfect-power bounds: native core";

  m.def("fib", [](std::uint64_t n) { return to_py(fib(n)); }, py::arg("n"));
  m.def("lucas", [](std::uint64_t n) { return to_py(lucas(n)); }, py::arg("n"));
  m.def(
      "zeckendorf",
      [](const py::int_& y) {
        const ZeckendorfRep rep = zeckendorf(to_big(y));
        return std::vector<unsigned>(rep.indices().begin(), rep.indices().end());
      },
      py::arg("y"));
  m.def("hamming_weight", [](const py::int_& y) { return hamming_weight(to_big(y)); }, py::arg("y"));
  m.def(
      "perfect_power",
      [](const py::int_& s) -> py::object {
        const auto pp = perfect_power(to_big(s));
        if (!pp) return py::none();
        return py::make_tuple(to_py(pp->base), pp->exponent);
      },
      py::arg("s"));

  m.def(
      "enumerate",
      [](unsigned max_n, unsigned threads) {
        SearchOptions opts;
        opts.threads = threads;
        py::list out;
        for (const auto& s : enumerate(max_n, opts)) {
          out.append(py::make_tuple(s.n, s.m, to_py(s.y), s.a, to_py(s.value)));
        }
        return out;
      },
      py::arg("max_n"), py::arg("threads") = 1);
  m.def(
      "enumerate_exhaustive",
      [](unsigned max_n) {
        py::list out;
        for (const auto& s : enumerate_exhaustive(max_n)) {
          out.append(py::make_tuple(s.n, s.m, to_py(s.y), s.a, to_py(s.value)));
        }
        return out;
      },
      py::arg("max_n"));
  m.def("census_check", [](unsigned max_n) { return to_py(to_json(census_check(max_n))); },
        py::arg("max_n"));

  m.def("default_step_constant", [] { return default_step_constant().get_str(); });
  m.def(
      "step_a",
      [](unsigned ell, const py::tuple& r, const py::object& c) {
        return bound_tuple(step_a(ell, from_tuple(r), c.is_none() ? default_step_constant() : to_rational(c)));
      },
      py::arg("ell"), py::arg("r"), py::arg("c") = py::none());
  m.def(
      "step_b",
      [](unsigned ell, const py::tuple& s, const py::tuple& t, const py::object& c) {
        return bound_tuple(step_b(ell, from_tuple(s), from_tuple(t),
                                  c.is_none() ? default_step_constant() : to_rational(c)));
      },
      py::arg("ell"), py::arg("s"), py::arg("t"), py::arg("c") = py::none());
  m.def(
      "walk_case2",
      [](unsigned k, unsigned l0) {
        py::list steps;
        const WalkOutcome w = walk_case2(k, l0);
        for (const auto& st : w.trace) steps.append(py::make_tuple(st.step, st.name, bound_tuple(st.value)));
        return py::make_tuple(bound_tuple(w.final), steps);
      },
      py::arg("k"), py::arg("l0"));
  m.def("case2_closed_form", [](unsigned k, unsigned l0) { return bound_tuple(case2_closed_form(k, l0)); },
        py::arg("k"), py::arg("l0"));

  m.def(
      "finish",
      [](unsigned k, const std::string& method, const py::object& delta, Precision precision) {
        FinishMethod fm;
        if (method == "iteration") {
          fm = FinishMethod::iteration;
        } else if (method == "lemma10" || method == "closed-form") {
          fm = FinishMethod::closed_form;
        } else {
          throw std::invalid_argument("unknown method: " + method);
        }
        return to_py(to_json(finish(k, fm, to_rational(delta), precision)));
      },
      py::arg("k"), py::arg("method") = "iteration", py::arg("delta") = "1/2", py::arg("precision") = 128);

  m.def(
      "step_constant",
      [](const py::object& candidate, Precision precision) {
        const BigRational c = candidate.is_none() ? BigRational(step_constant_value()) : to_rational(candidate);
        const StepConstantCertificate cert = check_step_constant(c, 4, precision);
        py::dict d;
        d["candidate"] = cert.candidate.get_str();
        d["product_lower"] = cert.product.lower_double();
        d["product_upper"] = cert.product.upper_double();
        d["width"] = cert.product.width_double();
        d["certified"] = cert.certified;
        return d;
      },
      py::arg("candidate") = py::none(), py::arg("precision") = 128);

  m.def(
      "linear_forms",
      [](const std::string& instance_json, Precision precision) {
        std::istringstream in(instance_json);
        std::ostringstream out;
        run_linform_batch(in, out, precision, kPrecisionCap);
        py::list rows;
        std::istringstream lines(out.str());
        std::string line;
        while (std::getline(lines, line)) rows.append(to_py(Json::parse(line)));
        return rows;
      },
      py::arg("instance_json"), py::arg("precision") = 128);

  m.def(
      "verify",
      [](const std::vector<std::string>& only) {
        VerifyOptions opt;
        opt.only = {only.begin(), only.end()};
        py::list out;
        for (const auto& r : run_verify(opt)) {
          py::dict d;
          d["id"] = r.id;
          d["alias"] = r.alias;
          d["status"] = to_string(r.status);
          d["checks"] = r.checks;
          d["failures"] = r.failures;
          out.append(d);
        }
        return out;
      },
      py::arg("only") = std::vector<std::string>{});

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::istringstream in(stdin_text);
        std::ostringstream out, err;
        const int code = run_cli(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "");
}
