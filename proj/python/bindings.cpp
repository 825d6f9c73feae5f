#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "sosrank/certificates.hpp"
#include "sosrank/laurentk.hpp"
#include "sosrank/moments.hpp"
#include "sosrank/serialize.hpp"
#include "sosrank/symsos.hpp"

namespace py = pybind11;
using namespace sosrank;

namespace {

py::object to_fraction(const Rational& x) {
  // Intentionally leaked.
  static auto* fraction = new py::object(py::module_::import("fractions").attr("Fraction"));
  return (*fraction)(py::int_(py::str(x.get_num().get_str())), py::int_(py::str(x.get_den().get_str())));
}

// Accepts int, Fraction or a "p/q" string.
Rational from_py(const py::handle& h) {
  if (py::isinstance<py::float_>(h)) throw py::type_error("floats are not exact; pass int, Fraction or 'p/q'");
  return parse_rational(py::str(h).cast<std::string>());
}

std::vector<Rational> from_py_list(const py::sequence& seq) {
  std::vector<Rational> out;
  out.reserve(seq.size());
  for (const auto& h : seq) out.push_back(from_py(h));
  return out;
}

py::list to_py_list(const std::vector<Rational>& xs) {
  py::list out;
  for (const auto& x : xs) out.append(to_fraction(x));
  return out;
}

py::object to_py_json(const Json& j) {
  static auto* loads = new py::object(py::module_::import("json").attr("loads"));
  return (*loads)(j.dump());
}

RationalMatrix matrix_from_py(const py::sequence& rows) {
  RationalMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row = rows[i].cast<py::sequence>();
    if (row.size() != rows.size()) throw py::value_error("matrix must be square");
    for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = from_py(row[j]);
  }
  return m;
}

py::list matrix_to_py(const RationalMatrix& m) {
  py::list rows;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.dim(); ++j) row.append(to_fraction(m(i, j)));
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact SoS hierarchy certificates for symmetric binary problems";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const std::length_error& e) {
      PyErr_SetString(PyExc_OverflowError, e.what());
    } catch (const std::domain_error& e) {
      PyErr_SetString(PyExc_ArithmeticError, e.what());
    }
  });

  mod.def("g_sum_form", [](unsigned d, unsigned n) { return to_fraction(g_sum_form(d, n)); }, py::arg("d"), py::arg("n"));
  mod.def("g_closed_form", [](unsigned d, unsigned n) { return to_fraction(g_closed_form(d, n)); }, py::arg("d"), py::arg("n"));

  mod.def("z_solution", [](unsigned n, unsigned d) { return to_py_list(z_solution(Instance(n, d)).weights); },
          py::arg("n"), py::arg("d"));
  mod.def("y_alpha", [](unsigned n, const py::object& alpha) { return to_py_list(y_alpha(n, from_py(alpha)).weights); },
          py::arg("n"), py::arg("alpha"));
  mod.def("decomposition_coeffs", [](unsigned n, unsigned d) { return to_py_list(decomposition_coeffs(Instance(n, d))); },
          py::arg("n"), py::arg("d"));
  mod.def(
      "objective_value",
      [](unsigned n, unsigned d, const py::sequence& weights) {
        const Instance inst(n, d);
        return to_fraction(objective_value(SymmetricAssignment(n, from_py_list(weights)), inst));
      },
      py::arg("n"), py::arg("d"), py::arg("weights"));
  mod.def(
      "lemma4_identity",
      [](unsigned n, unsigned d, const py::sequence& coeffs) {
        const auto sides = lemma4_identity(Instance(n, d), UniPoly(from_py_list(coeffs)));
        return py::make_tuple(to_fraction(sides.lhs), to_fraction(sides.rhs));
      },
      py::arg("n"), py::arg("d"), py::arg("coeffs"));
  mod.def(
      "verify_theorem2",
      [](unsigned n, unsigned d, bool skip_bruteforce) {
        VerifyOptions opts;
        opts.skip_bruteforce = skip_bruteforce;
        CertificateReport rep;
        {
          py::gil_scoped_release release;
          rep = verify_theorem2(Instance(n, d), opts);
        }
        return to_py_json(to_json(rep));
      },
      py::arg("n"), py::arg("d"), py::arg("skip_bruteforce") = false);

  mod.def(
      "build_moment_matrix",
      [](unsigned n, const py::sequence& weights, unsigned q) {
        return matrix_to_py(build_moment_matrix(SymmetricAssignment(n, from_py_list(weights)), q).entries);
      },
      py::arg("n"), py::arg("weights"), py::arg("q"));
  mod.def(
      "psd_exact",
      [](const py::sequence& rows) {
        const auto v = psd_exact(matrix_from_py(rows));
        py::object witness = py::none();
        if (v.witness) witness = to_py_list(*v.witness);
        return py::make_tuple(v.is_psd, witness);
      },
      py::arg("matrix"));
  mod.def(
      "check_symmetric_psd",
      [](unsigned n, const py::sequence& weights, unsigned t) {
        const auto v = check_symmetric_psd(SymmetricAssignment(n, from_py_list(weights)), t);
        return to_py_json(to_json(v, n));
      },
      py::arg("n"), py::arg("weights"), py::arg("t"));
  mod.def(
      "reduced_criterion",
      [](unsigned n, const py::sequence& weights, unsigned t) {
        return to_py_json(to_json(build_reduced(SymmetricAssignment(n, from_py_list(weights)), t)));
      },
      py::arg("n"), py::arg("weights"), py::arg("t"));

  mod.def("upper_bound_certificate", [](unsigned n, unsigned t) { return to_fraction(upper_bound_certificate(n, t)); },
          py::arg("n"), py::arg("t"));
  mod.def(
      "root_form_objective",
      [](unsigned n, const py::sequence& roots) {
        const auto rs = from_py_list(roots);
        return to_fraction(root_form_objective(n, std::span<const Rational>(rs)));
      },
      py::arg("n"), py::arg("roots"));
  mod.def(
      "sos_rank",
      [](unsigned n, bool run_search, std::uint64_t seed, unsigned restarts, unsigned bruteforce_max_n) {
        RankOptions opts;
        opts.run_search = run_search;
        opts.search.seed = seed;
        opts.search.restarts = restarts;
        opts.bruteforce_max_n = bruteforce_max_n;
        RankReport rep;
        {
          py::gil_scoped_release release;
          rep = sos_rank(n, opts);
        }
        return to_py_json(to_json(rep));
      },
      py::arg("n"), py::arg("run_search") = false, py::arg("seed") = 0x5eed, py::arg("restarts") = 64,
      py::arg("bruteforce_max_n") = 0);

  mod.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
