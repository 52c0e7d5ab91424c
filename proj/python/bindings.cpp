#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "nvol/bivariate.hpp"
#include "nvol/catalog.hpp"
#include "nvol/cli.hpp"
#include "nvol/error.hpp"
#include "nvol/optimizer.hpp"
#include "nvol/reproduce.hpp"
#include "nvol/screener.hpp"
#include "nvol/support.hpp"
#include "nvol/valuation.hpp"

namespace py = pybind11;

namespace {

py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::object fraction(const nvol::Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(q.to_string());
}

nvol::PolySupport poly_of(const std::string& text, std::optional<int> nvars) {
  if (nvars) return nvol::parse_polynomial(text, *nvars);
  int n = 4;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != 'x' || !std::isdigit(static_cast<unsigned char>(text[i + 1]))) continue;
    n = std::max(n, std::atoi(text.c_str() + i + 1));
  }
  return nvol::parse_polynomial(text, n);
}

py::list active_list(const std::vector<nvol::ExponentVector>& active) {
  py::list out;
  for (const auto& a : active) out.append(py::tuple(py::cast(std::vector<int>(a.entries().begin(), a.entries().end()))));
  return out;
}

// Floats select the numeric flavor; ints, Fractions and strings are exact.
py::dict bound(const std::string& text, const py::sequence& weight, std::optional<int> n, std::optional<int> nvars) {
  const auto f = poly_of(text, nvars);
  bool numeric = false;
  for (const auto& x : weight) numeric = numeric || py::isinstance<py::float_>(x);
  py::dict out;
  if (numeric) {
    std::vector<double> w;
    for (const auto& x : weight) w.push_back(py::float_(x));
    const auto e = nvol::nv_bound(f, nvol::NumericWeight(w), n);
    out["v"] = e.v;
    out["w_sum"] = e.w_sum;
    out["w_prod"] = e.w_prod;
    out["ld_factor"] = e.ld_factor;
    out["bound"] = e.bound;
    out["n"] = e.n;
    out["active"] = active_list(e.active);
    out["exact"] = false;
    return out;
  }
  std::vector<nvol::Rational> w;
  for (const auto& x : weight) w.push_back(nvol::Rational::parse(py::str(x).cast<std::string>()));
  const auto e = nvol::nv_bound(f, nvol::ExactWeight(w), n);
  out["v"] = fraction(e.v);
  out["w_sum"] = fraction(e.w_sum);
  out["w_prod"] = fraction(e.w_prod);
  out["ld_factor"] = fraction(e.ld_factor);
  out["bound"] = fraction(e.bound);
  out["n"] = e.n;
  out["active"] = active_list(e.active);
  out["exact"] = true;
  return out;
}

py::dict minimize(const std::string& text, std::optional<int> nvars, int grid_denominator, double tol, int max_iters,
                  int restarts, std::uint64_t seed) {
  nvol::OptimizerOptions opts{grid_denominator, tol, max_iters, restarts, seed};
  const auto r = nvol::minimize_bound(poly_of(text, nvars), opts);
  py::dict out;
  out["value"] = r.value;
  out["witness"] = r.witness.entries();
  out["active"] = active_list(r.active);
  out["status"] = nvol::to_string(r.status);
  out["oracle_value"] = r.oracle_value ? fraction(*r.oracle_value) : py::none();
  out["iterations"] = r.iterations;
  return out;
}

py::dict grid(const std::string& text, int denominator, std::optional<int> nvars) {
  const auto g = nvol::grid_search(poly_of(text, nvars), denominator);
  py::list witness;
  for (const auto& x : g.witness.entries()) witness.append(fraction(x));
  py::dict out;
  out["value"] = fraction(g.value);
  out["witness"] = witness;
  out["points_evaluated"] = g.points_evaluated;
  out["points_skipped"] = g.points_skipped;
  return out;
}

py::object screen(const py::object& volume, bool smoothable) {
  const auto v = nvol::Rational::parse(py::str(volume).cast<std::string>());
  return from_json(nvol::to_json(nvol::screen_fano(v, smoothable)));
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = nvol::cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(nvol, m) {
  m.doc() = "Local volume bounds for threefold singularities";

  // Raised for every library error; .kind carries the error kind string.
  static py::handle error_type = py::exception<nvol::Error>(m, "NvolError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nvol::Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(std::string(nvol::to_string(e.kind())) + ": " +
                                                                        e.what());
      exc.attr("kind") = nvol::to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def(
      "parse_polynomial",
      [](const std::string& text, std::optional<int> nvars) { return from_json(nvol::to_json(poly_of(text, nvars))); },
      py::arg("text"), py::arg("nvars") = py::none(), "Support as {nvars, terms: [{exp, coef}]}.");
  m.def(
      "multiplicity", [](const std::string& text, std::optional<int> nvars) {
        return nvol::multiplicity(poly_of(text, nvars));
      },
      py::arg("text"), py::arg("nvars") = py::none());
  m.def(
      "is_reduced_bivariate", [](const std::string& text) { return nvol::is_reduced_bivariate(nvol::parse_polynomial(text, 2)); },
      py::arg("text"), "Square-freeness of a polynomial in x1, x2.");
  m.def("nv_bound", &bound, py::arg("poly"), py::arg("weight"), py::arg("n") = py::none(),
        py::arg("nvars") = py::none());
  m.def("minimize_bound", &minimize, py::arg("poly"), py::arg("nvars") = py::none(), py::arg("grid_denominator") = 60,
        py::arg("tol") = 1e-10, py::arg("max_iters") = 5000, py::arg("restarts") = 8, py::arg("seed") = 0);
  m.def("grid_search", &grid, py::arg("poly"), py::arg("denominator"), py::arg("nvars") = py::none());
  m.def(
      "classify", [](const std::string& d) {
        const auto c = nvol::classify_volume_ge_9(nvol::parse_descriptor(d));
        return py::make_tuple(c.ge9, c.reason);
      },
      py::arg("descriptor"), "(volume >= 9, reason)");
  m.def(
      "catalog_volume", [](const std::string& d) { return from_json(nvol::to_json(nvol::catalog_volume(nvol::parse_descriptor(d)))); },
      py::arg("descriptor"));
  m.def("mld", [](const std::string& d) { return fraction(nvol::mld_of(nvol::parse_descriptor(d))); }, py::arg("descriptor"));
  m.def(
      "check_nv_mld",
      [](const std::string& d) {
        const auto c = nvol::check_nv_mld(nvol::parse_descriptor(d));
        py::dict out;
        out["holds"] = c.holds;
        out["equality"] = c.equality;
        out["volume"] = c.volume.to_string();
        out["mld"] = fraction(c.mld);
        return out;
      },
      py::arg("descriptor"));
  m.def("known_volumes", [] {
    std::vector<std::string> out;
    for (const auto& kv : nvol::known_volume_list().values) out.push_back(kv.value.to_string());
    return out;
  });
  m.def("screen_fano", &screen, py::arg("volume"), py::arg("smoothable") = false);
  m.def(
      "reproduce",
      [](std::optional<std::string> section) {
        py::list out;
        for (const auto& c : nvol::reproduce(section)) out.append(from_json(nvol::to_json(c)));
        return out;
      },
      py::arg("section") = py::none());
  m.def("cli", &run_cli, py::arg("args"), "Run the command line; returns (exit code, stdout, stderr).");
}
