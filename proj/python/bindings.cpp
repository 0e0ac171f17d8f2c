#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tdz/cli.hpp"
#include "tdz/io.hpp"

namespace py = pybind11;
using namespace tdz;

namespace {

std::string strata_json(const std::string& text, std::uint64_t cap, int threads) {
  const StratumComplex c = complex_from_json(Json::parse(text));
  return strata_report(c, pole_report(c, {cap, threads})).dump();
}

std::string curve_json(const CurveGraph& g) {
  Json j;
  j["graph"] = graph_to_json(g);
  if (g.branch_pairs) j["verify"] = graph_report_to_json(verify_graph(g), g);
  j["complex"] = complex_to_json(complex_from_graph(g));
  return j.dump();
}

std::string series_json(const std::string& text, const std::string& mode) {
  const StandardExpr e = expr_from_json(Json::parse(text));
  const PoleMode pm = mode == "rv" ? PoleMode::RootOfUnityOne : PoleMode::PerRoot;
  Json j;
  j["td"] = expr_to_json(td_expr(e).combined());
  j["poles"] = poles_to_json(poles(e, pm));
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Remarkable numbers, d-lct and top-degree zeta functions";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<EnumCapError>(m, "EnumCapError", PyExc_RuntimeError);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
  m.def("strata_report", &strata_json, py::arg("complex_json"), py::arg("cap") = 10'000'000, py::arg("threads") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("resolve_fk", [](int k) { return curve_json(resolve_branches({fk_family(k)})); }, py::arg("k"));
  m.def(
      "resolve_newton_pairs",
      [](const std::string& s) { return curve_json(resolve_branches({param_from_newton_pairs(parse_newton_pairs(s))})); },
      py::arg("pairs"));
  m.def(
      "arrangement_check",
      [](const std::string& text) {
        const auto rep = check_only_lct(arrangement_from_json(Json::parse(text)));
        Json j{{"pass", rep.pass}, {"lct", to_string(rep.lct)}, {"witness", rep.witness}};
        return j.dump();
      },
      py::arg("arrangement_json"));
  m.def("series", &series_json, py::arg("expr_json"), py::arg("mode") = "per_root");
  m.def("ramanujan", [](std::int64_t k, std::int64_t d) { return ramanujan(k, d).get_str(); }, py::arg("k"),
        py::arg("d"));
}
