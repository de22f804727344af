#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pons/cli.hpp"
#include "pons/corpus.hpp"
#include "pons/models.hpp"
#include "pons/report.hpp"

namespace py = pybind11;
using namespace pons;

namespace {

std::vector<SourceFile> sources_of(const std::optional<std::vector<std::string>>& paths) {
  return paths ? load_sources(*paths) : bundled_sources();
}

models::ModelId model_of(const std::string& name) {
  if (auto m = models::model_by_name(name)) return *m;
  throw py::value_error("unknown model " + name);
}

models::MPoint point_of(models::ModelId m, const std::vector<double>& xs) {
  if (xs.size() != (m == models::ModelId::sphere ? 3u : 2u))
    throw py::value_error("expected " + std::to_string(m == models::ModelId::sphere ? 3 : 2) +
                          " coordinates");
  models::MPoint p{xs[0], xs[1], xs.size() > 2 ? xs[2] : 0.0};
  if (!models::in_domain(m, p)) throw py::value_error("point outside the model");
  return p;
}

std::string check_json(const std::optional<std::vector<std::string>>& paths, bool strict) {
  return to_json_text(make_report(analyze(parse_sources(sources_of(paths)), CheckOptions{strict})));
}

std::string model_json(const std::optional<std::vector<std::string>>& paths, const std::string& model,
                       int trials, std::uint64_t seed, std::optional<double> tol) {
  if (trials < 0) throw py::value_error("trials must be non-negative");
  const Analysis a = analyze(parse_sources(sources_of(paths)));
  RunReport report = make_report(a);
  ModelRunOptions opts;
  if (model != "all") opts.models = {model_of(model)};
  opts.check.trials = trials;
  opts.check.seed = seed;
  opts.eq_tol = tol;
  {
    py::gil_scoped_release release;
    run_models(a, report, opts);
  }
  return to_json_text(report);
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the pons proof checker";
  m.attr("__version__") = std::string(kVersion);

  const py::exception<Error> error_type(m, "PonsError", PyExc_RuntimeError);
  py::exception<script::SyntaxError>(m, "ScriptSyntaxError", error_type.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const script::SyntaxError& e) {
      const py::object type = py::module_::import("pons._core").attr("ScriptSyntaxError");
      py::object exc = type(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      exc.attr("line") = e.line();
      exc.attr("column") = e.column();
      exc.attr("expected") = e.expected();
      PyErr_SetObject(type.ptr(), exc.ptr());
    } catch (const Error& e) {
      const py::object type = py::module_::import("pons._core").attr("PonsError");
      py::object exc = type(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(type.ptr(), exc.ptr());
    }
  });

  m.def("parse_json", [](const std::string& text) { return ast_to_json_text(script::parse(text)); },
        py::arg("text"));
  m.def("check_json", &check_json, py::arg("paths") = py::none(), py::arg("strict") = false);
  m.def(
      "deps_json",
      [](const std::optional<std::vector<std::string>>& paths) { return check_json(paths, false); },
      py::arg("paths") = py::none());
  m.def(
      "dot",
      [](const std::optional<std::vector<std::string>>& paths) {
        return deps::emit_dot(analyze(parse_sources(sources_of(paths))).graph);
      },
      py::arg("paths") = py::none());
  m.def("model_check_json", &model_json, py::arg("paths") = py::none(), py::arg("model") = "all",
        py::arg("trials") = 1000, py::arg("seed") = 42, py::arg("tol") = py::none());

  m.def(
      "dist",
      [](const std::string& model, const std::vector<double>& p, const std::vector<double>& q) {
        const auto id = model_of(model);
        return models::dist(id, point_of(id, p), point_of(id, q));
      },
      py::arg("model"), py::arg("p"), py::arg("q"));
  m.def(
      "angle_at",
      [](const std::string& model, const std::vector<double>& a, const std::vector<double>& v,
         const std::vector<double>& b) {
        const auto id = model_of(model);
        return models::angle_at(id, point_of(id, a), point_of(id, v), point_of(id, b));
      },
      py::arg("model"), py::arg("a"), py::arg("v"), py::arg("b"));

  m.def("bundled_corpus", [] {
    py::list out;
    for (const auto& e : bundled_corpus()) {
      py::dict d;
      d["name"] = e.name;
      d["file"] = e.file;
      d["text"] = std::string(e.text);
      d["expected_status"] = e.expected_status;
      d["node"] = e.node;
      d["expected_classification"] = std::string(deps::classification_name(e.expected_classification));
      d["expected_edges"] = e.expected_edges;
      out.append(d);
    }
    return out;
  });
  m.def("bundled_file", [](const std::string& path) -> std::optional<std::string> {
    if (auto t = pons::bundled_file(path)) return std::string(*t);
    return std::nullopt;
  });
  m.def("run_cli", &run_cli, py::arg("args"));
}
