#include "pons/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "pons/error.hpp"
#include "pons/report.hpp"

namespace pons::cli {

namespace {

struct Loaded {
  std::vector<ParsedFile> files;
  int exit = kExitOk;
};

Loaded load(const std::vector<std::string>& paths, std::ostream& err) {
  Loaded out;
  try {
    out.files = parse_sources(load_sources(paths));
  } catch (const script::SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    out.exit = kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out.exit = kExitUsage;
  }
  return out;
}

void print_errors(const Analysis& a, std::ostream& err) {
  for (const auto& e : a.errors) err << "error: " << e << "\n";
}

int cmd_check(const std::vector<std::string>& paths, bool strict, bool as_json,
              std::ostream& out, std::ostream& err) {
  Loaded l = load(paths, err);
  if (l.exit != kExitOk) return l.exit;
  const Analysis a = analyze(l.files, CheckOptions{strict});
  print_errors(a, err);
  const RunReport report = make_report(a);

  int checked = 0, failed = 0;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    const auto& r = a.items[i];
    const auto& t = report.theorems[i];
    if (r.error) {
      ++failed;
      if (!as_json) out << "ERROR   " << r.name << " (" << r.file << ":" << r.line << "): " << *r.error << "\n";
      continue;
    }
    if (!r.check) continue;
    ++checked;
    if (!r.check->ok()) ++failed;
    if (as_json) continue;
    if (r.check->ok()) {
      out << "ok      " << r.name << "\n";
    } else {
      out << "FAILED  " << r.name << " (" << r.file << "): " << *t.failure << "\n";
    }
    for (const auto& f : t.assumptions) out << "        assumed " << f << "\n";
  }
  if (as_json)
    out << to_json_text(report);
  else
    out << checked << " proofs checked, " << failed << " failed\n";
  return failed == 0 && a.errors.empty() ? kExitOk : kExitFailed;
}

int cmd_deps(const std::vector<std::string>& paths, const std::string& dot_path, bool as_json,
             std::ostream& out, std::ostream& err) {
  Loaded l = load(paths, err);
  if (l.exit != kExitOk) return l.exit;
  const Analysis a = analyze(l.files);
  print_errors(a, err);
  const RunReport report = make_report(a);

  if (!dot_path.empty()) {
    std::ofstream dot(dot_path, std::ios::binary);
    if (!dot) {
      err << "error: cannot write " << dot_path << "\n";
      return kExitUsage;
    }
    dot << deps::emit_dot(a.graph);
  }

  bool cyclic_checked = false;
  for (std::size_t i = 0; i < a.items.size(); ++i)
    if (a.items[i].kind == script::ItemKind::theorem && report.theorems[i].classification == "CYCLIC")
      cyclic_checked = true;

  if (as_json) {
    out << to_json_text(report);
  } else {
    std::size_t width = 0;
    for (const auto& t : report.theorems) width = std::max(width, t.name.size());
    for (const auto& t : report.theorems)
      out << std::left << std::setw(static_cast<int>(width) + 2) << t.name << std::setw(10)
          << t.kind << t.classification << "\n";
    if (report.cycles.empty()) out << "no cycles\n";
    for (const auto& c : report.cycles) {
      out << "cycle:";
      for (std::size_t k = 0; k < c.size(); ++k) out << (k ? ", " : " ") << c[k];
      out << "\n";
    }
  }
  return cyclic_checked || !a.errors.empty() ? kExitFailed : kExitOk;
}

std::string instance_text(const models::Instance& inst) {
  std::ostringstream s;
  s << std::setprecision(10);
  bool first = true;
  for (const auto& [id, p] : inst) {
    s << (first ? "" : " ") << id.name << "=(" << p.x << ", " << p.y;
    if (p.z != 0) s << ", " << p.z;
    s << ")";
    first = false;
  }
  return s.str();
}

int cmd_model(const std::vector<std::string>& paths, const std::string& model, int trials,
              std::uint64_t seed, std::optional<double> tol, bool as_json, std::ostream& out,
              std::ostream& err) {
  ModelRunOptions opts;
  if (model != "all") {
    const auto m = models::model_by_name(model);
    if (!m) {
      err << "error: unknown model " << model << "\n";
      return kExitUsage;
    }
    opts.models = {*m};
  }
  opts.check.trials = trials;
  opts.check.seed = seed;
  opts.eq_tol = tol;

  Loaded l = load(paths, err);
  if (l.exit != kExitOk) return l.exit;
  const Analysis a = analyze(l.files);
  print_errors(a, err);
  RunReport report = make_report(a);
  const int failures = run_models(a, report, opts);

  if (as_json) {
    out << to_json_text(report);
  } else {
    for (const auto& t : report.theorems) {
      for (const auto& [name, s] : t.models) {
        out << std::left << std::setw(22) << t.name << std::setw(11) << name << std::setw(21)
            << s.verdict << s.trials_run << "/" << s.trials << " trials";
        if (s.skipped) out << ", " << s.skipped << " skipped";
        if (s.failures) out << ", " << s.failures << " failing";
        if (!s.note.empty()) out << " (" << s.note << ")";
        out << "\n";
        if (s.counterexample) {
          const auto& c = *s.counterexample;
          out << "    counterexample (trial " << c.trial
              << (c.step.empty() ? "" : ", step " + c.step) << "): " << c.fact << "\n"
              << "    measured: " << c.values << "\n"
              << "    points: " << instance_text(c.instance) << "\n";
        }
      }
    }
  }
  return failures == 0 && a.errors.empty() ? kExitOk : kExitFailed;
}

int cmd_parse(const std::vector<std::string>& paths, bool dump, std::ostream& out,
              std::ostream& err) {
  Loaded l = load(paths, err);
  if (l.exit != kExitOk) return l.exit;
  for (const auto& f : l.files) {
    if (dump)
      out << ast_to_json_text(f.ast);
    else
      out << f.path << ": " << f.ast.items.size() << " items\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Proof checker and model validator for base-angle theorems", "ponscheck"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::vector<std::string> files;
  bool strict = false, as_json = false, dump = false;
  std::string dot_path, model = "all";
  int trials = 1000;
  std::uint64_t seed = 42;
  std::optional<double> tol;

  auto* check = app.add_subcommand("check", "Check every proof");
  check->add_option("files", files, "Proof files or directories")->required();
  check->add_flag("--strict-degeneracy", strict, "Require non-collinearity side conditions to be derived");
  check->add_flag("--json", as_json, "Print the JSON report");

  auto* deps = app.add_subcommand("deps", "Dependency graph, cycles and classification");
  deps->add_option("files", files, "Proof files or directories")->required();
  deps->add_option("--dot", dot_path, "Write the graph in DOT format");
  deps->add_flag("--json", as_json, "Print the JSON report");

  auto* modelc = app.add_subcommand("model", "Check statements numerically in the models");
  modelc->add_option("files", files, "Proof files or directories")->required();
  modelc->add_option("--model", model, "euclidean, poincare, sphere or all")
      ->check(CLI::IsMember({"euclidean", "poincare", "sphere", "all"}));
  modelc->add_option("--trials", trials, "Trials per model")->check(CLI::NonNegativeNumber);
  modelc->add_option("--seed", seed, "Random seed");
  modelc->add_option("--tol", tol, "Equality tolerance for every model")
      ->check(CLI::PositiveNumber);
  modelc->add_flag("--json", as_json, "Print the JSON report");

  auto* parse = app.add_subcommand("parse", "Parse files");
  parse->add_option("files", files, "Proof files or directories")->required();
  parse->add_flag("--dump-ast", dump, "Print the syntax tree as JSON");

  std::vector<std::string> argv_storage{"ponscheck"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(files, strict, as_json, out, err);
    if (deps->parsed()) return cmd_deps(files, dot_path, as_json, out, err);
    if (modelc->parsed()) return cmd_model(files, model, trials, seed, tol, as_json, out, err);
    return cmd_parse(files, dump, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}

}  // namespace pons::cli
