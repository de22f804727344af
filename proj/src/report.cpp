#include "pons/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pons/corpus.hpp"
#include "pons/error.hpp"

namespace pons {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool is_script(const fs::path& p) { return p.extension() == ".proof" || p.extension() == ".conj"; }

}  // namespace

std::vector<SourceFile> load_sources(const std::vector<std::string>& paths) {
  std::vector<SourceFile> out;
  for (const auto& path : paths) {
    std::error_code ec;
    const fs::path p(path);
    if (fs::is_directory(p, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::directory_iterator(p))
        if (entry.is_regular_file() && is_script(entry.path())) found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      for (const auto& f : found) out.push_back({f.string(), read_file(f)});
    } else if (fs::is_regular_file(p, ec)) {
      out.push_back({path, read_file(p)});
    } else {
      throw std::runtime_error("cannot read " + path);
    }
  }
  return out;
}

std::vector<SourceFile> bundled_sources() {
  std::vector<SourceFile> out;
  for (const auto& e : bundled_corpus()) out.push_back({e.file, std::string(e.text)});
  return out;
}

std::vector<ParsedFile> parse_sources(const std::vector<SourceFile>& files) {
  std::vector<ParsedFile> out;
  for (const auto& f : files) {
    try {
      out.push_back({f.path, script::parse(f.text)});
    } catch (const script::SyntaxError& e) {
      throw script::SyntaxError(e.line(), e.column(), f.path + ": " + e.detail(), e.expected());
    }
  }
  return out;
}

bool ItemRecord::has_statement() const {
  return item && item->kind != script::ItemKind::axiom && !item->statement.given.empty();
}

namespace {

std::vector<Tag> ast_tags(const script::AstItem& item) {
  return std::visit([](const auto& x) { return x.tags; }, item);
}

int ast_line(const script::AstItem& item) {
  return std::visit([](const auto& x) { return x.line; }, item);
}

script::ItemKind ast_kind(const script::AstItem& item) {
  if (const auto* th = std::get_if<script::AstTheorem>(&item))
    return th->proof ? script::ItemKind::theorem : script::ItemKind::declared;
  if (std::holds_alternative<script::AstDeclare>(item)) return script::ItemKind::declared;
  return script::ItemKind::axiom;
}

deps::NodeKind node_kind(script::ItemKind k) {
  switch (k) {
    case script::ItemKind::theorem: return deps::NodeKind::theorem;
    case script::ItemKind::declared: return deps::NodeKind::declared;
    case script::ItemKind::axiom: return deps::NodeKind::axiom;
  }
  return deps::NodeKind::declared;
}

std::string describe_failure(const StepResult& r) {
  std::string s = "step " + r.label;
  if (r.line > 0) s += " (line " + std::to_string(r.line) + ")";
  return s + ": " + r.message;
}

}  // namespace

Analysis analyze(const std::vector<ParsedFile>& files, const CheckOptions& options) {
  Analysis a;
  for (const auto& f : files)
    for (const auto& item : f.ast.items)
      if (const auto* th = std::get_if<script::AstTheorem>(&item)) {
        try {
          a.registry.emplace(th->name, script::elaborate_statement(*th));
        } catch (const Error&) {
          // reported when the item itself is elaborated below
        }
      }

  deps::register_builtin_axioms(a.graph);
  for (const auto& f : files) {
    for (const auto& item : f.ast.items) {
      ItemRecord r;
      r.name = script::item_name(item);
      r.file = f.path;
      r.line = ast_line(item);
      r.kind = ast_kind(item);
      std::set<std::string> uses;
      try {
        r.item = script::elaborate_item(item, a.registry);
        uses.insert(r.item->uses.begin(), r.item->uses.end());
        if (r.item->proof) {
          r.check = check_proof(r.item->statement, *r.item->proof, a.registry, options);
          const auto used = r.check->uses();
          uses.insert(used.begin(), used.end());
        }
      } catch (const Error& e) {
        r.error = e.what();
      }
      const auto tags = ast_tags(item);
      try {
        a.graph.register_node(
            deps::Node{r.name, node_kind(r.kind), std::set<Tag>(tags.begin(), tags.end()), false},
            std::vector<std::string>(uses.begin(), uses.end()));
      } catch (const Error& e) {
        a.errors.push_back(f.path + ": " + e.what());
      }
      a.items.push_back(std::move(r));
    }
  }
  return a;
}

RunReport make_report(const Analysis& analysis) {
  RunReport report;
  report.cycles = deps::detect_cycles(analysis.graph);
  for (const auto& r : analysis.items) {
    TheoremReport t;
    t.name = r.name;
    switch (r.kind) {
      case script::ItemKind::theorem: t.kind = "theorem"; break;
      case script::ItemKind::declared: t.kind = "declared"; break;
      case script::ItemKind::axiom: t.kind = "axiom"; break;
    }
    if (r.error) {
      t.status = "error";
      t.failure = *r.error;
    } else if (r.check) {
      t.status = r.check->ok() ? "ok" : "failed";
      if (r.check->failure) t.failure = describe_failure(*r.check->failure);
      for (const auto& f : r.check->assumptions) t.assumptions.push_back(to_string(f));
    } else {
      t.status = t.kind;
    }
    if (analysis.graph.contains(r.name)) {
      const auto& node = analysis.graph.node(r.name);
      for (Tag tag : node.tags) t.tags.emplace_back(tag_name(tag));
      t.classification = deps::classification_name(deps::classify(analysis.graph, r.name));
      const auto basis = deps::axiom_basis(analysis.graph, r.name);
      t.axioms.assign(basis.begin(), basis.end());
      const auto& uses = analysis.graph.uses(r.name);
      t.uses.assign(uses.begin(), uses.end());
    }
    report.theorems.push_back(std::move(t));
  }
  return report;
}

int run_models(const Analysis& analysis, RunReport& report, const ModelRunOptions& options) {
  report.seed = options.check.seed;
  models::ModelCheckOptions check = options.check;
  if (options.eq_tol) check.tol = models::ToleranceProfile::with_eq(*options.eq_tol);
  int failures = 0;
  for (std::size_t i = 0; i < analysis.items.size(); ++i) {
    const auto& r = analysis.items[i];
    auto& t = report.theorems.at(i);
    if (!r.has_statement()) continue;
    const Proof* proof = r.checked_ok() ? &*r.item->proof : nullptr;
    const bool euclidean_only = t.classification == "EUCLIDEAN_ONLY";
    for (models::ModelId m : options.models) {
      const auto res = models::model_check(m, r.item->statement, proof, analysis.registry, check);
      ModelSummary s;
      s.trials = res.trials;
      s.trials_run = res.trials_run;
      s.skipped = res.skipped;
      s.failures = res.failures;
      s.counterexample = res.first_counterexample;
      s.note = res.note;
      if (res.failures > 0) {
        s.verdict = euclidean_only && m != models::ModelId::euclidean ? "expected-divergence" : "fail";
        if (s.verdict == "fail") ++failures;
      } else {
        s.verdict = res.trials > 0 && res.trials_run == 0 ? "skipped" : "pass";
      }
      t.models[std::string(models::model_name(m))] = std::move(s);
    }
  }
  return failures;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json point_json(const models::MPoint& p) {
  if (p.z == 0) return json::array({p.x, p.y});
  return json::array({p.x, p.y, p.z});
}

models::MPoint point_from(const json& j) {
  models::MPoint p;
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
  if (j.size() > 2) p.z = j.at(2).get<double>();
  return p;
}

json summary_json(const ModelSummary& s) {
  json j{{"verdict", s.verdict},
         {"trials", s.trials},
         {"trials_run", s.trials_run},
         {"skipped", s.skipped},
         {"failures", s.failures}};
  if (!s.note.empty()) j["note"] = s.note;
  if (s.counterexample) {
    const auto& c = *s.counterexample;
    json pts = json::object();
    for (const auto& [id, p] : c.instance) pts[id.name] = point_json(p);
    j["counterexample"] = {{"trial", c.trial},
                           {"fact", c.fact},
                           {"values", c.values},
                           {"step", c.step},
                           {"points", pts}};
  }
  return j;
}

ModelSummary summary_from(const json& j) {
  ModelSummary s;
  s.verdict = j.at("verdict").get<std::string>();
  s.trials = j.at("trials").get<int>();
  s.trials_run = j.at("trials_run").get<int>();
  s.skipped = j.at("skipped").get<int>();
  s.failures = j.at("failures").get<int>();
  s.note = j.value("note", std::string());
  if (j.contains("counterexample")) {
    const auto& c = j.at("counterexample");
    models::Counterexample ce;
    ce.trial = c.at("trial").get<int>();
    ce.fact = c.at("fact").get<std::string>();
    ce.values = c.at("values").get<std::string>();
    ce.step = c.at("step").get<std::string>();
    for (const auto& [name, p] : c.at("points").items()) ce.instance[point(name)] = point_from(p);
    s.counterexample = std::move(ce);
  }
  return s;
}

json theorem_json(const TheoremReport& t) {
  json models = json::object();
  for (const auto& [name, s] : t.models) models[name] = summary_json(s);
  json j{{"name", t.name},
         {"kind", t.kind},
         {"status", t.status},
         {"classification", t.classification},
         {"tags", t.tags},
         {"axioms", t.axioms},
         {"assumptions", t.assumptions},
         {"uses", t.uses},
         {"models", models}};
  if (t.failure) j["failure"] = *t.failure;
  return j;
}

TheoremReport theorem_from(const json& j) {
  TheoremReport t;
  t.name = j.at("name").get<std::string>();
  t.kind = j.at("kind").get<std::string>();
  t.status = j.at("status").get<std::string>();
  t.classification = j.at("classification").get<std::string>();
  t.tags = j.at("tags").get<std::vector<std::string>>();
  t.axioms = j.at("axioms").get<std::vector<std::string>>();
  t.assumptions = j.at("assumptions").get<std::vector<std::string>>();
  t.uses = j.at("uses").get<std::vector<std::string>>();
  for (const auto& [name, s] : j.at("models").items()) t.models[name] = summary_from(s);
  if (j.contains("failure")) t.failure = j.at("failure").get<std::string>();
  return t;
}

std::string ref_text(const Ref& r) {
  switch (r.kind) {
    case Ref::Kind::label: return r.label;
    case Ref::Kind::refl: return "refl";
    case Ref::Kind::sym: return "sym " + r.label;
  }
  return {};
}

json refs_json(const std::vector<Ref>& refs) {
  json out = json::array();
  for (const auto& r : refs) out.push_back(ref_text(r));
  return out;
}

json names_json(const std::vector<PointId>& pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back(p.name);
  return out;
}

json segment_json(const script::PointPair& s) { return json::array({s.first.name, s.second.name}); }

json steps_json(const std::vector<script::AstStep>& steps);

json step_json(const script::AstStep& st) {
  json j{{"label", st.label}, {"line", st.line}};
  std::visit(
      [&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, script::AstRule>) {
          json claims = json::array();
          for (const auto& c : b.claims) claims.push_back(to_string(c));
          json groups = json::array();
          for (const auto& g : b.inst.groups) groups.push_back(names_json(g));
          j["kind"] = "rule";
          j["claims"] = claims;
          j["rule"] = b.rule;
          j["inst"] = groups;
          j["grouped"] = b.inst.grouped;
          j["refs"] = refs_json(b.refs);
        } else if constexpr (std::is_same_v<T, script::AstExtend>) {
          j["kind"] = "extend";
          j["from"] = b.from.name;
          j["through"] = b.through.name;
          j["length"] = segment_json(b.length);
          j["fresh"] = b.fresh.name;
        } else if constexpr (std::is_same_v<T, script::AstLayoff>) {
          j["kind"] = "layoff";
          j["from"] = b.from.name;
          j["toward"] = b.toward.name;
          j["length"] = segment_json(b.length);
          j["fresh"] = b.fresh.name;
          j["refs"] = refs_json(b.refs);
        } else if constexpr (std::is_same_v<T, script::AstLemma>) {
          json map = json::array();
          for (const auto& [from, to] : b.point_map) map.push_back({from.name, to.name});
          j["kind"] = "lemma";
          j["lemma"] = b.lemma;
          j["map"] = map;
          j["introduces"] = names_json(b.introduced);
        } else {
          json branches = json::array();
          for (const auto& br : b.branches)
            branches.push_back({{"case", case_name(br.kind)},
                                {"line", br.line},
                                {"steps", steps_json(br.steps)},
                                {"close", br.closes_absurd ? "absurd" : "goal"},
                                {"refs", refs_json(br.refs)}});
          j["kind"] = "cases";
          j["lhs"] = segment_json(b.lhs);
          j["rhs"] = segment_json(b.rhs);
          j["branches"] = branches;
        }
      },
      st.body);
  return j;
}

json steps_json(const std::vector<script::AstStep>& steps) {
  json out = json::array();
  for (const auto& st : steps) out.push_back(step_json(st));
  return out;
}

json tags_json(const std::vector<Tag>& tags) {
  json out = json::array();
  for (Tag t : tags) out.push_back(std::string(tag_name(t)));
  return out;
}

}  // namespace

std::string to_json_text(const RunReport& report) {
  json theorems = json::array();
  for (const auto& t : report.theorems) theorems.push_back(theorem_json(t));
  json j{{"version", report.version},
         {"seed", report.seed},
         {"theorems", theorems},
         {"cycles", report.cycles}};
  return j.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  const json j = json::parse(text);
  RunReport r;
  r.version = j.at("version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& t : j.at("theorems")) r.theorems.push_back(theorem_from(t));
  r.cycles = j.at("cycles").get<std::vector<std::vector<std::string>>>();
  return r;
}

std::string ast_to_json_text(const script::ScriptAst& ast) {
  json items = json::array();
  for (const auto& item : ast.items) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          json j{{"name", x.name}, {"line", x.line}, {"tags", tags_json(x.tags)}};
          if constexpr (std::is_same_v<T, script::AstTheorem>) {
            json assumptions = json::array();
            for (const auto& [label, f] : x.assumptions)
              assumptions.push_back({{"label", label}, {"fact", to_string(f)}});
            json shows = json::array();
            for (const auto& f : x.shows) shows.push_back(to_string(f));
            j["type"] = "theorem";
            j["points"] = names_json(x.points);
            j["introduces"] = names_json(x.introduced);
            j["assumptions"] = assumptions;
            j["shows"] = shows;
            j["uses"] = x.uses;
            if (x.proof)
              j["proof"] = {{"line", x.proof->line},
                            {"steps", steps_json(x.proof->steps)},
                            {"qed", refs_json(x.proof->qed)}};
          } else if constexpr (std::is_same_v<T, script::AstDeclare>) {
            j["type"] = "declare";
            j["uses"] = x.uses;
          } else {
            j["type"] = "axiom";
          }
          items.push_back(std::move(j));
        },
        item);
  }
  return json{{"items", items}}.dump(2) + "\n";
}

}  // namespace pons
