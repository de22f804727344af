#pragma once

// Whole-run analysis shared by the command-line tool and the Python module:
// parse a set of files, check every proof, build the dependency graph, and
// collect the results into a serializable report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pons/depgraph.hpp"
#include "pons/kernel.hpp"
#include "pons/models.hpp"
#include "pons/script.hpp"

namespace pons {

inline constexpr std::string_view kVersion = "0.1.0";

struct SourceFile {
  std::string path;
  std::string text;
};

// Directories expand to their *.proof and *.conj files in name order.
// Throws std::runtime_error for unreadable paths.
std::vector<SourceFile> load_sources(const std::vector<std::string>& paths);

// Every bundled corpus file except the conjectures.
std::vector<SourceFile> bundled_sources();

struct ParsedFile {
  std::string path;
  script::ScriptAst ast;
};

// Throws script::SyntaxError whose message names the file.
std::vector<ParsedFile> parse_sources(const std::vector<SourceFile>& files);

struct ItemRecord {
  std::string name;
  std::string file;
  int line = 0;
  script::ItemKind kind = script::ItemKind::theorem;
  std::optional<script::Elaborated> item;  // unset when elaboration failed
  std::optional<std::string> error;
  std::optional<CheckReport> check;

  bool has_statement() const;
  bool checked_ok() const { return check && check->ok(); }
};

struct Analysis {
  std::vector<ItemRecord> items;
  LemmaRegistry registry;
  deps::Graph graph;
  std::vector<std::string> errors;  // registration conflicts
};

// Elaboration and check failures are recorded per item, never thrown.
Analysis analyze(const std::vector<ParsedFile>& files, const CheckOptions& options = {});

struct ModelSummary {
  // pass, fail, expected-divergence, skipped
  std::string verdict;
  int trials = 0;
  int trials_run = 0;
  int skipped = 0;
  int failures = 0;
  std::optional<models::Counterexample> counterexample;
  std::string note;
  bool operator==(const ModelSummary&) const = default;
};

struct TheoremReport {
  std::string name;
  std::string kind;    // theorem, declared, axiom
  std::string status;  // ok, failed, declared, axiom, error
  std::string classification;
  std::vector<std::string> tags;
  std::vector<std::string> axioms;
  std::vector<std::string> assumptions;
  std::vector<std::string> uses;
  std::map<std::string, ModelSummary> models;
  std::optional<std::string> failure;
  bool operator==(const TheoremReport&) const = default;
};

struct RunReport {
  std::string version{kVersion};
  std::uint64_t seed = 0;
  std::vector<TheoremReport> theorems;
  std::vector<std::vector<std::string>> cycles;
  bool operator==(const RunReport&) const = default;
};

RunReport make_report(const Analysis& analysis);

struct ModelRunOptions {
  std::vector<models::ModelId> models{models::kAllModels.begin(), models::kAllModels.end()};
  models::ModelCheckOptions check;
  std::optional<double> eq_tol;
};

// Adds model summaries to every theorem with a statement. Returns the number
// of required-model failures (expected divergences excluded).
int run_models(const Analysis& analysis, RunReport& report, const ModelRunOptions& options);

std::string to_json_text(const RunReport& report);
RunReport report_from_json(std::string_view text);

std::string ast_to_json_text(const script::ScriptAst& ast);

}  // namespace pons
