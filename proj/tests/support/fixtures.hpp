#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "pons/kernel.hpp"
#include "pons/report.hpp"
#include "pons/script.hpp"

namespace pons::testing {

struct Elaborated {
  LemmaRegistry registry;
  script::Elaborated item;
};

// Parses `text` and elaborates the block named `name` against every
// statement in the same text.
inline Elaborated elaborate_named(std::string_view text, std::string_view name) {
  const auto ast = script::parse(text);
  const auto registry = script::statements_of(ast);
  for (const auto& item : ast.items)
    if (script::item_name(item) == name) return {registry, script::elaborate_item(item, registry)};
  throw std::logic_error("no block named " + std::string(name));
}

inline CheckReport check_named(std::string_view text, std::string_view name,
                               const CheckOptions& options = {}) {
  const auto e = elaborate_named(text, name);
  return check_proof(e.item.statement, *e.item.proof, e.registry, options);
}

inline Analysis corpus_analysis(const CheckOptions& options = {}) {
  return analyze(parse_sources(bundled_sources()), options);
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace pons::testing
