#pragma once

#include <cstdint>
#include <string>

#include "pons/script.hpp"

namespace pons::testing {

// A random script that the parser accepts: unique points and labels, any
// identifiers (keywords included) in name positions.
script::ScriptAst random_ast(std::uint64_t seed);

// Copy with every line number zeroed.
script::ScriptAst without_lines(script::ScriptAst ast);

// Random bytes; biased toward the script alphabet when `script_like`.
std::string random_bytes(std::uint64_t seed, bool script_like);

}  // namespace pons::testing
