#pragma once

#include <optional>

#include "pons/error.hpp"

namespace pons::testing {

// The code of the pons::Error thrown by f, or nullopt when nothing is thrown.
template <class F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace pons::testing
