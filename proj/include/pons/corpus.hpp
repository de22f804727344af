#pragma once

// The proof scripts shipped with the library, with the results they are
// expected to produce.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pons/depgraph.hpp"

namespace pons {

struct CorpusEntry {
  std::string name;
  std::string file;  // relative to the corpus directory
  std::string_view text;
  // "ok" for checked proofs, "declared" for dependency-only entries.
  std::string expected_status;
  // Node whose classification is recorded below.
  std::string node;
  deps::Classification expected_classification = deps::Classification::neutral;
  // user -> used edges the entry contributes.
  std::vector<std::pair<std::string, std::string>> expected_edges;
};

const std::vector<CorpusEntry>& bundled_corpus();

// Any shipped file by relative path ("euclid_i5.proof",
// "conjectures/anglesum.conj").
std::optional<std::string_view> bundled_file(std::string_view path);
std::vector<std::string> bundled_file_names();

namespace detail {
struct EmbeddedFile {
  std::string_view path;
  std::string_view text;
};
const std::vector<EmbeddedFile>& embedded_files();
}  // namespace detail

}  // namespace pons
