#include "pons/corpus.hpp"

#include <stdexcept>

namespace pons {

namespace {

using deps::Classification;
using Edges = std::vector<std::pair<std::string, std::string>>;

Edges edges_from(const std::string& user, std::initializer_list<const char*> used) {
  Edges out;
  for (const char* u : used) out.emplace_back(user, u);
  return out;
}

std::string_view text_of(std::string_view path) {
  if (auto t = bundled_file(path)) return *t;
  throw std::logic_error("corpus file not embedded: " + std::string(path));
}

}  // namespace

std::optional<std::string_view> bundled_file(std::string_view path) {
  for (const auto& f : detail::embedded_files())
    if (f.path == path) return f.text;
  return std::nullopt;
}

std::vector<std::string> bundled_file_names() {
  std::vector<std::string> out;
  for (const auto& f : detail::embedded_files()) out.emplace_back(f.path);
  return out;
}

const std::vector<CorpusEntry>& bundled_corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> v;
    auto add = [&](std::string name, std::string status, std::string node, Classification c,
                   Edges edges) {
      const std::string file = name + ".proof";
      v.push_back({std::move(name), file, text_of(file), std::move(status), std::move(node), c,
                   std::move(edges)});
    };
    add("pappus_pons", "ok", "pappus_pons", Classification::neutral,
        edges_from("pappus_pons", {"ANG_REFL", "SAS_ORD"}));
    add("euclid_i5", "ok", "euclid_i5", Classification::neutral,
        edges_from("euclid_i5", {"ANG_TRANS", "ARM_SUBST", "EXTEND", "NC_TRANSFER", "SAS_ORD",
                                 "SEG_SUM", "SEG_TRANS", "SUPP_CONG"}));
    add("euclid_i5_converse", "ok", "euclid_i5_converse", Classification::neutral,
        edges_from("euclid_i5_converse",
                   {"ANG_SUM", "ANG_TRANS", "ARM_SUBST", "ASA_ORD", "EXTEND", "NC_TRANSFER",
                    "SAS_ORD", "SEG_REFL", "SEG_TRANS", "SUPP_CONG"}));
    add("pappus_converse", "ok", "pappus_converse", Classification::neutral,
        edges_from("pappus_converse", {"ASA_ORD", "SEG_REFL"}));
    add("euclid_i6", "ok", "euclid_i6", Classification::neutral,
        edges_from("euclid_i6", {"ABSURD_LT_EQ_ANG", "ANG_TRANS", "ARM_SUBST", "LAYOFF",
                                 "NC_TRANSFER", "SAS_ORD", "SEG_REFL", "TRICHOTOMY",
                                 "WHOLE_PART_ANG"}));
    add("bisector_pons", "ok", "bisector_pons", Classification::cyclic,
        edges_from("bisector_pons",
                   {"ANG_TRANS", "ARM_SUBST", "NC_TRANSFER", "SAS_ORD", "SEG_REFL", "bisector_foot"}));
    Edges chain{{"bisector_foot", "euclid_i9"},
                {"euclid_i9", "euclid_i8"},
                {"euclid_i8", "euclid_i7"},
                {"euclid_i7", "bisector_pons"}};
    add("euclid_chain", "declared", "bisector_foot", Classification::cyclic, std::move(chain));
    add("pons_via_inscribed", "declared", "pons_via_inscribed", Classification::cyclic,
        Edges{{"inscribed_angle_theorem", "parallel_postulate"},
              {"inscribed_angle_theorem", "pons_via_inscribed"},
              {"pons_via_inscribed", "inscribed_angle_theorem"}});
    add("pons_via_area", "declared", "pons_via_area", Classification::euclidean_only,
        edges_from("pons_via_area", {"euclidean_area_formula", "no_supplementary_pair", "sine_defs"}));
    return v;
  }();
  return entries;
}

}  // namespace pons
