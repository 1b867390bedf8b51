#pragma once

#include <filesystem>
#include <memory>

#include "ghm/ontology.hpp"
#include "ghm/tagger.hpp"

namespace ghm {

/// The immutable reference data a deployment runs on.
struct Bundle {
  std::shared_ptr<const Ontology> ontology;
  std::shared_ptr<const Gazetteer> gazetteer;
};

/// Loads `<data_dir>/ontology/{diseases,geo}.tsv` and the person and
/// organization lists next to them.
Bundle load_bundle(const std::filesystem::path& data_dir);

}  // namespace ghm
