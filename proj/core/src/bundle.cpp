#include "ghm/bundle.hpp"

#include <fstream>

#include <fmt/format.h>

#include "ghm/error.hpp"

namespace ghm {
namespace {

std::vector<std::string> read_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw OntologyError(fmt::format("cannot read {}", path.string()));
  return read_entry_list(in);
}

}  // namespace

Bundle load_bundle(const std::filesystem::path& data_dir) {
  auto dir = data_dir / "ontology";
  auto ontology = std::make_shared<const Ontology>(Ontology::load_directory(dir));
  auto persons = read_list(dir / "persons.txt");
  auto organizations = read_list(dir / "organizations.txt");
  auto gazetteer = std::make_shared<const Gazetteer>(Gazetteer::build(*ontology, persons, organizations));
  return {std::move(ontology), std::move(gazetteer)};
}

}  // namespace ghm
