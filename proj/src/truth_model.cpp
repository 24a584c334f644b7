#include "intonsem/truth_model.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "intonsem/composition.hpp"
#include "intonsem/error.hpp"

namespace intonsem {

Universe::Universe(std::vector<std::string> individuals) : names_(std::move(individuals)) {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (!index_.emplace(names_[k], k).second) {
      throw std::invalid_argument("duplicate individual '" + names_[k] + "'");
    }
  }
}

std::size_t Universe::index(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw UnknownIndividual("unknown individual '" + std::string(name) + "'");
  return it->second;
}

Tensor Universe::basis(std::string_view name) const {
  Tensor e({size()});
  e.data()[index(name)] = 1.0;
  return e;
}

std::vector<std::string> Universe::support(const Tensor& v) const {
  if (v.shape() != Shape{size()}) throw ShapeError("vector does not live in this universe");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < size(); ++k) {
    if (v.data()[k] != 0.0) out.push_back(names_[k]);
  }
  return out;
}

Relation make_relation(const Universe& universe, std::string name,
                       const std::vector<std::pair<std::string, std::string>>& pairs) {
  const std::size_t d = universe.size();
  Tensor m({d, d});
  for (const auto& [a, b] : pairs) m.at({universe.index(a), universe.index(b)}) = 1.0;
  return {std::move(name), std::move(m)};
}

const Relation& Model::relation(std::string_view name) const {
  auto it = relations.find(name);
  if (it == relations.end()) throw UnknownIndividual("unknown relation '" + std::string(name) + "'");
  return it->second;
}

Model parse_model(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("universe file: ") + e.what(), e.byte);
  }
  try {
    Model model{Universe(doc.at("individuals").get<std::vector<std::string>>()), {}};
    if (model.universe.size() == 0) throw std::invalid_argument("universe has no individuals");
    for (const auto& [name, pairs] : doc.at("relations").items()) {
      auto list = pairs.get<std::vector<std::pair<std::string, std::string>>>();
      model.relations.emplace(name, make_relation(model.universe, name, list));
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(std::string("universe file: ") + e.what(), 0);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("universe file: ") + e.what(), 0);
  }
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

namespace {

void require_relation_shape(const Universe& universe, const Relation& rel) {
  const std::size_t d = universe.size();
  if (rel.matrix.shape() != Shape{d, d}) {
    throw ShapeError("relation '" + rel.name + "' is not a square matrix over the universe");
  }
}

// rel as a tensor of type n.r s n.l with a one-dimensional sentence space.
TypedTensor lift(const Relation& rel) {
  const std::size_t d = rel.matrix.dim(0);
  return {PregroupType{{atoms::noun, 1}, {atoms::sentence, 0}, {atoms::noun, -1}},
          reshape(rel.matrix, {d, 1, d})};
}

}  // namespace

Tensor theme_vector(const Universe& universe, std::string_view subject, const Relation& rel) {
  require_relation_shape(universe, rel);
  const std::size_t s = universe.index(subject);
  const std::size_t d = universe.size();
  Tensor row({d});
  for (std::size_t j = 0; j < d; ++j) row.data()[j] = rel.matrix.at({s, j});
  return row;
}

Tensor theme_vector_categorical(const Universe& universe, std::string_view subject,
                                const Relation& rel) {
  require_relation_shape(universe, rel);
  const TypedTensor subj{PregroupType::atom(atoms::noun), universe.basis(subject)};
  const TypedTensor theme = epsilon_contract(subj, 0, lift(rel), 0);  // s n.l, shape [1, d]
  return reshape(theme.tensor, {universe.size()});
}

int membership(const Universe& universe, const Tensor& theme, std::string_view rheme) {
  if (theme.shape() != Shape{universe.size()}) throw ShapeError("theme does not live in this universe");
  for (double x : theme.data()) {
    if (x != 0.0 && x != 1.0) throw std::invalid_argument("membership needs a 0/1 theme vector");
  }
  return theme.data()[universe.index(rheme)] != 0.0 ? 1 : 0;
}

int membership_categorical(const Universe& universe, std::string_view subject,
                           const Relation& rel, std::string_view rheme) {
  require_relation_shape(universe, rel);
  const std::array<TypedTensor, 3> words{
      TypedTensor{PregroupType::atom(atoms::noun), universe.basis(subject)}, lift(rel),
      TypedTensor{PregroupType::atom(atoms::noun), universe.basis(rheme)}};
  const std::array<PregroupType, 3> types{words[0].type, words[1].type, words[2].type};
  const auto diagrams = reduce(types, PregroupType::atom(atoms::sentence));
  const Tensor truth = compose(words, diagrams.front()).tensor;  // shape [1]
  return truth.data()[0] != 0.0 ? 1 : 0;
}

Tensor intersect(const Universe& universe, const Tensor& theme, std::string_view rheme) {
  if (theme.shape() != Shape{universe.size()}) throw ShapeError("theme does not live in this universe");
  return hadamard(theme, universe.basis(rheme));
}

}  // namespace intonsem
