#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intonsem/tensor.hpp"

namespace intonsem {

/// Finite set of individuals; individual k is the basis vector e_k.
class Universe {
 public:
  Universe() = default;
  /// Throws std::invalid_argument on duplicate names.
  explicit Universe(std::vector<std::string> individuals);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& individuals() const noexcept { return names_; }

  /// Throws UnknownIndividual.
  std::size_t index(std::string_view name) const;
  Tensor basis(std::string_view name) const;

  /// Names whose coordinate in `v` is nonzero, in universe order.
  std::vector<std::string> support(const Tensor& v) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Binary relation as a 0/1 adjacency matrix: entry [i][j] is 1 iff (i, j)
/// is in the relation.
struct Relation {
  std::string name;
  Tensor matrix;
};

Relation make_relation(const Universe& universe, std::string name,
                       const std::vector<std::pair<std::string, std::string>>& pairs);

/// Universe plus named relations, as read from the universe file.
struct Model {
  Universe universe;
  std::map<std::string, Relation, std::less<>> relations;

  /// Throws UnknownIndividual for an unknown relation name.
  const Relation& relation(std::string_view name) const;
};

Model parse_model(std::string_view json_text);
Model load_model(const std::filesystem::path& path);

/// Alternative set of "subject rel _": row `subject` of the matrix.
Tensor theme_vector(const Universe& universe, std::string_view subject, const Relation& rel);

/// The same set computed categorically: the relation lifted to N ⊗ S ⊗ N with
/// a one-dimensional S, ε-contracted with e_subject, then read back through
/// S ⊗ N ≅ N.
Tensor theme_vector_categorical(const Universe& universe, std::string_view subject,
                                const Relation& rel);

/// Set-membership reading of the boundary: theme[rheme]. The theme must be 0/1.
int membership(const Universe& universe, const Tensor& theme, std::string_view rheme);

/// Membership computed as the full transitive-sentence contraction
/// e_subject · lift(rel) · e_rheme into the one-dimensional sentence space.
int membership_categorical(const Universe& universe, std::string_view subject,
                           const Relation& rel, std::string_view rheme);

/// Intersection reading of the boundary: theme ⊙ e_rheme, i.e. e_rheme when
/// the rheme is in the alternative set and the zero vector otherwise.
Tensor intersect(const Universe& universe, const Tensor& theme, std::string_view rheme);

}  // namespace intonsem
