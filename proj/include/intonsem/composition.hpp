#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "intonsem/pregroup.hpp"
#include "intonsem/tensor.hpp"

namespace intonsem {

/// Dimension of the vector space assigned to each basic type.
class SpaceAssignment {
 public:
  SpaceAssignment() = default;
  explicit SpaceAssignment(std::map<AtomicType, std::size_t> dims);

  /// n, s, theta and rho all mapped to the same space W of dimension `dim`.
  static SpaceAssignment shared(std::size_t dim);

  /// Throws TypeError for a base without an assigned space.
  std::size_t dim(const AtomicType& base) const;
  bool contains(const AtomicType& base) const { return dims_.count(base) > 0; }
  const std::map<AtomicType, std::size_t>& dims() const noexcept { return dims_; }

  /// Dimension of the shared space when n, s, theta and rho are all present
  /// and equal.
  std::optional<std::size_t> shared_dim() const;

  bool operator==(const SpaceAssignment&) const = default;

 private:
  std::map<AtomicType, std::size_t> dims_;
};

/// One axis per factor; adjoints map to the same space as their base and the
/// unit type maps to a scalar.
Shape semantic_shape(const PregroupType& type, const SpaceAssignment& spaces);

/// A tensor paired with the grammatical type it inhabits.
struct TypedTensor {
  PregroupType type;
  Tensor tensor;

  bool operator==(const TypedTensor&) const = default;
};

/// Throws ShapeError unless `t.tensor` has semantic_shape(t.type, spaces).
void check_shape(const TypedTensor& t, const SpaceAssignment& spaces);

/// ε on one factor of `a` (left) and one factor of `b` (right). The factors
/// must cancel (b's one adjoint higher); the result type drops both.
TypedTensor epsilon_contract(const TypedTensor& a, std::size_t axis_a, const TypedTensor& b,
                             std::size_t axis_b);

/// η in the canonical basis: the identity matrix.
Tensor eta(std::size_t dim);

/// Applies F(diagram) to w1 ⊗ ... ⊗ wn. Links are contracted in order of
/// their left endpoint; survivors keep their original left-to-right order.
TypedTensor compose(std::span<const TypedTensor> words, const ReductionDiagram& diagram);

/// Same, with an explicit contraction order given as a permutation of
/// `diagram.links` indices. The value does not depend on the order.
TypedTensor compose(std::span<const TypedTensor> words, const ReductionDiagram& diagram,
                    std::span<const std::size_t> schedule);

}  // namespace intonsem
