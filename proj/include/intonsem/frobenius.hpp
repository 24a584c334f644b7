#pragma once

#include <cstddef>

#include "intonsem/composition.hpp"
#include "intonsem/tensor.hpp"

namespace intonsem {

// The commutative special Frobenius algebra a fixed basis induces on a space:
// Δ copies basis vectors, μ merges equal ones, ι is the counit of Δ and ζ the
// unit of μ.

/// Δ(v) = diag(v).
Tensor delta(const Tensor& v);

/// μ(w) = diagonal of a square matrix. μ(u ⊗ v) = u ⊙ v.
Tensor mu(const Tensor& w);

/// ι(v) = Σ v_i.
double iota(const Tensor& v);

/// ζ = the all-ones vector, so that μ(ζ ⊗ v) = v.
Tensor zeta(std::size_t dim);

/// Wire counts of a spider; its tensor puts the inputs first, then outputs.
struct SpiderSpec {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::size_t dim = 1;

  std::size_t order() const { return inputs + outputs; }
  bool operator==(const SpiderSpec&) const = default;
};

/// Generalized Kronecker delta of order inputs + outputs (which must be >= 1).
Tensor spider(std::size_t inputs, std::size_t outputs, std::size_t dim);
inline Tensor spider(const SpiderSpec& s) { return spider(s.inputs, s.outputs, s.dim); }

/// Spider fusion without materializing tensors: plugging `wires` outputs of
/// `upper` into inputs of `lower` yields one spider with the remaining legs.
/// Throws std::invalid_argument when no legs would remain or the wire count
/// exceeds what either spider offers.
SpiderSpec fuse(const SpiderSpec& upper, const SpiderSpec& lower, std::size_t wires);

/// Linear maps X^⊗a → X^⊗b as (dim^b × dim^a) matrices.
Tensor copy_map(std::size_t dim);   // Δ : X → X ⊗ X
Tensor merge_map(std::size_t dim);  // μ : X ⊗ X → X

/// Checks (μ ⊗ 1)(1 ⊗ Δ) = Δ μ = (1 ⊗ μ)(Δ ⊗ 1) entry by entry for the given
/// maps, in the matrix convention of copy_map / merge_map.
bool frobenius_condition_holds(const Tensor& copy, const Tensor& merge, std::size_t dim);

/// The condition for the canonical algebra on a space of dimension `dim`.
bool frobenius_condition_check(std::size_t dim);

/// Which side of the boundary token carries the theme.
enum class Orientation {
  theme_first,  // theme ⊳ rheme, type theta.r s rho.l
  rheme_first,  // rheme ⊲ theme, type rho.r s theta.l
};

/// (1 ⊗ μ ⊗ 1) ∘ (η ⊗ η), typed for the boundary token. Entry [i][k][j] is 1
/// iff i = k = j. Contracting its outer legs with two vectors gives their
/// element-wise product.
TypedTensor boundary_tensor(std::size_t dim, Orientation orientation = Orientation::theme_first);

/// 1 ⊗ Δ applied to one leg of a matrix: entry [i][k][j] is m[i][j] when k
/// equals the copied index (j for `copy_second`, i otherwise), else 0.
Tensor copy_leg(const Tensor& m, bool copy_second);

}  // namespace intonsem
