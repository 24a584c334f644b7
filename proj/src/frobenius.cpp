#include "intonsem/frobenius.hpp"

#include <stdexcept>

#include "intonsem/error.hpp"

namespace intonsem {

Tensor delta(const Tensor& v) {
  if (v.order() != 1) throw ShapeError("delta expects a vector");
  const std::size_t d = v.dim(0);
  Tensor out({d, d});
  for (std::size_t i = 0; i < d; ++i) out.at({i, i}) = v.data()[i];
  return out;
}

Tensor mu(const Tensor& w) {
  if (w.order() != 2 || w.dim(0) != w.dim(1)) throw ShapeError("mu expects a square matrix");
  const std::size_t d = w.dim(0);
  Tensor out({d});
  for (std::size_t i = 0; i < d; ++i) out.data()[i] = w.at({i, i});
  return out;
}

double iota(const Tensor& v) {
  if (v.order() != 1) throw ShapeError("iota expects a vector");
  double sum = 0.0;
  for (double x : v.data()) sum += x;
  return sum;
}

Tensor zeta(std::size_t dim) {
  Tensor out({dim});
  for (auto& x : out.data()) x = 1.0;
  return out;
}

Tensor spider(std::size_t inputs, std::size_t outputs, std::size_t dim) {
  const std::size_t order = inputs + outputs;
  if (order == 0) throw std::invalid_argument("spider needs at least one leg");
  Tensor out(Shape(order, dim));
  // Offset of (i, i, ..., i) is i * (1 + dim + dim^2 + ...).
  std::size_t step = 0;
  for (std::size_t k = 0, p = 1; k < order; ++k, p *= dim) step += p;
  for (std::size_t i = 0; i < dim; ++i) out.data()[i * step] = 1.0;
  return out;
}

SpiderSpec fuse(const SpiderSpec& upper, const SpiderSpec& lower, std::size_t wires) {
  if (upper.dim != lower.dim) throw std::invalid_argument("fuse: spiders on different spaces");
  if (wires == 0 || wires > upper.outputs || wires > lower.inputs) {
    throw std::invalid_argument("fuse: wire count must be in [1, min(outputs, inputs)]");
  }
  SpiderSpec out{upper.inputs + lower.inputs - wires, upper.outputs - wires + lower.outputs,
                 upper.dim};
  if (out.order() == 0) throw std::invalid_argument("fuse: closed diagram is a scalar, not a spider");
  return out;
}

namespace {

Tensor matmul(const Tensor& a, const Tensor& b) { return contract(a, 1, b, 0); }

Tensor kron(const Tensor& a, const Tensor& b) {
  const std::size_t ar = a.dim(0), ac = a.dim(1), br = b.dim(0), bc = b.dim(1);
  Tensor out({ar * br, ac * bc});
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j)
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l)
          out.at({i * br + k, j * bc + l}) = a.at({i, j}) * b.at({k, l});
  return out;
}

}  // namespace

Tensor copy_map(std::size_t dim) {
  Tensor out({dim * dim, dim});
  for (std::size_t i = 0; i < dim; ++i) out.at({i * dim + i, i}) = 1.0;
  return out;
}

Tensor merge_map(std::size_t dim) {
  Tensor out({dim, dim * dim});
  for (std::size_t i = 0; i < dim; ++i) out.at({i, i * dim + i}) = 1.0;
  return out;
}

bool frobenius_condition_holds(const Tensor& copy, const Tensor& merge, std::size_t dim) {
  const Shape copy_shape{dim * dim, dim};
  const Shape merge_shape{dim, dim * dim};
  if (copy.shape() != copy_shape || merge.shape() != merge_shape) {
    throw ShapeError("frobenius_condition_holds: maps have the wrong shape");
  }
  const Tensor id = eta(dim);
  const Tensor left = matmul(kron(merge, id), kron(id, copy));
  const Tensor middle = matmul(copy, merge);
  const Tensor right = matmul(kron(id, merge), kron(copy, id));
  return left == middle && middle == right;
}

bool frobenius_condition_check(std::size_t dim) {
  return frobenius_condition_holds(copy_map(dim), merge_map(dim), dim);
}

TypedTensor boundary_tensor(std::size_t dim, Orientation orientation) {
  // η ⊗ η has legs [a, b] [c, e]; μ joins b and c into k. Plugging the caps
  // into μ one at a time avoids materializing the order-5 intermediate.
  const Tensor merge = spider(2, 1, dim);    // [x, y, k]
  Tensor t = contract(eta(dim), 1, merge, 0);  // [a, y, k]
  t = contract(t, 1, eta(dim), 0);             // [a, k, e]

  const auto& left = orientation == Orientation::theme_first ? atoms::theme : atoms::rheme;
  const auto& right = orientation == Orientation::theme_first ? atoms::rheme : atoms::theme;
  PregroupType type{{left, 1}, {atoms::sentence, 0}, {right, -1}};
  return {std::move(type), std::move(t)};
}

Tensor copy_leg(const Tensor& m, bool copy_second) {
  if (m.order() != 2) throw ShapeError("copy_leg expects a matrix");
  const std::size_t rows = m.dim(0), cols = m.dim(1);
  const std::size_t d = copy_second ? cols : rows;
  Tensor out({rows, d, cols});
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t k = copy_second ? j : i;
      out.at({i, k, j}) = m.at({i, j});
    }
  }
  return out;
}

}  // namespace intonsem
