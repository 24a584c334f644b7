#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace intonsem {

using Shape = std::vector<std::size_t>;

/// Dense real tensor in row-major order. An empty shape is a scalar.
class Tensor {
 public:
  /// Scalar zero.
  Tensor() : data_(1, 0.0) {}
  /// Zero tensor of the given shape. Every dimension must be positive.
  explicit Tensor(Shape shape);
  /// Throws ShapeError when data.size() differs from the shape's volume.
  Tensor(Shape shape, std::vector<double> data);

  static Tensor scalar(double value);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t order() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  double& at(std::initializer_list<std::size_t> index);
  double at(std::initializer_list<std::size_t> index) const;
  double& at(std::span<const std::size_t> index);
  double at(std::span<const std::size_t> index) const;

  /// Value of an order-0 tensor.
  double value() const;

  bool operator==(const Tensor&) const = default;

 private:
  std::size_t offset(std::span<const std::size_t> index) const;

  Shape shape_;
  std::vector<double> data_;
};

std::size_t volume(const Shape& shape);

/// a ⊗ b: axes of a followed by axes of b.
Tensor outer(const Tensor& a, const Tensor& b);

/// Sums axis `axis_a` of a against axis `axis_b` of b. The result keeps the
/// remaining axes of a, then the remaining axes of b, in their original order.
Tensor contract(const Tensor& a, std::size_t axis_a, const Tensor& b, std::size_t axis_b);

/// Sums over the diagonal of two distinct axes of one tensor.
Tensor trace(const Tensor& t, std::size_t axis_i, std::size_t axis_j);

/// result axis k is input axis perm[k].
Tensor permute(const Tensor& t, std::span<const std::size_t> perm);

/// Reinterprets the data under a new shape of equal volume.
Tensor reshape(const Tensor& t, Shape shape);

/// Entry-wise product of equally shaped tensors.
Tensor hadamard(const Tensor& a, const Tensor& b);

Tensor scale(const Tensor& t, double factor);

/// Sum of entry-wise products (flattened inner product); shapes must match.
double inner(const Tensor& a, const Tensor& b);
double norm(const Tensor& t);

/// max |a - b| over entries; shapes must match.
double max_abs_diff(const Tensor& a, const Tensor& b);

/// max |a - b| / max(max |b|, tiny); a relative error on the largest entry.
double relative_error(const Tensor& a, const Tensor& b);

}  // namespace intonsem
