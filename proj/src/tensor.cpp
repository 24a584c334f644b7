#include "intonsem/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "intonsem/error.hpp"

namespace intonsem {

namespace {

std::string shape_text(const Shape& shape) {
  std::string out = "[";
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(shape[k]);
  }
  return out + "]";
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shapes " + shape_text(a.shape()) + " and " +
                     shape_text(b.shape()) + " differ");
  }
}

// Product of the dimensions in [first, last).
std::size_t span_volume(const Shape& s, std::size_t first, std::size_t last) {
  std::size_t v = 1;
  for (std::size_t k = first; k < last; ++k) v *= s[k];
  return v;
}

}  // namespace

std::size_t volume(const Shape& shape) { return span_volume(shape, 0, shape.size()); }

Tensor::Tensor(Shape shape) : shape_(std::move(shape)) {
  for (auto d : shape_) {
    if (d == 0) throw ShapeError("tensor dimensions must be positive: " + shape_text(shape_));
  }
  data_.assign(volume(shape_), 0.0);
}

Tensor::Tensor(Shape shape, std::vector<double> data) : Tensor(std::move(shape)) {
  if (data.size() != data_.size()) {
    throw ShapeError("shape " + shape_text(shape_) + " needs " + std::to_string(data_.size()) +
                     " values, got " + std::to_string(data.size()));
  }
  data_ = std::move(data);
}

Tensor Tensor::scalar(double value) { return Tensor({}, {value}); }

Tensor Tensor::vector(std::vector<double> values) {
  const std::size_t n = values.size();
  return Tensor({n}, std::move(values));
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
  return Tensor({rows, cols}, std::move(values));
}

std::size_t Tensor::offset(std::span<const std::size_t> index) const {
  if (index.size() != shape_.size()) {
    throw ShapeError("index of order " + std::to_string(index.size()) + " into tensor of order " +
                     std::to_string(shape_.size()));
  }
  std::size_t off = 0;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (index[k] >= shape_[k]) throw ShapeError("index out of range on axis " + std::to_string(k));
    off = off * shape_[k] + index[k];
  }
  return off;
}

double& Tensor::at(std::initializer_list<std::size_t> index) {
  return data_[offset(std::span(index.begin(), index.size()))];
}
double Tensor::at(std::initializer_list<std::size_t> index) const {
  return data_[offset(std::span(index.begin(), index.size()))];
}
double& Tensor::at(std::span<const std::size_t> index) { return data_[offset(index)]; }
double Tensor::at(std::span<const std::size_t> index) const { return data_[offset(index)]; }

double Tensor::value() const {
  if (!shape_.empty()) throw ShapeError("value() on tensor of order " + std::to_string(order()));
  return data_[0];
}

Tensor outer(const Tensor& a, const Tensor& b) {
  Shape shape = a.shape();
  shape.insert(shape.end(), b.shape().begin(), b.shape().end());
  Tensor out(std::move(shape));
  auto o = out.data();
  auto ad = a.data();
  auto bd = b.data();
  std::size_t k = 0;
  for (double x : ad) {
    for (double y : bd) o[k++] = x * y;
  }
  return out;
}

Tensor contract(const Tensor& a, std::size_t axis_a, const Tensor& b, std::size_t axis_b) {
  if (axis_a >= a.order() || axis_b >= b.order()) throw ShapeError("contract: axis out of range");
  const std::size_t k = a.dim(axis_a);
  if (b.dim(axis_b) != k) {
    throw ShapeError("contract: dimension " + std::to_string(k) + " against " +
                     std::to_string(b.dim(axis_b)));
  }
  // a viewed as [a_pre, k, a_post], b as [b_pre, k, b_post].
  const std::size_t a_pre = span_volume(a.shape(), 0, axis_a);
  const std::size_t a_post = span_volume(a.shape(), axis_a + 1, a.order());
  const std::size_t b_pre = span_volume(b.shape(), 0, axis_b);
  const std::size_t b_post = span_volume(b.shape(), axis_b + 1, b.order());

  Shape shape;
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (i != axis_a) shape.push_back(a.dim(i));
  }
  for (std::size_t i = 0; i < b.order(); ++i) {
    if (i != axis_b) shape.push_back(b.dim(i));
  }
  Tensor out(std::move(shape));
  auto o = out.data();
  auto ad = a.data();
  auto bd = b.data();
  const std::size_t block = b_pre * b_post;
  for (std::size_t ap = 0; ap < a_pre; ++ap) {
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t aq = 0; aq < a_post; ++aq) {
        const double av = ad[(ap * k + x) * a_post + aq];
        double* row = o.data() + (ap * a_post + aq) * block;
        for (std::size_t bp = 0; bp < b_pre; ++bp) {
          const double* bx = bd.data() + (bp * k + x) * b_post;
          double* orow = row + bp * b_post;
          for (std::size_t bq = 0; bq < b_post; ++bq) orow[bq] += av * bx[bq];
        }
      }
    }
  }
  return out;
}

Tensor trace(const Tensor& t, std::size_t axis_i, std::size_t axis_j) {
  if (axis_i == axis_j || axis_i >= t.order() || axis_j >= t.order()) {
    throw ShapeError("trace: needs two distinct axes in range");
  }
  if (axis_i > axis_j) std::swap(axis_i, axis_j);
  const std::size_t k = t.dim(axis_i);
  if (t.dim(axis_j) != k) throw ShapeError("trace: axes have different dimensions");
  // t viewed as [p, k, m, k, q].
  const std::size_t p = span_volume(t.shape(), 0, axis_i);
  const std::size_t m = span_volume(t.shape(), axis_i + 1, axis_j);
  const std::size_t q = span_volume(t.shape(), axis_j + 1, t.order());
  Shape shape;
  for (std::size_t i = 0; i < t.order(); ++i) {
    if (i != axis_i && i != axis_j) shape.push_back(t.dim(i));
  }
  Tensor out(std::move(shape));
  auto o = out.data();
  auto d = t.data();
  std::size_t w = 0;
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t c = 0; c < q; ++c) {
        double sum = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
          sum += d[(((a * k + x) * m + b) * k + x) * q + c];
        }
        o[w++] = sum;
      }
    }
  }
  return out;
}

Tensor permute(const Tensor& t, std::span<const std::size_t> perm) {
  const std::size_t r = t.order();
  if (perm.size() != r) throw ShapeError("permute: permutation has wrong length");
  std::vector<bool> used(r, false);
  for (auto p : perm) {
    if (p >= r || used[p]) throw ShapeError("permute: not a permutation");
    used[p] = true;
  }
  Shape shape(r);
  for (std::size_t k = 0; k < r; ++k) shape[k] = t.dim(perm[k]);
  Tensor out(shape);
  if (r == 0) {
    out.data()[0] = t.data()[0];
    return out;
  }
  // Input strides, read in output-axis order.
  std::vector<std::size_t> in_stride(r);
  std::size_t s = 1;
  for (std::size_t k = r; k-- > 0;) {
    in_stride[k] = s;
    s *= t.dim(k);
  }
  std::vector<std::size_t> stride(r);
  for (std::size_t k = 0; k < r; ++k) stride[k] = in_stride[perm[k]];

  std::vector<std::size_t> idx(r, 0);
  auto o = out.data();
  auto d = t.data();
  std::size_t src = 0;
  for (std::size_t w = 0; w < o.size(); ++w) {
    o[w] = d[src];
    for (std::size_t k = r; k-- > 0;) {
      ++idx[k];
      src += stride[k];
      if (idx[k] < shape[k]) break;
      src -= stride[k] * shape[k];
      idx[k] = 0;
    }
  }
  return out;
}

Tensor reshape(const Tensor& t, Shape shape) {
  std::vector<double> data(t.data().begin(), t.data().end());
  return Tensor(std::move(shape), std::move(data));
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "hadamard");
  Tensor out(a.shape());
  auto o = out.data();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] = a.data()[k] * b.data()[k];
  return out;
}

Tensor scale(const Tensor& t, double factor) {
  Tensor out = t;
  for (auto& x : out.data()) x *= factor;
  return out;
}

double inner(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "inner");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a.data()[k] * b.data()[k];
  return sum;
}

double norm(const Tensor& t) { return std::sqrt(inner(t, t)); }

double max_abs_diff(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

double relative_error(const Tensor& a, const Tensor& b) {
  double scale_b = 0.0;
  for (double x : b.data()) scale_b = std::max(scale_b, std::abs(x));
  const double diff = max_abs_diff(a, b);
  return scale_b > 0.0 ? diff / scale_b : diff;
}

}  // namespace intonsem
