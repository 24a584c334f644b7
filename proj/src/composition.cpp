#include "intonsem/composition.hpp"

#include <algorithm>
#include <numeric>

#include "intonsem/error.hpp"

namespace intonsem {

SpaceAssignment::SpaceAssignment(std::map<AtomicType, std::size_t> dims) : dims_(std::move(dims)) {
  for (const auto& [base, d] : dims_) {
    if (d == 0) throw ShapeError("space for '" + base.name() + "' must have positive dimension");
  }
}

SpaceAssignment SpaceAssignment::shared(std::size_t dim) {
  return SpaceAssignment({{atoms::noun, dim},
                          {atoms::sentence, dim},
                          {atoms::theme, dim},
                          {atoms::rheme, dim}});
}

std::size_t SpaceAssignment::dim(const AtomicType& base) const {
  auto it = dims_.find(base);
  if (it == dims_.end()) throw TypeError("no space assigned to basic type '" + base.name() + "'");
  return it->second;
}

std::optional<std::size_t> SpaceAssignment::shared_dim() const {
  std::optional<std::size_t> d;
  for (const auto& base : {atoms::noun, atoms::sentence, atoms::theme, atoms::rheme}) {
    auto it = dims_.find(base);
    if (it == dims_.end()) return std::nullopt;
    if (d && *d != it->second) return std::nullopt;
    d = it->second;
  }
  return d;
}

Shape semantic_shape(const PregroupType& type, const SpaceAssignment& spaces) {
  Shape shape;
  shape.reserve(type.size());
  for (const auto& f : type.factors()) shape.push_back(spaces.dim(f.base));
  return shape;
}

void check_shape(const TypedTensor& t, const SpaceAssignment& spaces) {
  const Shape expected = semantic_shape(t.type, spaces);
  if (t.tensor.shape() != expected) {
    auto text = [](const Shape& s) {
      std::string out = "[";
      for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
      return out + "]";
    };
    throw ShapeError("type '" + to_string(t.type) + "' needs shape " + text(expected) + ", got " +
                     text(t.tensor.shape()));
  }
}

TypedTensor epsilon_contract(const TypedTensor& a, std::size_t axis_a, const TypedTensor& b,
                             std::size_t axis_b) {
  if (a.tensor.order() != a.type.size() || b.tensor.order() != b.type.size()) {
    throw ShapeError("epsilon_contract: tensor order differs from its type's factor count");
  }
  if (axis_a >= a.type.size() || axis_b >= b.type.size()) {
    throw ShapeError("epsilon_contract: axis out of range");
  }
  if (!cancels(a.type[axis_a], b.type[axis_b])) {
    throw TypeError("epsilon_contract: '" + to_string(a.type[axis_a]) + "' and '" +
                    to_string(b.type[axis_b]) + "' do not cancel");
  }
  std::vector<SimpleType> factors;
  for (std::size_t k = 0; k < a.type.size(); ++k) {
    if (k != axis_a) factors.push_back(a.type[k]);
  }
  for (std::size_t k = 0; k < b.type.size(); ++k) {
    if (k != axis_b) factors.push_back(b.type[k]);
  }
  return {PregroupType{std::move(factors)}, contract(a.tensor, axis_a, b.tensor, axis_b)};
}

Tensor eta(std::size_t dim) {
  Tensor out({dim, dim});
  for (std::size_t i = 0; i < dim; ++i) out.at({i, i}) = 1.0;
  return out;
}

namespace {

struct Block {
  Tensor tensor;
  std::vector<std::size_t> factors;  // flat factor index carried by each axis
  bool alive = true;
};

}  // namespace

TypedTensor compose(std::span<const TypedTensor> words, const ReductionDiagram& diagram) {
  std::vector<std::size_t> order(diagram.links.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return diagram.links[x].first < diagram.links[y].first;
  });
  return compose(words, diagram, order);
}

TypedTensor compose(std::span<const TypedTensor> words, const ReductionDiagram& diagram,
                    std::span<const std::size_t> schedule) {
  if (words.empty()) throw TypeError("compose needs at least one word");
  std::vector<PregroupType> types;
  for (const auto& w : words) {
    if (w.tensor.order() != w.type.size()) {
      throw ShapeError("word tensor of order " + std::to_string(w.tensor.order()) +
                       " for type '" + to_string(w.type) + "'");
    }
    types.push_back(w.type);
  }
  const PregroupType flat = flatten(types);
  if (diagram.domain_size() != flat.size()) {
    throw TypeError("diagram covers " + std::to_string(diagram.domain_size()) +
                    " factors but the words have " + std::to_string(flat.size()));
  }
  std::vector<SimpleType> survivor_factors;
  for (auto s : diagram.survivors) survivor_factors.push_back(flat[s]);
  PregroupType result_type{std::move(survivor_factors)};
  if (auto err = check_diagram(flat, diagram, result_type); !err.empty()) {
    throw TypeError("diagram does not match the word types: " + err);
  }
  std::vector<bool> scheduled(diagram.links.size(), false);
  for (auto k : schedule) {
    if (k >= scheduled.size() || scheduled[k]) throw TypeError("schedule is not a permutation");
    scheduled[k] = true;
  }
  if (schedule.size() != diagram.links.size()) throw TypeError("schedule is not a permutation");

  std::vector<Block> blocks;
  std::vector<std::size_t> owner(flat.size());
  std::size_t next = 0;
  for (const auto& w : words) {
    Block b{w.tensor, {}, true};
    for (std::size_t k = 0; k < w.type.size(); ++k) {
      b.factors.push_back(next);
      owner[next++] = blocks.size();
    }
    blocks.push_back(std::move(b));
  }
  auto axis_of = [](const Block& b, std::size_t factor) {
    return static_cast<std::size_t>(std::find(b.factors.begin(), b.factors.end(), factor) -
                                    b.factors.begin());
  };

  for (auto k : schedule) {
    auto [i, j] = diagram.links[k];
    Block& bi = blocks[owner[i]];
    const std::size_t ai = axis_of(bi, i);
    if (owner[i] == owner[j]) {
      const std::size_t aj = axis_of(bi, j);
      bi.tensor = trace(bi.tensor, ai, aj);
      bi.factors.erase(bi.factors.begin() + std::max(ai, aj));
      bi.factors.erase(bi.factors.begin() + std::min(ai, aj));
      continue;
    }
    Block& bj = blocks[owner[j]];
    const std::size_t aj = axis_of(bj, j);
    bi.tensor = contract(bi.tensor, ai, bj.tensor, aj);
    bi.factors.erase(bi.factors.begin() + ai);
    bj.factors.erase(bj.factors.begin() + aj);
    const std::size_t target = owner[i];
    for (auto f : bj.factors) owner[f] = target;
    bi.factors.insert(bi.factors.end(), bj.factors.begin(), bj.factors.end());
    bj.alive = false;
  }

  // Disconnected pieces are joined by ⊗ in word order.
  std::optional<Tensor> result;
  std::vector<std::size_t> axes;
  for (auto& b : blocks) {
    if (!b.alive) continue;
    result = result ? outer(*result, b.tensor) : std::move(b.tensor);
    axes.insert(axes.end(), b.factors.begin(), b.factors.end());
  }
  std::vector<std::size_t> perm(axes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return axes[x] < axes[y]; });
  if (!std::is_sorted(axes.begin(), axes.end())) result = permute(*result, perm);
  return {std::move(result_type), std::move(*result)};
}

}  // namespace intonsem
