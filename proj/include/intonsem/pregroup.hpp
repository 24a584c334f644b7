#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace intonsem {

/// Name of a basic grammatical type (n, s, theta, rho, ...). Case-sensitive.
class AtomicType {
 public:
  AtomicType() = default;
  explicit AtomicType(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  auto operator<=>(const AtomicType&) const = default;

 private:
  std::string name_;
};

namespace atoms {
inline const AtomicType noun{"n"};
inline const AtomicType sentence{"s"};
inline const AtomicType theme{"theta"};
inline const AtomicType rheme{"rho"};
}  // namespace atoms

/// A basic type with an iterated adjoint: -1 is p^l, +1 is p^r, -2 is p^ll ...
struct SimpleType {
  AtomicType base;
  int adjoint = 0;

  SimpleType left() const { return {base, adjoint - 1}; }
  SimpleType right() const { return {base, adjoint + 1}; }

  auto operator<=>(const SimpleType&) const = default;
};

/// True when `left · right <= 1` is a contraction of the free pregroup:
/// same base and the right factor exactly one adjoint higher.
inline bool cancels(const SimpleType& left, const SimpleType& right) {
  return left.base == right.base && right.adjoint == left.adjoint + 1;
}

/// Element of the free pregroup: a juxtaposition of simple types. The empty
/// sequence is the monoid unit.
class PregroupType {
 public:
  PregroupType() = default;
  explicit PregroupType(std::vector<SimpleType> factors)
      : factors_(std::move(factors)) {}
  PregroupType(std::initializer_list<SimpleType> factors) : factors_(factors) {}

  static PregroupType unit() { return {}; }
  static PregroupType atom(const AtomicType& base) { return PregroupType{{base, 0}}; }

  const std::vector<SimpleType>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  bool is_unit() const noexcept { return factors_.empty(); }
  const SimpleType& operator[](std::size_t i) const { return factors_[i]; }

  /// Right adjoint of the product: (p·q)^r = q^r · p^r.
  PregroupType right() const;
  /// Left adjoint of the product: (p·q)^l = q^l · p^l.
  PregroupType left() const;

  /// True when every factor has adjoint order 0.
  bool is_plain() const;

  friend PregroupType operator*(const PregroupType& a, const PregroupType& b);

  auto operator<=>(const PregroupType&) const = default;

 private:
  std::vector<SimpleType> factors_;
};

/// Parses the text form `factor (WS factor)*` where a factor is a base name
/// followed by any number of `.l` / `.r` suffixes applied left to right.
/// Throws ParseError carrying the byte offset of the offending character.
PregroupType parse_type(std::string_view text);

/// Renders in the syntax accepted by parse_type ("n.r s n.l").
std::string to_string(const SimpleType& t);
std::string to_string(const PregroupType& t);

/// Concatenates a sequence of word types into one flat factor sequence.
PregroupType flatten(std::span<const PregroupType> types);

/// A planar cup-linking over the flattened factor sequence. Indices are
/// 0-based here; JSON output uses 1-based indices.
struct ReductionDiagram {
  std::vector<std::pair<std::size_t, std::size_t>> links;  // (i, j) with i < j, sorted
  std::vector<std::size_t> survivors;                      // ascending

  std::size_t domain_size() const { return 2 * links.size() + survivors.size(); }

  auto operator<=>(const ReductionDiagram&) const = default;
};

/// Checks the structural invariants of `d` against the flattened factors:
/// index coverage, link rule, no crossings, no survivor under a cup, and
/// survivors spelling `target`. Returns an empty string when valid, else a
/// description of the first violation.
std::string check_diagram(const PregroupType& flat, const ReductionDiagram& d,
                          const PregroupType& target);

/// Applies the links as cancellations and returns the surviving factors.
PregroupType replay(const PregroupType& flat, const ReductionDiagram& d);

/// All contraction-only reductions of the flattened factors to `target`,
/// ordered lexicographically by link list. Empty when there is none.
/// `target` must consist of plain factors (std::invalid_argument otherwise).
std::vector<ReductionDiagram> all_reductions(const PregroupType& flat,
                                             const PregroupType& target);

/// Like all_reductions over the concatenation of `types`, but throws
/// NoReduction when the sequence does not reduce to `target`.
std::vector<ReductionDiagram> reduce(std::span<const PregroupType> types,
                                     const PregroupType& target);

/// Recognition only; agrees with `!all_reductions(...).empty()`.
bool grammatical(std::span<const PregroupType> types, const PregroupType& target);

}  // namespace intonsem
