#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intonsem/composition.hpp"

namespace intonsem {

/// A word with every (type, tensor) sense it can take.
struct LexiconEntry {
  std::string word;
  std::vector<TypedTensor> senses;
  /// Relational matrix of a transitive verb (subject axis, object axis), from
  /// which intonation senses are derived. Not a sense by itself.
  std::optional<Tensor> verb_matrix;

  const TypedTensor* find(const PregroupType& type) const;
};

class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(SpaceAssignment spaces) : spaces_(std::move(spaces)) {}

  /// Validates every sense against the space assignment and rejects a
  /// duplicate (word, type) pair.
  void add(LexiconEntry entry);

  /// Throws UnknownWord.
  const LexiconEntry& lookup(std::string_view word) const;
  bool contains(std::string_view word) const { return entries_.count(std::string(word)) > 0; }

  const SpaceAssignment& spaces() const noexcept { return spaces_; }
  const std::map<std::string, LexiconEntry, std::less<>>& entries() const noexcept {
    return entries_;
  }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  SpaceAssignment spaces_;
  std::map<std::string, LexiconEntry, std::less<>> entries_;
};

/// Reads the JSON lexicon format. Relative `data_ref` paths resolve against
/// the lexicon file's directory.
Lexicon load_lexicon(const std::filesystem::path& path);

/// Same, from text already in memory.
Lexicon parse_lexicon(std::string_view json_text, const std::filesystem::path& base_dir = {});

enum class ThemeSide {
  left,   // subject verb ⊳ object: the verb gets n.r theta
  right,  // subject ⊲ verb object: the verb gets theta n.l
};

/// Adds the senses an intonation grammar needs. Nouns (an `n` vector) gain
/// `rho` and `theta` senses equal to that vector; a verb matrix M gains
/// `n.r theta` (left) or `theta n.l` (right), plus the order-2 theme and rheme
/// senses `theta theta` and `rho rho`, all with tensor M. Senses already
/// present are kept, so the operation is idempotent. Entries that only list
/// explicit intonation senses are returned unchanged; anything else throws
/// LexiconError.
LexiconEntry derive_intonation_senses(const LexiconEntry& entry, ThemeSide side);

/// Both sides at once.
LexiconEntry derive_intonation_senses(const LexiconEntry& entry);

/// Applies derive_intonation_senses (both sides) to every entry that has a
/// base to derive from; other entries are left as they are.
Lexicon with_intonation_senses(const Lexicon& lexicon);

/// Cosine of two equally shaped tensors (vectors in the usual case), clamped
/// to [-1, 1]. OrderMismatch across orders, ShapeError across shapes,
/// std::domain_error when either operand is zero.
double cosine(const Tensor& u, const Tensor& v);

}  // namespace intonsem
