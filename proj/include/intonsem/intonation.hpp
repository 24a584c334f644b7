#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "intonsem/composition.hpp"
#include "intonsem/frobenius.hpp"
#include "intonsem/lexicon.hpp"

namespace intonsem {

enum class Role { theme, rheme };

std::string_view to_string(Role role);

/// Basic type a span of the given role reduces to.
const AtomicType& role_atom(Role role);

struct Span {
  Role role;
  std::vector<std::string> tokens;

  bool operator==(const Span&) const = default;
};

/// An utterance split into theme and rheme spans; intonational boundaries sit
/// between adjacent spans.
struct AnnotatedSentence {
  std::vector<Span> spans;

  bool operator==(const AnnotatedSentence&) const = default;
};

/// Parses `{T ...}` / `{R ...}` brackets. Tokens outside brackets form theme
/// spans. Adjacent spans must have different roles. ParseError carries the
/// byte offset of the problem.
AnnotatedSentence parse_annotated(std::string_view text);

std::string to_string(const AnnotatedSentence& sentence);

/// Which intonational pattern a meaning was computed for.
enum class Pattern {
  theme_rheme,       // theme ⊳ rheme
  rheme_theme,       // rheme ⊲ theme
  multiple_rhemes,   // rheme theme rheme, theme of type theta theta
  relational_rheme,  // theme rheme theme, rheme of type rho rho
  split_theme,       // theme rheme theme, all vectors
};

std::string_view to_string(Pattern pattern);

/// One way of typing a span: a sense per token and a reduction of the
/// resulting factor sequence to the span's target type.
struct SpanDerivation {
  std::vector<std::size_t> senses;  // index into the token's LexiconEntry::senses
  std::vector<TypedTensor> words;
  ReductionDiagram diagram;
};

struct SpanTyping {
  Span span;
  PregroupType target;
  std::vector<SpanDerivation> derivations;  // every sense choice and reduction that works
};

/// Types each span against an explicit target type. Throws UnknownWord for a
/// token missing from the lexicon and InfelicitousStructure naming the first
/// span with no reducing sense assignment.
std::vector<SpanTyping> type_spans(const AnnotatedSentence& sentence, const Lexicon& lexicon,
                                   std::span<const PregroupType> targets);

/// Targets default to the role atoms: theta for themes, rho for rhemes.
std::vector<SpanTyping> type_spans(const AnnotatedSentence& sentence, const Lexicon& lexicon);

/// compose() over a span derivation.
Tensor span_tensor(const SpanDerivation& derivation);

struct SentenceMeaning {
  Pattern pattern;
  Tensor tensor;
  std::vector<Tensor> spans;             // composed tensor of each span
  std::vector<std::size_t> derivations;  // derivation index used for each span
};

// Boundary merges. The plain versions evaluate the Frobenius normal form; the
// `_categorical` versions contract the boundary morphisms explicitly and are
// there as an independent route to the same value.

/// theme ⊙ rheme. Order does not matter.
Tensor merge_boundary(const Tensor& theme, const Tensor& rheme);

/// Reduces left · boundary · right to s with the boundary token of the given
/// orientation and composes it.
Tensor merge_boundary_categorical(const Tensor& left, const Tensor& right,
                                  Orientation orientation);

/// (outer₁ ⊗ outer₂) ⊙ middle, for an order-2 middle span flanked by two
/// vectors.
Tensor merge_flanked(const Tensor& outer1, const Tensor& middle, const Tensor& outer2);

/// (μ ⊗ μ)(outer₁ ⊗ middle ⊗ outer₂).
Tensor merge_flanked_categorical(const Tensor& outer1, const Tensor& middle,
                                 const Tensor& outer2);

/// theme₁ ⊙ rheme ⊙ theme₂.
Tensor merge_split_theme(const Tensor& theme1, const Tensor& rheme, const Tensor& theme2);

/// theme₁ · (theta.r rho rho.l) · rheme · (rho.r s theta.l) · theme₂ reduced
/// to s and composed: two chained boundaries.
Tensor merge_split_theme_categorical(const Tensor& theme1, const Tensor& rheme,
                                     const Tensor& theme2);

/// General two-span case (theme ⊳ rheme or rheme ⊲ theme). One meaning per
/// combination of span derivations.
std::vector<SentenceMeaning> meaning(const AnnotatedSentence& sentence, const Lexicon& lexicon);

/// Rheme, theme, rheme with an order-2 theme. Yields order-2 meanings.
std::vector<SentenceMeaning> meaning_multiple_rhemes(const AnnotatedSentence& sentence,
                                                     const Lexicon& lexicon);

/// Theme, rheme, theme with vector spans. Yields order-1 meanings.
std::vector<SentenceMeaning> meaning_split_theme(const AnnotatedSentence& sentence,
                                                 const Lexicon& lexicon);

/// Theme, rheme, theme with an order-2 rheme. Yields order-2 meanings equal to
/// the multiple-rheme reading with roles swapped.
std::vector<SentenceMeaning> meaning_relational_rheme(const AnnotatedSentence& sentence,
                                                      const Lexicon& lexicon);

/// Dispatches on the span pattern and collects every reading. Throws
/// InfelicitousStructure when no pattern applies.
std::vector<SentenceMeaning> interpret(const AnnotatedSentence& sentence, const Lexicon& lexicon);

enum class CopyWire { subject, object };

/// Lifts a square verb matrix to an order-3 tensor in N ⊗ S ⊗ N by copying
/// one argument wire with Δ. Copy-object composed with subject and object
/// gives (subj × M) ⊙ obj; copy-subject gives subj ⊙ (M × obj).
Tensor copy_expand(const Tensor& verb_matrix, CopyWire which);

}  // namespace intonsem
