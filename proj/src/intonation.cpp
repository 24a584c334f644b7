#include "intonsem/intonation.hpp"

#include <array>
#include <functional>
#include <utility>

#include "intonsem/error.hpp"

namespace intonsem {

std::string_view to_string(Role role) { return role == Role::theme ? "theme" : "rheme"; }

const AtomicType& role_atom(Role role) {
  return role == Role::theme ? atoms::theme : atoms::rheme;
}

std::string_view to_string(Pattern pattern) {
  switch (pattern) {
    case Pattern::theme_rheme: return "theme-rheme";
    case Pattern::rheme_theme: return "rheme-theme";
    case Pattern::multiple_rhemes: return "multiple-rhemes";
    case Pattern::relational_rheme: return "relational-rheme";
    case Pattern::split_theme: return "split-theme";
  }
  return "unknown";
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

AnnotatedSentence parse_annotated(std::string_view text) {
  AnnotatedSentence out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool in_bracket = false;
  std::size_t bracket_start = 0;
  Span bare{Role::theme, {}};

  auto push_span = [&](Span span, std::size_t at) {
    if (!out.spans.empty() && out.spans.back().role == span.role) {
      throw ParseError("two adjacent " + std::string(to_string(span.role)) +
                           " spans at offset " + std::to_string(at),
                       at);
    }
    out.spans.push_back(std::move(span));
  };
  auto flush_bare = [&](std::size_t at) {
    if (!bare.tokens.empty()) push_span(std::exchange(bare, Span{Role::theme, {}}), at);
  };

  Span current{Role::theme, {}};
  while (i < n) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (c == '{') {
      if (in_bracket) throw ParseError("nested '{' at offset " + std::to_string(i), i);
      if (i + 1 >= n || (text[i + 1] != 'T' && text[i + 1] != 'R') ||
          (i + 2 < n && !is_space(text[i + 2]) && text[i + 2] != '}')) {
        throw ParseError("expected '{T' or '{R' at offset " + std::to_string(i), i);
      }
      flush_bare(i);
      current = Span{text[i + 1] == 'T' ? Role::theme : Role::rheme, {}};
      in_bracket = true;
      bracket_start = i;
      i += 2;
      continue;
    }
    if (c == '}') {
      if (!in_bracket) throw ParseError("unmatched '}' at offset " + std::to_string(i), i);
      if (current.tokens.empty()) {
        throw ParseError("empty span at offset " + std::to_string(bracket_start), bracket_start);
      }
      push_span(std::move(current), bracket_start);
      in_bracket = false;
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < n && !is_space(text[i]) && text[i] != '{' && text[i] != '}') ++i;
    std::string token(text.substr(start, i - start));
    if (in_bracket) {
      current.tokens.push_back(std::move(token));
    } else {
      if (bare.tokens.empty() && !out.spans.empty() && out.spans.back().role == Role::theme) {
        throw ParseError("two adjacent theme spans at offset " + std::to_string(start), start);
      }
      bare.tokens.push_back(std::move(token));
    }
  }
  if (in_bracket) throw ParseError("unclosed span opened at offset " + std::to_string(bracket_start), bracket_start);
  flush_bare(n);
  if (out.spans.empty()) throw ParseError("annotated sentence has no tokens", 0);
  return out;
}

std::string to_string(const AnnotatedSentence& sentence) {
  std::string out;
  for (const auto& span : sentence.spans) {
    if (!out.empty()) out += ' ';
    out += span.role == Role::theme ? "{T" : "{R";
    for (const auto& t : span.tokens) out += ' ' + t;
    out += '}';
  }
  return out;
}

namespace {

std::string span_text(const Span& span) {
  std::string out;
  for (const auto& t : span.tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

SpanTyping type_span(const Span& span, std::size_t position, const Lexicon& lexicon,
                     const PregroupType& target) {
  std::vector<const LexiconEntry*> entries;
  for (const auto& tok : span.tokens) entries.push_back(&lexicon.lookup(tok));

  SpanTyping typing{span, target, {}};
  std::vector<std::size_t> choice(entries.size(), 0);
  for (const auto* e : entries) {
    if (e->senses.empty()) {
      throw InfelicitousStructure("span " + std::to_string(position + 1) + " (" +
                                  std::string(to_string(span.role)) + " '" + span_text(span) +
                                  "'): word '" + e->word + "' has no senses");
    }
  }
  // Odometer over every sense assignment.
  while (true) {
    std::vector<PregroupType> types;
    for (std::size_t k = 0; k < entries.size(); ++k) types.push_back(entries[k]->senses[choice[k]].type);
    if (grammatical(types, target)) {
      std::vector<TypedTensor> words;
      for (std::size_t k = 0; k < entries.size(); ++k) words.push_back(entries[k]->senses[choice[k]]);
      for (auto& d : all_reductions(flatten(types), target)) {
        typing.derivations.push_back({choice, words, std::move(d)});
      }
    }
    std::size_t k = entries.size();
    while (k > 0) {
      --k;
      if (++choice[k] < entries[k]->senses.size()) break;
      choice[k] = 0;
      if (k == 0) return typing;
    }
    if (entries.empty()) return typing;
  }
}

std::vector<Role> roles(const AnnotatedSentence& s) {
  std::vector<Role> out;
  for (const auto& span : s.spans) out.push_back(span.role);
  return out;
}

void require_roles(const AnnotatedSentence& s, std::initializer_list<Role> expected,
                   const char* what) {
  if (roles(s) != std::vector<Role>(expected)) {
    throw InfelicitousStructure(std::string(what) + " needs the span pattern " + [&] {
      std::string out;
      for (auto r : expected) out += (out.empty() ? "" : " ") + std::string(to_string(r));
      return out;
    }() + ", got '" + to_string(s) + "'");
  }
}

PregroupType atom(const AtomicType& a) { return PregroupType::atom(a); }

PregroupType pair_of(const AtomicType& a) { return PregroupType{{a, 0}, {a, 0}}; }

// Evaluates `combine` on every combination of span derivations.
std::vector<SentenceMeaning> combine_all(
    const std::vector<SpanTyping>& typings, Pattern pattern,
    const std::function<Tensor(const std::vector<Tensor>&)>& combine) {
  std::vector<std::vector<Tensor>> tensors;
  for (const auto& t : typings) {
    std::vector<Tensor> per;
    for (const auto& d : t.derivations) per.push_back(span_tensor(d));
    tensors.push_back(std::move(per));
  }
  std::vector<SentenceMeaning> out;
  std::vector<std::size_t> pick(typings.size(), 0);
  while (true) {
    std::vector<Tensor> spans;
    for (std::size_t k = 0; k < pick.size(); ++k) spans.push_back(tensors[k][pick[k]]);
    Tensor value = combine(spans);
    out.push_back({pattern, std::move(value), std::move(spans), pick});
    std::size_t k = pick.size();
    while (true) {
      if (k == 0) return out;
      --k;
      if (++pick[k] < tensors[k].size()) break;
      pick[k] = 0;
    }
  }
}

void require_vector(const Tensor& t, const char* what) {
  if (t.order() != 1) throw ShapeError(std::string(what) + " must be a vector");
}

}  // namespace

std::vector<SpanTyping> type_spans(const AnnotatedSentence& sentence, const Lexicon& lexicon,
                                   std::span<const PregroupType> targets) {
  if (targets.size() != sentence.spans.size()) {
    throw std::invalid_argument("type_spans: one target per span required");
  }
  std::vector<SpanTyping> out;
  for (std::size_t k = 0; k < sentence.spans.size(); ++k) {
    auto typing = type_span(sentence.spans[k], k, lexicon, targets[k]);
    if (typing.derivations.empty()) {
      const auto& span = sentence.spans[k];
      throw InfelicitousStructure("span " + std::to_string(k + 1) + " (" +
                                  std::string(to_string(span.role)) + " '" + span_text(span) +
                                  "') does not reduce to '" + to_string(targets[k]) +
                                  "' under any sense assignment");
    }
    out.push_back(std::move(typing));
  }
  return out;
}

std::vector<SpanTyping> type_spans(const AnnotatedSentence& sentence, const Lexicon& lexicon) {
  std::vector<PregroupType> targets;
  for (const auto& span : sentence.spans) targets.push_back(atom(role_atom(span.role)));
  return type_spans(sentence, lexicon, targets);
}

Tensor span_tensor(const SpanDerivation& derivation) {
  return compose(derivation.words, derivation.diagram).tensor;
}

Tensor merge_boundary(const Tensor& theme, const Tensor& rheme) {
  require_vector(theme, "theme");
  require_vector(rheme, "rheme");
  return hadamard(theme, rheme);
}

Tensor merge_boundary_categorical(const Tensor& left, const Tensor& right,
                                  Orientation orientation) {
  require_vector(left, "left span");
  require_vector(right, "right span");
  const bool theme_first = orientation == Orientation::theme_first;
  const std::array<TypedTensor, 3> words{
      TypedTensor{atom(theme_first ? atoms::theme : atoms::rheme), left},
      boundary_tensor(left.dim(0), orientation),
      TypedTensor{atom(theme_first ? atoms::rheme : atoms::theme), right}};
  const std::array<PregroupType, 3> types{words[0].type, words[1].type, words[2].type};
  const auto diagrams = reduce(types, atom(atoms::sentence));
  return compose(words, diagrams.front()).tensor;
}

Tensor merge_flanked(const Tensor& outer1, const Tensor& middle, const Tensor& outer2) {
  require_vector(outer1, "first flanking span");
  require_vector(outer2, "second flanking span");
  if (middle.order() != 2) throw ShapeError("middle span must be an order-2 tensor");
  return hadamard(outer(outer1, outer2), middle);
}

Tensor merge_flanked_categorical(const Tensor& outer1, const Tensor& middle,
                                 const Tensor& outer2) {
  require_vector(outer1, "first flanking span");
  require_vector(outer2, "second flanking span");
  if (middle.order() != 2) throw ShapeError("middle span must be an order-2 tensor");
  // μ : [x, y, k]; each input leg is plugged in turn.
  Tensor t = contract(outer1, 0, spider(2, 1, outer1.dim(0)), 0);  // [y, k1]
  t = contract(t, 0, middle, 0);                                   // [k1, c]
  t = contract(t, 1, spider(2, 1, outer2.dim(0)), 0);              // [k1, y, k2]
  return contract(t, 1, outer2, 0);                                // [k1, k2]
}

Tensor merge_split_theme(const Tensor& theme1, const Tensor& rheme, const Tensor& theme2) {
  return merge_boundary(merge_boundary(theme1, rheme), theme2);
}

Tensor merge_split_theme_categorical(const Tensor& theme1, const Tensor& rheme,
                                     const Tensor& theme2) {
  require_vector(theme1, "first theme");
  require_vector(rheme, "rheme");
  require_vector(theme2, "second theme");
  const std::size_t d = rheme.dim(0);
  // The left boundary emits a new rheme; the right one is an ordinary ⊲.
  TypedTensor left{PregroupType{{atoms::theme, 1}, {atoms::rheme, 0}, {atoms::rheme, -1}},
                   boundary_tensor(d).tensor};
  const std::array<TypedTensor, 5> words{
      TypedTensor{atom(atoms::theme), theme1}, std::move(left), TypedTensor{atom(atoms::rheme), rheme},
      boundary_tensor(d, Orientation::rheme_first), TypedTensor{atom(atoms::theme), theme2}};
  std::vector<PregroupType> types;
  for (const auto& w : words) types.push_back(w.type);
  const auto diagrams = reduce(types, atom(atoms::sentence));
  return compose(words, diagrams.front()).tensor;
}

std::vector<SentenceMeaning> meaning(const AnnotatedSentence& sentence, const Lexicon& lexicon) {
  const auto r = roles(sentence);
  if (r.size() != 2 || r[0] == r[1]) {
    throw InfelicitousStructure("expected one theme span and one rheme span, got '" +
                                to_string(sentence) + "'");
  }
  const auto typings = type_spans(sentence, lexicon);
  const bool theme_first = r[0] == Role::theme;
  return combine_all(typings, theme_first ? Pattern::theme_rheme : Pattern::rheme_theme,
                     [&](const std::vector<Tensor>& s) {
                       return theme_first ? merge_boundary(s[0], s[1]) : merge_boundary(s[1], s[0]);
                     });
}

std::vector<SentenceMeaning> meaning_multiple_rhemes(const AnnotatedSentence& sentence,
                                                     const Lexicon& lexicon) {
  require_roles(sentence, {Role::rheme, Role::theme, Role::rheme}, "multiple rhemes");
  const std::array<PregroupType, 3> targets{atom(atoms::rheme), pair_of(atoms::theme),
                                            atom(atoms::rheme)};
  const auto typings = type_spans(sentence, lexicon, targets);
  return combine_all(typings, Pattern::multiple_rhemes, [](const std::vector<Tensor>& s) {
    return merge_flanked(s[0], s[1], s[2]);
  });
}

std::vector<SentenceMeaning> meaning_relational_rheme(const AnnotatedSentence& sentence,
                                                      const Lexicon& lexicon) {
  require_roles(sentence, {Role::theme, Role::rheme, Role::theme}, "relational rheme");
  const std::array<PregroupType, 3> targets{atom(atoms::theme), pair_of(atoms::rheme),
                                            atom(atoms::theme)};
  const auto typings = type_spans(sentence, lexicon, targets);
  return combine_all(typings, Pattern::relational_rheme, [](const std::vector<Tensor>& s) {
    return merge_flanked(s[0], s[1], s[2]);
  });
}

std::vector<SentenceMeaning> meaning_split_theme(const AnnotatedSentence& sentence,
                                                 const Lexicon& lexicon) {
  require_roles(sentence, {Role::theme, Role::rheme, Role::theme}, "split theme");
  const auto typings = type_spans(sentence, lexicon);
  return combine_all(typings, Pattern::split_theme, [](const std::vector<Tensor>& s) {
    return merge_split_theme(s[0], s[1], s[2]);
  });
}

std::vector<SentenceMeaning> interpret(const AnnotatedSentence& sentence, const Lexicon& lexicon) {
  const auto r = roles(sentence);
  if (r.size() == 2) return meaning(sentence, lexicon);
  if (r == std::vector<Role>{Role::rheme, Role::theme, Role::rheme}) {
    return meaning_multiple_rhemes(sentence, lexicon);
  }
  if (r == std::vector<Role>{Role::theme, Role::rheme, Role::theme}) {
    std::vector<SentenceMeaning> out;
    std::string split_error;
    try {
      out = meaning_split_theme(sentence, lexicon);
    } catch (const InfelicitousStructure& e) {
      split_error = e.what();
    }
    try {
      auto relational = meaning_relational_rheme(sentence, lexicon);
      out.insert(out.end(), std::make_move_iterator(relational.begin()),
                 std::make_move_iterator(relational.end()));
    } catch (const InfelicitousStructure& e) {
      if (out.empty()) throw InfelicitousStructure(split_error + "; as a relational rheme: " + e.what());
    }
    return out;
  }
  throw InfelicitousStructure("unsupported span pattern '" + to_string(sentence) +
                              "': expected theme/rheme, rheme/theme, rheme-theme-rheme or "
                              "theme-rheme-theme");
}

Tensor copy_expand(const Tensor& verb_matrix, CopyWire which) {
  if (verb_matrix.order() != 2 || verb_matrix.dim(0) != verb_matrix.dim(1)) {
    throw ShapeError("copy_expand needs a square verb matrix");
  }
  return copy_leg(verb_matrix, which == CopyWire::object);
}

}  // namespace intonsem
