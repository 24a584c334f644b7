#include <catch_amalgamated.hpp>

#include <array>

#include "intonsem/error.hpp"
#include "intonsem/intonation.hpp"
#include "support/oracles.hpp"

using namespace intonsem;
using Links = std::vector<std::pair<std::size_t, std::size_t>>;

namespace {

PregroupType T(const char* text) { return parse_type(text); }

const Lexicon& shipped() {
  static const Lexicon lex = with_intonation_senses(load_lexicon(INTONSEM_DATA_DIR "/lexicon.json"));
  return lex;
}

const Tensor& noun(const char* w) { return shipped().lookup(w).find(T("n"))->tensor; }
const Tensor& verb(const char* w) { return *shipped().lookup(w).verb_matrix; }

// Σ_i v_i M[i][j]
Tensor row_times(const Tensor& v, const Tensor& m) {
  Tensor out({m.dim(1)});
  for (std::size_t j = 0; j < m.dim(1); ++j)
    for (std::size_t i = 0; i < m.dim(0); ++i) out.at({j}) += v.at({i}) * m.at({i, j});
  return out;
}

// Σ_j M[i][j] v_j
Tensor times_col(const Tensor& m, const Tensor& v) {
  Tensor out({m.dim(0)});
  for (std::size_t i = 0; i < m.dim(0); ++i)
    for (std::size_t j = 0; j < m.dim(1); ++j) out.at({i}) += m.at({i, j}) * v.at({j});
  return out;
}

Lexicon two_dim_lexicon(const Tensor& john, const Tensor& mary, const Tensor& likes) {
  Lexicon lex(SpaceAssignment::shared(2));
  lex.add({"John", {{T("n"), john}}, std::nullopt});
  lex.add({"Mary", {{T("n"), mary}}, std::nullopt});
  lex.add({"likes", {}, likes});
  return with_intonation_senses(lex);
}

TypedTensor typed(const char* type, Tensor t) { return {T(type), std::move(t)}; }

}  // namespace

TEST_CASE("parse_annotated reads theme and rheme spans", "[intonation]") {
  const auto s = parse_annotated("{T Mary likes} {R musicals}");
  REQUIRE(s.spans.size() == 2);
  CHECK(s.spans[0] == Span{Role::theme, {"Mary", "likes"}});
  CHECK(s.spans[1] == Span{Role::rheme, {"musicals"}});
  CHECK(parse_annotated("Mary likes {R musicals}") == s);
  CHECK(to_string(s) == "{T Mary likes} {R musicals}");

  const auto three = parse_annotated("{R John} likes {R Mary}");
  REQUIRE(three.spans.size() == 3);
  CHECK(three.spans[1] == Span{Role::theme, {"likes"}});
}

TEST_CASE("parse_annotated reports malformed brackets with offsets", "[intonation]") {
  auto offset_of = [](const char* text) {
    try {
      parse_annotated(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    FAIL("expected ParseError for '" << text << "'");
    return std::size_t{0};
  };
  CHECK(offset_of("{T Mary {R x}}") == 8);
  CHECK(offset_of("Mary}") == 4);
  CHECK(offset_of("{R}") == 0);
  CHECK(offset_of("{T Mary likes") == 0);
  CHECK(offset_of("{X Mary}") == 0);
  CHECK(offset_of("{R a} {R b}") == 6);
  CHECK(offset_of("{T a} b") == 6);
  CHECK(offset_of("") == 0);
}

TEST_CASE("spans reduce to their role types", "[intonation]") {
  const auto typings = type_spans(parse_annotated("{T Mary likes} {R musicals}"), shipped());
  REQUIRE(typings.size() == 2);
  REQUIRE(typings[0].derivations.size() == 1);
  const auto& theme = typings[0].derivations[0];
  CHECK(theme.words[0].type == T("n"));
  CHECK(theme.words[1].type == T("n.r theta"));
  CHECK(theme.diagram.links == Links{{0, 1}});
  REQUIRE(typings[1].derivations.size() == 1);
  CHECK(typings[1].derivations[0].words[0].type == T("rho"));
  CHECK(typings[1].derivations[0].diagram.links.empty());
}

TEST_CASE("a theme ending in a preposition reduces to theta", "[intonation]") {
  const auto typings = type_spans(parse_annotated("{T Mary wrote a book about} {R art}"), shipped());
  REQUIRE(typings[0].derivations.size() == 1);
  const auto& d = typings[0].derivations[0];
  std::vector<PregroupType> types;
  for (const auto& w : d.words) types.push_back(w.type);
  CHECK(types == std::vector<PregroupType>{T("n"), T("n.r s n.l"), T("n n.l"), T("n"), T("s.r theta")});
  CHECK(d.diagram.links == Links{{0, 1}, {2, 7}, {3, 4}, {5, 6}});
  CHECK(reduce(types, T("theta")) == std::vector<ReductionDiagram>{d.diagram});
}

TEST_CASE("nested-rheme meaning threads the sentence through the preposition", "[intonation]") {
  const auto& wrote = shipped().lookup("wrote").find(T("n.r s n.l"))->tensor;
  const auto& about = shipped().lookup("about").find(T("s.r theta"))->tensor;
  const auto& mary = noun("Mary");
  const auto& book = noun("book");
  Tensor theme({4});
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t a = 0; a < 4; ++a)
          theme.at({t}) += mary.at({i}) * wrote.at({i, s, a}) * book.at({a}) * about.at({s, t});
  const auto ms = interpret(parse_annotated("Mary wrote a book about {R art}"), shipped());
  REQUIRE(ms.size() == 1);
  CHECK(relative_error(ms[0].spans[0], theme) <= 1e-12);
  CHECK(relative_error(ms[0].tensor, testing::elementwise(theme, noun("art"))) <= 1e-12);
}

TEST_CASE("spans that cannot be typed are infelicitous", "[intonation]") {
  try {
    type_spans(parse_annotated("{T musicals} {R Mary likes}"), shipped());
    FAIL("expected InfelicitousStructure");
  } catch (const InfelicitousStructure& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("span 2"));
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("Mary likes"));
  }
  CHECK_THROWS_AS(type_spans(parse_annotated("{T Mary adores} {R musicals}"), shipped()), UnknownWord);
  CHECK_THROWS_AS(meaning(parse_annotated("{T Mary likes}"), shipped()), InfelicitousStructure);
}

TEST_CASE("theme-rheme meaning is (subject x verb) times the rheme", "[intonation]") {
  const auto ms = meaning(parse_annotated("{T Mary likes} {R musicals}"), shipped());
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].pattern == Pattern::theme_rheme);
  const auto expected = testing::elementwise(row_times(noun("Mary"), verb("likes")), noun("musicals"));
  CHECK(max_abs_diff(ms[0].tensor, expected) == 0.0);
  CHECK(ms[0].spans.size() == 2);
  CHECK(ms[0].spans[1] == noun("musicals"));
}

TEST_CASE("rheme-theme meaning uses the right-hand theme", "[intonation]") {
  const auto ms = meaning(parse_annotated("{R Mary} {T likes musicals}"), shipped());
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].pattern == Pattern::rheme_theme);
  const auto expected = testing::elementwise(noun("Mary"), times_col(verb("likes"), noun("musicals")));
  CHECK(max_abs_diff(ms[0].tensor, expected) == 0.0);
}

TEST_CASE("an all-ones theme leaves the rheme unchanged", "[intonation]") {
  for (int k = 0; k < 20; ++k) {
    const auto rheme = testing::random_vector(6);
    CHECK(merge_boundary(zeta(6), rheme) == rheme);
    CHECK(merge_boundary_categorical(zeta(6), rheme, Orientation::theme_first) == rheme);
  }
}

TEST_CASE("boundary tensor contraction equals the element-wise product", "[intonation][property]") {
  for (std::size_t d : {2u, 5u, 50u}) {
    for (int k = 0; k < 100; ++k) {
      const auto theme = testing::random_vector(d);
      const auto rheme = testing::random_vector(d);
      const auto direct = merge_boundary(theme, rheme);
      CHECK(direct == testing::elementwise(theme, rheme));
      CHECK(relative_error(merge_boundary_categorical(theme, rheme, Orientation::theme_first), direct) <=
            1e-12);
      CHECK(relative_error(merge_boundary_categorical(rheme, theme, Orientation::rheme_first), direct) <=
            1e-12);
      CHECK(merge_boundary(rheme, theme) == direct);
    }
  }
}

TEST_CASE("a zero in the rheme zeroes the meaning", "[intonation][property]") {
  for (int k = 0; k < 50; ++k) {
    const auto theme = testing::random_vector(8);
    auto rheme = testing::random_vector(8);
    const std::size_t i = testing::rng()() % 8;
    rheme.at({i}) = 0.0;
    CHECK(merge_boundary(theme, rheme).at({i}) == 0.0);
  }
}

TEST_CASE("two rhemes pick out a single verb entry", "[intonation]") {
  const double a = 2, b = 3, c = 5, d = 7;
  const auto lex = two_dim_lexicon(Tensor::vector({1, 0}), Tensor::vector({0, 1}),
                                   Tensor::matrix(2, 2, {a, b, c, d}));
  const auto ms = meaning_multiple_rhemes(parse_annotated("{R John} {T likes} {R Mary}"), lex);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].pattern == Pattern::multiple_rhemes);
  CHECK(ms[0].tensor == Tensor::matrix(2, 2, {0, b, 0, 0}));

  const auto ones = two_dim_lexicon(Tensor::vector({2, 3}), Tensor::vector({5, 7}),
                                    Tensor::matrix(2, 2, {1, 1, 1, 1}));
  const auto m1 = meaning_multiple_rhemes(parse_annotated("{R John} likes {R Mary}"), ones);
  CHECK(m1.at(0).tensor == outer(Tensor::vector({2, 3}), Tensor::vector({5, 7})));
}

TEST_CASE("multiple rhemes agree with the categorical wiring", "[intonation][property]") {
  for (std::size_t d : {2u, 5u, 20u}) {
    for (int k = 0; k < 20; ++k) {
      const auto r1 = testing::random_vector(d);
      const auto r2 = testing::random_vector(d);
      const auto m = testing::random_tensor({d, d});
      const auto direct = merge_flanked(r1, m, r2);
      CHECK(direct == hadamard(outer(r1, r2), m));
      CHECK(relative_error(merge_flanked_categorical(r1, m, r2), direct) <= 1e-12);
    }
  }
}

TEST_CASE("a relational rheme equals the two-rheme reading", "[intonation]") {
  const auto lex = two_dim_lexicon(testing::random_vector(2), testing::random_vector(2),
                                   testing::random_tensor({2, 2}));
  const auto two = meaning_multiple_rhemes(parse_annotated("{R John} {T likes} {R Mary}"), lex);
  const auto rel = meaning_relational_rheme(parse_annotated("{T John} {R likes} {T Mary}"), lex);
  REQUIRE(two.size() == 1);
  REQUIRE(rel.size() == 1);
  CHECK(rel[0].pattern == Pattern::relational_rheme);
  CHECK(rel[0].tensor == two[0].tensor);

  const auto all = interpret(parse_annotated("{T John} {R likes} {T Mary}"), lex);
  REQUIRE(all.size() == 1);
  CHECK(all[0].pattern == Pattern::relational_rheme);
}

TEST_CASE("split theme is the three-way element-wise product", "[intonation]") {
  const auto ms = meaning_split_theme(parse_annotated("{T Mary wrote} {R a book} {T about art}"), shipped());
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].pattern == Pattern::split_theme);
  const auto& about = shipped().lookup("about").find(T("theta n.l"))->tensor;
  const auto t1 = row_times(noun("Mary"), verb("wrote"));
  const auto r = noun("book");
  const auto t2 = times_col(about, noun("art"));
  CHECK(max_abs_diff(ms[0].tensor, testing::elementwise(testing::elementwise(t1, r), t2)) == 0.0);

  const auto all = interpret(parse_annotated("{T Mary wrote} {R a book} {T about art}"), shipped());
  REQUIRE(all.size() == 1);
  CHECK(all[0].tensor == ms[0].tensor);
}

TEST_CASE("split theme agrees with two chained boundaries", "[intonation][property]") {
  for (std::size_t d : {2u, 5u, 50u}) {
    for (int k = 0; k < 30; ++k) {
      const auto t1 = testing::random_vector(d);
      const auto r = testing::random_vector(d);
      const auto t2 = testing::random_vector(d);
      const auto direct = merge_split_theme(t1, r, t2);
      CHECK(relative_error(merge_split_theme_categorical(t1, r, t2), direct) <= 1e-12);
      CHECK(merge_split_theme(zeta(d), r, t2) == merge_boundary(r, t2));
      CHECK(merge_split_theme(t1, r, zeta(d)) == merge_boundary(t1, r));
    }
  }
}

TEST_CASE("copy-object and copy-subject match the intonation meanings", "[intonation][property]") {
  for (std::size_t d : {2u, 5u, 20u}) {
    for (int k = 0; k < 20; ++k) {
      const auto s = testing::random_vector(d);
      const auto m = testing::random_tensor({d, d});
      const auto o = testing::random_vector(d);
      const std::array<TypedTensor, 3> obj{typed("n", s), typed("n.r s n.l", copy_expand(m, CopyWire::object)),
                                           typed("n", o)};
      const std::array<TypedTensor, 3> subj{typed("n", s), typed("n.r s n.l", copy_expand(m, CopyWire::subject)),
                                            typed("n", o)};
      const std::array<PregroupType, 3> types{T("n"), T("n.r s n.l"), T("n")};
      const auto diagram = reduce(types, T("s")).front();
      CHECK(relative_error(compose(obj, diagram).tensor, merge_boundary(row_times(s, m), o)) <= 1e-12);
      CHECK(relative_error(compose(subj, diagram).tensor, merge_boundary(s, times_col(m, o))) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(copy_expand(Tensor({2, 3}), CopyWire::object), ShapeError);
}

TEST_CASE("copy-object agrees with the theme-left sentence meaning", "[intonation]") {
  const std::array<PregroupType, 3> types{T("n"), T("n.r s n.l"), T("n")};
  const auto diagram = reduce(types, T("s")).front();
  const std::array<TypedTensor, 3> obj{typed("n", noun("Mary")),
                                       typed("n.r s n.l", copy_expand(verb("likes"), CopyWire::object)),
                                       typed("n", noun("musicals"))};
  const auto ms = meaning(parse_annotated("{T Mary likes} {R musicals}"), shipped());
  CHECK(relative_error(compose(obj, diagram).tensor, ms.at(0).tensor) <= 1e-12);

  const std::array<TypedTensor, 3> subj{typed("n", noun("Mary")),
                                        typed("n.r s n.l", copy_expand(verb("likes"), CopyWire::subject)),
                                        typed("n", noun("musicals"))};
  const auto right = meaning(parse_annotated("{R Mary} {T likes musicals}"), shipped());
  CHECK(relative_error(compose(subj, diagram).tensor, right.at(0).tensor) <= 1e-12);
}

TEST_CASE("copy expansion with an identity verb and recompression", "[intonation]") {
  for (std::size_t d = 1; d <= 4; ++d) {
    const std::array<PregroupType, 3> types{T("n"), T("n.r s n.l"), T("n")};
    const auto diagram = reduce(types, T("s")).front();
    const auto m = testing::random_tensor({d, d});
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        Tensor ei({d}), ej({d});
        ei.at({i}) = 1;
        ej.at({j}) = 1;
        const std::array<TypedTensor, 3> id{typed("n", ei), typed("n.r s n.l", copy_expand(eta(d), CopyWire::object)),
                                            typed("n", ej)};
        CHECK(compose(id, diagram).tensor == hadamard(ei, ej));
        // Summing the copied wire against ζ gives back s × M × o.
        for (auto which : {CopyWire::object, CopyWire::subject}) {
          const auto flat = contract(copy_expand(m, which), 1, zeta(d), 0);
          CHECK(inner(ei, times_col(flat, ej)) == m.at({i, j}));
        }
      }
    }
  }
}

TEST_CASE("single and double rheme meanings live in different spaces", "[intonation]") {
  const auto one = meaning(parse_annotated("{T Mary likes} {R musicals}"), shipped()).at(0).tensor;
  const auto two = interpret(parse_annotated("{R John} likes {R Mary}"), shipped()).at(0).tensor;
  CHECK(one.order() == 1);
  CHECK(two.order() == 2);
  CHECK_THROWS_AS(cosine(one, two), OrderMismatch);
}

TEST_CASE("interpret rejects unsupported patterns", "[intonation]") {
  CHECK_THROWS_AS(interpret(parse_annotated("{R John} {T likes} {R Mary} {T x}"), shipped()),
                  InfelicitousStructure);
}
