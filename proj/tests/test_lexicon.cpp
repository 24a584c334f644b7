#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "intonsem/error.hpp"
#include "intonsem/lexicon.hpp"
#include "support/oracles.hpp"

using namespace intonsem;

namespace {

PregroupType T(const char* text) { return parse_type(text); }

const char* dims3 = R"("dims": {"n": 3, "s": 3, "theta": 3, "rho": 3})";

std::string lexicon_text(const std::string& entries) {
  return std::string("{") + dims3 + ", \"entries\": [" + entries + "]}";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("intonsem-test-" + std::to_string(testing::rng()()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

}  // namespace

TEST_CASE("a two-word lexicon loads from disk", "[lexicon]") {
  TempDir dir;
  const auto file = dir.write("lex.json", lexicon_text(R"(
    {"word": "Mary", "type": "n", "shape": [3], "data": [1, 0, 0]},
    {"word": "John", "type": "n", "shape": [3], "data": [0, 1, 0]})"));
  const auto lex = load_lexicon(file);
  CHECK(lex.size() == 2);
  CHECK(lex.lookup("Mary").senses.at(0).tensor == Tensor::vector({1, 0, 0}));
  CHECK(lex.lookup("John").senses.at(0).type == T("n"));
  CHECK_THROWS_AS(lex.lookup("Sue"), UnknownWord);
  CHECK(lex.spaces().shared_dim() == 3u);
}

TEST_CASE("a sense whose tensor does not fit its type is rejected", "[lexicon]") {
  try {
    parse_lexicon(lexicon_text(R"({"word": "likes", "type": "n.r s n.l", "shape": [3], "data": [1, 2, 3]})"));
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    const std::string what = e.what();
    CHECK_THAT(what, Catch::Matchers::ContainsSubstring("likes"));
    CHECK_THAT(what, Catch::Matchers::ContainsSubstring("n.r s n.l"));
    CHECK_THAT(what, Catch::Matchers::ContainsSubstring("[3,3,3]"));
    CHECK_THAT(what, Catch::Matchers::ContainsSubstring("[3]"));
  }
  CHECK_THROWS_AS(parse_lexicon(lexicon_text(R"({"word": "x", "type": "n", "shape": [2], "data": [1, 2, 3]})")),
                  ShapeError);
}

TEST_CASE("duplicate (word, type) pairs are rejected", "[lexicon]") {
  CHECK_THROWS_AS(parse_lexicon(lexicon_text(R"(
    {"word": "Mary", "type": "n", "shape": [3], "data": [1, 0, 0]},
    {"word": "Mary", "type": "n", "shape": [3], "data": [0, 1, 0]})")),
                  LexiconError);
  // Same word, different type: two senses.
  const auto lex = parse_lexicon(lexicon_text(R"(
    {"word": "Mary", "type": "n", "shape": [3], "data": [1, 0, 0]},
    {"word": "Mary", "type": "rho", "shape": [3], "data": [0, 1, 0]})"));
  CHECK(lex.lookup("Mary").senses.size() == 2);
}

TEST_CASE("JSON syntax errors carry a line number", "[lexicon]") {
  const std::string text = "{\n  \"dims\": {\"n\": 3, \"s\": 3, \"theta\": 3, \"rho\": 3},\n  \"entries\": [,]\n}\n";
  try {
    parse_lexicon(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("missing dims are reported", "[lexicon]") {
  CHECK_THROWS_AS(parse_lexicon(R"({"dims": {"n": 3, "s": 3, "theta": 3}, "entries": []})"),
                  LexiconError);
  CHECK_THROWS_AS(parse_lexicon(R"({"dims": {"n": 0, "s": 3, "theta": 3, "rho": 3}, "entries": []})"),
                  LexiconError);
}

TEST_CASE("vectors can come from a TSV sidecar", "[lexicon]") {
  TempDir dir;
  dir.write("vectors.tsv", "Mary\t1 2 3\nJohn\t4 5 6\n");
  const auto file = dir.write("lex.json", lexicon_text(R"(
    {"word": "Mary", "type": "n", "data_ref": "vectors.tsv"},
    {"word": "John", "type": "n", "shape": [3], "data_ref": "vectors.tsv"})"));
  const auto lex = load_lexicon(file);
  CHECK(lex.lookup("Mary").senses.at(0).tensor == Tensor::vector({1, 2, 3}));
  CHECK(lex.lookup("John").senses.at(0).tensor == Tensor::vector({4, 5, 6}));

  const auto missing = dir.write("bad.json", lexicon_text(R"({"word": "Sue", "type": "n", "data_ref": "vectors.tsv"})"));
  CHECK_THROWS_AS(load_lexicon(missing), LexiconError);
}

TEST_CASE("verb matrices are stored apart from senses", "[lexicon]") {
  const auto lex = parse_lexicon(lexicon_text(R"(
    {"word": "likes", "type": "n.r s n.l", "form": "verb-matrix", "shape": [3, 3],
     "data": [1, 2, 3, 4, 5, 6, 7, 8, 9]})"));
  const auto& likes = lex.lookup("likes");
  CHECK(likes.senses.empty());
  REQUIRE(likes.verb_matrix);
  CHECK(likes.verb_matrix->at({1, 2}) == 6);
  CHECK_THROWS_AS(parse_lexicon(lexicon_text(R"(
    {"word": "likes", "type": "n.r s", "form": "verb-matrix", "shape": [3, 3],
     "data": [1, 2, 3, 4, 5, 6, 7, 8, 9]})")),
                  LexiconError);
}

TEST_CASE("intonation senses derive from nouns and verb matrices", "[lexicon]") {
  const auto v = Tensor::vector({1, 2, 3});
  const LexiconEntry mary{"Mary", {{T("n"), v}}, std::nullopt};
  const auto derived = derive_intonation_senses(mary, ThemeSide::left);
  REQUIRE(derived.find(T("rho")));
  CHECK(derived.find(T("rho"))->tensor == v);
  CHECK(derived.find(T("theta"))->tensor == v);
  CHECK(derived.find(T("n"))->tensor == v);

  const auto m = testing::random_tensor({3, 3});
  const LexiconEntry likes{"likes", {}, m};
  const auto left = derive_intonation_senses(likes, ThemeSide::left);
  CHECK(left.find(T("n.r theta"))->tensor == m);
  CHECK_FALSE(left.find(T("theta n.l")));
  CHECK(left.find(T("theta theta"))->tensor == m);
  CHECK(left.find(T("rho rho"))->tensor == m);
  const auto right = derive_intonation_senses(likes, ThemeSide::right);
  CHECK(right.find(T("theta n.l"))->tensor == m);
  CHECK_FALSE(right.find(T("n.r theta")));

  const LexiconEntry zero{"nothing", {}, Tensor({3, 3})};
  for (const auto& s : derive_intonation_senses(zero).senses) CHECK(s.tensor == Tensor({3, 3}));

  const LexiconEntry bare{"the", {{T("n n.l"), eta(3)}}, std::nullopt};
  CHECK_THROWS_AS(derive_intonation_senses(bare), LexiconError);
  const LexiconEntry explicit_only{"about", {{T("theta n.l"), eta(3)}}, std::nullopt};
  CHECK(derive_intonation_senses(explicit_only).senses == explicit_only.senses);
}

TEST_CASE("deriving intonation senses is idempotent", "[lexicon]") {
  const LexiconEntry likes{"likes", {{T("n"), testing::random_vector(3)}}, testing::random_tensor({3, 3})};
  const auto once = derive_intonation_senses(likes);
  const auto twice = derive_intonation_senses(once);
  CHECK(once.senses == twice.senses);
  CHECK(once.senses.size() == 7);
}

TEST_CASE("with_intonation_senses keeps underivable entries", "[lexicon]") {
  Lexicon lex(SpaceAssignment::shared(3));
  lex.add({"Mary", {{T("n"), Tensor::vector({1, 0, 0})}}, std::nullopt});
  lex.add({"a", {{T("n n.l"), eta(3)}}, std::nullopt});
  const auto out = with_intonation_senses(lex);
  CHECK(out.lookup("Mary").senses.size() == 3);
  CHECK(out.lookup("a").senses.size() == 1);
}

TEST_CASE("cosine", "[lexicon]") {
  CHECK(cosine(Tensor::vector({1, 0}), Tensor::vector({0, 1})) == 0);
  CHECK(cosine(Tensor::vector({2, 0}), Tensor::vector({1, 0})) == 1);
  CHECK_THROWS_AS(cosine(Tensor::vector({0, 0}), Tensor::vector({1, 0})), std::domain_error);
  CHECK_THROWS_AS(cosine(Tensor::vector({1, 0}), Tensor::vector({0, 0})), std::domain_error);
  CHECK_THROWS_AS(cosine(Tensor::vector({1, 0}), Tensor::matrix(1, 2, {1, 0})), OrderMismatch);
  CHECK_THROWS_AS(cosine(Tensor::vector({1, 0}), Tensor::vector({1, 0, 0})), ShapeError);

  std::uniform_real_distribution<double> positive(0.01, 100.0);
  for (int k = 0; k < 200; ++k) {
    const auto u = testing::random_vector(7);
    const auto v = testing::random_vector(7);
    const double c = cosine(u, v);
    CHECK(c == Catch::Approx(testing::direct_cosine({u.data().begin(), u.data().end()},
                                                    {v.data().begin(), v.data().end()}))
                   .margin(1e-12));
    CHECK(c == Catch::Approx(cosine(v, u)).margin(1e-15));
    const double a = positive(testing::rng()), b = positive(testing::rng());
    CHECK(std::abs(cosine(scale(u, a), scale(v, b)) - c) <= 1e-12);
  }
}
