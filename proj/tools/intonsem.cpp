// intonsem: reduce types, compute intonation-aware sentence meanings, compare
// them, and answer truth queries over a finite universe.
//
// Exit codes: 0 success, 1 semantic or structural failure, 2 input error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "intonsem/error.hpp"
#include "intonsem/frobenius.hpp"
#include "intonsem/intonation.hpp"
#include "intonsem/json_io.hpp"
#include "intonsem/truth_model.hpp"

namespace {

using intonsem::PregroupType;
using intonsem::Tensor;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_input = 2;

// A failure that is the user's input, not the semantics.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "json";
  double tolerance = 1e-9;
  std::string lexicon;
  std::string universe;
  std::string target = "s";
  std::string emit_diagram;
};

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string tensor_text(const Tensor& t) {
  std::ostringstream out;
  out << "shape [";
  for (std::size_t k = 0; k < t.order(); ++k) out << (k ? "," : "") << t.dim(k);
  out << "] data [";
  for (std::size_t k = 0; k < t.size(); ++k) out << (k ? " " : "") << number(t.data()[k]);
  out << "]";
  return out.str();
}

std::string links_text(const intonsem::ReductionDiagram& d) {
  std::string out;
  for (auto [i, j] : d.links) {
    out += (out.empty() ? "" : " ") + std::string("(") + std::to_string(i + 1) + "," +
           std::to_string(j + 1) + ")";
  }
  return out.empty() ? "none" : out;
}

intonsem::Lexicon read_lexicon(const Options& opt) {
  if (opt.lexicon.empty()) throw InputError("--lexicon is required");
  return intonsem::load_lexicon(opt.lexicon);
}

std::vector<std::string> split_words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------- reduce

struct Candidate {
  std::vector<PregroupType> types;
  intonsem::ReductionDiagram diagram;
};

// Grammatical types a word can take; a stored verb matrix stands for the
// transitive-verb type.
std::vector<PregroupType> word_types(const intonsem::LexiconEntry& e) {
  std::vector<PregroupType> out;
  for (const auto& s : e.senses) out.push_back(s.type);
  if (e.verb_matrix) out.push_back(intonsem::parse_type("n.r s n.l"));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Candidate> reduce_sentence(const std::vector<std::string>& words,
                                       const intonsem::Lexicon& lex, const PregroupType& target) {
  std::vector<std::vector<PregroupType>> choices;
  for (const auto& w : words) choices.push_back(word_types(lex.lookup(w)));
  std::vector<Candidate> out;
  if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) return out;
  std::vector<std::size_t> pick(words.size(), 0);
  while (true) {
    std::vector<PregroupType> types;
    for (std::size_t k = 0; k < pick.size(); ++k) types.push_back(choices[k][pick[k]]);
    if (intonsem::grammatical(types, target)) {
      for (auto& d : intonsem::reduce(types, target)) out.push_back({types, std::move(d)});
    }
    std::size_t k = pick.size();
    while (true) {
      if (k == 0) return out;
      --k;
      if (++pick[k] < choices[k].size()) break;
      pick[k] = 0;
    }
  }
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void print_dot(const std::vector<Candidate>& found) {
  for (std::size_t r = 0; r < found.size(); ++r) {
    const auto flat = intonsem::flatten(found[r].types);
    std::cout << "graph reduction_" << r + 1 << " {\n";
    std::cout << "  rankdir=LR;\n  node [shape=plaintext];\n";
    std::cout << "  { rank=same;";
    for (std::size_t i = 0; i < flat.size(); ++i) std::cout << " f" << i + 1 << ";";
    std::cout << " }\n";
    for (std::size_t i = 0; i < flat.size(); ++i) {
      const bool survives = std::count(found[r].diagram.survivors.begin(),
                                       found[r].diagram.survivors.end(), i) > 0;
      std::cout << "  f" << i + 1 << " [label=\"" << dot_escape(intonsem::to_string(flat[i]))
                << "\"" << (survives ? ", fontcolor=blue" : "") << "];\n";
    }
    for (std::size_t i = 0; i + 1 < flat.size(); ++i) {
      std::cout << "  f" << i + 1 << " -- f" << i + 2 << " [style=invis];\n";
    }
    for (auto [i, j] : found[r].diagram.links) {
      std::cout << "  f" << i + 1 << " -- f" << j + 1 << " [constraint=false, headport=s, tailport=s];\n";
    }
    std::cout << "}\n";
  }
}

int cmd_reduce(const std::string& input, const Options& opt) {
  const PregroupType target = intonsem::parse_type(opt.target);
  if (!target.is_plain()) throw InputError("--target must consist of plain basic types");
  if (opt.emit_diagram != "" && opt.emit_diagram != "dot") {
    throw InputError("--emit-diagram supports only 'dot'");
  }
  std::vector<Candidate> found;
  if (opt.lexicon.empty()) {
    const PregroupType flat = intonsem::parse_type(input);
    if (flat.is_unit()) throw InputError("nothing to reduce");
    for (auto& d : intonsem::all_reductions(flat, target)) found.push_back({{flat}, std::move(d)});
  } else {
    const auto words = split_words(input);
    if (words.empty()) throw InputError("nothing to reduce");
    found = reduce_sentence(words, intonsem::with_intonation_senses(read_lexicon(opt)), target);
  }

  if (opt.emit_diagram == "dot") {
    print_dot(found);
  } else if (opt.format == "json") {
    json reductions = json::array();
    for (const auto& c : found) {
      json r = intonsem::to_json(c.diagram);
      json types = json::array();
      for (const auto& t : c.types) types.push_back(intonsem::to_string(t));
      r["types"] = types;
      reductions.push_back(r);
    }
    json out{{"input", input},
             {"target", intonsem::to_string(target)},
             {"grammatical", !found.empty()},
             {"reductions", reductions}};
    std::cout << intonsem::dump(out);
  } else {
    std::cout << (found.empty() ? "not grammatical" : "grammatical") << "\n";
    for (std::size_t k = 0; k < found.size(); ++k) {
      std::string types;
      for (const auto& t : found[k].types) types += (types.empty() ? "" : " | ") + intonsem::to_string(t);
      std::cout << "reduction " << k + 1 << ": " << types << "\n  links " << links_text(found[k].diagram)
                << "\n  survivors";
      for (auto s : found[k].diagram.survivors) std::cout << " " << s + 1;
      std::cout << "\n";
    }
  }
  if (found.empty()) {
    std::cerr << "intonsem: '" << input << "' does not reduce to '" << intonsem::to_string(target)
              << "'\n";
    return exit_failure;
  }
  return exit_ok;
}

// ---------------------------------------------------------------- meaning

std::vector<intonsem::SentenceMeaning> readings(const std::string& text, const intonsem::Lexicon& lex,
                                                std::vector<intonsem::SpanTyping>* typings = nullptr) {
  const auto sentence = intonsem::parse_annotated(text);
  auto out = intonsem::interpret(sentence, lex);
  if (typings) {
    // Recover each reading's span typing for reporting.
    typings->clear();
    for (const auto& m : out) {
      std::vector<PregroupType> targets;
      for (std::size_t k = 0; k < sentence.spans.size(); ++k) {
        const auto& role = intonsem::role_atom(sentence.spans[k].role);
        const bool pair = (m.pattern == intonsem::Pattern::multiple_rhemes && k == 1) ||
                          (m.pattern == intonsem::Pattern::relational_rheme && k == 1);
        targets.push_back(pair ? PregroupType{{role, 0}, {role, 0}} : PregroupType::atom(role));
      }
      const auto t = intonsem::type_spans(sentence, lex, targets);
      typings->insert(typings->end(), t.begin(), t.end());
    }
  }
  return out;
}

json meaning_json(const std::string& text, const intonsem::Lexicon& lex) {
  std::vector<intonsem::SpanTyping> typings;
  const auto ms = readings(text, lex, &typings);
  const auto sentence = intonsem::parse_annotated(text);
  const std::size_t n_spans = sentence.spans.size();
  json out_readings = json::array();
  for (std::size_t r = 0; r < ms.size(); ++r) {
    const auto& m = ms[r];
    json spans = json::array();
    for (std::size_t k = 0; k < n_spans; ++k) {
      const auto& typing = typings[r * n_spans + k];
      const auto& d = typing.derivations[m.derivations[k]];
      json words = json::array();
      for (std::size_t w = 0; w < d.words.size(); ++w) {
        words.push_back({{"word", typing.span.tokens[w]}, {"type", intonsem::to_string(d.words[w].type)}});
      }
      std::string tokens;
      for (const auto& t : typing.span.tokens) tokens += (tokens.empty() ? "" : " ") + t;
      spans.push_back({{"role", std::string(intonsem::to_string(typing.span.role))},
                       {"text", tokens},
                       {"target", intonsem::to_string(typing.target)},
                       {"words", words},
                       {"diagram", intonsem::to_json(d.diagram)},
                       {"tensor", intonsem::to_json(m.spans[k])}});
    }
    out_readings.push_back({{"pattern", std::string(intonsem::to_string(m.pattern))},
                            {"meaning", intonsem::to_json(m.tensor)},
                            {"spans", spans}});
  }
  return json{{"sentence", intonsem::to_string(sentence)}, {"readings", out_readings}};
}

int cmd_meaning(const std::string& text, const Options& opt) {
  const auto lex = intonsem::with_intonation_senses(read_lexicon(opt));
  const json out = meaning_json(text, lex);
  if (opt.format == "json") {
    std::cout << intonsem::dump(out);
    return exit_ok;
  }
  std::cout << "sentence: " << out["sentence"].get<std::string>() << "\n";
  std::size_t r = 0;
  for (const auto& reading : out["readings"]) {
    std::cout << "reading " << ++r << " (" << reading["pattern"].get<std::string>() << ")\n";
    std::cout << "  meaning " << tensor_text(intonsem::tensor_from_json(reading["meaning"])) << "\n";
    for (const auto& span : reading["spans"]) {
      std::cout << "  " << span["role"].get<std::string>() << " '" << span["text"].get<std::string>()
                << "' : " << span["target"].get<std::string>() << "  "
                << tensor_text(intonsem::tensor_from_json(span["tensor"])) << "\n";
    }
  }
  return exit_ok;
}

// ---------------------------------------------------------------- compare

int cmd_compare(const std::string& a, const std::string& b, const Options& opt) {
  const auto lex = intonsem::with_intonation_senses(read_lexicon(opt));
  const auto ma = readings(a, lex);
  const auto mb = readings(b, lex);
  const Tensor& u = ma.front().tensor;
  const Tensor& v = mb.front().tensor;
  if (u.order() != v.order()) {
    std::cerr << "intonsem: cannot compare an order-" << u.order() << " meaning with an order-"
              << v.order() << " meaning: they live in different spaces\n";
    return exit_failure;
  }
  double sum = 0;
  for (std::size_t k = 0; k < u.size(); ++k) sum += std::pow(u.data()[k] - v.data()[k], 2);
  const double distance = std::sqrt(sum);
  std::optional<double> cos;
  try {
    cos = intonsem::cosine(u, v);
  } catch (const std::domain_error&) {
    std::cerr << "intonsem: cosine is undefined for a zero meaning\n";
    return exit_failure;
  }
  const bool equal = distance <= opt.tolerance;
  if (opt.format == "json") {
    json out{{"a", a},         {"b", b},         {"order", u.order()},
             {"cosine", *cos}, {"distance", distance}, {"equal", equal},
             {"tolerance", opt.tolerance}};
    std::cout << intonsem::dump(out);
  } else {
    std::cout << "cosine " << number(*cos) << "\ndistance " << number(distance) << "\n"
              << (equal ? "equal" : "different") << " within " << number(opt.tolerance) << "\n";
  }
  return exit_ok;
}

// ---------------------------------------------------------------- truth

std::string strip_braces(std::string w) {
  w.erase(std::remove_if(w.begin(), w.end(), [](char c) { return c == '{' || c == '}'; }), w.end());
  return w;
}

int cmd_truth(const std::string& query, const Options& opt) {
  if (opt.universe.empty()) throw InputError("--universe is required");
  const auto model = intonsem::load_model(opt.universe);
  // "John likes Mary" or "John likes {R Mary}"
  std::vector<std::string> words;
  for (auto& w : split_words(query)) {
    w = strip_braces(w);
    if (!w.empty() && w != "R" && w != "T") words.push_back(w);
  }
  if (words.size() != 3) throw InputError("truth query must be 'subject relation rheme'");
  const auto& u = model.universe;
  const auto& rel = model.relation(words[1]);
  const Tensor theme = intonsem::theme_vector(u, words[0], rel);
  const int bit = intonsem::membership(u, theme, words[2]);
  const auto answer = u.support(intonsem::intersect(u, theme, words[2]));
  const auto alternatives = u.support(theme);
  if (opt.format == "json") {
    json out{{"subject", words[0]},   {"relation", words[1]}, {"rheme", words[2]},
             {"alternatives", alternatives}, {"answer", answer}, {"membership", bit}};
    std::cout << intonsem::dump(out);
  } else {
    std::string set;
    for (const auto& a : answer) set += (set.empty() ? "" : ", ") + a;
    std::cout << (answer.empty() ? std::string("∅") : "{" + set + "}") << "\nmembership " << bit << "\n";
  }
  return exit_ok;
}

// ---------------------------------------------------------------- selfcheck

int cmd_selfcheck(const Options& opt) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> dist(-1, 1);
  auto random_vector = [&](std::size_t d) {
    Tensor v({d});
    for (auto& x : v.data()) x = dist(gen);
    return v;
  };
  std::vector<std::pair<std::string, bool>> checks;

  bool frob = true;
  for (std::size_t d = 1; d <= 8; ++d) frob = frob && intonsem::frobenius_condition_check(d);
  checks.emplace_back("Frobenius condition, dims 1-8", frob);

  bool yank = true;
  for (std::size_t d : {1u, 3u, 10u}) {
    const Tensor v = random_vector(d);
    const std::vector<intonsem::TypedTensor> words{{intonsem::parse_type("n"), v},
                                                   {intonsem::parse_type("n.r n"), intonsem::eta(d)}};
    const std::vector<PregroupType> types{words[0].type, words[1].type};
    const auto diagram = intonsem::reduce(types, intonsem::parse_type("n")).front();
    yank = yank && intonsem::max_abs_diff(intonsem::compose(words, diagram).tensor, v) <= 1e-14;
  }
  checks.emplace_back("yanking", yank);

  bool fusion = true;
  for (std::size_t d = 1; d <= 4; ++d) {
    const auto t = intonsem::contract(intonsem::spider(1, 2, d), 2, intonsem::spider(2, 1, d), 0);
    fusion = fusion && t == intonsem::spider(intonsem::fuse({1, 2, d}, {2, 1, d}, 1));
  }
  checks.emplace_back("spider fusion", fusion);

  bool boundary = true;
  for (std::size_t d : {2u, 5u}) {
    const Tensor t = random_vector(d), r = random_vector(d);
    const Tensor direct = intonsem::merge_boundary(t, r);
    boundary = boundary &&
               intonsem::relative_error(
                   intonsem::merge_boundary_categorical(t, r, intonsem::Orientation::theme_first),
                   direct) <= 1e-12 &&
               intonsem::relative_error(
                   intonsem::merge_boundary_categorical(r, t, intonsem::Orientation::rheme_first),
                   direct) <= 1e-12;
  }
  checks.emplace_back("boundary morphism", boundary);

  const bool all = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  if (opt.format == "json") {
    json results = json::object();
    for (const auto& [name, ok] : checks) results[name] = ok;
    std::cout << intonsem::dump(json{{"checks", results}, {"passed", all}});
  } else {
    for (const auto& [name, ok] : checks) std::cout << (ok ? "ok    " : "FAIL  ") << name << "\n";
  }
  return all ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pregroup reduction and intonation-aware compositional meanings"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  };

  std::string input, other;
  auto* reduce = app.add_subcommand("reduce", "Reduce a type string or a sentence to a target type");
  reduce->add_option("input", input, "Types such as \"n n.r s n.l n\", or words with --lexicon")->required();
  reduce->add_option("--target", opt.target, "Target type");
  reduce->add_option("--lexicon", opt.lexicon, "Lexicon file; makes input a sentence");
  reduce->add_option("--emit-diagram", opt.emit_diagram, "Print the reductions as Graphviz (dot)");
  add_common(reduce);

  auto* meaning = app.add_subcommand("meaning", "Meaning of a {T ...} / {R ...} annotated sentence");
  meaning->add_option("sentence", input)->required();
  meaning->add_option("--lexicon", opt.lexicon)->required();
  add_common(meaning);

  auto* compare = app.add_subcommand("compare", "Cosine and distance between two sentence meanings");
  compare->add_option("a", input)->required();
  compare->add_option("b", other)->required();
  compare->add_option("--lexicon", opt.lexicon)->required();
  compare->add_option("--tolerance", opt.tolerance, "Distance below which meanings count as equal");
  add_common(compare);

  auto* truth = app.add_subcommand("truth", "Answer 'subject relation rheme' over a universe");
  truth->add_option("query", input)->required();
  truth->add_option("--universe", opt.universe)->required();
  add_common(truth);

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the algebraic property checks");
  add_common(selfcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*reduce) return cmd_reduce(input, opt);
    if (*meaning) return cmd_meaning(input, opt);
    if (*compare) return cmd_compare(input, other, opt);
    if (*truth) return cmd_truth(input, opt);
    if (*selfcheck) return cmd_selfcheck(opt);
  } catch (const intonsem::NoReduction& e) {
    std::cerr << "intonsem: " << e.what() << "\n";
    return exit_failure;
  } catch (const intonsem::InfelicitousStructure& e) {
    std::cerr << "intonsem: infelicitous: " << e.what() << "\n";
    return exit_failure;
  } catch (const intonsem::OrderMismatch& e) {
    std::cerr << "intonsem: " << e.what() << "\n";
    return exit_failure;
  } catch (const intonsem::ParseError& e) {
    std::cerr << "intonsem: parse error: " << e.what() << "\n";
    return exit_input;
  } catch (const intonsem::UnknownWord& e) {
    std::cerr << "intonsem: unknown word '" << e.word() << "'\n";
    return exit_input;
  } catch (const intonsem::UnknownIndividual& e) {
    std::cerr << "intonsem: " << e.what() << "\n";
    return exit_input;
  } catch (const intonsem::LexiconError& e) {
    std::cerr << "intonsem: lexicon: " << e.what() << "\n";
    return exit_input;
  } catch (const intonsem::ShapeError& e) {
    std::cerr << "intonsem: " << e.what() << "\n";
    return exit_input;
  } catch (const InputError& e) {
    std::cerr << "intonsem: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    std::cerr << "intonsem: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_input;
}
