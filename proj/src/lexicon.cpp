#include "intonsem/lexicon.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "intonsem/error.hpp"

namespace intonsem {

using nlohmann::json;

const TypedTensor* LexiconEntry::find(const PregroupType& type) const {
  for (const auto& s : senses) {
    if (s.type == type) return &s;
  }
  return nullptr;
}

namespace {

std::string shape_text(const Shape& s) {
  std::string out = "[";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + "]";
}

const PregroupType& verb_type() {
  static const PregroupType t{{atoms::noun, 1}, {atoms::sentence, 0}, {atoms::noun, -1}};
  return t;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Reads `word<TAB>v1 v2 ... vd` rows; returns the row for `word`.
std::vector<double> sidecar_row(const std::filesystem::path& path, const std::string& word) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open vector file '" + path.string() + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": missing TAB after word",
                       0, lineno);
    }
    if (line.compare(0, tab, word) != 0 || tab != word.size()) continue;
    std::istringstream values(line.substr(tab + 1));
    std::vector<double> out;
    std::string tok;
    while (values >> tok) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + tok +
                             "'",
                         0, lineno);
      }
      out.push_back(x);
    }
    return out;
  }
  throw LexiconError("word '" + word + "' not found in '" + path.string() + "'");
}

SpaceAssignment read_dims(const json& dims) {
  if (!dims.is_object()) throw LexiconError("'dims' must be an object");
  std::map<AtomicType, std::size_t> out;
  for (const auto& [name, value] : dims.items()) {
    if (!value.is_number_unsigned() || value.get<std::size_t>() == 0) {
      throw LexiconError("dimension of '" + name + "' must be a positive integer");
    }
    out.emplace(AtomicType{name}, value.get<std::size_t>());
  }
  for (const auto& base : {atoms::noun, atoms::sentence, atoms::theme, atoms::rheme}) {
    if (!out.count(base)) throw LexiconError("'dims' lacks basic type '" + base.name() + "'");
  }
  return SpaceAssignment(std::move(out));
}

}  // namespace

void Lexicon::add(LexiconEntry entry) {
  auto it = entries_.find(entry.word);
  if (it == entries_.end()) {
    it = entries_.emplace(entry.word, LexiconEntry{entry.word, {}, std::nullopt}).first;
  }
  LexiconEntry& target = it->second;
  for (std::size_t k = 0; k < entry.senses.size(); ++k) {
    auto& sense = entry.senses[k];
    try {
      check_shape(sense, spaces_);
    } catch (const Error& e) {
      throw ShapeError("word '" + entry.word + "', sense '" + to_string(sense.type) + "': " +
                       e.what());
    }
    if (target.find(sense.type)) {
      throw LexiconError("duplicate sense '" + to_string(sense.type) + "' for word '" +
                         entry.word + "'");
    }
    target.senses.push_back(std::move(sense));
  }
  if (entry.verb_matrix) {
    if (target.verb_matrix) throw LexiconError("duplicate verb matrix for word '" + entry.word + "'");
    const std::size_t dn = spaces_.dim(atoms::noun);
    const Shape expected{dn, dn};
    if (entry.verb_matrix->shape() != expected) {
      throw ShapeError("word '" + entry.word + "', verb matrix: expected shape " +
                       shape_text(expected) + ", got " + shape_text(entry.verb_matrix->shape()));
    }
    target.verb_matrix = std::move(entry.verb_matrix);
  }
}

const LexiconEntry& Lexicon::lookup(std::string_view word) const {
  auto it = entries_.find(word);
  if (it == entries_.end()) throw UnknownWord(std::string(word));
  return it->second;
}

Lexicon parse_lexicon(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    const std::size_t line = line_of(json_text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError("lexicon line " + std::to_string(line) + ": " + e.what(), e.byte, line);
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("entries")) {
    throw LexiconError("lexicon must be an object with 'dims' and 'entries'");
  }
  Lexicon lexicon(read_dims(doc["dims"]));
  const auto& entries = doc["entries"];
  if (!entries.is_array()) throw LexiconError("'entries' must be an array");

  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    const std::string where = "entry " + std::to_string(k + 1);
    try {
      const std::string word = e.at("word").get<std::string>();
      const PregroupType type = parse_type(e.at("type").get<std::string>());
      std::vector<double> data;
      if (e.contains("data_ref")) {
        data = sidecar_row(base_dir / e["data_ref"].get<std::string>(), word);
      } else {
        data = e.at("data").get<std::vector<double>>();
      }
      Shape shape;
      if (e.contains("shape")) {
        shape = e["shape"].get<Shape>();
      } else if (e.contains("data_ref")) {
        shape = {data.size()};
      } else {
        throw LexiconError(where + " ('" + word + "'): missing 'shape'");
      }
      if (std::find(shape.begin(), shape.end(), 0) != shape.end() || volume(shape) != data.size()) {
        throw ShapeError("word '" + word + "', sense '" + to_string(type) + "': shape " +
                         shape_text(shape) + " does not hold " + std::to_string(data.size()) +
                         " values");
      }
      Tensor tensor(std::move(shape), std::move(data));

      LexiconEntry entry{word, {}, std::nullopt};
      const std::string form = e.value("form", "tensor");
      if (form == "verb-matrix") {
        if (type != verb_type()) {
          throw LexiconError(where + " ('" + word + "'): verb-matrix form needs type 'n.r s n.l'");
        }
        entry.verb_matrix = std::move(tensor);
      } else if (form == "tensor") {
        entry.senses.push_back({type, std::move(tensor)});
      } else {
        throw LexiconError(where + " ('" + word + "'): unknown form '" + form + "'");
      }
      lexicon.add(std::move(entry));
    } catch (const json::exception& err) {
      throw LexiconError(where + ": " + err.what());
    } catch (const ParseError& err) {
      if (err.line() != 0) throw;
      throw LexiconError(where + ": bad type: " + err.what());
    }
  }
  return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
  return parse_lexicon(slurp(path), path.parent_path());
}

namespace {

bool mentions_intonation(const PregroupType& t) {
  return std::any_of(t.factors().begin(), t.factors().end(), [](const SimpleType& f) {
    return f.base == atoms::theme || f.base == atoms::rheme;
  });
}

void add_missing(LexiconEntry& entry, const PregroupType& type, const Tensor& tensor) {
  if (!entry.find(type)) entry.senses.push_back({type, tensor});
}

}  // namespace

LexiconEntry derive_intonation_senses(const LexiconEntry& entry, ThemeSide side) {
  LexiconEntry out = entry;
  bool derived = false;
  if (const auto* noun = entry.find(PregroupType::atom(atoms::noun))) {
    add_missing(out, PregroupType::atom(atoms::rheme), noun->tensor);
    add_missing(out, PregroupType::atom(atoms::theme), noun->tensor);
    derived = true;
  }
  if (entry.verb_matrix) {
    const Tensor& m = *entry.verb_matrix;
    if (side == ThemeSide::left) {
      add_missing(out, PregroupType{{atoms::noun, 1}, {atoms::theme, 0}}, m);
    } else {
      add_missing(out, PregroupType{{atoms::theme, 0}, {atoms::noun, -1}}, m);
    }
    add_missing(out, PregroupType{{atoms::theme, 0}, {atoms::theme, 0}}, m);
    add_missing(out, PregroupType{{atoms::rheme, 0}, {atoms::rheme, 0}}, m);
    derived = true;
  }
  if (!derived) {
    const bool explicit_senses = std::any_of(
        entry.senses.begin(), entry.senses.end(),
        [](const TypedTensor& s) { return mentions_intonation(s.type); });
    if (!explicit_senses) {
      throw LexiconError("word '" + entry.word +
                         "' has no noun vector, verb matrix or intonation sense");
    }
  }
  return out;
}

LexiconEntry derive_intonation_senses(const LexiconEntry& entry) {
  return derive_intonation_senses(derive_intonation_senses(entry, ThemeSide::left),
                                  ThemeSide::right);
}

Lexicon with_intonation_senses(const Lexicon& lexicon) {
  Lexicon out(lexicon.spaces());
  for (const auto& [word, entry] : lexicon.entries()) {
    const bool derivable =
        entry.verb_matrix || entry.find(PregroupType::atom(atoms::noun)) != nullptr;
    out.add(derivable ? derive_intonation_senses(entry) : entry);
  }
  return out;
}

double cosine(const Tensor& u, const Tensor& v) {
  if (u.order() != v.order()) {
    throw OrderMismatch("cannot compare tensors of order " + std::to_string(u.order()) + " and " +
                        std::to_string(v.order()) + ": they live in different spaces");
  }
  if (u.shape() != v.shape()) {
    throw ShapeError("cosine: shapes " + shape_text(u.shape()) + " and " + shape_text(v.shape()) +
                     " differ");
  }
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw std::domain_error("cosine of a zero vector is undefined");
  return std::clamp(inner(u, v) / (nu * nv), -1.0, 1.0);
}

}  // namespace intonsem
