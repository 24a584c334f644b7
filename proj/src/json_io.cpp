#include "intonsem/json_io.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "intonsem/error.hpp"

namespace intonsem {

using nlohmann::json;

json to_json(const Tensor& t) {
  return json{{"shape", t.shape()},
              {"data", std::vector<double>(t.data().begin(), t.data().end())}};
}

Tensor tensor_from_json(const json& j) {
  try {
    return Tensor(j.at("shape").get<Shape>(), j.at("data").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("tensor JSON: ") + e.what(), 0);
  }
}

json to_json(const ReductionDiagram& d) {
  json links = json::array();
  for (auto [i, j] : d.links) links.push_back({i + 1, j + 1});
  json survivors = json::array();
  for (auto s : d.survivors) survivors.push_back(s + 1);
  return json{{"links", links}, {"survivors", survivors}};
}

ReductionDiagram diagram_from_json(const json& j) {
  ReductionDiagram d;
  try {
    for (const auto& link : j.at("links")) {
      auto a = link.at(0).get<std::size_t>();
      auto b = link.at(1).get<std::size_t>();
      if (a == 0 || b == 0 || link.size() != 2) throw ParseError("diagram JSON: bad link", 0);
      d.links.emplace_back(a - 1, b - 1);
    }
    for (const auto& s : j.at("survivors")) {
      auto k = s.get<std::size_t>();
      if (k == 0) throw ParseError("diagram JSON: survivor indices are 1-based", 0);
      d.survivors.push_back(k - 1);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("diagram JSON: ") + e.what(), 0);
  }
  std::sort(d.links.begin(), d.links.end());
  std::sort(d.survivors.begin(), d.survivors.end());
  return d;
}

namespace {

bool is_scalar(const json& j) { return !j.is_object() && !j.is_array(); }

void write(const json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string inner(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        write(value, out, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& v : j) flat = flat && is_scalar(v);
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          write(j[k], out, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += inner;
        write(j[k], out, depth + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) throw std::domain_error("cannot write a non-finite number as JSON");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      // "-0" would read back as the integer 0 and lose its sign.
      if (x == 0.0 && std::signbit(x)) out += ".0";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump(const json& j) {
  std::string out;
  write(j, out, 0);
  out += '\n';
  return out;
}

}  // namespace intonsem
