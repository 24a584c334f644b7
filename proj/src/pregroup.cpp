#include "intonsem/pregroup.hpp"

#include <algorithm>
#include <list>
#include <optional>
#include <stdexcept>

#include "intonsem/error.hpp"

namespace intonsem {

PregroupType PregroupType::right() const {
  std::vector<SimpleType> out;
  out.reserve(factors_.size());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) out.push_back(it->right());
  return PregroupType{std::move(out)};
}

PregroupType PregroupType::left() const {
  std::vector<SimpleType> out;
  out.reserve(factors_.size());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) out.push_back(it->left());
  return PregroupType{std::move(out)};
}

bool PregroupType::is_plain() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const SimpleType& f) { return f.adjoint == 0; });
}

PregroupType operator*(const PregroupType& a, const PregroupType& b) {
  std::vector<SimpleType> out = a.factors_;
  out.insert(out.end(), b.factors_.begin(), b.factors_.end());
  return PregroupType{std::move(out)};
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Non-ASCII bytes are accepted so UTF-8 names such as θ can be used.
bool is_name_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || (u >= '0' && u <= '9') ||
         u == '_' || u >= 0x80;
}

std::string describe(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u < 0x20 || u == 0x7f) return "byte 0x" + std::to_string(u);
  return std::string("'") + c + "'";
}

}  // namespace

PregroupType parse_type(std::string_view text) {
  std::vector<SimpleType> factors;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (!is_name_char(text[i])) {
      throw ParseError("unexpected character " + describe(text[i]) + " at offset " +
                           std::to_string(i),
                       i);
    }
    const std::size_t start = i;
    while (i < n && is_name_char(text[i])) ++i;
    SimpleType factor{AtomicType{std::string(text.substr(start, i - start))}, 0};
    while (i < n && text[i] == '.') {
      if (i + 1 >= n || (text[i + 1] != 'l' && text[i + 1] != 'r')) {
        throw ParseError("expected 'l' or 'r' after '.' at offset " + std::to_string(i), i + 1);
      }
      factor.adjoint += text[i + 1] == 'l' ? -1 : 1;
      i += 2;
      if (i < n && !is_space(text[i]) && text[i] != '.') {
        throw ParseError("unexpected character " + describe(text[i]) + " at offset " +
                             std::to_string(i),
                         i);
      }
    }
    factors.push_back(std::move(factor));
  }
  return PregroupType{std::move(factors)};
}

std::string to_string(const SimpleType& t) {
  std::string out = t.base.name();
  for (int k = 0; k < t.adjoint; ++k) out += ".r";
  for (int k = 0; k > t.adjoint; --k) out += ".l";
  return out;
}

std::string to_string(const PregroupType& t) {
  std::string out;
  for (const auto& f : t.factors()) {
    if (!out.empty()) out += ' ';
    out += to_string(f);
  }
  return out;
}

PregroupType flatten(std::span<const PregroupType> types) {
  std::vector<SimpleType> out;
  for (const auto& t : types) out.insert(out.end(), t.factors().begin(), t.factors().end());
  return PregroupType{std::move(out)};
}

std::string check_diagram(const PregroupType& flat, const ReductionDiagram& d,
                          const PregroupType& target) {
  const std::size_t n = flat.size();
  std::vector<int> seen(n, 0);
  for (auto [i, j] : d.links) {
    if (i >= j) return "link endpoints out of order";
    if (j >= n) return "link index out of range";
    ++seen[i];
    ++seen[j];
    if (!cancels(flat[i], flat[j])) {
      return "factors " + to_string(flat[i]) + " and " + to_string(flat[j]) + " do not cancel";
    }
  }
  for (auto s : d.survivors) {
    if (s >= n) return "survivor index out of range";
    ++seen[s];
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (seen[k] != 1) return "factor " + std::to_string(k + 1) + " not covered exactly once";
  }
  for (auto [i, j] : d.links) {
    for (auto [k, l] : d.links) {
      if (i < k && k < j && j < l) return "links cross";
    }
    for (auto s : d.survivors) {
      if (i < s && s < j) return "survivor enclosed by a cup";
    }
  }
  if (d.survivors.size() != target.size()) return "survivors do not spell the target";
  for (std::size_t k = 0; k < d.survivors.size(); ++k) {
    if (flat[d.survivors[k]] != target[k]) return "survivors do not spell the target";
  }
  return {};
}

PregroupType replay(const PregroupType& flat, const ReductionDiagram& d) {
  std::vector<std::size_t> partner(flat.size(), flat.size());
  for (auto [i, j] : d.links) {
    partner.at(i) = j;
    partner.at(j) = i;
  }
  std::list<std::size_t> alive;
  for (std::size_t k = 0; k < flat.size(); ++k) alive.push_back(k);
  std::size_t remaining = d.links.size();
  while (remaining > 0) {
    bool progressed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      auto next = std::next(it);
      if (next != alive.end() && partner[*it] == *next) {
        if (!cancels(flat[*it], flat[*next])) {
          throw TypeError("cannot cancel " + to_string(flat[*it]) + " against " +
                          to_string(flat[*next]));
        }
        it = alive.erase(it, std::next(next));
        --remaining;
        progressed = true;
      } else {
        ++it;
      }
    }
    if (!progressed) throw TypeError("links cannot be replayed as adjacent cancellations");
  }
  std::vector<SimpleType> out;
  for (auto k : alive) out.push_back(flat[k]);
  return PregroupType{std::move(out)};
}

namespace {

using LinkList = std::vector<std::pair<std::size_t, std::size_t>>;

// Enumerates planar contraction-only reductions. A factor is either a
// survivor (matched against the next target factor) or the left end of a cup
// whose interior cancels completely.
class ReductionSearch {
 public:
  ReductionSearch(const PregroupType& flat, const PregroupType& target)
      : flat_(flat), target_(target), n_(flat.size()),
        cancel_memo_((n_ + 1) * (n_ + 1)),
        solve_memo_((n_ + 1) * (target.size() + 1)) {}

  const std::vector<ReductionDiagram>& solve(std::size_t pos, std::size_t t) {
    auto& slot = solve_memo_[pos * (target_.size() + 1) + t];
    if (slot) return *slot;
    std::vector<ReductionDiagram> out;
    if (pos == n_) {
      if (t == target_.size()) out.emplace_back();
    } else {
      if (t < target_.size() && flat_[pos] == target_[t]) {
        for (const auto& rest : solve(pos + 1, t + 1)) {
          ReductionDiagram d = rest;
          d.survivors.insert(d.survivors.begin(), pos);
          out.push_back(std::move(d));
        }
      }
      for (std::size_t j = pos + 1; j < n_; j += 2) {
        if (!cancels(flat_[pos], flat_[j])) continue;
        const auto& inner = cancel(pos + 1, j);
        if (inner.empty()) continue;
        const auto& rest = solve(j + 1, t);
        for (const auto& in : inner) {
          for (const auto& r : rest) {
            ReductionDiagram d;
            d.links.emplace_back(pos, j);
            d.links.insert(d.links.end(), in.begin(), in.end());
            d.links.insert(d.links.end(), r.links.begin(), r.links.end());
            d.survivors = r.survivors;
            out.push_back(std::move(d));
          }
        }
      }
    }
    slot = std::move(out);
    return *slot;
  }

 private:
  // All link sets that cancel [a, b) down to the unit.
  const std::vector<LinkList>& cancel(std::size_t a, std::size_t b) {
    auto& slot = cancel_memo_[a * (n_ + 1) + b];
    if (slot) return *slot;
    std::vector<LinkList> out;
    if (a == b) {
      out.emplace_back();
    } else if ((b - a) % 2 == 0) {
      for (std::size_t j = a + 1; j < b; j += 2) {
        if (!cancels(flat_[a], flat_[j])) continue;
        const auto& inner = cancel(a + 1, j);
        if (inner.empty()) continue;
        const auto& rest = cancel(j + 1, b);
        for (const auto& in : inner) {
          for (const auto& r : rest) {
            LinkList links{{a, j}};
            links.insert(links.end(), in.begin(), in.end());
            links.insert(links.end(), r.begin(), r.end());
            out.push_back(std::move(links));
          }
        }
      }
    }
    slot = std::move(out);
    return *slot;
  }

  const PregroupType& flat_;
  const PregroupType& target_;
  std::size_t n_;
  std::vector<std::optional<std::vector<LinkList>>> cancel_memo_;
  std::vector<std::optional<std::vector<ReductionDiagram>>> solve_memo_;
};

class Recognizer {
 public:
  Recognizer(const PregroupType& flat, const PregroupType& target)
      : flat_(flat), target_(target), n_(flat.size()),
        cancel_memo_((n_ + 1) * (n_ + 1), -1),
        solve_memo_((n_ + 1) * (target.size() + 1), -1) {}

  bool solve(std::size_t pos, std::size_t t) {
    auto& slot = solve_memo_[pos * (target_.size() + 1) + t];
    if (slot >= 0) return slot;
    bool ok = false;
    if (pos == n_) {
      ok = t == target_.size();
    } else {
      ok = t < target_.size() && flat_[pos] == target_[t] && solve(pos + 1, t + 1);
      for (std::size_t j = pos + 1; !ok && j < n_; j += 2) {
        ok = cancels(flat_[pos], flat_[j]) && cancel(pos + 1, j) && solve(j + 1, t);
      }
    }
    slot = ok ? 1 : 0;
    return ok;
  }

 private:
  bool cancel(std::size_t a, std::size_t b) {
    if (a == b) return true;
    if ((b - a) % 2 != 0) return false;
    auto& slot = cancel_memo_[a * (n_ + 1) + b];
    if (slot >= 0) return slot;
    bool ok = false;
    for (std::size_t j = a + 1; !ok && j < b; j += 2) {
      ok = cancels(flat_[a], flat_[j]) && cancel(a + 1, j) && cancel(j + 1, b);
    }
    slot = ok ? 1 : 0;
    return ok;
  }

  const PregroupType& flat_;
  const PregroupType& target_;
  std::size_t n_;
  std::vector<signed char> cancel_memo_;
  std::vector<signed char> solve_memo_;
};

void require_plain_target(const PregroupType& target) {
  if (!target.is_plain()) {
    throw std::invalid_argument("reduction target must consist of plain factors: " +
                                to_string(target));
  }
}

}  // namespace

std::vector<ReductionDiagram> all_reductions(const PregroupType& flat,
                                             const PregroupType& target) {
  require_plain_target(target);
  ReductionSearch search(flat, target);
  std::vector<ReductionDiagram> out = search.solve(0, 0);
  for (auto& d : out) std::sort(d.links.begin(), d.links.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ReductionDiagram> reduce(std::span<const PregroupType> types,
                                     const PregroupType& target) {
  if (types.empty()) throw std::invalid_argument("reduce needs at least one type");
  auto flat = flatten(types);
  auto out = all_reductions(flat, target);
  if (out.empty()) {
    throw NoReduction("'" + to_string(flat) + "' does not reduce to '" + to_string(target) + "'");
  }
  return out;
}

bool grammatical(std::span<const PregroupType> types, const PregroupType& target) {
  require_plain_target(target);
  auto flat = flatten(types);
  return Recognizer(flat, target).solve(0, 0);
}

}  // namespace intonsem
