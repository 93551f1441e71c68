#include <cmath>

#include "qalg/error.hpp"
#include "qalg/term.hpp"

namespace qalg {

std::optional<std::size_t> TermUniverse::find(const Term& t) const {
  auto it = index.find(t);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

double count_terms(std::size_t num_leaves, const Signature& sig, std::size_t max_depth) {
  double base = static_cast<double>(num_leaves);
  for (const auto& [name, arity] : sig.symbols())
    if (arity == 0) base += 1.0;
  double n = base;
  for (std::size_t d = 1; d <= max_depth; ++d) {
    double next = base;
    for (const auto& [name, arity] : sig.symbols())
      if (arity > 0) next += std::pow(n, static_cast<double>(arity));
    if (next == n) break;
    n = next;
  }
  return n;
}

TermUniverse enumerate(std::vector<std::string> base, const Signature& sig, std::size_t max_depth,
                       std::uint64_t cap) {
  const double projected = count_terms(base.size(), sig, max_depth);
  if (projected > static_cast<double>(cap)) throw CapExceeded("term universe", projected, cap);

  TermUniverse u;
  u.base = std::move(base);
  u.signature = sig;
  u.max_depth = max_depth;
  u.terms.reserve(static_cast<std::size_t>(projected));
  for (const auto& b : u.base) {
    if (sig.contains(b)) throw ValidationError("leaf '" + b + "' collides with a symbol");
    u.terms.push_back(Term::leaf(b));
  }
  for (const auto& [name, arity] : sig.symbols())
    if (arity == 0) u.terms.push_back(Term::op(name));
  u.level_end.push_back(u.terms.size());

  for (std::size_t d = 1; d <= max_depth; ++d) {
    const std::size_t prev = u.level_end[d - 1];   // terms of depth <= d-1
    const std::size_t fresh = d >= 2 ? u.level_end[d - 2] : 0;  // depth <= d-2
    for (const auto& [name, arity] : sig.symbols()) {
      if (arity == 0) continue;
      if (prev == 0) continue;
      std::vector<std::size_t> idx(arity, 0);
      for (bool done = false; !done;) {
        bool has_top = false;
        for (std::size_t i : idx) has_top = has_top || i >= fresh;
        if (has_top) {
          std::vector<Term> kids;
          kids.reserve(arity);
          for (std::size_t i : idx) kids.push_back(u.terms[i]);
          u.terms.push_back(Term::op(name, std::move(kids)));
        }
        for (std::size_t pos = arity;;) {
          if (pos == 0) {
            done = true;
            break;
          }
          --pos;
          if (++idx[pos] < prev) break;
          idx[pos] = 0;
        }
      }
    }
    u.level_end.push_back(u.terms.size());
    if (u.level_end[d] == u.level_end[d - 1]) {
      for (std::size_t e = d + 1; e <= max_depth; ++e) u.level_end.push_back(u.terms.size());
      break;
    }
  }
  u.index.reserve(u.terms.size());
  for (std::size_t i = 0; i < u.terms.size(); ++i) u.index.emplace(u.terms[i], i);
  return u;
}

}  // namespace qalg
