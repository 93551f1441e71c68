#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "qalg/term.hpp"
#include "qalg/variety.hpp"

namespace qalg {

struct EntailmentBudget {
  std::size_t max_depth = 3;
  std::uint64_t cap = kDefaultUniverseCap;
};

/// One-step rewrites of V's equations inside a bounded term universe. An edge
/// of weight eps joins s and s' when s' replaces one subterm of s that is an
/// instance of one side of u =_eps u' by the matching instance of the other
/// side. Variables of the target side left unbound by matching range over the
/// whole universe.
class RewriteGraph {
 public:
  RewriteGraph(const VarietyPresentation& v, TermUniverse universe);

  const TermUniverse& universe() const { return universe_; }
  const std::vector<std::vector<std::pair<std::size_t, Distance>>>& adjacency() const {
    return adj_;
  }
  std::size_t edge_count() const;

  /// Single-source shortest paths (Dijkstra; ties resolved by index order).
  std::vector<Distance> distances_from(std::size_t source) const;
  /// Row-major all-pairs shortest paths.
  std::vector<Distance> all_pairs() const;

 private:
  TermUniverse universe_;
  std::vector<std::vector<std::pair<std::size_t, Distance>>> adj_;
};

/// Sound upper bound on the entailment distance between t and u: the
/// shortest rewrite chain inside the universe over base plus the leaves of
/// t and u, up to budget.max_depth. Infinite when either term lies outside.
Distance entailment_upper_bound(const VarietyPresentation& v, const Term& t, const Term& u,
                                std::vector<std::string> base, const EntailmentBudget& budget);

/// Substitution theta with pattern * theta == term, extending theta; false if none.
bool match(const Term& pattern, const Term& term, std::unordered_map<std::string, Term>& theta);

}  // namespace qalg
