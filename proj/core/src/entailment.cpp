#include "qalg/entailment.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "qalg/error.hpp"

namespace qalg {

bool match(const Term& pattern, const Term& term, std::unordered_map<std::string, Term>& theta) {
  if (pattern.is_leaf()) {
    if (!is_formal_variable(pattern.label()))
      return term.is_leaf() && term.label() == pattern.label();
    auto [it, fresh] = theta.emplace(pattern.label(), term);
    return fresh || it->second == term;
  }
  if (term.is_leaf() || term.label() != pattern.label() || term.arity() != pattern.arity())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match(pattern.child(i), term.child(i), theta)) return false;
  return true;
}

namespace {

struct Rule {
  Term from;
  Term to;
  Distance eps;
  std::vector<std::string> unbound;  // variables of `to` absent from `from`
};

std::vector<Rule> orient(const VarietyPresentation& v) {
  std::vector<Rule> rules;
  auto vars_of = [](const Term& t) {
    std::set<std::string> s;
    for (const auto& l : leaves(t))
      if (is_formal_variable(l)) s.insert(l);
    return s;
  };
  for (const auto& e : v.equations) {
    if (e.eps == kInfinity) continue;
    const auto lv = vars_of(e.lhs), rv = vars_of(e.rhs);
    for (int dir = 0; dir < 2; ++dir) {
      const Term& from = dir == 0 ? e.lhs : e.rhs;
      const Term& to = dir == 0 ? e.rhs : e.lhs;
      const auto& fv = dir == 0 ? lv : rv;
      const auto& tv = dir == 0 ? rv : lv;
      Rule r{from, to, e.eps, {}};
      for (const auto& x : tv)
        if (!fv.count(x)) r.unbound.push_back(x);
      rules.push_back(std::move(r));
    }
  }
  return rules;
}

// Calls emit(result, eps) for every one-step rewrite of s.
void rewrites(const Term& s, const std::vector<Rule>& rules, const TermUniverse& u,
              const std::function<void(const Term&, Distance)>& emit) {
  for (const Rule& r : rules) {
    std::unordered_map<std::string, Term> theta;
    if (!match(r.from, s, theta)) continue;
    if (r.unbound.empty()) {
      emit(substitute_leaves(r.to, theta), r.eps);
      continue;
    }
    for_each_tuple(u.size(), r.unbound.size(), [&](std::span<const std::size_t> tuple) {
      auto full = theta;
      for (std::size_t i = 0; i < tuple.size(); ++i) full[r.unbound[i]] = u.terms[tuple[i]];
      emit(substitute_leaves(r.to, full), r.eps);
    });
  }
  for (std::size_t i = 0; i < s.arity(); ++i)
    rewrites(s.child(i), rules, u, [&](const Term& c, Distance eps) {
      std::vector<Term> kids = s.children();
      kids[i] = c;
      emit(Term::op(s.label(), std::move(kids)), eps);
    });
}

}  // namespace

RewriteGraph::RewriteGraph(const VarietyPresentation& v, TermUniverse universe)
    : universe_(std::move(universe)), adj_(universe_.size()) {
  const auto rules = orient(v);
  std::vector<std::unordered_map<std::size_t, Distance>> best(universe_.size());
  for (std::size_t i = 0; i < universe_.size(); ++i)
    rewrites(universe_.terms[i], rules, universe_, [&](const Term& t, Distance eps) {
      auto j = universe_.find(t);
      if (!j || *j == i) return;
      for (auto [a, b] : {std::pair{i, *j}, std::pair{*j, i}}) {
        auto [it, fresh] = best[a].emplace(b, eps);
        if (!fresh) it->second = std::min(it->second, eps);
      }
    });
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    adj_[i].assign(best[i].begin(), best[i].end());
    std::sort(adj_[i].begin(), adj_[i].end());
  }
}

std::size_t RewriteGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& a : adj_) n += a.size();
  return n / 2;
}

std::vector<Distance> RewriteGraph::distances_from(std::size_t source) const {
  std::vector<Distance> dist(adj_.size(), kInfinity);
  using Item = std::pair<Distance, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist.at(source) = 0.0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    for (auto [j, w] : adj_[i])
      if (d + w < dist[j]) {
        dist[j] = d + w;
        pq.emplace(dist[j], j);
      }
  }
  return dist;
}

std::vector<Distance> RewriteGraph::all_pairs() const {
  const std::size_t n = adj_.size();
  std::vector<Distance> w(n * n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) {
    w[i * n + i] = 0.0;
    for (auto [j, d] : adj_[i]) w[i * n + j] = std::min(w[i * n + j], d);
  }
  return shortest_path_closure(n, std::move(w));
}

Distance entailment_upper_bound(const VarietyPresentation& v, const Term& t, const Term& u,
                                std::vector<std::string> base, const EntailmentBudget& budget) {
  if (t == u) return 0.0;
  for (const Term* side : {&t, &u}) {
    check_well_formed(*side, v.signature);
    for (auto& l : leaves(*side))
      if (std::find(base.begin(), base.end(), l) == base.end()) base.push_back(l);
  }
  if (t.depth() > budget.max_depth || u.depth() > budget.max_depth) return kInfinity;
  RewriteGraph g(v, enumerate(std::move(base), v.signature, budget.max_depth, budget.cap));
  const auto dist = g.distances_from(*g.universe().find(t));
  return dist[*g.universe().find(u)];
}

}  // namespace qalg
