#include "qalg/finitarity.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

#include "qalg/error.hpp"

namespace qalg {

// --- Condition --------------------------------------------------------------

ConditionReport check_condition(const Signature& sig, const MetricSpace& x,
                                const TermDistance& y_after_f, const std::vector<Distance>& eps_list,
                                std::size_t max_depth, std::uint64_t cap) {
  ConditionReport report;
  report.max_depth = max_depth;
  for (Distance eps : eps_list) {
    if (!is_valid_distance(eps)) throw PreconditionError("condition grid values must be >= 0");
    const DiagonalNeighborhood nb = diagonal_neighborhood(x, eps);
    std::unordered_map<std::string, std::string> left, right;
    for (std::size_t k = 0; k < nb.pairs.size(); ++k) {
      left.emplace(nb.name(k), x.point(nb.left(k)));
      right.emplace(nb.name(k), x.point(nb.right(k)));
    }
    const TermUniverse u = enumerate(nb.names(), sig, max_depth, cap);
    ConditionEpsResult r;
    r.eps = eps;
    r.neighborhood_pairs = nb.pairs.size();
    r.terms = u.size();
    for (const Term& t : u.terms) {
      const Distance d = y_after_f(map_leaves(t, left), map_leaves(t, right));
      if (d > r.max) {
        r.max = d;
        r.worst = t;
      }
    }
    r.pass = leq(r.max, eps);
    report.pass = report.pass && r.pass;
    report.per_eps.push_back(std::move(r));
  }
  return report;
}

// --- Factorization ----------------------------------------------------------

FactorizationVerdict check_factorization(const std::vector<Term>& elements,
                                         const TermDistance& d_tx, const TermDistance& y_after_f,
                                         bool identity_carried, const TermKey& key,
                                         Distance margin) {
  if (!identity_carried)
    throw PreconditionError("factorization check needs T i_X carried by the identity on terms");
  FactorizationVerdict v;
  std::vector<std::vector<std::size_t>> groups;
  if (key) {
    std::unordered_map<std::string, std::size_t> gid;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      auto [it, fresh] = gid.emplace(key(elements[i]), groups.size());
      if (fresh) groups.emplace_back();
      groups[it->second].push_back(i);
    }
  } else {
    groups.emplace_back(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) groups[0][i] = i;
  }
  // first violation in (i, j) order across groups
  std::optional<std::pair<std::size_t, std::size_t>> first;
  for (const auto& g : groups)
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b) {
        const Term& t = elements[g[a]];
        const Term& u = elements[g[b]];
        const Distance dt = d_tx(t, u);
        if (dt == kInfinity) continue;
        ++v.pairs_checked;
        const Distance dy = y_after_f(t, u);
        if (leq(dy, dt, margin)) continue;
        ++v.violations;
        const std::pair<std::size_t, std::size_t> at{g[a], g[b]};
        if (!first || at < *first) {
          first = at;
          v.witness = FactorizationWitness{t, u, dt, dy};
        }
      }
  v.exists = v.violations == 0;
  std::ostringstream os;
  if (v.exists) {
    os << "no violation among " << v.pairs_checked << " finite pairs";
  } else {
    const auto& w = *v.witness;
    os << v.violations << " of " << v.pairs_checked << " finite pairs violate; first: d_TX("
       << to_string(w.t) << ", " << to_string(w.u) << ") = " << format_distance(w.d_tx)
       << " < d_Y = " << format_distance(w.d_y);
  }
  v.detail = os.str();
  return v;
}

namespace {

constexpr std::size_t kDenseMeetLimit = 2000;

std::vector<std::string> term_names(const std::vector<Term>& terms) {
  std::vector<std::string> names;
  names.reserve(terms.size());
  for (const Term& t : terms) names.push_back(to_string(t));
  return names;
}

// Dense meet(d*_X, d2) on the universe terms.
PseudoMetricSpace dense_meet(const TermUniverse& u, const PseudoMetricSpace& x,
                             const TermDistance& d2) {
  if (u.size() > kDenseMeetLimit)
    throw CapExceeded("dense meet closure", static_cast<double>(u.size()), kDenseMeetLimit);
  const auto names = term_names(u.terms);
  const auto star = PseudoMetricSpace::from_function(
      names, [&](std::size_t i, std::size_t j) { return dstar(u.terms[i], u.terms[j], x); },
      Validate::No);
  const auto other = PseudoMetricSpace::from_function(
      names, [&](std::size_t i, std::size_t j) { return d2(u.terms[i], u.terms[j]); }, Validate::No);
  return meet(star, other);
}

TermDistance lookup(const TermUniverse& u, const PseudoMetricSpace& y) {
  return [&u, &y](const Term& t, const Term& s) {
    auto i = u.find(t), j = u.find(s);
    if (!i || !j) throw UndefinedError("term " + to_string(i ? s : t) + " outside the meet universe");
    return y(*i, *j);
  };
}

}  // namespace

Distance MeetTarget::distance(const Term& t, const Term& u) const { return lookup(universe, y)(t, u); }

MeetTarget meet_target(const FreeAlgebraModel& model, std::size_t depth, std::uint64_t cap) {
  const MetricSpace& x = model.base();
  MeetTarget m;
  m.universe = enumerate(x.points(), model.signature(), depth, cap);
  const auto disc = model.over(underlying_discrete(x));
  m.y = dense_meet(m.universe, x, [&](const Term& t, const Term& s) { return disc->distance(t, s); });
  return m;
}

FactorizationVerdict meet_probe(const FreeAlgebraModel& model, std::size_t depth,
                                std::uint64_t cap) {
  const MeetTarget m = meet_target(model, depth, cap);
  auto v = check_factorization(
      m.universe.terms, [&](const Term& t, const Term& s) { return model.distance(t, s); },
      lookup(m.universe, m.y), model.identity_carried());
  v.detail = "meet probe at depth " + std::to_string(depth) + " (" +
             std::to_string(m.universe.size()) + " terms): " + v.detail;
  return v;
}

FactorizationVerdict quotient_probe(const FreeAlgebraModel& generic,
                                    const FreeAlgebraModel& closed) {
  auto v = check_factorization(
      generic.elements(), [&](const Term& t, const Term& s) { return generic.distance(t, s); },
      [&](const Term& t, const Term& s) { return closed.distance(t, s); },
      generic.identity_carried());
  v.detail = "quotient probe " + generic.name() + " -> " + closed.name() + ": " + v.detail;
  return v;
}

// --- Sparse meet --------------------------------------------------------------

SparseMeet::SparseMeet(std::vector<Term> terms, TermDistance d1, TermDistance d2, TermKey key1,
                       TermKey key2)
    : terms_(std::move(terms)), d1_(std::move(d1)), d2_(std::move(d2)) {
  auto bucketize = [&](const TermKey& key, std::vector<std::size_t>& ids,
                       std::vector<std::vector<std::size_t>>& members) {
    std::unordered_map<std::string, std::size_t> seen;
    ids.resize(terms_.size());
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      auto [it, fresh] = seen.emplace(key(terms_[i]), members.size());
      if (fresh) members.emplace_back();
      members[it->second].push_back(i);
      ids[i] = it->second;
    }
  };
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!index_.emplace(terms_[i], i).second)
      throw ValidationError("duplicate term " + to_string(terms_[i]) + " in sparse meet");
  bucketize(key1, bucket1_, members1_);
  bucketize(key2, bucket2_, members2_);
}

std::optional<std::size_t> SparseMeet::find(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Distance>& SparseMeet::from(std::size_t source) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(source);
    if (it != cache_.end()) return *it->second;
  }
  const std::size_t n = terms_.size();
  auto dist = std::make_shared<std::vector<Distance>>(n, kInfinity);
  std::vector<char> done(n, 0);
  using Item = std::pair<Distance, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  (*dist)[source] = 0.0;
  pq.emplace(0.0, source);
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (done[i]) continue;
    done[i] = 1;
    auto relax = [&](std::size_t j) {
      if (done[j]) return;
      const Distance w = std::min(d1_(terms_[i], terms_[j]), d2_(terms_[i], terms_[j]));
      if (d + w < (*dist)[j]) {
        (*dist)[j] = d + w;
        pq.emplace((*dist)[j], j);
      }
    };
    for (std::size_t j : members1_[bucket1_[i]]) relax(j);
    for (std::size_t j : members2_[bucket2_[i]]) relax(j);
  }
  std::lock_guard lock(mutex_);
  auto [it, fresh] = cache_.emplace(source, std::move(dist));
  return *it->second;
}

Distance SparseMeet::distance(std::size_t i, std::size_t j) const {
  if (i == j) return 0.0;
  return from(std::min(i, j))[std::max(i, j)];
}

Distance SparseMeet::distance(const Term& t, const Term& u) const {
  auto i = find(t), j = find(u);
  if (!i || !j) throw UndefinedError("term " + to_string(i ? u : t) + " outside the sparse meet");
  return distance(*i, *j);
}

Term erase_symbols(const Term& t) {
  if (t.is_leaf()) return t;
  std::vector<Term> kids;
  kids.reserve(t.arity());
  for (const Term& c : t.children()) kids.push_back(erase_symbols(c));
  return Term::op("_", std::move(kids));
}

// --- Counter-example ----------------------------------------------------------

MetricSpace counterexample_space() {
  return MetricSpace::from_table({"a", "b"}, {0.0, 1.0, 1.0, 0.0});
}

CounterexampleTerms counterexample_terms() {
  const Signature sig{{"sigma1", 2}, {"sigma2", 2}};
  return {parse_term("(sigma1 (sigma2 a a) (sigma1 b b))", sig),
          parse_term("(sigma1 (sigma2 b b) (sigma2 b b))", sig),
          parse_term("(sigma1 (sigma2 a a) (sigma2 b b))", sig)};
}

namespace {

std::string pair_text(const Term& t, const Term& u) {
  return "t = " + to_string(t) + ", t' = " + to_string(u);
}

}  // namespace

CounterexampleReport run_counterexample(Distance eps, std::size_t max_depth,
                                        const std::vector<Distance>& grid, std::uint64_t cap) {
  if (!(eps > 0.0 && eps < 1.0))
    throw PreconditionError("eps must satisfy 0 < eps < 1, got " + format_distance(eps));
  if (max_depth < 2)
    throw PreconditionError("the witness trees have depth 2; max-depth must be >= 2, got " +
                            std::to_string(max_depth));
  CounterexampleReport rep;
  rep.eps = eps;
  rep.max_depth = max_depth;

  const MetricSpace x = counterexample_space();
  const MetricSpace dx = underlying_discrete(x);
  const Signature sig{{"sigma1", 2}, {"sigma2", 2}};
  const CounterexampleTerms ct = counterexample_terms();
  const Term& t = ct.t;
  const Term& tp = ct.t_prime;
  const Term& s1 = ct.s1;
  auto hat_disc = [&](const Term& a, const Term& b) { return dhat(a, b, dx, eps); };
  auto star = [&](const Term& a, const Term& b) { return dstar(a, b, x); };

  const TermUniverse u2 = enumerate(x.points(), sig, rep.sweep_depth, cap);
  const PseudoMetricSpace y2 = dense_meet(u2, x, hat_disc);
  const TermDistance yd2 = lookup(u2, y2);

  TermDistance yd = yd2;
  std::optional<SparseMeet> deep;
  rep.universe_size = u2.size();
  if (max_depth > rep.sweep_depth) {
    TermUniverse ud = enumerate(x.points(), sig, max_depth, cap);
    rep.universe_size = ud.size();
    deep.emplace(std::move(ud.terms), star, hat_disc,
                 [](const Term& a) { return to_string(skeleton(a)); },
                 [](const Term& a) { return to_string(erase_symbols(a)); });
    yd = [&deep](const Term& a, const Term& b) { return deep->distance(a, b); };
  }

  // (i) f nonexpanding from T|X| to Y
  {
    Claim c{"i", "f : T|X| -> Y is nonexpanding", {}, true, false, ""};
    bool ok = true;
    for (std::size_t i = 0; i < u2.size() && ok; ++i)
      for (std::size_t j = i + 1; j < u2.size() && ok; ++j) {
        const Distance dt = hat_disc(u2.terms[i], u2.terms[j]);
        if (!leq(y2(i, j), dt)) {
          ok = false;
          c.witness = pair_text(u2.terms[i], u2.terms[j]);
        }
      }
    c.computed = ok;
    c.pass = ok;
    rep.claims.push_back(std::move(c));
  }
  // (ii) condition on the grid
  {
    rep.condition = check_condition(sig, x, yd2, grid, rep.sweep_depth, cap);
    std::vector<Distance> maxes;
    std::string witness;
    for (const auto& r : rep.condition.per_eps) {
      maxes.push_back(r.max);
      if (!r.pass && witness.empty() && r.worst)
        witness = "eps " + format_distance(r.eps) + ": " + to_string(*r.worst);
    }
    rep.claims.push_back(Claim{"ii", "condition holds on the eps grid, each max <= its eps",
                               maxes, grid, rep.condition.pass, witness});
  }
  // (iii) the two distances at the witness pair
  {
    const Distance dh = dhat(t, tp, x, eps);
    rep.claims.push_back(
        Claim{"iii.a", "d-hat_X(t, t') = 1", dh, 1.0, dh == 1.0, pair_text(t, tp)});
    const Distance dy = yd(t, tp);
    rep.claims.push_back(Claim{"iii.b", "d_Y(t, t') = eps + 1", dy, eps + 1.0,
                               approx_equal(dy, eps + 1.0), pair_text(t, tp)});
    if (deep) {
      const Distance dy2 = yd2(t, tp);
      rep.claims.push_back(Claim{"iii.c",
                                 "d_Y(t, t') at depth " + std::to_string(max_depth) +
                                     " equals its depth-2 value",
                                 dy, dy2, approx_equal(dy, dy2), ""});
    }
  }
  // (iv) the mediating chain
  {
    const std::vector<Distance> costs{hat_disc(t, s1), star(s1, tp)};
    const std::vector<Distance> want{eps, 1.0};
    const bool ok = approx_equal(costs[0], want[0]) && approx_equal(costs[1], want[1]);
    rep.claims.push_back(Claim{"iv", "chain t, s1, t' costs (eps, 1)", costs, want, ok,
                               "s1 = " + to_string(s1)});
  }
  // (v) factorization through T i_X
  {
    rep.factorization = check_factorization(
        u2.terms, [&](const Term& a, const Term& b) { return dhat(a, b, x, eps); }, yd2, true);
    const std::string got = rep.factorization.exists ? "exists" : "fails";
    std::string witness;
    if (rep.factorization.witness) {
      const auto& w = *rep.factorization.witness;
      witness = pair_text(w.t, w.u) + ": d-hat_X = " + format_distance(w.d_tx) +
                ", d_Y = " + format_distance(w.d_y);
    }
    rep.claims.push_back(Claim{"v", "factorization through T i_X fails", got,
                               std::string("fails"), got == "fails", witness});
  }

  rep.reproduced = std::all_of(rep.claims.begin(), rep.claims.end(),
                               [](const Claim& c) { return c.pass; });
  rep.verdict = rep.factorization.exists ? "no violation found" : "not strongly finitary";
  return rep;
}

}  // namespace qalg
