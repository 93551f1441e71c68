#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qalg/error.hpp"
#include "qalg/finitarity.hpp"

namespace qalg {

namespace {

// All maps X -> Y as point index vectors, filtered to the nonexpanding ones.
std::vector<PointMap> nonexpanding_maps(const MetricSpace& x, const MetricSpace& y) {
  const double count = std::pow(static_cast<double>(y.size()), static_cast<double>(x.size()));
  if (count > 1e6) throw CapExceeded("maps X -> Y", count, 1'000'000);
  std::vector<PointMap> out;
  for_each_tuple(y.size(), x.size(), [&](std::span<const std::size_t> f) {
    PointMap m(f.begin(), f.end());
    if (!find_expansion(x, y, m)) out.push_back(std::move(m));
  });
  return out;
}

std::unordered_map<std::string, std::string> rename(const MetricSpace& x, const MetricSpace& y,
                                                    const PointMap& f) {
  std::unordered_map<std::string, std::string> m;
  for (std::size_t i = 0; i < x.size(); ++i) m.emplace(x.point(i), y.point(f[i]));
  return m;
}

MetricSpace default_target(const FreeAlgebraModel& model) {
  const Signature& sig = model.signature();
  auto clash = [&](const std::string& n) { return sig.contains(n); };
  if (clash("c") || clash("d")) return MetricSpace::from_table({"y0", "y1"}, {0.0, 0.7, 0.7, 0.0});
  return MetricSpace::from_table({"c", "d"}, {0.0, 0.7, 0.7, 0.0});
}

std::string pair_detail(const Term& t, const Term& u) { return to_string(t) + " vs " + to_string(u); }

LawResult operations_nonexpanding(const FreeAlgebraModel& model, const std::vector<Term>& elems,
                                  const std::vector<Distance>& dist, std::uint64_t max_pairs) {
  LawResult r{"operations nonexpanding", true, 0, ""};
  const std::size_t n = elems.size();
  std::uint64_t skipped = 0;
  bool truncated = false;
  for (const auto& [name, arity] : model.signature().symbols()) {
    if (arity == 0 || !r.pass) continue;
    std::size_t m = n;
    while (m > 1 && std::pow(static_cast<double>(m), 2.0 * static_cast<double>(arity)) >
                        static_cast<double>(max_pairs))
      --m;
    truncated = truncated || m < n;
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<Term> applied;
    for_each_tuple(m, arity, [&](std::span<const std::size_t> tup) {
      tuples.emplace_back(tup.begin(), tup.end());
      std::vector<Term> kids;
      for (std::size_t i : tup) kids.push_back(elems[i]);
      applied.push_back(Term::op(name, std::move(kids)));
    });
    for (std::size_t p = 0; p < tuples.size() && r.pass; ++p)
      for (std::size_t q = p + 1; q < tuples.size(); ++q) {
        Distance in = 0.0;
        for (std::size_t k = 0; k < arity; ++k) in = std::max(in, dist[tuples[p][k] * n + tuples[q][k]]);
        if (in == kInfinity) continue;
        Distance out;
        try {
          out = model.distance(applied[p], applied[q]);
        } catch (const UndefinedError&) {
          ++skipped;
          continue;
        }
        ++r.checked;
        if (!leq(out, in)) {
          r.pass = false;
          r.detail = name + ": " + pair_detail(applied[p], applied[q]) + " at " +
                     format_distance(out) + " > " + format_distance(in);
          break;
        }
      }
  }
  if (r.pass) {
    std::ostringstream os;
    os << (truncated ? "element prefix per symbol" : "exhaustive on elements");
    if (skipped) os << "; " << skipped << " pairs outside the bound skipped";
    r.detail = os.str();
  }
  return r;
}

}  // namespace

LawSuiteReport monad_law_suite(const FreeAlgebraModel& model, const LawSuiteOptions& opts) {
  LawSuiteReport rep;
  rep.model = model.name();
  const MetricSpace& x = model.base();
  auto elems = model.elements();
  const bool truncated = elems.size() > opts.max_elements;
  if (truncated) elems.resize(opts.max_elements);
  const std::size_t n = elems.size();
  std::vector<Distance> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) dist[i * n + j] = model.distance(elems[i], elems[j]);

  {
    LawResult r{"metric axioms on elements", true, n, truncated ? "element prefix" : "all elements"};
    if (auto v = find_metric_violation(n, dist)) {
      std::vector<std::string> names;
      for (const Term& t : elems) names.push_back(to_string(t));
      r.pass = false;
      r.detail = v->describe(names);
    }
    rep.laws.push_back(std::move(r));
  }
  {
    LawResult r{"unit nonexpanding", true, 0, ""};
    for (std::size_t i = 0; i < x.size() && r.pass; ++i)
      for (std::size_t j = 0; j < x.size(); ++j) {
        ++r.checked;
        const Distance d = model.distance(Term::leaf(x.point(i)), Term::leaf(x.point(j)));
        if (!leq(d, x(i, j))) {
          r.pass = false;
          r.detail = x.point(i) + ", " + x.point(j) + ": " + format_distance(d) + " > " +
                     format_distance(x(i, j));
          break;
        }
      }
    rep.laws.push_back(std::move(r));
  }
  rep.laws.push_back(operations_nonexpanding(model, elems, dist, opts.max_tuple_pairs));
  for (auto& l : model.closed_form_laws()) rep.laws.push_back(std::move(l));

  const MetricSpace y = opts.target ? *opts.target : default_target(model);
  const auto ty = model.over(y);
  const auto maps = nonexpanding_maps(x, y);
  {
    LawResult r{"enrichment d(Tf, Tg) <= d(f, g)", true, 0, ""};
    std::uint64_t skipped = 0;
    for (const auto& f : maps) {
      const auto rf = rename(x, y, f);
      for (const auto& g : maps) {
        if (!r.pass) break;
        const Distance bound = map_distance(x, y, f, g);
        const auto rg = rename(x, y, g);
        for (const Term& s : elems) {
          const Term a = map_leaves(s, rf), b = map_leaves(s, rg);
          Distance d;
          try {
            d = ty->distance(a, b);
          } catch (const UndefinedError&) {
            ++skipped;
            continue;
          }
          ++r.checked;
          if (!leq(d, bound)) {
            r.pass = false;
            r.detail = "at " + to_string(s) + ": " + format_distance(d) + " > " + format_distance(bound);
            break;
          }
        }
      }
    }
    if (r.pass)
      r.detail = std::to_string(maps.size()) + " nonexpanding maps into a " +
                 std::to_string(y.size()) + "-point space" +
                 (skipped ? "; " + std::to_string(skipped) + " skipped" : "");
    rep.laws.push_back(std::move(r));
  }
  {
    LawResult r{"T preserves surjections", true, 0, ""};
    if (truncated) {
      r.detail = "skipped: element prefix cannot cover the codomain";
    } else {
      std::set<std::string> target;
      for (const Term& e : ty->elements()) target.insert(ty->element_label(e));
      std::size_t surjective = 0;
      for (const auto& f : maps) {
        std::set<std::size_t> image(f.begin(), f.end());
        if (image.size() != y.size()) continue;
        ++surjective;
        const auto rf = rename(x, y, f);
        std::set<std::string> hit;
        for (const Term& s : elems) {
          try {
            hit.insert(ty->element_label(map_leaves(s, rf)));
          } catch (const UndefinedError&) {
          }
        }
        ++r.checked;
        for (const auto& lbl : target)
          if (!hit.count(lbl)) {
            r.pass = false;
            r.detail = "element " + lbl + " of T Y not hit";
            break;
          }
        if (!r.pass) break;
      }
      if (r.pass) r.detail = std::to_string(surjective) + " surjective maps";
    }
    rep.laws.push_back(std::move(r));
  }
  rep.pass = std::all_of(rep.laws.begin(), rep.laws.end(), [](const LawResult& l) { return l.pass; });
  return rep;
}

// --- Freeness ----------------------------------------------------------------

namespace {

struct OpEntry {
  std::string symbol;
  std::vector<std::size_t> args;  // element indices
  std::size_t result;             // element index
};

}  // namespace

std::vector<LawResult> freeness_spot_check(const FreeAlgebraModel& model,
                                           const std::vector<FiniteQuantAlgebra>& algebras,
                                           std::uint64_t max_candidates) {
  std::vector<LawResult> out;
  const MetricSpace& x = model.base();
  const auto elems = model.elements();
  const std::size_t n = elems.size();
  std::unordered_map<std::string, std::size_t> by_label;
  for (std::size_t i = 0; i < n; ++i) by_label.emplace(model.element_label(elems[i]), i);

  std::vector<std::optional<std::size_t>> eta(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto it = by_label.find(model.element_label(Term::leaf(x.point(i))));
    if (it != by_label.end()) eta[i] = it->second;
  }
  // operation table restricted to results inside the element set
  std::vector<OpEntry> ops;
  for (const auto& [name, arity] : model.signature().symbols()) {
    const double count = std::pow(static_cast<double>(n), static_cast<double>(arity));
    if (count > 1e6) throw CapExceeded("freeness operation table", count, 1'000'000);
    for_each_tuple(n, arity, [&](std::span<const std::size_t> tup) {
      std::vector<Term> kids;
      for (std::size_t i : tup) kids.push_back(elems[i]);
      std::string lbl;
      try {
        lbl = model.element_label(Term::op(name, std::move(kids)));
      } catch (const UndefinedError&) {
        return;
      }
      auto it = by_label.find(lbl);
      if (it != by_label.end()) ops.push_back({name, {tup.begin(), tup.end()}, it->second});
    });
  }
  // Elements generated from eta(X) by the recorded operations; a homomorphism
  // extending f is determined on them.
  std::vector<char> generated(n, 0);
  for (const auto& e : eta)
    if (e) generated[*e] = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& op : ops)
      if (!generated[op.result] &&
          std::all_of(op.args.begin(), op.args.end(), [&](std::size_t a) { return generated[a] != 0; })) {
        generated[op.result] = 1;
        grew = true;
      }
  }
  const bool all_generated = std::all_of(generated.begin(), generated.end(), [](char c) { return c != 0; });
  std::vector<Distance> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) dist[i * n + j] = model.distance(elems[i], elems[j]);

  for (std::size_t k = 0; k < algebras.size(); ++k) {
    const FiniteQuantAlgebra& a = algebras[k];
    const std::string tag = " (algebra " + std::to_string(k) + ", " + std::to_string(a.size()) + " points)";
    LawResult hom{"extension is a nonexpanding homomorphism" + tag, true, 0, ""};
    LawResult uniq{"extension is unique" + tag, true, 0, ""};
    const auto maps = nonexpanding_maps(x, a.carrier());
    const double candidates = std::pow(static_cast<double>(a.size()), static_cast<double>(n));
    const bool brute = candidates <= static_cast<double>(max_candidates);
    for (const auto& f : maps) {
      if (!hom.pass || !uniq.pass) break;
      Environment env;
      for (std::size_t i = 0; i < x.size(); ++i) env.emplace(x.point(i), f[i]);
      std::vector<std::size_t> ext(n);
      for (std::size_t e = 0; e < n; ++e) ext[e] = evaluate(elems[e], a, env);
      ++hom.checked;
      for (std::size_t i = 0; i < x.size() && hom.pass; ++i)
        if (eta[i] && ext[*eta[i]] != f[i]) {
          hom.pass = false;
          hom.detail = "does not extend f at " + x.point(i);
        }
      for (const auto& op : ops) {
        if (!hom.pass) break;
        std::vector<std::size_t> args;
        for (std::size_t e : op.args) args.push_back(ext[e]);
        if (a.apply(op.symbol, args) != ext[op.result]) {
          hom.pass = false;
          hom.detail = "not a homomorphism at " + op.symbol + " -> " + to_string(elems[op.result]);
        }
      }
      for (std::size_t i = 0; i < n && hom.pass; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!leq(a.carrier()(ext[i], ext[j]), dist[i * n + j])) {
            hom.pass = false;
            hom.detail = "expands " + pair_detail(elems[i], elems[j]);
            break;
          }
      if (!hom.pass) break;
      if (brute) {
        std::uint64_t found = 0;
        for_each_tuple(a.size(), n, [&](std::span<const std::size_t> h) {
          for (std::size_t i = 0; i < x.size(); ++i)
            if (eta[i] && h[*eta[i]] != f[i]) return;
          for (const auto& op : ops) {
            std::vector<std::size_t> args;
            for (std::size_t e : op.args) args.push_back(h[e]);
            if (a.apply(op.symbol, args) != h[op.result]) return;
          }
          ++found;
        });
        uniq.checked += static_cast<std::uint64_t>(candidates);
        if (found != 1) {
          uniq.pass = false;
          uniq.detail = std::to_string(found) + " homomorphisms extend one map";
        }
      } else if (!all_generated) {
        uniq.pass = false;
        uniq.detail = "elements not generated by the unit; uniqueness undecided within budget";
      } else {
        ++uniq.checked;
      }
    }
    if (hom.pass) hom.detail = std::to_string(maps.size()) + " nonexpanding maps X -> A";
    if (uniq.pass)
      uniq.detail = brute ? "all candidate maps on the element set enumerated"
                          : "every element generated from the unit";
    out.push_back(std::move(hom));
    out.push_back(std::move(uniq));
  }
  return out;
}

namespace {

MetricSpace two_points(Distance d) { return MetricSpace::from_table({"0", "1"}, {0.0, d, d, 0.0}); }

// Interprets every symbol as the max of its arguments (0 for constants) on a chain.
FiniteQuantAlgebra max_algebra(const Signature& sig, const MetricSpace& chain) {
  std::map<std::string, std::vector<std::size_t>> tables;
  for (const auto& [name, arity] : sig.symbols()) {
    auto& t = tables[name];
    for_each_tuple(chain.size(), arity, [&](std::span<const std::size_t> args) {
      std::size_t m = 0;
      for (std::size_t v : args) m = std::max(m, v);
      t.push_back(m);
    });
  }
  return FiniteQuantAlgebra(chain, sig, std::move(tables));
}

}  // namespace

std::vector<FiniteQuantAlgebra> sample_algebras(const FreeAlgebraModel& model) {
  std::vector<FiniteQuantAlgebra> out;
  const Signature& sig = model.signature();
  if (dynamic_cast<const WordMonoidModel*>(&model)) {
    const MonoidSymbols s = monoid_symbols(sig);
    out.emplace_back(two_points(1.0), sig,
                     std::map<std::string, std::vector<std::size_t>>{{s.mul, {0, 0, 0, 1}}, {s.unit, {1}}});
    out.emplace_back(discrete({"0", "1"}), sig,
                     std::map<std::string, std::vector<std::size_t>>{{s.mul, {0, 1, 1, 0}}, {s.unit, {0}}});
  } else if (dynamic_cast<const HausdorffModel*>(&model)) {
    out.push_back(max_algebra(sig, two_points(1.0)));
    out.push_back(max_algebra(
        sig, MetricSpace::from_function({"0", "1", "2"}, [](std::size_t i, std::size_t j) {
          return static_cast<Distance>(i > j ? i - j : j - i);
        })));
  } else if (dynamic_cast<const TwoOpsModel*>(&model) || dynamic_cast<const TermMonadModel*>(&model)) {
    out.push_back(max_algebra(sig, two_points(1.0)));
  } else if (const auto* ex = dynamic_cast<const ExceptionModel*>(&model)) {
    const MetricSpace& e = ex->exceptions();
    std::string extra = "z";
    while (e.find(extra)) extra += "'";
    std::vector<std::string> pts = e.points();
    pts.push_back(extra);
    const std::size_t m = e.size();
    const auto carrier = MetricSpace::from_function(pts, [&](std::size_t i, std::size_t j) {
      return i < m && j < m ? e(i, j) : kInfinity;
    });
    std::map<std::string, std::vector<std::size_t>> tables;
    for (std::size_t i = 0; i < m; ++i) tables[e.point(i)] = {i};
    out.emplace_back(carrier, sig, std::move(tables));
  } else if (const auto* sm = dynamic_cast<const SmallSpaceModel*>(&model)) {
    out.emplace_back(discrete({"0"}), sig, std::map<std::string, std::vector<std::size_t>>{});
    if (sm->eps() > 0.0)
      out.emplace_back(two_points(std::min<Distance>(sm->eps(), 1.0)), sig,
                       std::map<std::string, std::vector<std::size_t>>{});
  } else if (const auto* ac = dynamic_cast<const ActionModel*>(&model)) {
    const FiniteQuantAlgebra& m = ac->monoid();
    std::map<std::string, std::vector<std::size_t>> tables;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t y = 0; y < m.size(); ++y) tables[m.carrier().point(i)].push_back(monoid_mul(m, i, y));
    out.emplace_back(m.carrier(), sig, std::move(tables));
  }
  return out;
}

}  // namespace qalg
