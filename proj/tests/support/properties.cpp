#include "properties.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "qalg/finitarity.hpp"
#include "qalg/variety.hpp"

namespace qalg::testing {

MetricSpace two_point(Distance d, const std::string& a, const std::string& b) {
  return MetricSpace::from_table({a, b}, {0.0, d, d, 0.0});
}

MetricSpace pqr() {
  return MetricSpace::from_table({"p", "q", "r"}, {0, 1, 3, 1, 0, 2, 3, 2, 0});
}

FiniteQuantAlgebra monoid_em(Distance d) {
  const Signature sig{{"mul", 2}, {"e", 0}};
  return FiniteQuantAlgebra(two_point(d, "e", "m"), sig, {{"mul", {0, 1, 1, 1}}, {"e", {0}}});
}

MetricSpace exceptions_e12() { return two_point(0.4, "e1", "e2"); }

PseudoMetricSpace random_pseudometric(std::size_t n, std::uint64_t seed, const std::string& prefix) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 7);
  std::vector<Distance> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const int k = pick(rng);
      const Distance d = k == 7 ? kInfinity : 0.5 * k;
      w[i * n + j] = w[j * n + i] = d;
    }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return PseudoMetricSpace::from_table(names, shortest_path_closure(n, std::move(w)));
}

std::vector<Distance> brute_force_meet(const PseudoMetricSpace& a, const PseudoMetricSpace& b) {
  const std::size_t n = a.size();
  std::vector<Distance> out(n * n, kInfinity);
  std::vector<char> used(n, 0);
  std::function<void(std::size_t, std::size_t, Distance)> walk = [&](std::size_t start, std::size_t at,
                                                                      Distance cost) {
    out[start * n + at] = std::min(out[start * n + at], cost);
    for (std::size_t next = 0; next < n; ++next) {
      if (used[next]) continue;
      const Distance w = std::min(a(at, next), b(at, next));
      if (w == kInfinity) continue;
      used[next] = 1;
      walk(start, next, cost + w);
      used[next] = 0;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    used[s] = 1;
    walk(s, s, 0.0);
    used[s] = 0;
  }
  return out;
}

std::vector<std::unique_ptr<FreeAlgebraModel>> property_models() {
  const MetricSpace ab = two_point(1.0);
  const MetricSpace line4 = MetricSpace::from_function({"w", "x", "y", "z"}, [](std::size_t i, std::size_t j) {
    return static_cast<Distance>(i > j ? i - j : j - i);
  });
  std::vector<std::unique_ptr<FreeAlgebraModel>> m;
  m.push_back(std::make_unique<TermMonadModel>(Signature{{"sigma1", 2}, {"sigma2", 2}}, ab, 2));
  m.push_back(std::make_unique<WordMonoidModel>(ab, 3));
  m.push_back(std::make_unique<WordMonoidModel>(pqr(), 2));
  m.push_back(std::make_unique<HausdorffModel>(pqr()));
  m.push_back(std::make_unique<HausdorffModel>(line4));
  m.push_back(std::make_unique<ExceptionModel>(ab, exceptions_e12()));
  m.push_back(std::make_unique<SmallSpaceModel>(pqr(), 0.5));
  m.push_back(std::make_unique<SmallSpaceModel>(line4, 1.5));
  m.push_back(std::make_unique<ActionModel>(monoid_em(), ab));
  m.push_back(std::make_unique<TwoOpsModel>(ab, 0.5, 2));
  m.push_back(std::make_unique<OrdinaryFreeModel>(monoid_presentation(), ab, monoid_oracle(), 3));
  m.push_back(std::make_unique<OrdinaryFreeModel>(semilattice_presentation(), pqr(), semilattice_oracle(), 3));
  m.push_back(std::make_unique<UnaryFreeModel>(action_presentation(monoid_em()), ab, 3));
  m.push_back(std::make_unique<UnaryFreeModel>(small_presentation(0.5), pqr(), 1));
  m.push_back(std::make_unique<UnaryFreeModel>(exceptions_presentation(exceptions_e12()), ab, 1));
  return m;
}

namespace {

void check_space(PropertyOutcome& o, const std::string& label, std::size_t n, std::span<const Distance> table,
                 bool separation) {
  if (!o.pass) return;
  ++o.checked;
  auto v = separation ? find_metric_violation(n, table) : find_pseudometric_violation(n, table);
  if (v) {
    o.pass = false;
    o.detail = label + ": axiom violation at (" + std::to_string(v->i) + "," + std::to_string(v->j) + "," +
               std::to_string(v->k) + ")";
  }
}

}  // namespace

PropertyOutcome metric_axioms_sweep() {
  PropertyOutcome o{"metric axioms on constructed spaces", true, 0, ""};
  const MetricSpace ab = two_point(1.0);
  std::vector<std::pair<std::string, MetricSpace>> spaces = {
      {"pqr", pqr()},
      {"max_product", max_product(pqr(), ab)},
      {"sum_tensor", sum_tensor(pqr(), ab)},
      {"underlying_discrete", underlying_discrete(pqr())},
  };
  const MetricSpace parts[2] = {pqr(), ab};
  spaces.emplace_back("coproduct", coproduct(parts));
  for (const auto& [label, s] : spaces) check_space(o, label, s.size(), s.table(), true);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 2 + seed % 30;
    const auto a = random_pseudometric(n, seed), b = random_pseudometric(n, seed + 1000);
    const auto m = meet(a, b);
    check_space(o, "meet", m.size(), m.table(), false);
    const auto r = metric_reflection(m);
    check_space(o, "reflection", r.space.size(), r.space.table(), true);
  }
  for (const auto& model : property_models()) {
    auto elems = model->elements();
    if (elems.size() > 300) elems.resize(300);
    const std::size_t n = elems.size();
    std::vector<Distance> t(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) t[i * n + j] = model->distance(elems[i], elems[j]);
    check_space(o, model->name(), n, t, true);
  }
  return o;
}

PropertyOutcome model_law_sweep() {
  PropertyOutcome o{"model laws (nonexpansion, unit, enrichment)", true, 0, ""};
  for (const auto& model : property_models()) {
    const LawSuiteReport rep = monad_law_suite(*model);
    for (const auto& l : rep.laws) {
      o.checked += l.checked;
      if (!l.pass && o.pass) {
        o.pass = false;
        o.detail = model->name() + ": " + l.law + ": " + l.detail;
      }
    }
  }
  return o;
}

PropertyOutcome meet_sweep(std::size_t trials) {
  PropertyOutcome o{"meet is the greatest lower bound", true, 0, ""};
  std::mt19937_64 rng(7);
  for (std::size_t k = 0; k < trials && o.pass; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto a = random_pseudometric(n, 2 * k + 1), b = random_pseudometric(n, 2 * k + 2);
    const auto m = meet(a, b);
    const auto brute = brute_force_meet(a, b);
    for (std::size_t i = 0; i < n * n; ++i) {
      ++o.checked;
      if (m.table()[i] != brute[i]) {
        o.pass = false;
        o.detail = "shortest paths disagree with chain enumeration, trial " + std::to_string(k);
        break;
      }
    }
    // e: a random pseudometric pushed below both arguments
    for (int t = 0; t < 5 && o.pass; ++t) {
      const auto r = random_pseudometric(n, rng());
      std::vector<Distance> w(n * n);
      for (std::size_t i = 0; i < n * n; ++i) w[i] = std::min({r.table()[i], a.table()[i], b.table()[i]});
      const auto e = shortest_path_closure(n, std::move(w));
      for (std::size_t i = 0; i < n * n; ++i) {
        ++o.checked;
        if (!(e[i] <= a.table()[i] && e[i] <= b.table()[i] && e[i] <= m.table()[i])) {
          o.pass = false;
          o.detail = "a lower bound exceeds the meet, trial " + std::to_string(k);
          break;
        }
      }
    }
  }
  return o;
}

PropertyOutcome reflection_sweep(std::size_t trials) {
  PropertyOutcome o{"metric reflection preserves distances", true, 0, ""};
  for (std::size_t k = 0; k < trials && o.pass; ++k) {
    const auto p = random_pseudometric(2 + k % 9, 5000 + k);
    const auto r = metric_reflection(p);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) {
        ++o.checked;
        if (r.space(r.quotient[i], r.quotient[j]) != p(i, j)) {
          o.pass = false;
          o.detail = "trial " + std::to_string(k);
        }
      }
  }
  return o;
}

std::vector<PropertyOutcome> full_property_suite() {
  return {metric_axioms_sweep(), model_law_sweep(), meet_sweep(), reflection_sweep()};
}

}  // namespace qalg::testing
