#include "qalg/variety.hpp"

#include <algorithm>
#include <set>

#include "qalg/error.hpp"

namespace qalg {

std::vector<std::string> QuantEquation::variables() const {
  std::set<std::size_t> ids;
  for (const Term* side : {&lhs, &rhs})
    for (const auto& l : leaves(*side))
      if (auto i = formal_variable_index(l)) ids.insert(*i);
  std::vector<std::string> out;
  for (std::size_t i : ids) out.push_back(formal_variable(i));
  return out;
}

std::string QuantEquation::text() const {
  return to_string(lhs) + " =_" + format_distance(eps) + " " + to_string(rhs);
}

bool VarietyPresentation::ordinary() const {
  return std::all_of(equations.begin(), equations.end(),
                     [](const QuantEquation& e) { return e.eps == 0.0; });
}

bool VarietyPresentation::unary() const { return signature.max_arity() <= 1; }

void VarietyPresentation::validate() const {
  for (const auto& v : vars)
    if (!is_formal_variable(v))
      throw ValidationError("variable '" + v + "' is not of the form x0, x1, ...");
  for (const auto& e : equations) {
    if (!is_valid_distance(e.eps)) throw ValidationError("negative eps in " + e.text());
    check_well_formed(e.lhs, signature);
    check_well_formed(e.rhs, signature);
    for (const Term* side : {&e.lhs, &e.rhs})
      for (const auto& l : leaves(*side)) {
        if (!is_formal_variable(l))
          throw ValidationError("leaf '" + l + "' in " + e.text() + " is not a formal variable");
        if (!vars.empty() && std::find(vars.begin(), vars.end(), l) == vars.end())
          throw ValidationError("undeclared variable '" + l + "' in " + e.text());
      }
  }
}

namespace {

QuantEquation eq(const Signature& sig, const std::string& l, const std::string& r, Distance eps) {
  return QuantEquation{parse_term(l, sig), parse_term(r, sig), eps};
}

}  // namespace

VarietyPresentation monoid_presentation(const std::string& mul, const std::string& unit) {
  VarietyPresentation v{"monoid", Signature{{mul, 2}, {unit, 0}}, {"x0", "x1", "x2"}, {}};
  const Term x0 = Term::leaf("x0"), x1 = Term::leaf("x1"), x2 = Term::leaf("x2"), e = Term::op(unit);
  auto m = [&](Term l, Term r) { return Term::op(mul, {std::move(l), std::move(r)}); };
  v.equations = {{m(x0, m(x1, x2)), m(m(x0, x1), x2), 0.0}, {m(e, x0), x0, 0.0}, {m(x0, e), x0, 0.0}};
  return v;
}

VarietyPresentation monoid_presentation() { return monoid_presentation("mul", "e"); }

VarietyPresentation semilattice_presentation() {
  VarietyPresentation v{"semilattice", Signature{{"join", 2}, {"bot", 0}}, {"x0", "x1", "x2"}, {}};
  const auto& s = v.signature;
  v.equations = {eq(s, "(join x0 (join x1 x2))", "(join (join x0 x1) x2)", 0),
                 eq(s, "(join x0 x1)", "(join x1 x0)", 0), eq(s, "(join x0 x0)", "x0", 0),
                 eq(s, "(join x0 (bot))", "x0", 0)};
  return v;
}

MonoidSymbols monoid_symbols(const Signature& sig) {
  MonoidSymbols m;
  for (const auto& [name, ar] : sig.symbols()) {
    if (ar == 2 && m.mul.empty()) m.mul = name;
    else if (ar == 0 && m.unit.empty()) m.unit = name;
    else throw PreconditionError("not a monoid signature: extra symbol '" + name + "'");
  }
  if (m.mul.empty() || m.unit.empty())
    throw PreconditionError("monoid signature needs one binary and one nullary symbol");
  return m;
}

std::size_t monoid_mul(const FiniteQuantAlgebra& m, std::size_t a, std::size_t b) {
  const std::size_t args[2] = {a, b};
  return m.apply(monoid_symbols(m.signature()).mul, args);
}

std::size_t monoid_unit(const FiniteQuantAlgebra& m) {
  return m.apply(monoid_symbols(m.signature()).unit, {});
}

void require_quantitative_monoid(const FiniteQuantAlgebra& m) {
  const MonoidSymbols syms = monoid_symbols(m.signature());
  auto rep = check_nonexpanding(m);
  if (!rep.ok) throw PreconditionError("monoid operations expand distances: " + rep.describe(m));
  VarietyPresentation laws = monoid_presentation(syms.mul, syms.unit);
  auto check = satisfies_all(m, laws);
  for (std::size_t i = 0; i < check.per_equation.size(); ++i)
    if (!check.per_equation[i].holds)
      throw PreconditionError("not a monoid: " + laws.equations[i].text() + " fails at " +
                              check.per_equation[i].describe(m));
}

VarietyPresentation action_presentation(const FiniteQuantAlgebra& monoid) {
  require_quantitative_monoid(monoid);
  const auto& carrier = monoid.carrier();
  VarietyPresentation v{"action", {}, {"x0"}, {}};
  for (const auto& p : carrier.points()) v.signature.add(p, 1);
  const std::size_t n = carrier.size();
  const std::size_t unit = monoid_unit(monoid);
  auto app = [&](std::size_t m, Term t) { return Term::op(carrier.point(m), {std::move(t)}); };
  const Term x0 = Term::leaf("x0");
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t m2 = 0; m2 < n; ++m2)
      v.equations.push_back({app(m, app(m2, x0)), app(monoid_mul(monoid, m, m2), x0), 0.0});
  v.equations.push_back({app(unit, x0), x0, 0.0});
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t m2 = m + 1; m2 < n; ++m2)
      if (is_finite(carrier(m, m2)))
        v.equations.push_back({app(m, x0), app(m2, x0), carrier(m, m2)});
  return v;
}

VarietyPresentation two_eps_ops_presentation(Distance eps) {
  VarietyPresentation v{"two-eps-ops", Signature{{"sigma1", 2}, {"sigma2", 2}}, {"x0", "x1"}, {}};
  v.equations = {eq(v.signature, "(sigma1 x0 x1)", "(sigma2 x0 x1)", eps)};
  return v;
}

VarietyPresentation small_presentation(Distance eps) {
  VarietyPresentation v{"small", Signature{}, {"x0", "x1"}, {}};
  v.equations = {QuantEquation{Term::leaf("x0"), Term::leaf("x1"), eps}};
  return v;
}

VarietyPresentation exceptions_presentation(const MetricSpace& e) {
  VarietyPresentation v{"exceptions", {}, {}, {}};
  for (const auto& p : e.points()) v.signature.add(p, 0);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (is_finite(e(i, j)))
        v.equations.push_back({Term::op(e.point(i)), Term::op(e.point(j)), e(i, j)});
  return v;
}

std::string SatisfactionResult::describe(const FiniteQuantAlgebra& a) const {
  std::string s = "{";
  for (std::size_t i = 0; i < vars.size() && i < witness.size(); ++i)
    s += (i ? ", " : "") + vars[i] + "=" + a.carrier().point(witness[i]);
  return s + "} at distance " + format_distance(worst);
}

SatisfactionResult satisfies(const FiniteQuantAlgebra& a, const QuantEquation& e) {
  SatisfactionResult r;
  r.vars = e.variables();
  Environment env;
  bool first = true;
  for_each_tuple(a.size(), r.vars.size(), [&](std::span<const std::size_t> tuple) {
    for (std::size_t i = 0; i < r.vars.size(); ++i) env[r.vars[i]] = tuple[i];
    ++r.interpretations;
    const Distance d = a.carrier()(evaluate(e.lhs, a, env), evaluate(e.rhs, a, env));
    if (first || d > r.worst) {
      r.worst = d;
      r.witness.assign(tuple.begin(), tuple.end());
      first = false;
    }
  });
  r.holds = leq(r.worst, e.eps);
  return r;
}

VarietyCheck satisfies_all(const FiniteQuantAlgebra& a, const VarietyPresentation& v) {
  VarietyCheck c;
  for (const auto& e : v.equations) {
    c.per_equation.push_back(satisfies(a, e));
    c.holds = c.holds && c.per_equation.back().holds;
  }
  return c;
}

}  // namespace qalg
