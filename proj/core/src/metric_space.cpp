#include "qalg/metric_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "qalg/error.hpp"

namespace qalg {

std::string format_distance(Distance d) {
  if (d == kInfinity) return "inf";
  if (d == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, res.ptr);
}

Distance parse_distance(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Infinity") return kInfinity;
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ValidationError("not a distance: '" + text + "'");
  if (!is_valid_distance(v)) throw ValidationError("negative distance: '" + text + "'");
  return v;
}

std::string CapExceeded::describe(double v) {
  std::ostringstream out;
  if (v < 1e15) {
    out << static_cast<unsigned long long>(v);
  } else {
    out.precision(3);
    out << v;
  }
  return out.str();
}

std::string AxiomViolation::describe(std::span<const std::string> names) const {
  auto nm = [&](std::size_t x) { return x < names.size() ? names[x] : std::to_string(x); };
  switch (kind) {
    case Kind::Negative:
      return "negative or NaN distance between " + nm(i) + " and " + nm(j);
    case Kind::NonzeroDiagonal:
      return "nonzero self-distance at " + nm(i);
    case Kind::Asymmetric:
      return "asymmetric distance between " + nm(i) + " and " + nm(j);
    case Kind::Triangle:
      return "triangle inequality violated: d(" + nm(i) + "," + nm(k) + ") > d(" + nm(i) + "," +
             nm(j) + ") + d(" + nm(j) + "," + nm(k) + ")";
    case Kind::Separation:
      return "distinct points " + nm(i) + " and " + nm(j) + " at distance 0";
  }
  return "unknown axiom violation";
}

std::optional<AxiomViolation> find_pseudometric_violation(std::size_t n,
                                                          std::span<const Distance> t,
                                                          Distance tol) {
  using K = AxiomViolation::Kind;
  for (std::size_t i = 0; i < n; ++i) {
    if (t[i * n + i] != 0.0) return AxiomViolation{K::NonzeroDiagonal, i, i, i};
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_valid_distance(t[i * n + j])) return AxiomViolation{K::Negative, i, j, j};
      if (t[i * n + j] != t[j * n + i]) return AxiomViolation{K::Asymmetric, i, j, j};
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Distance dij = t[i * n + j];
      if (dij == kInfinity) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (!leq(t[i * n + k], dij + t[j * n + k], tol)) return AxiomViolation{K::Triangle, i, j, k};
    }
  return std::nullopt;
}

std::optional<AxiomViolation> find_metric_violation(std::size_t n, std::span<const Distance> t,
                                                    Distance tol) {
  if (auto v = find_pseudometric_violation(n, t, tol)) return v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (t[i * n + j] == 0.0) return AxiomViolation{AxiomViolation::Kind::Separation, i, j, j};
  return std::nullopt;
}

std::optional<std::string> validate_metric(const PseudoMetricSpace& space, bool require_separation,
                                           Distance tol) {
  auto v = require_separation ? find_metric_violation(space.size(), space.table(), tol)
                              : find_pseudometric_violation(space.size(), space.table(), tol);
  if (!v) return std::nullopt;
  return v->describe(space.points());
}

PseudoMetricSpace::PseudoMetricSpace(std::vector<std::string> points, std::vector<Distance> table)
    : points_(std::move(points)), table_(std::move(table)) {
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (!index_.emplace(points_[i], i).second)
      throw ValidationError("duplicate point identifier '" + points_[i] + "'");
}

PseudoMetricSpace PseudoMetricSpace::from_table(std::vector<std::string> points,
                                                std::vector<Distance> table, Validate validate) {
  const std::size_t n = points.size();
  if (table.size() != n * n)
    throw ValidationError("distance table has " + std::to_string(table.size()) +
                          " entries, expected " + std::to_string(n * n));
  PseudoMetricSpace space(std::move(points), std::move(table));
  if (validate == Validate::Yes) {
    if (auto v = find_pseudometric_violation(n, space.table_))
      throw ValidationError(v->describe(space.points_));
  }
  return space;
}

std::optional<std::size_t> PseudoMetricSpace::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PseudoMetricSpace::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw ValidationError("unknown point '" + std::string(name) + "'");
}

Distance PseudoMetricSpace::diameter() const {
  Distance best = 0.0;
  for (Distance d : table_) best = std::max(best, d);
  return best;
}

bool PseudoMetricSpace::same_points(const PseudoMetricSpace& other) const {
  if (size() != other.size()) return false;
  return std::all_of(points_.begin(), points_.end(),
                     [&](const std::string& p) { return other.find(p).has_value(); });
}

MetricSpace MetricSpace::from_table(std::vector<std::string> points, std::vector<Distance> table,
                                    Validate validate) {
  return from_pseudo(PseudoMetricSpace::from_table(std::move(points), std::move(table), validate));
}

MetricSpace MetricSpace::from_pseudo(const PseudoMetricSpace& p) {
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p(i, j) == 0.0)
        throw ValidationError(
            AxiomViolation{AxiomViolation::Kind::Separation, i, j, j}.describe(p.points()));
  return MetricSpace(p);
}

std::string pair_name(std::string_view a, std::string_view b) {
  std::string out;
  out.reserve(a.size() + b.size() + 3);
  out += '(';
  out += a;
  out += ',';
  out += b;
  out += ')';
  return out;
}

namespace {

template <class Combine>
MetricSpace product_with(const MetricSpace& x, const MetricSpace& y, Combine combine) {
  const std::size_t nx = x.size(), ny = y.size(), n = nx * ny;
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) names.push_back(pair_name(x.point(i), y.point(j)));
  std::vector<Distance> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a * n + b] = combine(x(a / ny, b / ny), y(a % ny, b % ny));
  return MetricSpace::from_table(std::move(names), std::move(table), Validate::No);
}

}  // namespace

MetricSpace max_product(const MetricSpace& x, const MetricSpace& y) {
  return product_with(x, y, [](Distance a, Distance b) { return std::max(a, b); });
}

MetricSpace sum_tensor(const MetricSpace& x, const MetricSpace& y) {
  return product_with(x, y, [](Distance a, Distance b) { return a + b; });
}

MetricSpace coproduct(std::span<const MetricSpace> spaces) {
  std::vector<std::string> names;
  std::vector<std::size_t> summand, local;
  for (std::size_t k = 0; k < spaces.size(); ++k)
    for (std::size_t i = 0; i < spaces[k].size(); ++i) {
      names.push_back(std::to_string(k) + ":" + spaces[k].point(i));
      summand.push_back(k);
      local.push_back(i);
    }
  const std::size_t n = names.size();
  std::vector<Distance> table(n * n, kInfinity);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (summand[a] == summand[b]) table[a * n + b] = spaces[summand[a]](local[a], local[b]);
  return MetricSpace::from_table(std::move(names), std::move(table), Validate::No);
}

MetricSpace discrete(std::vector<std::string> ids) {
  const std::size_t n = ids.size();
  std::unordered_set<std::string> seen;
  for (const auto& id : ids)
    if (!seen.insert(id).second) throw ValidationError("duplicate point identifier '" + id + "'");
  std::vector<Distance> table(n * n, kInfinity);
  for (std::size_t i = 0; i < n; ++i) table[i * n + i] = 0.0;
  return MetricSpace::from_table(std::move(ids), std::move(table), Validate::No);
}

MetricSpace underlying_discrete(const PseudoMetricSpace& x) { return discrete(x.points()); }

std::optional<ExpansionWitness> find_expansion(const PseudoMetricSpace& from,
                                               const PseudoMetricSpace& to, const PointMap& f,
                                               Distance tol) {
  if (f.size() != from.size())
    throw PreconditionError("map is not total on its domain");
  for (std::size_t i = 0; i < from.size(); ++i)
    for (std::size_t j = i + 1; j < from.size(); ++j) {
      const Distance after = to(f[i], f[j]);
      if (!leq(after, from(i, j), tol)) return ExpansionWitness{i, j, from(i, j), after};
    }
  return std::nullopt;
}

PointMap identity_carried(const PseudoMetricSpace& from, const PseudoMetricSpace& to) {
  PointMap f(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    auto j = to.find(from.point(i));
    if (!j) throw PreconditionError("point '" + from.point(i) + "' missing from codomain");
    f[i] = *j;
  }
  return f;
}

Distance map_distance(const PseudoMetricSpace& from, const PseudoMetricSpace& to, const PointMap& f,
                      const PointMap& g) {
  Distance best = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) best = std::max(best, to(f.at(i), g.at(i)));
  return best;
}

std::vector<Distance> shortest_path_closure(std::size_t n, std::vector<Distance> w) {
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Distance dik = w[i * n + k];
      if (dik == kInfinity) continue;
      Distance* row = &w[i * n];
      const Distance* krow = &w[k * n];
      for (std::size_t j = 0; j < n; ++j) {
        const Distance via = dik + krow[j];
        if (via < row[j]) row[j] = via;
      }
    }
  return w;
}

PseudoMetricSpace meet(const PseudoMetricSpace& d1, const PseudoMetricSpace& d2) {
  if (!d1.same_points(d2)) throw ValidationError("meet: point sets differ");
  const std::size_t n = d1.size();
  std::vector<std::size_t> to2(n);
  for (std::size_t i = 0; i < n; ++i) to2[i] = d2.index_of(d1.point(i));
  std::vector<Distance> w(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = std::min(d1(i, j), d2(to2[i], to2[j]));
  return PseudoMetricSpace::from_table(d1.points(), shortest_path_closure(n, std::move(w)),
                                       Validate::No);
}

Reflection metric_reflection(const PseudoMetricSpace& p, Distance zero_tol) {
  const std::size_t n = p.size();
  Reflection r;
  r.quotient.assign(n, n);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    if (r.quotient[i] != n) continue;
    const std::size_t c = reps.size();
    reps.push_back(i);
    r.classes.emplace_back();
    for (std::size_t j = i; j < n; ++j)
      if (r.quotient[j] == n && p(i, j) <= zero_tol) {
        r.quotient[j] = c;
        r.classes[c].push_back(j);
      }
  }
  const std::size_t m = reps.size();
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t c : reps) names.push_back(p.point(c));
  std::vector<Distance> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = a == b ? 0.0 : p(reps[a], reps[b]);
  r.space = MetricSpace::from_table(std::move(names), std::move(table), Validate::No);
  return r;
}

std::string DiagonalNeighborhood::name(std::size_t k) const {
  return pair_name(base.point(left(k)), base.point(right(k)));
}

std::vector<std::string> DiagonalNeighborhood::names() const {
  std::vector<std::string> out;
  out.reserve(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) out.push_back(name(k));
  return out;
}

DiagonalNeighborhood diagonal_neighborhood(const MetricSpace& x, Distance eps) {
  DiagonalNeighborhood nb{x, eps, {}};
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (x(i, j) <= eps) nb.pairs.emplace_back(i, j);
  return nb;
}

}  // namespace qalg
