#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "qalg/entailment.hpp"
#include "qalg/error.hpp"
#include "qalg/free_models.hpp"

namespace qalg {

CongruenceOracle monoid_oracle(std::string mul, std::string unit) {
  auto nf = [mul, unit](const Term& t) {
    std::vector<Term> letters;
    std::function<void(const Term&)> walk = [&](const Term& s) {
      if (s.is_leaf()) {
        letters.push_back(s);
      } else if (s.label() == unit && s.arity() == 0) {
      } else if (s.label() == mul && s.arity() == 2) {
        walk(s.child(0));
        walk(s.child(1));
      } else {
        throw ValidationError("monoid oracle: unexpected symbol '" + s.label() + "'");
      }
    };
    walk(t);
    if (letters.empty()) return Term::op(unit);
    Term r = letters.back();
    for (std::size_t i = letters.size() - 1; i-- > 0;) r = Term::op(mul, {letters[i], r});
    return r;
  };
  return CongruenceOracle{"monoid", nf};
}

CongruenceOracle semilattice_oracle(std::string join, std::string bot) {
  auto nf = [join, bot](const Term& t) {
    std::vector<std::string> names;
    std::function<void(const Term&)> walk = [&](const Term& s) {
      if (s.is_leaf()) {
        names.push_back(s.label());
      } else if (s.label() == bot && s.arity() == 0) {
      } else if (s.label() == join && s.arity() == 2) {
        walk(s.child(0));
        walk(s.child(1));
      } else {
        throw ValidationError("semilattice oracle: unexpected symbol '" + s.label() + "'");
      }
    };
    walk(t);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    if (names.empty()) return Term::op(bot);
    Term r = Term::leaf(names.back());
    for (std::size_t i = names.size() - 1; i-- > 0;) r = Term::op(join, {Term::leaf(names[i]), r});
    return r;
  };
  return CongruenceOracle{"semilattice", nf};
}

// --- Ordinary equations ---------------------------------------------------

OrdinaryFreeModel::OrdinaryFreeModel(VarietyPresentation v, MetricSpace x, CongruenceOracle oracle,
                                     std::size_t max_depth, std::uint64_t cap)
    : v_(std::move(v)), x_(std::move(x)), oracle_(std::move(oracle)), max_depth_(max_depth),
      cap_(cap) {
  if (!v_.ordinary())
    throw PreconditionError("ordinary_free needs a presentation with all eps = 0");
  v_.validate();
  for (const auto& [name, ar] : v_.signature.symbols())
    if (x_.find(name)) throw ValidationError("symbol '" + name + "' is also a point of the base space");

  auto class_id = [&](const Term& t) {
    Term nf = oracle_.normal_form(t);
    auto [it, fresh] = class_index_.emplace(nf, classes_.size());
    if (fresh) classes_.push_back(nf);
    return it->second;
  };
  // (class a, class b) -> cheapest d* between similar representatives
  std::map<std::pair<std::size_t, std::size_t>, Distance> cost;
  auto relax = [&](std::size_t a, std::size_t b, Distance d) {
    auto [it, fresh] = cost.emplace(std::pair{a, b}, d);
    if (!fresh && d < it->second) it->second = d;
  };
  for (std::size_t i = 0; i < x_.size(); ++i)
    for (std::size_t j = 0; j < x_.size(); ++j)
      relax(class_id(Term::leaf(x_.point(i))), class_id(Term::leaf(x_.point(j))), x_(i, j));
  for (const auto& [name, ar] : v_.signature.symbols())
    if (ar == 0) {
      const std::size_t c = class_id(Term::op(name));
      relax(c, c, 0.0);
    }

  std::uint64_t combos = 0;
  for (std::size_t level = 1; level <= max_depth_; ++level) {
    const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Distance>> entries(cost.begin(),
                                                                                       cost.end());
    for (const auto& [name, arity] : v_.signature.symbols()) {
      if (arity == 0) continue;
      double projected = static_cast<double>(combos);
      projected += std::pow(static_cast<double>(entries.size()), static_cast<double>(arity));
      if (projected > static_cast<double>(cap_))
        throw CapExceeded("ordinary_free class-pair combinations at depth " + std::to_string(level),
                          projected, cap_);
      std::map<std::vector<std::size_t>, std::size_t> memo;
      auto apply = [&](const std::vector<std::size_t>& args) {
        auto it = memo.find(args);
        if (it != memo.end()) return it->second;
        std::vector<Term> kids;
        for (std::size_t a : args) kids.push_back(classes_[a]);
        const std::size_t c = class_id(Term::op(name, std::move(kids)));
        memo.emplace(args, c);
        return c;
      };
      std::vector<std::size_t> as(arity), bs(arity);
      for_each_tuple(entries.size(), arity, [&](std::span<const std::size_t> tuple) {
        ++combos;
        Distance d = 0.0;
        for (std::size_t k = 0; k < arity; ++k) {
          const auto& e = entries[tuple[k]];
          as[k] = e.first.first;
          bs[k] = e.first.second;
          d = std::max(d, e.second);
        }
        relax(apply(as), apply(bs), d);
      });
    }
  }

  const std::size_t m = classes_.size();
  std::vector<Distance> w(m * m, kInfinity);
  for (std::size_t i = 0; i < m; ++i) w[i * m + i] = 0.0;
  for (const auto& [ab, d] : cost) {
    auto& slot = w[ab.first * m + ab.second];
    slot = std::min(slot, d);
  }
  std::vector<std::string> names;
  names.reserve(m);
  for (const Term& c : classes_) names.push_back(to_string(c));
  refl_ = metric_reflection(PseudoMetricSpace::from_table(
      std::move(names), shortest_path_closure(m, std::move(w)), Validate::No));
}

std::optional<std::size_t> OrdinaryFreeModel::class_of(const Term& t) const {
  auto it = class_index_.find(oracle_.normal_form(t));
  if (it == class_index_.end()) return std::nullopt;
  return it->second;
}

Distance OrdinaryFreeModel::distance(const Term& t, const Term& u) const {
  auto a = class_of(t), b = class_of(u);
  if (!a || !b)
    throw UndefinedError("term " + to_string(a ? u : t) + " has no class within depth " +
                         std::to_string(max_depth_));
  return class_distance(*a, *b);
}

std::string OrdinaryFreeModel::element_label(const Term& t) const {
  return to_string(oracle_.normal_form(t));
}

std::unique_ptr<FreeAlgebraModel> OrdinaryFreeModel::over(const MetricSpace& base) const {
  return std::make_unique<OrdinaryFreeModel>(v_, base, oracle_, max_depth_, cap_);
}

// --- Unary signatures -----------------------------------------------------

UnaryFreeModel::UnaryFreeModel(VarietyPresentation v, MetricSpace x, std::size_t max_depth,
                               std::uint64_t cap)
    : v_(std::move(v)), x_(std::move(x)), max_depth_(max_depth), cap_(cap) {
  if (!v_.unary()) throw PreconditionError("unary_free needs all symbols of arity <= 1");
  v_.validate();
  universe_ = enumerate(x_.points(), v_.signature, max_depth_, cap_);
  const std::size_t n = universe_.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (const Term& t : universe_.terms) names.push_back(to_string(t));
  const auto star = PseudoMetricSpace::from_function(
      names,
      [&](std::size_t i, std::size_t j) { return dstar(universe_.terms[i], universe_.terms[j], x_); },
      Validate::No);
  const auto bound = PseudoMetricSpace::from_table(names, RewriteGraph(v_, universe_).all_pairs(),
                                                   Validate::No);
  pseudo_ = meet(star, bound);
  refl_ = metric_reflection(pseudo_);
}

Distance UnaryFreeModel::distance(const Term& t, const Term& u) const {
  auto a = universe_.find(t), b = universe_.find(u);
  if (!a || !b)
    throw UndefinedError("term " + to_string(a ? u : t) + " outside the depth-" +
                         std::to_string(max_depth_) + " universe");
  return refl_.space(refl_.quotient[*a], refl_.quotient[*b]);
}

std::string UnaryFreeModel::element_label(const Term& t) const {
  auto a = universe_.find(t);
  if (!a) throw UndefinedError("term " + to_string(t) + " outside the universe");
  return refl_.space.point(refl_.quotient[*a]);
}

std::vector<Term> UnaryFreeModel::elements() const {
  std::vector<Term> out;
  for (const auto& members : refl_.classes) out.push_back(universe_.terms[members.front()]);
  return out;
}

std::unique_ptr<FreeAlgebraModel> UnaryFreeModel::over(const MetricSpace& base) const {
  return std::make_unique<UnaryFreeModel>(v_, base, max_depth_, cap_);
}

}  // namespace qalg
