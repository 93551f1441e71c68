#include <algorithm>
#include <bit>

#include "qalg/error.hpp"
#include "qalg/free_models.hpp"

namespace qalg {

namespace {

void require_leaves_in(const Term& t, const PseudoMetricSpace& x) {
  for (const auto& l : leaves(t))
    if (!x.find(l)) throw ValidationError("leaf '" + l + "' is not a point of the base space");
}

void require_disjoint(const Signature& sig, const PseudoMetricSpace& x) {
  for (const auto& [name, ar] : sig.symbols())
    if (x.find(name)) throw ValidationError("symbol '" + name + "' is also a point of the base space");
}

LawResult law(std::string name) { return LawResult{std::move(name), true, 0, {}}; }

void fail(LawResult& r, std::string detail) {
  if (r.pass) r.detail = std::move(detail);
  r.pass = false;
}

}  // namespace

Term FreeAlgebraModel::parse_element(std::string_view text) const {
  Term t = parse_term(text, signature());
  require_leaves_in(t, base());
  return t;
}

// --- Term monad -----------------------------------------------------------

TermMonadModel::TermMonadModel(Signature sig, MetricSpace x, std::size_t sample_depth)
    : sig_(std::move(sig)), x_(std::move(x)), sample_depth_(sample_depth) {
  require_disjoint(sig_, x_);
}

std::vector<Term> TermMonadModel::elements() const {
  return enumerate(x_.points(), sig_, sample_depth_).terms;
}

std::unique_ptr<FreeAlgebraModel> TermMonadModel::over(const MetricSpace& base) const {
  return std::make_unique<TermMonadModel>(sig_, base, sample_depth_);
}

namespace {

// Unit and associativity laws of substitution, shared by the term-based models.
std::vector<LawResult> substitution_laws(const Signature& sig, const std::vector<Term>& sample,
                                         const PseudoMetricSpace& x) {
  LawResult unit_left = law("mu . eta_T = id");
  LawResult unit_right = law("mu . T eta = id");
  for (const Term& t : sample) {
    ++unit_left.checked;
    ++unit_right.checked;
    if (!(substitute_leaves(Term::leaf("x0"), {{"x0", t}}) == t))
      fail(unit_left, "at " + to_string(t));
    std::unordered_map<std::string, Term> eta;
    for (const auto& p : x.points()) eta.emplace(p, Term::leaf(p));
    if (!(substitute_leaves(t, eta) == t)) fail(unit_right, "at " + to_string(t));
  }
  LawResult assoc = law("mu . mu_T = mu . T mu");
  const auto outer = enumerate({"x0", "x1"}, sig, 1).terms;
  const auto middle = enumerate({"y0", "y1"}, sig, 1).terms;
  std::vector<Term> inner;
  for (const Term& t : sample)
    if (t.depth() <= 1) inner.push_back(t);
  inner.resize(std::min<std::size_t>(inner.size(), 6));
  if (!inner.empty())
    for (const Term& s : outer)
      for (std::size_t a = 0; a < middle.size(); ++a)
        for (std::size_t b = 0; b < middle.size(); b += 3) {
          std::unordered_map<std::string, Term> sigma{{"x0", middle[a]}, {"x1", middle[b]}};
          std::unordered_map<std::string, Term> tau{{"y0", inner[a % inner.size()]},
                                                    {"y1", inner[b % inner.size()]}};
          std::unordered_map<std::string, Term> composed;
          for (auto& [k, v] : sigma) composed.emplace(k, substitute_leaves(v, tau));
          ++assoc.checked;
          if (!(substitute_leaves(substitute_leaves(s, sigma), tau) ==
                substitute_leaves(s, composed)))
            fail(assoc, "at " + to_string(s));
        }
  return {unit_left, unit_right, assoc};
}

}  // namespace

std::vector<LawResult> TermMonadModel::closed_form_laws() const {
  return substitution_laws(sig_, elements(), x_);
}

// --- Word monoid ----------------------------------------------------------

WordMonoidModel::WordMonoidModel(MetricSpace x, std::size_t max_len, std::string mul,
                                 std::string unit)
    : x_(std::move(x)), max_len_(max_len), mul_(std::move(mul)), unit_(std::move(unit)),
      sig_{{mul_, 2}, {unit_, 0}} {
  require_disjoint(sig_, x_);
}

Word WordMonoidModel::word_of(const Term& t) const {
  return fold<Word>(
      t,
      [&](const std::string& l) {
        x_.index_of(l);
        return Word{l};
      },
      [&](const std::string& sym, std::span<const Word> args) {
        if (sym == unit_ && args.empty()) return Word{};
        if (sym != mul_ || args.size() != 2) throw ValidationError("not a monoid term: " + to_string(t));
        Word w = args[0];
        w.insert(w.end(), args[1].begin(), args[1].end());
        return w;
      });
}

Term WordMonoidModel::term_of(const Word& w) const {
  if (w.empty()) return Term::op(unit_);
  Term t = Term::leaf(w.back());
  for (std::size_t i = w.size() - 1; i-- > 0;) t = Term::op(mul_, {Term::leaf(w[i]), t});
  return t;
}

Distance WordMonoidModel::word_distance(const Word& u, const Word& v) const {
  if (u.size() != v.size()) return kInfinity;
  Distance m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, u[i] == v[i] ? 0.0 : x_.distance(u[i], v[i]));
  return m;
}

Word WordMonoidModel::concat(const Word& u, const Word& v) const {
  if (u.size() + v.size() > max_len_)
    throw TruncationError("concatenation of lengths " + std::to_string(u.size()) + " and " +
                          std::to_string(v.size()) + " exceeds max length " +
                          std::to_string(max_len_));
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

Word WordMonoidModel::flatten(const std::vector<Word>& ww) const {
  Word w;
  for (const Word& part : ww) w = concat(w, part);
  return w;
}

std::vector<Word> WordMonoidModel::words() const {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len_ && !x_.empty(); ++len) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (const auto& p : x_.points()) {
        Word v = w;
        v.push_back(p);
        next.push_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::string WordMonoidModel::label(const Word& w) {
  if (w.empty()) return "1";
  const bool short_names =
      std::all_of(w.begin(), w.end(), [](const std::string& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !short_names) out += '.';
    out += w[i];
  }
  return out;
}

Distance WordMonoidModel::distance(const Term& t, const Term& u) const {
  return word_distance(word_of(t), word_of(u));
}

std::string WordMonoidModel::element_label(const Term& t) const { return label(word_of(t)); }

std::vector<Term> WordMonoidModel::elements() const {
  std::vector<Term> out;
  for (const Word& w : words()) out.push_back(term_of(w));
  return out;
}

std::unique_ptr<FreeAlgebraModel> WordMonoidModel::over(const MetricSpace& base) const {
  return std::make_unique<WordMonoidModel>(base, max_len_, mul_, unit_);
}

namespace {

// All ways to cut w into nonempty consecutive blocks.
template <class T>
std::vector<std::vector<std::vector<T>>> compositions(const std::vector<T>& w) {
  std::vector<std::vector<std::vector<T>>> out;
  if (w.empty()) {
    out.push_back({});
    return out;
  }
  const std::size_t cuts = w.size() - 1;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cuts); ++mask) {
    std::vector<std::vector<T>> blocks{{w[0]}};
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (mask >> (i - 1) & 1) blocks.emplace_back();
      blocks.back().push_back(w[i]);
    }
    out.push_back(std::move(blocks));
  }
  return out;
}

}  // namespace

std::vector<LawResult> WordMonoidModel::closed_form_laws() const {
  LawResult unit_left = law("mu . eta_T = id");
  LawResult unit_right = law("mu . T eta = id");
  LawResult assoc = law("mu . mu_T = mu . T mu");
  LawResult nonexp = law("mu nonexpanding");
  const auto all = words();
  for (const Word& w : all) {
    ++unit_left.checked;
    if (flatten({w}) != w) fail(unit_left, "at " + label(w));
    std::vector<Word> letters;
    for (const auto& l : w) letters.push_back({l});
    ++unit_right.checked;
    if (flatten(letters) != w) fail(unit_right, "at " + label(w));
    for (const auto& blocks : compositions(w))
      for (const auto& groups : compositions(blocks)) {
        std::vector<Word> inner_first;
        for (const auto& g : groups) inner_first.push_back(flatten(g));
        ++assoc.checked;
        if (flatten(inner_first) != flatten(blocks)) fail(assoc, "at " + label(w));
      }
  }
  // Words of words with nonempty blocks and total length <= max_len.
  std::vector<std::vector<Word>> ww;
  for (const Word& w : all)
    for (auto& blocks : compositions(w)) ww.push_back(std::move(blocks));
  for (const auto& a : ww)
    for (const auto& b : ww) {
      Distance outer = a.size() == b.size() ? 0.0 : kInfinity;
      for (std::size_t i = 0; i < a.size() && outer != kInfinity; ++i)
        outer = std::max(outer, word_distance(a[i], b[i]));
      ++nonexp.checked;
      if (!leq(word_distance(flatten(a), flatten(b)), outer))
        fail(nonexp, "at " + label(flatten(a)) + " vs " + label(flatten(b)));
    }
  return {unit_left, unit_right, assoc, nonexp};
}

// --- Finite Hausdorff -----------------------------------------------------

HausdorffModel::HausdorffModel(MetricSpace x, std::string join, std::string bot)
    : x_(std::move(x)), join_(std::move(join)), bot_(std::move(bot)), sig_{{join_, 2}, {bot_, 0}} {
  require_disjoint(sig_, x_);
}

Subset HausdorffModel::subset_of(const Term& t) const {
  Subset s = fold<Subset>(
      t, [&](const std::string& l) { return Subset{x_.index_of(l)}; },
      [&](const std::string& sym, std::span<const Subset> args) {
        if (sym == bot_ && args.empty()) return Subset{};
        if (sym != join_ || args.size() != 2)
          throw ValidationError("not a semilattice term: " + to_string(t));
        Subset u;
        std::set_union(args[0].begin(), args[0].end(), args[1].begin(), args[1].end(),
                       std::back_inserter(u));
        return u;
      });
  return s;
}

Term HausdorffModel::term_of(const Subset& s) const {
  if (s.empty()) return Term::op(bot_);
  Term t = Term::leaf(x_.point(s.back()));
  for (std::size_t i = s.size() - 1; i-- > 0;) t = Term::op(join_, {Term::leaf(x_.point(s[i])), t});
  return t;
}

Distance HausdorffModel::hausdorff(const Subset& a, const Subset& b) const {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : kInfinity;
  auto directed = [&](const Subset& p, const Subset& q) {
    Distance worst = 0.0;
    for (std::size_t i : p) {
      Distance best = kInfinity;
      for (std::size_t j : q) best = std::min(best, x_(i, j));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<Subset> HausdorffModel::all_subsets() const {
  const std::size_t n = x_.size();
  if (n > 16) throw CapExceeded("subset enumeration", std::ldexp(1.0, static_cast<int>(n)), 1u << 16);
  std::vector<std::uint32_t> masks(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < masks.size(); ++m) masks[m] = m;
  auto lex_key = [n](std::uint32_t m) {
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) r |= 1u << (n - 1 - i);
    return r;
  };
  std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t a, std::uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : lex_key(a) > lex_key(b);
  });
  std::vector<Subset> out;
  out.reserve(masks.size());
  for (std::uint32_t m : masks) {
    Subset s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

std::string HausdorffModel::label(const Subset& s) const {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + x_.point(s[i]);
  return out + "}";
}

Distance HausdorffModel::distance(const Term& t, const Term& u) const {
  return hausdorff(subset_of(t), subset_of(u));
}

std::string HausdorffModel::element_label(const Term& t) const { return label(subset_of(t)); }

std::vector<Term> HausdorffModel::elements() const {
  std::vector<Term> out;
  for (const Subset& s : all_subsets()) out.push_back(term_of(s));
  return out;
}

std::unique_ptr<FreeAlgebraModel> HausdorffModel::over(const MetricSpace& base) const {
  return std::make_unique<HausdorffModel>(base, join_, bot_);
}

std::vector<LawResult> HausdorffModel::closed_form_laws() const {
  LawResult unit_left = law("mu . eta_T = id");
  LawResult unit_right = law("mu . T eta = id");
  LawResult nonexp = law("mu nonexpanding");
  const auto subsets = all_subsets();
  auto unite = [](const std::vector<Subset>& family) {
    Subset u;
    for (const Subset& s : family) {
      Subset next;
      std::set_union(u.begin(), u.end(), s.begin(), s.end(), std::back_inserter(next));
      u = std::move(next);
    }
    return u;
  };
  for (const Subset& s : subsets) {
    ++unit_left.checked;
    if (unite({s}) != s) fail(unit_left, "at " + label(s));
    std::vector<Subset> singletons;
    for (std::size_t i : s) singletons.push_back({i});
    ++unit_right.checked;
    if (unite(singletons) != s) fail(unit_right, "at " + label(s));
  }
  if (subsets.size() <= 8) {
    // Families of subsets, compared in the Hausdorff metric over the Hausdorff metric.
    const std::size_t k = subsets.size();
    std::vector<std::vector<Subset>> families;
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
      std::vector<Subset> f;
      for (std::size_t i = 0; i < k; ++i)
        if (m >> i & 1) f.push_back(subsets[i]);
      families.push_back(std::move(f));
    }
    auto hh = [&](const std::vector<Subset>& a, const std::vector<Subset>& b) {
      if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : kInfinity;
      auto directed = [&](const auto& p, const auto& q) {
        Distance worst = 0.0;
        for (const auto& s : p) {
          Distance best = kInfinity;
          for (const auto& r : q) best = std::min(best, hausdorff(s, r));
          worst = std::max(worst, best);
        }
        return worst;
      };
      return std::max(directed(a, b), directed(b, a));
    };
    for (const auto& a : families)
      for (const auto& b : families) {
        ++nonexp.checked;
        if (!leq(hausdorff(unite(a), unite(b)), hh(a, b)))
          fail(nonexp, "at " + label(unite(a)) + " vs " + label(unite(b)));
      }
  } else {
    nonexp.detail = "skipped: more than 3 points";
  }
  return {unit_left, unit_right, nonexp};
}

// --- Exceptions -----------------------------------------------------------

ExceptionModel::ExceptionModel(MetricSpace x, MetricSpace e)
    : x_(std::move(x)), e_(std::move(e)) {
  const MetricSpace parts[2] = {x_, e_};
  carrier_ = coproduct(parts);
  for (const auto& p : e_.points()) sig_.add(p, 0);
  require_disjoint(sig_, x_);
}

std::size_t ExceptionModel::carrier_index(const Term& t) const {
  if (t.is_leaf()) return x_.index_of(t.label());
  if (t.arity() != 0 || !e_.find(t.label()))
    throw ValidationError("not an exception term: " + to_string(t));
  return x_.size() + e_.index_of(t.label());
}

Distance ExceptionModel::distance(const Term& t, const Term& u) const {
  return carrier_(carrier_index(t), carrier_index(u));
}

std::string ExceptionModel::element_label(const Term& t) const {
  carrier_index(t);
  return to_string(t);
}

std::vector<Term> ExceptionModel::elements() const {
  std::vector<Term> out;
  for (const auto& p : x_.points()) out.push_back(Term::leaf(p));
  for (const auto& p : e_.points()) out.push_back(Term::op(p));
  return out;
}

std::unique_ptr<FreeAlgebraModel> ExceptionModel::over(const MetricSpace& base) const {
  return std::make_unique<ExceptionModel>(base, e_);
}

std::vector<LawResult> ExceptionModel::closed_form_laws() const {
  // T T X = (X + E) + E; mu sends an inner element to itself and an outer
  // exception to the same exception.
  const MetricSpace parts[2] = {carrier_, e_};
  const MetricSpace ttx = coproduct(parts);
  const std::size_t n = carrier_.size();
  auto mu = [&](std::size_t k) { return k < n ? k : x_.size() + (k - n); };
  LawResult unit_left = law("mu . eta_T = id");
  LawResult unit_right = law("mu . T eta = id");
  LawResult nonexp = law("mu nonexpanding");
  for (std::size_t k = 0; k < n; ++k) {
    ++unit_left.checked;
    if (mu(k) != k) fail(unit_left, "at " + carrier_.point(k));
    // T eta keeps points inner and moves exceptions to the outer summand.
    const std::size_t lifted = k < x_.size() ? k : n + (k - x_.size());
    ++unit_right.checked;
    if (mu(lifted) != k) fail(unit_right, "at " + carrier_.point(k));
  }
  for (std::size_t i = 0; i < ttx.size(); ++i)
    for (std::size_t j = 0; j < ttx.size(); ++j) {
      ++nonexp.checked;
      if (!leq(carrier_(mu(i), mu(j)), ttx(i, j)))
        fail(nonexp, "at " + ttx.point(i) + " vs " + ttx.point(j));
    }
  return {unit_left, unit_right, nonexp};
}

// --- Small spaces ---------------------------------------------------------

namespace {

PseudoMetricSpace truncated(const MetricSpace& x, Distance eps) {
  return PseudoMetricSpace::from_function(
      x.points(), [&](std::size_t i, std::size_t j) { return std::min(x(i, j), eps); },
      Validate::No);
}

}  // namespace

SmallSpaceModel::SmallSpaceModel(MetricSpace x, Distance eps)
    : x_(std::move(x)), eps_(eps), refl_(metric_reflection(truncated(x_, eps))) {
  if (!is_valid_distance(eps)) throw PreconditionError("eps must be a distance");
}

MetricSpace SmallSpaceModel::apply(const MetricSpace& x, Distance eps) {
  return metric_reflection(truncated(x, eps)).space;
}

Distance SmallSpaceModel::distance(const Term& t, const Term& u) const {
  if (!t.is_leaf() || !u.is_leaf()) throw ValidationError("small-space terms are points");
  return refl_.space(refl_.quotient[x_.index_of(t.label())], refl_.quotient[x_.index_of(u.label())]);
}

std::string SmallSpaceModel::element_label(const Term& t) const {
  if (!t.is_leaf()) throw ValidationError("small-space terms are points");
  return refl_.space.point(refl_.quotient[x_.index_of(t.label())]);
}

std::vector<Term> SmallSpaceModel::elements() const {
  std::vector<Term> out;
  for (const auto& p : refl_.space.points()) out.push_back(Term::leaf(p));
  return out;
}

std::unique_ptr<FreeAlgebraModel> SmallSpaceModel::over(const MetricSpace& base) const {
  return std::make_unique<SmallSpaceModel>(base, eps_);
}

std::vector<LawResult> SmallSpaceModel::closed_form_laws() const {
  LawResult idem = law("idempotence T T X = T X");
  LawResult unit_left = law("mu . eta_T = id");
  const MetricSpace once = refl_.space;
  const MetricSpace twice = apply(once, eps_);
  idem.checked = once.size() * once.size();
  if (!(once == twice)) fail(idem, "applying the construction twice changes the space");
  // mu is the identity of T X, so mu . eta_T is the identity.
  unit_left.checked = once.size();
  for (std::size_t i = 0; i < once.size(); ++i)
    if (twice.find(once.point(i)) != i) fail(unit_left, "at " + once.point(i));
  return {idem, unit_left};
}

// --- Monoid actions -------------------------------------------------------

ActionModel::ActionModel(FiniteQuantAlgebra m, MetricSpace x) : m_(std::move(m)), x_(std::move(x)) {
  require_quantitative_monoid(m_);
  for (const auto& p : m_.carrier().points()) sig_.add(p, 1);
  require_disjoint(sig_, x_);
  carrier_ = sum_tensor(m_.carrier(), x_);
}

std::pair<std::size_t, std::size_t> ActionModel::pair_of(const Term& t) const {
  if (t.is_leaf()) return {monoid_unit(m_), x_.index_of(t.label())};
  if (t.arity() != 1) throw ValidationError("not an action term: " + to_string(t));
  auto [m2, x] = pair_of(t.child(0));
  return {monoid_mul(m_, m_.carrier().index_of(t.label()), m2), x};
}

Term ActionModel::term_of(std::size_t m, std::size_t x) const {
  return Term::op(m_.carrier().point(m), {Term::leaf(x_.point(x))});
}

Distance ActionModel::distance(const Term& t, const Term& u) const {
  auto [m1, x1] = pair_of(t);
  auto [m2, x2] = pair_of(u);
  return m_.carrier()(m1, m2) + x_(x1, x2);
}

Distance ActionModel::max_distance(const Term& t, const Term& u) const {
  auto [m1, x1] = pair_of(t);
  auto [m2, x2] = pair_of(u);
  return std::max(m_.carrier()(m1, m2), x_(x1, x2));
}

std::string ActionModel::element_label(const Term& t) const {
  auto [m, x] = pair_of(t);
  return pair_name(m_.carrier().point(m), x_.point(x));
}

std::vector<Term> ActionModel::elements() const {
  std::vector<Term> out;
  for (std::size_t m = 0; m < m_.size(); ++m)
    for (std::size_t x = 0; x < x_.size(); ++x) out.push_back(term_of(m, x));
  return out;
}

std::unique_ptr<FreeAlgebraModel> ActionModel::over(const MetricSpace& base) const {
  return std::make_unique<ActionModel>(m_, base);
}

std::vector<LawResult> ActionModel::closed_form_laws() const {
  const std::size_t nm = m_.size(), nx = x_.size();
  const std::size_t e = monoid_unit(m_);
  const auto& dm = m_.carrier();
  auto mul = [&](std::size_t a, std::size_t b) { return monoid_mul(m_, a, b); };
  LawResult unit_left = law("mu . eta_T = id");
  LawResult unit_right = law("mu . T eta = id");
  LawResult assoc = law("mu . mu_T = mu . T mu");
  LawResult nonexp = law("mu nonexpanding");
  for (std::size_t m = 0; m < nm; ++m)
    for (std::size_t x = 0; x < nx; ++x) {
      ++unit_left.checked;
      ++unit_right.checked;
      if (mul(e, m) != m) fail(unit_left, "at " + pair_name(dm.point(m), x_.point(x)));
      if (mul(m, e) != m) fail(unit_right, "at " + pair_name(dm.point(m), x_.point(x)));
      for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = 0; b < nm; ++b) {
          ++assoc.checked;
          if (mul(mul(a, b), m) != mul(a, mul(b, m))) fail(assoc, "at " + dm.point(a) + dm.point(b) + dm.point(m));
        }
    }
  // mu(m, (m', x)) = (m m', x) against the sum metric on M (x) (M (x) X).
  for (std::size_t a = 0; a < nm; ++a)
    for (std::size_t b = 0; b < nm; ++b)
      for (std::size_t c = 0; c < nm; ++c)
        for (std::size_t d = 0; d < nm; ++d)
          for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t y = 0; y < nx; ++y) {
              ++nonexp.checked;
              const Distance before = dm(a, c) + dm(b, d) + x_(x, y);
              const Distance after = dm(mul(a, b), mul(c, d)) + x_(x, y);
              if (!leq(after, before)) fail(nonexp, "at " + dm.point(a) + dm.point(b) + " vs " + dm.point(c) + dm.point(d));
            }
  return {unit_left, unit_right, assoc, nonexp};
}

// --- Two eps-close binary operations --------------------------------------

Distance dhat(const Term& t, const Term& u, const PseudoMetricSpace& x, Distance eps) {
  if (t.same_node(u)) return 0.0;
  if (t.is_leaf() && u.is_leaf()) return t.label() == u.label() ? 0.0 : x.distance(t.label(), u.label());
  if (t.is_leaf() || u.is_leaf() || t.arity() != u.arity()) return kInfinity;
  Distance m = 0.0;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    const Distance c = dhat(t.child(i), u.child(i), x, eps);
    if (c == kInfinity) return kInfinity;
    m = std::max(m, c);
  }
  return t.label() == u.label() ? m : eps + m;
}

TwoOpsModel::TwoOpsModel(MetricSpace x, Distance eps, std::size_t sample_depth)
    : x_(std::move(x)), eps_(eps), sample_depth_(sample_depth), sig_{{"sigma1", 2}, {"sigma2", 2}} {
  if (!(eps > 0.0 && eps < 1.0))
    throw PreconditionError("two-ops model requires 0 < eps < 1, got " + format_distance(eps));
  require_disjoint(sig_, x_);
}

Distance TwoOpsModel::distance(const Term& t, const Term& u) const { return dhat(t, u, x_, eps_); }

std::vector<Term> TwoOpsModel::elements() const {
  return enumerate(x_.points(), sig_, sample_depth_).terms;
}

std::unique_ptr<FreeAlgebraModel> TwoOpsModel::over(const MetricSpace& base) const {
  return std::make_unique<TwoOpsModel>(base, eps_, sample_depth_);
}

std::vector<LawResult> TwoOpsModel::closed_form_laws() const {
  auto laws = substitution_laws(sig_, elements(), x_);
  laws.resize(2);
  return laws;
}

}  // namespace qalg
