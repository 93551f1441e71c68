#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qalg/algebra.hpp"
#include "qalg/metric_space.hpp"
#include "qalg/term.hpp"
#include "qalg/variety.hpp"

namespace qalg {

/// Outcome of one law or property check.
struct LawResult {
  std::string law;
  bool pass = true;
  std::uint64_t checked = 0;
  std::string detail;  // witness on failure, scope note on success
};

/// A realized free algebra T X. Elements are denoted by terms over base()
/// in signature(); distance() is a pseudometric on terms whose metric
/// reflection is T X. Operations act by tree-tupling: the element denoted by
/// sigma(t_1..t_n) is sigma applied to the elements of the t_i.
class FreeAlgebraModel {
 public:
  virtual ~FreeAlgebraModel() = default;

  virtual std::string name() const = 0;
  virtual const Signature& signature() const = 0;
  virtual const MetricSpace& base() const = 0;

  /// Throws UndefinedError for terms outside a bounded construction.
  virtual Distance distance(const Term& t, const Term& u) const = 0;
  /// Canonical text of the element denoted by t.
  virtual std::string element_label(const Term& t) const = 0;
  /// One representative term per element of the represented carrier.
  virtual std::vector<Term> elements() const = 0;

  /// The same construction over another base space (used for T|X| and T f).
  virtual std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const = 0;

  /// Whether T i_X : T|X| -> T X is carried by the identity on representing terms.
  virtual bool identity_carried() const { return true; }

  /// Monad laws stated on the closed form (unit, multiplication, idempotence).
  virtual std::vector<LawResult> closed_form_laws() const { return {}; }

  /// Parses an element written as a term over base().
  virtual Term parse_element(std::string_view text) const;
};

// --- Term monad -----------------------------------------------------------

/// T_Sigma X: terms with d*. elements() enumerates up to sample_depth.
class TermMonadModel : public FreeAlgebraModel {
 public:
  TermMonadModel(Signature sig, MetricSpace x, std::size_t sample_depth = 2);

  std::string name() const override { return "term"; }
  const Signature& signature() const override { return sig_; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override { return dstar(t, u, x_); }
  std::string element_label(const Term& t) const override { return to_string(t); }
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;
  std::vector<LawResult> closed_form_laws() const override;

 private:
  Signature sig_;
  MetricSpace x_;
  std::size_t sample_depth_;
};

// --- Word monoid ----------------------------------------------------------

using Word = std::vector<std::string>;

/// X*: words with the letterwise max metric on equal lengths, inf otherwise.
class WordMonoidModel : public FreeAlgebraModel {
 public:
  WordMonoidModel(MetricSpace x, std::size_t max_len, std::string mul = "mul",
                  std::string unit = "e");

  std::string name() const override { return "word"; }
  const Signature& signature() const override { return sig_; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override;
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;
  std::vector<LawResult> closed_form_laws() const override;

  std::size_t max_len() const { return max_len_; }
  Word word_of(const Term& t) const;
  Term term_of(const Word& w) const;
  Distance word_distance(const Word& u, const Word& v) const;
  /// Throws TruncationError past max_len.
  Word concat(const Word& u, const Word& v) const;
  /// All words of length <= max_len, by length then lexicographically in point order.
  std::vector<Word> words() const;
  /// mu: flattening of a word of words. Throws TruncationError past max_len.
  Word flatten(const std::vector<Word>& ww) const;
  static std::string label(const Word& w);

 private:
  MetricSpace x_;
  std::size_t max_len_;
  std::string mul_, unit_;
  Signature sig_;
};

// --- Finite Hausdorff -----------------------------------------------------

using Subset = std::vector<std::size_t>;  // sorted point indices

/// All subsets of X (including the empty one) with the Hausdorff metric.
class HausdorffModel : public FreeAlgebraModel {
 public:
  explicit HausdorffModel(MetricSpace x, std::string join = "join", std::string bot = "bot");

  std::string name() const override { return "hausdorff"; }
  const Signature& signature() const override { return sig_; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override;
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;
  std::vector<LawResult> closed_form_laws() const override;

  Subset subset_of(const Term& t) const;
  Term term_of(const Subset& s) const;
  Distance hausdorff(const Subset& a, const Subset& b) const;
  /// Throws CapExceeded for more than 16 points.
  std::vector<Subset> all_subsets() const;
  std::string label(const Subset& s) const;

 private:
  MetricSpace x_;
  std::string join_, bot_;
  Signature sig_;
};

// --- Exceptions -----------------------------------------------------------

/// X + E: the points of X and one constant per exception, E keeping its metric.
class ExceptionModel : public FreeAlgebraModel {
 public:
  ExceptionModel(MetricSpace x, MetricSpace e);

  std::string name() const override { return "exception"; }
  const Signature& signature() const override { return sig_; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override;
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;
  std::vector<LawResult> closed_form_laws() const override;

  const MetricSpace& exceptions() const { return e_; }
  /// coproduct(X, E), names tagged "0:" and "1:".
  const MetricSpace& carrier() const { return carrier_; }
  /// Carrier index of the element denoted by t (a leaf or a constant).
  std::size_t carrier_index(const Term& t) const;

 private:
  MetricSpace x_, e_, carrier_;
  Signature sig_;
};

// --- Small spaces ---------------------------------------------------------

/// Free space of diameter <= eps: the metric reflection of min(d, eps).
class SmallSpaceModel : public FreeAlgebraModel {
 public:
  SmallSpaceModel(MetricSpace x, Distance eps);

  std::string name() const override { return "small"; }
  const Signature& signature() const override { return sig_; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override;
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;
  std::vector<LawResult> closed_form_laws() const override;

  Distance eps() const { return eps_; }
  const Reflection& reflection() const { return refl_; }
  /// The construction applied to an arbitrary space.
  static MetricSpace apply(const MetricSpace& x, Distance eps);

 private:
  MetricSpace x_;
  Distance eps_;
  Signature sig_;
  Reflection refl_;
};

// --- Monoid actions -------------------------------------------------------

/// Free M-action on X: carrier M (x) X with the sum metric; m(m', x) = (m m', x),
/// unit x -> (e, x). Terms are chains of unary symbols named after M.
class ActionModel : public FreeAlgebraModel {
 public:
  /// Throws PreconditionError unless m is a quantitative monoid.
  ActionModel(FiniteQuantAlgebra m, MetricSpace x);

  std::string name() const override { return "action"; }
  const Signature& signature() const override { return sig_; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override;
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;
  std::vector<LawResult> closed_form_laws() const override;

  const FiniteQuantAlgebra& monoid() const { return m_; }
  /// (monoid index, point index) of the element denoted by t.
  std::pair<std::size_t, std::size_t> pair_of(const Term& t) const;
  Term term_of(std::size_t m, std::size_t x) const;
  /// sum_tensor(M, X).
  const MetricSpace& carrier() const { return carrier_; }
  /// Distance in the max-product alternative, kept for comparison.
  Distance max_distance(const Term& t, const Term& u) const;

 private:
  FiniteQuantAlgebra m_;
  MetricSpace x_;
  Signature sig_;
  MetricSpace carrier_;
};

// --- Two eps-close binary operations --------------------------------------

/// Terms over sigma1, sigma2 with the metric d-hat: leaf pairs at d_X, leaf
/// against composite at inf, composites at the child maximum plus eps when
/// the root symbols differ. elements() enumerates up to sample_depth.
class TwoOpsModel : public FreeAlgebraModel {
 public:
  /// Throws PreconditionError unless 0 < eps < 1.
  TwoOpsModel(MetricSpace x, Distance eps, std::size_t sample_depth = 2);

  std::string name() const override { return "two-ops"; }
  const Signature& signature() const override { return sig_; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override { return to_string(t); }
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;
  std::vector<LawResult> closed_form_laws() const override;

  Distance eps() const { return eps_; }

 private:
  MetricSpace x_;
  Distance eps_;
  std::size_t sample_depth_;
  Signature sig_;
};

/// d-hat over an arbitrary leaf metric.
Distance dhat(const Term& t, const Term& u, const PseudoMetricSpace& x, Distance eps);

// --- Generic constructions ------------------------------------------------

/// Decides the congruence of an ordinary presentation by normal forms.
struct CongruenceOracle {
  std::string name;
  std::function<Term(const Term&)> normal_form;
};

/// Right-nested product of the leaves in order with units erased; the unit if none.
CongruenceOracle monoid_oracle(std::string mul = "mul", std::string unit = "e");
/// Right-nested join of the distinct leaves in sorted order; bottom if none.
CongruenceOracle semilattice_oracle(std::string join = "join", std::string bot = "bot");

/// d^@ on the depth-bounded universe, reflected. Pair costs are computed
/// level by level on congruence classes: the cheapest similar pair of depth
/// <= k between classes A and B; then shortest paths over classes.
class OrdinaryFreeModel : public FreeAlgebraModel {
 public:
  /// Throws PreconditionError for a non-ordinary presentation; CapExceeded
  /// when a level needs more than cap class-pair combinations.
  OrdinaryFreeModel(VarietyPresentation v, MetricSpace x, CongruenceOracle oracle,
                    std::size_t max_depth, std::uint64_t cap = kDefaultUniverseCap);

  std::string name() const override { return "ordinary-free(" + v_.name + ")"; }
  const Signature& signature() const override { return v_.signature; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override;
  std::vector<Term> elements() const override { return classes_; }
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;

  std::size_t max_depth() const { return max_depth_; }
  const std::vector<Term>& classes() const { return classes_; }
  /// Class of t's normal form; nullopt if not reached within the depth bound.
  std::optional<std::size_t> class_of(const Term& t) const;
  Distance class_distance(std::size_t a, std::size_t b) const { return refl_.space(refl_.quotient[a], refl_.quotient[b]); }
  const Reflection& reflection() const { return refl_; }

 private:
  VarietyPresentation v_;
  MetricSpace x_;
  CongruenceOracle oracle_;
  std::size_t max_depth_;
  std::uint64_t cap_;
  std::vector<Term> classes_;  // normal forms
  std::unordered_map<Term, std::size_t, TermHash> class_index_;
  Reflection refl_;
};

/// d^cv = meet(d*, entailment bound) on the depth-bounded universe, reflected.
class UnaryFreeModel : public FreeAlgebraModel {
 public:
  /// Throws PreconditionError when a symbol has arity > 1.
  UnaryFreeModel(VarietyPresentation v, MetricSpace x, std::size_t max_depth,
                 std::uint64_t cap = kDefaultUniverseCap);

  std::string name() const override { return "unary-free(" + v_.name + ")"; }
  const Signature& signature() const override { return v_.signature; }
  const MetricSpace& base() const override { return x_; }
  Distance distance(const Term& t, const Term& u) const override;
  std::string element_label(const Term& t) const override;
  std::vector<Term> elements() const override;
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override;

  const TermUniverse& universe() const { return universe_; }
  const Reflection& reflection() const { return refl_; }
  /// Pre-reflection pseudometric on the universe.
  const PseudoMetricSpace& pseudometric() const { return pseudo_; }

 private:
  VarietyPresentation v_;
  MetricSpace x_;
  std::size_t max_depth_;
  std::uint64_t cap_;
  TermUniverse universe_;
  PseudoMetricSpace pseudo_;
  Reflection refl_;
};

}  // namespace qalg
