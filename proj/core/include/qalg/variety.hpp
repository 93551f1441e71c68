#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qalg/algebra.hpp"
#include "qalg/metric_space.hpp"
#include "qalg/term.hpp"

namespace qalg {

/// lhs =_eps rhs over formal variables x0, x1, ...
struct QuantEquation {
  Term lhs;
  Term rhs;
  Distance eps = 0.0;

  /// Formal variables occurring on either side, ordered by index.
  std::vector<std::string> variables() const;
  std::string text() const;
};

struct VarietyPresentation {
  std::string name;
  Signature signature;
  std::vector<std::string> vars;  // declared formal variables
  std::vector<QuantEquation> equations;

  /// Every equation has eps = 0.
  bool ordinary() const;
  /// Every symbol has arity <= 1.
  bool unary() const;
  /// Throws ValidationError for ill-formed terms, undeclared or non-formal
  /// variables, or a negative eps.
  void validate() const;
};

VarietyPresentation monoid_presentation();
VarietyPresentation monoid_presentation(const std::string& mul, const std::string& unit);
VarietyPresentation semilattice_presentation();
/// M-actions: one unary symbol per element of M.
VarietyPresentation action_presentation(const FiniteQuantAlgebra& monoid);
/// sigma1(x0,x1) =_eps sigma2(x0,x1).
VarietyPresentation two_eps_ops_presentation(Distance eps);
/// x0 =_eps x1 over the empty signature.
VarietyPresentation small_presentation(Distance eps);
/// One constant per point of e, with e =_{d(e,e')} e'.
VarietyPresentation exceptions_presentation(const MetricSpace& e);

/// Unit symbol of a monoid presentation: the nullary symbol; multiplication: the binary one.
struct MonoidSymbols {
  std::string mul;
  std::string unit;
};
MonoidSymbols monoid_symbols(const Signature& sig);

/// Throws PreconditionError unless m is a nonexpanding algebra satisfying the monoid laws.
void require_quantitative_monoid(const FiniteQuantAlgebra& m);
/// Product m1*m2 in a monoid algebra, by element index.
std::size_t monoid_mul(const FiniteQuantAlgebra& m, std::size_t a, std::size_t b);
std::size_t monoid_unit(const FiniteQuantAlgebra& m);

struct SatisfactionResult {
  bool holds = true;
  Distance worst = 0.0;                 // max over interpretations
  std::vector<std::string> vars;        // variables of the equation
  std::vector<std::size_t> witness;     // interpretation attaining worst
  std::uint64_t interpretations = 0;

  std::string describe(const FiniteQuantAlgebra& a) const;
};

/// Exhaustive over |carrier|^|vars| interpretations; ties keep the first in row-major order.
SatisfactionResult satisfies(const FiniteQuantAlgebra& a, const QuantEquation& e);

struct VarietyCheck {
  bool holds = true;
  std::vector<SatisfactionResult> per_equation;
};

VarietyCheck satisfies_all(const FiniteQuantAlgebra& a, const VarietyPresentation& v);

}  // namespace qalg
