#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "qalg/algebra.hpp"
#include "qalg/colimit.hpp"
#include "qalg/metric_space.hpp"
#include "qalg/term.hpp"
#include "qalg/variety.hpp"

namespace qalg {

/// Reads a whole file; ValidationError naming the path on failure.
std::string read_file(const std::filesystem::path& path);

/// {"points": [...], "dist": [["a","b",1.0], ...], "default": "inf"}.
/// Unlisted off-diagonal pairs take "default" (inf when absent); the
/// diagonal is 0 and symmetry is completed. Conflicting entries, point names
/// that are formal variables, and axiom violations are ValidationErrors.
MetricSpace parse_space(std::string_view json_text);
MetricSpace load_space(const std::filesystem::path& path);

/// {"ops": {"sigma1": 2, ...}}.
Signature parse_signature(std::string_view json_text);

/// {"signature": {...}, "vars": [...], "equations": [{"lhs", "rhs", "eps"}]}.
VarietyPresentation parse_variety(std::string_view json_text);
VarietyPresentation load_variety(const std::filesystem::path& path);

/// {"carrier": <space>, "ops": {"mul": [[...]], "e": "..."}}. Tables are
/// nested arrays of point names whose nesting depth is the arity; a
/// constant is a single name.
FiniteQuantAlgebra parse_algebra(std::string_view json_text);
FiniteQuantAlgebra load_algebra(const std::filesystem::path& path);

/// Either {"kind": "scaled", "space": <space>, "ratio": r, "first": n,
/// "stages": k} (stage i is the space with distances scaled by r^(first+i))
/// or {"stages": [<space>, ...], "links": [{"a": "a", ...}, ...]}. A
/// positive stage_override replaces the generated stage count.
DirectedChain parse_chain(std::string_view json_text, std::size_t stage_override = 0);
DirectedChain load_chain(const std::filesystem::path& path, std::size_t stage_override = 0);

/// Built-in names "monoid", "semilattice", "two-eps-ops:<eps>",
/// "small:<eps>", "action:<monoid-file>", "exceptions:<space-file>", or a
/// path to a variety file.
VarietyPresentation resolve_variety(std::string_view spec);

}  // namespace qalg
