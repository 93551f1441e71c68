#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qalg/free_models.hpp"

namespace qalg::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs one command line (without the program name). Reports go to out
/// (or --output), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Splits "t1,t2;t3,t4" at top-level separators into pairs.
std::vector<std::pair<std::string, std::string>> split_pairs(std::string_view text);

/// Rewrites "{p,q}" into the right-nested join of its leaves and "{}" into
/// the bottom constant; other text is returned unchanged. Needs a signature
/// with exactly one binary and one nullary symbol.
std::string expand_set_sugar(const std::string& item, const Signature& sig);

/// QALG_UNIVERSE_CAP when set, else the default cap. ValidationError on junk.
std::uint64_t universe_cap_from_env();

enum class ModelKind { Closed, Generic };

struct ModelOptions {
  ModelKind kind = ModelKind::Closed;
  std::size_t max_depth = 3;
  std::size_t max_len = 3;
  std::uint64_t cap = kDefaultUniverseCap;
  std::string signature_file;  // for the term monad
};

/// Builds the model named by a variety spec ("monoid", "semilattice",
/// "small:<eps>", "action:<file>", "exceptions:<file>",
/// "two-eps-ops:<eps>", "term", or a variety file) over x.
std::unique_ptr<FreeAlgebraModel> make_model(const std::string& spec, const MetricSpace& x,
                                             const ModelOptions& opts);

}  // namespace qalg::cli
