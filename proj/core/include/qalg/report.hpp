#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qalg/finitarity.hpp"

namespace qalg {

/// A square or rectangular distance table; values are row-major.
struct DistanceTable {
  std::string name;
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<Distance> values;
};

using Record = std::vector<std::pair<std::string, ReportValue>>;

/// Output of one subcommand. Field order is fixed so that identical inputs
/// serialize to identical bytes.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Claim> claims;
  std::vector<Record> results;
  std::vector<DistanceTable> tables;
  std::string verdict;
  bool pass = true;
};

Claim law_claim(const LawResult& law);

std::string to_json(const Report& r);
/// Tables when present (header row of column texts), else results, else claims.
std::string to_csv(const Report& r);
std::string to_text(const Report& r);

std::string format_value(const ReportValue& v);

}  // namespace qalg
