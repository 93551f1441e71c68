#include "qalg/report.hpp"

#include <sstream>

#include <json.hpp>

namespace qalg {

using json = nlohmann::ordered_json;

namespace {

json distance_json(Distance d) {
  if (d == kInfinity) return "inf";
  return d;
}

json value_json(const ReportValue& v) {
  struct Visit {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(bool b) const { return b; }
    json operator()(Distance d) const { return distance_json(d); }
    json operator()(const std::string& s) const { return s; }
    json operator()(const std::vector<Distance>& ds) const {
      json a = json::array();
      for (Distance d : ds) a.push_back(distance_json(d));
      return a;
    }
  };
  return std::visit(Visit{}, v);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

const char* status(bool pass) { return pass ? "pass" : "fail"; }

}  // namespace

std::string format_value(const ReportValue& v) {
  struct Visit {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(Distance d) const { return format_distance(d); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const std::vector<Distance>& ds) const {
      std::string s = "(";
      for (std::size_t i = 0; i < ds.size(); ++i) s += (i ? ", " : "") + format_distance(ds[i]);
      return s + ")";
    }
  };
  return std::visit(Visit{}, v);
}

Claim law_claim(const LawResult& law) {
  return Claim{law.law, law.law, ReportValue{law.pass}, ReportValue{true}, law.pass,
               law.pass ? std::string() : law.detail};
}

std::string to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  json claims = json::array();
  for (const Claim& c : r.claims) {
    json cj;
    cj["id"] = c.id;
    cj["claim"] = c.claim;
    cj["computed"] = value_json(c.computed);
    cj["expected"] = value_json(c.expected);
    cj["status"] = status(c.pass);
    cj["witness"] = c.witness.empty() ? json(nullptr) : json(c.witness);
    claims.push_back(std::move(cj));
  }
  j["claims"] = claims;
  json results = json::array();
  for (const Record& rec : r.results) {
    json rj = json::object();
    for (const auto& [k, v] : rec) rj[k] = value_json(v);
    results.push_back(std::move(rj));
  }
  j["results"] = results;
  json tables = json::array();
  for (const DistanceTable& t : r.tables) {
    json tj;
    tj["name"] = t.name;
    tj["rows"] = t.rows;
    tj["cols"] = t.cols;
    json vals = json::array();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < t.cols.size(); ++k) row.push_back(distance_json(t.values[i * t.cols.size() + k]));
      vals.push_back(std::move(row));
    }
    tj["values"] = vals;
    tables.push_back(std::move(tj));
  }
  j["tables"] = tables;
  j["verdict"] = r.verdict;
  j["status"] = status(r.pass);
  return j.dump(2) + "\n";
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  if (!r.tables.empty()) {
    for (std::size_t n = 0; n < r.tables.size(); ++n) {
      const DistanceTable& t = r.tables[n];
      if (n) os << "\n";
      os << csv_cell(t.name);
      for (const auto& c : t.cols) os << "," << csv_cell(c);
      os << "\n";
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        os << csv_cell(t.rows[i]);
        for (std::size_t k = 0; k < t.cols.size(); ++k)
          os << "," << format_distance(t.values[i * t.cols.size() + k]);
        os << "\n";
      }
    }
  } else if (!r.results.empty()) {
    const Record& head = r.results.front();
    for (std::size_t k = 0; k < head.size(); ++k) os << (k ? "," : "") << csv_cell(head[k].first);
    os << "\n";
    for (const Record& rec : r.results) {
      for (std::size_t k = 0; k < rec.size(); ++k) os << (k ? "," : "") << csv_cell(format_value(rec[k].second));
      os << "\n";
    }
  } else {
    os << "id,claim,computed,expected,status,witness\n";
    for (const Claim& c : r.claims)
      os << csv_cell(c.id) << "," << csv_cell(c.claim) << "," << csv_cell(format_value(c.computed)) << ","
         << csv_cell(format_value(c.expected)) << "," << status(c.pass) << "," << csv_cell(c.witness) << "\n";
  }
  return os.str();
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  os << r.command;
  for (const auto& [k, v] : r.parameters) os << " " << k << "=" << v;
  os << "\n";
  for (const Record& rec : r.results) {
    for (std::size_t k = 0; k < rec.size(); ++k)
      os << (k ? "  " : "") << rec[k].first << " " << format_value(rec[k].second);
    os << "\n";
  }
  for (const DistanceTable& t : r.tables) {
    os << t.name << ":\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      os << "  " << t.rows[i] << ":";
      for (std::size_t k = 0; k < t.cols.size(); ++k) os << " " << format_distance(t.values[i * t.cols.size() + k]);
      os << "\n";
    }
  }
  for (const Claim& c : r.claims) {
    os << "[" << status(c.pass) << "] " << c.id;
    if (c.claim != c.id) os << "  " << c.claim;
    os << ": computed " << format_value(c.computed) << ", expected " << format_value(c.expected) << "\n";
    if (!c.witness.empty()) os << "       " << c.witness << "\n";
  }
  if (!r.verdict.empty()) os << "verdict: " << r.verdict << "\n";
  os << "status: " << status(r.pass) << "\n";
  return os.str();
}

}  // namespace qalg
