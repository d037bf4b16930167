#pragma once

// JSON report helpers: deterministic ordered output, exact integers and
// fractions as strings, shared parsing of CLI inputs.

#include "shicat/numeric.hpp"
#include "shicat/rootsys.hpp"
#include "shicat/subsets.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace shicat {

using Json = nlohmann::ordered_json;

inline Json json_root(const RootSystem& rs, int idx) { return rs.positive_roots[idx].str(); }

inline Json json_roots(const RootSystem& rs, const std::vector<int>& idxs) {
  Json arr = Json::array();
  for (int i : idxs) arr.push_back(json_root(rs, i));
  return arr;
}

inline Json json_rat(const Rat& r) { return to_string(r); }

template <typename T>
Json json_poly(const std::vector<T>& coeffs) {
  Json arr = Json::array();
  for (const auto& c : coeffs) arr.push_back(to_string(Rat(c)));
  return arr;
}

inline Json json_poly(const std::vector<long long>& coeffs) {
  Json arr = Json::array();
  for (long long c : coeffs) arr.push_back(std::to_string(c));
  return arr;
}

// "all", "none", "" or a bracketed list "[1,0],[1,1]"
inline std::vector<int> parse_subset(const RootSystem& rs, const std::string& s) {
  if (s == "all") return full_positive_set(rs);
  if (s.empty() || s == "none" || s == "empty") return {};
  std::vector<Root> roots;
  size_t i = 0;
  while (i < s.size()) {
    size_t open = s.find('[', i);
    if (open == std::string::npos) break;
    size_t close = s.find(']', open);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced bracket in subset");
    roots.push_back(Root::parse(s.substr(open, close - open + 1)));
    i = close + 1;
  }
  return subset_from_roots(rs, roots);
}

struct ReportEnvelope {
  Json body;
  std::string command;
  bool stable = false;  // omit timings for byte-identical output
  long elapsed_ms = 0;

  Json finalize() const {
    Json out;
    out["schema"] = "shicat-report-v1";
    out["command"] = command;
    for (auto& [k, v] : body.items()) out[k] = v;
    if (!stable) out["elapsed_ms"] = elapsed_ms;
    return out;
  }
};

}  // namespace shicat
