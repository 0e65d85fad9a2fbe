#pragma once

// Wire formats: block-keyed potential lists, cutoff lists, JSON and CSV
// emission. Rationals travel as "p/q" strings with a float convenience
// field next to them.

#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bfp/errors.hpp"
#include "bfp/numtheory.hpp"
#include "bfp/oracle.hpp"
#include "bfp/pressure.hpp"
#include "bfp/transfer.hpp"

namespace bfp::io {

using json = nlohmann::json;

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw invalid_argument_error("bad numeric literal '" + std::string(s) + "'");
  return v;
}

// Block-keyed potential values, e.g. "00:1.5,01:0,10:0,11:-.25". The key
// length fixes the locality; missing blocks default to zero.
inline std::map<std::string, double> parse_block_values(std::string_view s) {
  std::map<std::string, double> out;
  for (auto tok : split(s, ',')) {
    if (tok.empty())
      throw invalid_argument_error("empty entry in potential list");
    std::size_t colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw invalid_argument_error("potential entries look like block:value");
    std::string key(tok.substr(0, colon));
    for (char c : key)
      if (c != '0' && c != '1')
        throw invalid_argument_error("potential keys are 0-1 blocks, got '" +
                                     key + "'");
    if (out.count(key))
      throw invalid_argument_error("duplicate potential key '" + key + "'");
    out[key] = parse_double(tok.substr(colon + 1));
  }
  return out;
}

namespace detail {

inline void check_key_length(const std::map<std::string, double>& kv,
                             std::size_t len, const char* what) {
  for (auto& [k, v] : kv)
    if (k.size() != len)
      throw invalid_argument_error(std::string("expected ") + what +
                                   " keys of length " + std::to_string(len) +
                                   ", got '" + k + "'");
}

}  // namespace detail

inline potential1 parse_potential1(std::string_view s) {
  auto kv = parse_block_values(s);
  detail::check_key_length(kv, 1, "1-local");
  potential1 p;
  if (auto it = kv.find("0"); it != kv.end()) p.phi0 = it->second;
  if (auto it = kv.find("1"); it != kv.end()) p.phi1 = it->second;
  return p;
}

inline potential2 parse_potential2(std::string_view s) {
  auto kv = parse_block_values(s);
  detail::check_key_length(kv, 2, "2-local");
  potential2 p;
  for (auto& [k, v] : kv) p.phi[k[0] - '0'][k[1] - '0'] = v;
  return p;
}

inline potential4 parse_potential4(std::string_view s) {
  auto kv = parse_block_values(s);
  detail::check_key_length(kv, 4, "4-local");
  potential4 p{};
  for (auto& [k, v] : kv) {
    std::size_t idx = 0;
    for (char c : k) idx = idx * 2 + static_cast<std::size_t>(c - '0');
    p.phi[idx] = v;
  }
  return p;
}

inline std::vector<bigint> parse_cutoffs(std::string_view s) {
  std::vector<bigint> out;
  for (auto tok : split(s, ',')) out.push_back(bigint::from_string(tok));
  return out;
}

// Gap statistics as "a,b,len:p/q" entries joined by semicolons, e.g.
// "0,0,2:1/3;0,0,3:1/3". The normalization sum (len-1) m = 1 is enforced.
inline gap_stats parse_gap_stats(std::string_view s) {
  std::map<gap_key, rational> entries;
  for (auto tok : split(s, ';')) {
    if (tok.empty()) throw invalid_argument_error("empty gap entry");
    auto colon = tok.find(':');
    if (colon == std::string_view::npos)
      throw invalid_argument_error("gap entries look like a,b,len:p/q");
    auto fields = split(tok.substr(0, colon), ',');
    if (fields.size() != 3)
      throw invalid_argument_error("gap keys look like a,b,len");
    auto sym = [](std::string_view v) {
      if (v == "0") return 0;
      if (v == "1") return 1;
      throw invalid_argument_error("gap symbols are 0 or 1");
    };
    gap_key key{sym(fields[0]), sym(fields[1]),
                static_cast<std::int64_t>(
                    *bigint::from_string(fields[2]).to_u64())};
    if (entries.count(key))
      throw invalid_argument_error("duplicate gap key");
    entries.emplace(key, rational::parse(tok.substr(colon + 1)));
  }
  return gap_stats(std::move(entries));
}

inline std::string gap_stats_string(const gap_stats& g) {
  std::string out;
  for (auto& [key, m] : g.entries()) {
    if (!out.empty()) out += ";";
    out += std::to_string(key.from_symbol) + "," +
           std::to_string(key.to_symbol) + "," + std::to_string(key.length) +
           ":" + m.to_string();
  }
  return out;
}

namespace detail {

inline std::string flatten_json_blocks(const json& j) {
  std::string flat;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!flat.empty()) flat += ",";
    flat += it.key() + ":" + std::to_string(it.value().get<double>());
  }
  return flat;
}

}  // namespace detail

// JSON potential objects mirror the CLI lists: {"00": 1.5, ...}.
inline potential1 potential1_from_json(const json& j) {
  return parse_potential1(detail::flatten_json_blocks(j));
}
inline potential2 potential2_from_json(const json& j) {
  return parse_potential2(detail::flatten_json_blocks(j));
}
inline potential4 potential4_from_json(const json& j) {
  return parse_potential4(detail::flatten_json_blocks(j));
}

inline json rational_json(const rational& r) { return r.to_string(); }

inline json report_json(const pressure_report& r) {
  json j;
  j["value"] = r.value;
  j["method"] = r.method;
  if (r.decomp) {
    j["decomposition"] = {{"leading", r.decomp->leading},
                          {"c_term", r.decomp->c_term},
                          {"correction", r.decomp->correction}};
  }
  if (r.equilibrium) {
    j["equilibrium"] = {{"p", r.equilibrium->p},
                        {"kind", to_string(r.equilibrium->kind)}};
  }
  j["inputs"] = r.inputs_digest;
  return j;
}

inline json sweep_json(const std::vector<sweep_point>& points) {
  json rows = json::array();
  for (auto& p : points)
    rows.push_back({{"K", p.cutoff.to_string()},
                    {"value", p.value.to_string()},
                    {"float", p.value.to_double()}});
  return rows;
}

inline std::string sweep_csv(const std::vector<sweep_point>& points) {
  std::string out = "K,value,float\n";
  for (auto& p : points)
    out += p.cutoff.to_string() + "," + p.value.to_string() + "," +
           std::to_string(p.value.to_double()) + "\n";
  return out;
}

template <class Real>
json transfer_json(const transfer_data<Real>& t) {
  json j;
  j["M"] = {{static_cast<double>(t.m[0][0]), static_cast<double>(t.m[0][1])},
            {static_cast<double>(t.m[1][0]), static_cast<double>(t.m[1][1])}};
  j["trace"] = static_cast<double>(t.trace);
  j["det"] = static_cast<double>(t.det);
  j["lambda_plus"] = static_cast<double>(t.lambda_plus);
  j["lambda_minus"] = static_cast<double>(t.lambda_minus);
  j["C_plus"] = {
      {static_cast<double>(t.c_plus[0][0]), static_cast<double>(t.c_plus[0][1])},
      {static_cast<double>(t.c_plus[1][0]), static_cast<double>(t.c_plus[1][1])}};
  j["C_minus"] = {{static_cast<double>(t.c_minus[0][0]),
                   static_cast<double>(t.c_minus[0][1])},
                  {static_cast<double>(t.c_minus[1][0]),
                   static_cast<double>(t.c_minus[1][1])}};
  return j;
}

inline json compare_json(const compare_record& rec) {
  json rows = json::array();
  for (auto& r : rec.rows)
    rows.push_back({{"n", r.n},
                    {"estimate", r.estimate},
                    {"bound", r.bound},
                    {"diff", r.diff}});
  return json{{"target", rec.target}, {"rows", rows}, {"pass", rec.pass}};
}

inline std::string compare_csv(const compare_record& rec) {
  std::string out = "n,estimate,bound,diff\n";
  for (auto& r : rec.rows)
    out += std::to_string(r.n) + "," + std::to_string(r.estimate) + "," +
           std::to_string(r.bound) + "," + std::to_string(r.diff) + "\n";
  return out;
}

inline json error_json(const error& e) {
  return json{{"error", {{"kind", e.kind()}, {"detail", e.what()}}}};
}

}  // namespace bfp::io
