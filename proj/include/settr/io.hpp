#pragma once

// File formats: cone and solver-config JSON, trace JSONL/CSV, run-record CSV,
// profile JSON and gnuplot data. Numbers are written with %.17g so output is
// byte-stable for identical inputs.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "settr/bench.hpp"
#include "settr/cone.hpp"
#include "settr/trust_region.hpp"

namespace settr::io {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_num(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw FormatError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw FormatError("not a number: '" + s + "'");
  return v;
}

inline std::string join_vector(const Vector& v, char sep = ';') {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += num(v[i]);
  }
  return out;
}

inline Vector split_vector(const std::string& s, char sep = ';') {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) vals.push_back(parse_num(tok));
  return Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

inline json to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Vector vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw FormatError(what + ": expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw FormatError(what + ": element " + std::to_string(i) + " is not a number");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

inline void reject_unknown_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": expected a JSON object");
  for (const auto& [key, val] : j.items())
    if (!allowed.count(key)) throw FormatError(where + ": unknown key '" + key + "'");
}

// --------------------------------------------------------------------- cone

inline json cone_to_json(const PolyhedralCone& cone) {
  json normals = json::array();
  for (Eigen::Index r = 0; r < cone.normals().rows(); ++r) normals.push_back(to_json(cone.normals().row(r).transpose()));
  return json{{"dim", cone.dim()}, {"normals", normals}};
}

inline PolyhedralCone cone_from_json(const json& j) {
  reject_unknown_keys(j, {"dim", "normals"}, "cone");
  if (!j.contains("normals")) throw FormatError("cone: missing key 'normals'");
  const json& rows = j.at("normals");
  if (!rows.is_array() || rows.empty()) throw FormatError("cone: 'normals' must be a non-empty array");
  std::vector<std::vector<double>> w;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Vector v = vector_from_json(rows[r], "cone.normals[" + std::to_string(r) + "]");
    w.emplace_back(v.data(), v.data() + v.size());
  }
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer()) throw FormatError("cone: 'dim' must be an integer");
    if (j.at("dim").get<long>() != static_cast<long>(w.front().size()))
      throw FormatError("cone: 'dim' does not match the normal length");
  }
  return PolyhedralCone(w);
}

// ------------------------------------------------------------------- config

inline json config_to_json(const TrustRegionConfig& c) {
  const auto& sp = c.subproblem;
  return json{{"omega0", c.omega0},
              {"omega_max", c.omega_max},
              {"epsilon", c.epsilon},
              {"eta1", c.eta1},
              {"eta2", c.eta2},
              {"gamma1", c.gamma1},
              {"gamma2", c.gamma2},
              {"max_iter", c.max_iter},
              {"partition_cap", c.partition_cap},
              {"dedup_tol", c.dedup_tol},
              {"subproblem",
               {{"seed", sp.seed},
                {"n_random", sp.n_random},
                {"n_starts", sp.n_starts},
                {"refine_iters", sp.refine_iters},
                {"step_scale", sp.step_scale},
                {"polish_iters", sp.polish_iters},
                {"active_tol", sp.active_tol}}}};
}

namespace detail {

template <class T>
void read_field(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw FormatError(where + "." + key + ": expected a number");
  } else {
    if (!v.is_number_integer() && !v.is_number_unsigned())
      throw FormatError(where + "." + key + ": expected an integer");
    if constexpr (std::is_unsigned_v<T>)
      if (v.is_number_integer() && v.get<long long>() < 0)
        throw FormatError(where + "." + key + ": expected a nonnegative integer");
  }
  out = v.get<T>();
}

}  // namespace detail

/// Applies the keys present in j on top of base. Unknown keys are errors.
inline TrustRegionConfig config_from_json(const json& j, TrustRegionConfig base = {}) {
  const std::string where = "config";
  reject_unknown_keys(j, {"omega0", "omega_max", "epsilon", "eta1", "eta2", "gamma1", "gamma2", "max_iter",
                          "partition_cap", "dedup_tol", "subproblem"},
                      where);
  detail::read_field(j, "omega0", base.omega0, where);
  detail::read_field(j, "omega_max", base.omega_max, where);
  detail::read_field(j, "epsilon", base.epsilon, where);
  detail::read_field(j, "eta1", base.eta1, where);
  detail::read_field(j, "eta2", base.eta2, where);
  detail::read_field(j, "gamma1", base.gamma1, where);
  detail::read_field(j, "gamma2", base.gamma2, where);
  detail::read_field(j, "max_iter", base.max_iter, where);
  detail::read_field(j, "partition_cap", base.partition_cap, where);
  detail::read_field(j, "dedup_tol", base.dedup_tol, where);
  if (j.contains("subproblem")) {
    const json& s = j.at("subproblem");
    const std::string sw = where + ".subproblem";
    reject_unknown_keys(s, {"seed", "n_random", "n_starts", "refine_iters", "step_scale", "polish_iters", "active_tol"},
                        sw);
    auto& sp = base.subproblem;
    detail::read_field(s, "seed", sp.seed, sw);
    detail::read_field(s, "n_random", sp.n_random, sw);
    detail::read_field(s, "n_starts", sp.n_starts, sw);
    detail::read_field(s, "refine_iters", sp.refine_iters, sw);
    detail::read_field(s, "step_scale", sp.step_scale, sw);
    detail::read_field(s, "polish_iters", sp.polish_iters, sw);
    detail::read_field(s, "active_tol", sp.active_tol, sw);
  }
  try {
    base.validate();
  } catch (const ContractError& e) {
    throw FormatError(e.what());
  }
  return base;
}

// -------------------------------------------------------------------- trace

inline void write_trace_jsonl(std::ostream& os, const RunResult& res, bool timing = true) {
  for (const auto& r : res.trace) {
    json row{{"k", r.k},
             {"status", to_string(r.status)},
             {"x", to_json(r.x)},
             {"omega", r.omega},
             {"a", r.a},
             {"s", to_json(r.s)},
             {"t", r.t},
             {"rho", r.rho},
             {"step_length", r.step_length},
             {"omega_count", r.omega_count},
             {"truncated", r.truncated},
             {"wall_ms", timing ? r.wall_ms : 0.0}};
    if (r.descent_verified) row["descent_verified"] = *r.descent_verified;
    os << row.dump() << '\n';
  }
}

inline const char* kTraceCsvHeader = "k,status,t,omega,step_length,rho_min,rho_max,wall_ms";

inline void write_trace_csv(std::ostream& os, const RunResult& res, bool timing = true) {
  os << kTraceCsvHeader << '\n';
  for (const auto& r : res.trace) {
    const bool has_rho = !r.rho.empty();
    os << r.k << ',' << to_string(r.status) << ',' << num(r.t) << ',' << num(r.omega) << ',' << num(r.step_length)
       << ',' << (has_rho ? num(r.rho_min()) : "") << ',' << (has_rho ? num(r.rho_max()) : "") << ','
       << num(timing ? r.wall_ms : 0.0) << '\n';
  }
}

// ------------------------------------------------------------------ records

inline const char* kRecordsCsvHeader = "problem,solver,init,seed,x0,converged,iterations,wall_seconds,avg_step_length";

inline void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kRecordsCsvHeader << '\n';
  for (const auto& r : records)
    os << r.problem << ',' << r.solver << ',' << r.init << ',' << r.seed << ',' << join_vector(r.x0) << ','
       << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << num(r.wall_seconds) << ','
       << num(r.avg_step_length) << '\n';
}

inline std::vector<RunRecord> read_records_csv(std::istream& is, const std::string& source = "records") {
  std::string line;
  if (!std::getline(is, line)) throw FormatError(source + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordsCsvHeader) throw FormatError(source + ": unexpected header '" + line + "'");
  std::vector<RunRecord> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) f.push_back(tok);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    const std::string where = source + ":" + std::to_string(lineno);
    if (f.size() != 9) throw FormatError(where + ": expected 9 fields, got " + std::to_string(f.size()));
    try {
      RunRecord r;
      r.problem = f[0];
      r.solver = f[1];
      r.init = std::stoi(f[2]);
      r.seed = std::stoull(f[3]);
      r.x0 = f[4].empty() ? Vector() : split_vector(f[4]);
      if (f[5] != "0" && f[5] != "1") throw FormatError("converged must be 0 or 1");
      r.converged = f[5] == "1";
      r.iterations = std::stoi(f[6]);
      r.wall_seconds = parse_num(f[7]);
      r.avg_step_length = parse_num(f[8]);
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return out;
}

// ------------------------------------------------------------------ summary

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << "problem,solver,runs,converged,"
        "iter_min,iter_max,iter_mean,iter_median,"
        "time_min,time_max,time_mean,time_median,"
        "step_min,step_max,step_mean,step_median\n";
  auto stats = [&](const Stats& s) {
    os << ',' << num(s.min) << ',' << num(s.max) << ',' << num(s.mean) << ',' << num(s.median);
  };
  for (const auto& r : rows) {
    os << r.problem << ',' << r.solver << ',' << r.runs << ',' << r.converged;
    stats(r.iterations);
    stats(r.wall_seconds);
    stats(r.avg_step_length);
    os << '\n';
  }
}

// ------------------------------------------------------------------ profile

inline json profile_to_json(const ProfileTable& tab) {
  json curves = json::array();
  for (const auto& c : tab.curves) curves.push_back(json{{"solver", c.solver}, {"tau", c.tau}, {"rho", c.rho}});
  json ratios = json::array();
  for (std::size_t p = 0; p < tab.problems.size(); ++p) {
    json row = json::object();
    row["problem"] = tab.problems[p];
    json r = json::object();
    for (std::size_t s = 0; s < tab.solvers.size(); ++s) {
      const double v = tab.ratio[p][s];
      r[tab.solvers[s]] = std::isfinite(v) ? json(v) : json("inf");
    }
    row["ratio"] = r;
    ratios.push_back(row);
  }
  return json{{"metric", to_string(tab.metric)},
              {"solvers", tab.solvers},
              {"problems", tab.problems.size()},
              {"curves", curves},
              {"ratios", ratios},
              {"warnings", tab.warnings}};
}

/// Two columns "tau rho" for one solver's curve.
inline void write_gnuplot(std::ostream& os, const ProfileCurve& c, ProfileMetric metric) {
  os << "# performance profile: solver=" << c.solver << " metric=" << to_string(metric) << '\n';
  os << "# tau rho\n";
  for (std::size_t q = 0; q < c.tau.size(); ++q) os << num(c.tau[q]) << ' ' << num(c.rho[q]) << '\n';
}

// -------------------------------------------------------------------- files

inline std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open '" + path + "' for writing");
  return os;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open '" + path + "' for reading");
  return is;
}

inline json read_json_file(const std::string& path) {
  auto is = open_in(path);
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace settr::io
