#pragma once

// Batch runner, per-run records, convergence filtering, summary statistics
// and Dolan-More performance profiles.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "settr/baselines.hpp"
#include "settr/cone.hpp"
#include "settr/problem.hpp"
#include "settr/trust_region.hpp"

namespace settr {

struct RunRecord {
  std::string problem;
  std::string solver;
  int init = 0;
  std::uint64_t seed = 0;
  Vector x0;
  bool converged = false;
  int iterations = 0;
  double wall_seconds = 0.0;
  double avg_step_length = 0.0;
};

/// One problem instance to benchmark, with the cone it is ordered by.
struct BenchProblem {
  std::string id;
  std::shared_ptr<const SetMapProblem> problem;
  std::shared_ptr<const PolyhedralCone> cone;
};

struct BatchOptions {
  int n_inits = 100;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool record_timing = true;  // false writes wall_seconds = 0 for byte-stable output
};

namespace detail {

// FNV-1a, so seeds do not depend on the standard library's std::hash.
inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Seed of the stream that draws x0 for (problem, init).
inline std::uint64_t init_seed(std::uint64_t seed, const std::string& problem_id, int init) {
  const std::uint64_t h = detail::fnv1a(problem_id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(init)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

/// Uniform point in the box from a dedicated stream.
inline Vector draw_initial_point(const Box& box, std::uint64_t stream_seed) {
  std::mt19937_64 rng(stream_seed);
  Vector x(box.lower.size());
  for (Eigen::Index j = 0; j < x.size(); ++j)
    x[j] = box.lower[j] + (box.upper[j] - box.lower[j]) * detail::unit_uniform(rng);
  return x;
}

inline RunRecord make_record(const std::string& problem_id, const Solver& solver, int init, std::uint64_t seed,
                             const Vector& x0, const RunResult& res, bool record_timing) {
  RunRecord r;
  r.problem = problem_id;
  r.solver = solver.name();
  r.init = init;
  r.seed = seed;
  r.x0 = x0;
  r.converged = res.status == RunStatus::Converged && res.iterations < solver.max_iter();
  r.iterations = res.iterations;
  r.wall_seconds = record_timing ? res.wall_seconds : 0.0;
  r.avg_step_length = res.avg_step_length();
  return r;
}

/// Runs every solver from the same n_inits starting points of every problem.
/// Output order is (problem, init, solver) regardless of thread count.
inline std::vector<RunRecord> run_batch(const std::vector<BenchProblem>& problems,
                                        const std::vector<const Solver*>& solvers, const BatchOptions& opt) {
  detail::require(opt.n_inits >= 1, "run_batch: n_inits must be >= 1");
  for (const auto* s : solvers) detail::require(s != nullptr, "run_batch: null solver");
  struct Job {
    std::size_t p;
    int init;
    std::size_t s;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (int i = 0; i < opt.n_inits; ++i)
      for (std::size_t s = 0; s < solvers.size(); ++s) jobs.push_back({p, i, s});

  std::vector<RunRecord> out(jobs.size());
  auto work = [&](const Job& job, RunRecord& slot) {
    const BenchProblem& bp = problems[job.p];
    const std::uint64_t seed = init_seed(opt.seed, bp.id, job.init);
    const Vector x0 = draw_initial_point(bp.problem->init_box(), seed);
    const Solver& solver = *solvers[job.s];
    RunResult res;
    try {
      res = solver.run(*bp.problem, *bp.cone, x0);
    } catch (const std::exception& e) {
      res.status = RunStatus::Failed;
      res.message = e.what();
    }
    slot = make_record(bp.id, solver, job.init, seed, x0, res, opt.record_timing);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(jobs.size())));
  if (threads <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) work(jobs[j], out[j]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < jobs.size(); j = next++) work(jobs[j], out[j]);
    });
  for (auto& th : pool) th.join();
  return out;
}

/// Keeps only the (problem, init) groups in which every solver converged.
inline std::vector<RunRecord> common_convergence_filter(const std::vector<RunRecord>& records) {
  std::set<std::string> solvers;
  for (const auto& r : records) solvers.insert(r.solver);
  std::map<std::pair<std::string, int>, std::set<std::string>> converged;
  for (const auto& r : records)
    if (r.converged) converged[{r.problem, r.init}].insert(r.solver);
  std::vector<RunRecord> out;
  for (const auto& r : records) {
    auto it = converged.find({r.problem, r.init});
    if (it != converged.end() && it->second == solvers) out.push_back(r);
  }
  return out;
}

// ------------------------------------------------------------------ summary

struct Stats {
  int count = 0;
  double min = 0.0, max = 0.0, mean = 0.0, median = 0.0;
};

inline Stats compute_stats(std::vector<double> v) {
  Stats s;
  s.count = static_cast<int>(v.size());
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  s.min = v.front();
  s.max = v.back();
  double sum = 0.0;
  for (double e : v) sum += e;
  s.mean = sum / static_cast<double>(v.size());
  const std::size_t h = v.size() / 2;
  s.median = v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
  return s;
}

struct SummaryRow {
  std::string problem;
  std::string solver;
  int runs = 0;
  int converged = 0;
  Stats iterations;
  Stats wall_seconds;
  Stats avg_step_length;
};

/// Per (problem, solver) statistics over convergent records only.
inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::map<std::pair<std::string, std::string>, std::vector<const RunRecord*>> groups;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& r : records) {
    auto key = std::make_pair(r.problem, r.solver);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    SummaryRow row;
    row.problem = key.first;
    row.solver = key.second;
    std::vector<double> it, wall, step;
    for (const RunRecord* r : groups[key]) {
      ++row.runs;
      if (!r->converged) continue;
      ++row.converged;
      it.push_back(r->iterations);
      wall.push_back(r->wall_seconds);
      step.push_back(r->avg_step_length);
    }
    row.iterations = compute_stats(it);
    row.wall_seconds = compute_stats(wall);
    row.avg_step_length = compute_stats(step);
    out.push_back(std::move(row));
  }
  return out;
}

// ----------------------------------------------------------------- profiles

enum class ProfileMetric { Iterations, WallSeconds, ReciprocalStep };

inline std::string to_string(ProfileMetric m) {
  switch (m) {
    case ProfileMetric::Iterations: return "iterations";
    case ProfileMetric::WallSeconds: return "wall_seconds";
    case ProfileMetric::ReciprocalStep: return "reciprocal_step";
  }
  return "?";
}

inline ProfileMetric parse_metric(const std::string& s) {
  if (s == "iterations") return ProfileMetric::Iterations;
  if (s == "wall_seconds" || s == "time") return ProfileMetric::WallSeconds;
  if (s == "reciprocal_step" || s == "step") return ProfileMetric::ReciprocalStep;
  throw ContractError("unknown metric '" + s + "' (expected iterations, wall_seconds or reciprocal_step)");
}

inline double metric_value(const RunRecord& r, ProfileMetric m) {
  switch (m) {
    case ProfileMetric::Iterations: return r.iterations;
    case ProfileMetric::WallSeconds: return r.wall_seconds;
    case ProfileMetric::ReciprocalStep:
      return r.avg_step_length > 0.0 ? 1.0 / r.avg_step_length : std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

struct ProfileCurve {
  std::string solver;
  std::vector<double> tau;
  std::vector<double> rho;
};

struct ProfileTable {
  ProfileMetric metric = ProfileMetric::Iterations;
  std::vector<std::string> problems;  // "problem#init"
  std::vector<std::string> solvers;
  std::vector<std::vector<double>> ratio;  // ratio[p][s], +inf when unsolved
  std::vector<ProfileCurve> curves;
  std::vector<std::string> warnings;

  /// rho_s(tau) = |{p : r_{p,s} <= tau}| / |P|, evaluated exactly.
  double rho_at(std::size_t s, double tau) const {
    if (problems.empty()) return 0.0;
    std::size_t hit = 0;
    for (const auto& row : ratio)
      if (row[s] <= tau) ++hit;
    return static_cast<double>(hit) / static_cast<double>(problems.size());
  }

  std::size_t solver_index(const std::string& name) const {
    for (std::size_t s = 0; s < solvers.size(); ++s)
      if (solvers[s] == name) return s;
    throw ContractError("profile has no solver '" + name + "'");
  }
};

/// Dolan-More profile. Each (problem, init) pair is one instance;
/// nonconvergent or missing runs get r = +inf; records whose metric is
/// not a positive finite number are excluded with a warning.
inline ProfileTable performance_profile(const std::vector<RunRecord>& records, ProfileMetric metric,
                                        int log_points = 64) {
  ProfileTable tab;
  tab.metric = metric;
  std::map<std::string, std::size_t> sidx, pidx;
  for (const auto& r : records) {
    if (!sidx.count(r.solver)) {
      sidx[r.solver] = tab.solvers.size();
      tab.solvers.push_back(r.solver);
    }
    const std::string key = r.problem + "#" + std::to_string(r.init);
    if (!pidx.count(key)) {
      pidx[key] = tab.problems.size();
      tab.problems.push_back(key);
    }
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> t(tab.problems.size(), std::vector<double>(tab.solvers.size(), inf));
  for (const auto& r : records) {
    if (!r.converged) continue;
    const double v = metric_value(r, metric);
    const std::string key = r.problem + "#" + std::to_string(r.init);
    if (!(v > 0.0) || !std::isfinite(v)) {
      tab.warnings.push_back("excluded " + r.solver + " on " + key + ": " + to_string(metric) + " = " +
                             std::to_string(v));
      continue;
    }
    double& slot = t[pidx[key]][sidx[r.solver]];
    slot = std::min(slot, v);
  }
  tab.ratio.assign(tab.problems.size(), std::vector<double>(tab.solvers.size(), inf));
  double max_ratio = 1.0;
  std::set<double> exact{1.0};
  for (std::size_t p = 0; p < t.size(); ++p) {
    const double best = *std::min_element(t[p].begin(), t[p].end());
    if (!std::isfinite(best)) continue;
    for (std::size_t s = 0; s < t[p].size(); ++s) {
      if (!std::isfinite(t[p][s])) continue;
      const double r = t[p][s] / best;
      tab.ratio[p][s] = r;
      exact.insert(r);
      max_ratio = std::max(max_ratio, r);
    }
  }
  std::set<double> grid = exact;
  if (max_ratio > 1.0 && log_points > 1)
    for (int q = 0; q < log_points; ++q)
      grid.insert(std::exp(std::log(max_ratio) * q / (log_points - 1)));
  grid.insert(max_ratio);
  for (std::size_t s = 0; s < tab.solvers.size(); ++s) {
    ProfileCurve c;
    c.solver = tab.solvers[s];
    for (double tau : grid) {
      if (tau > max_ratio) continue;
      c.tau.push_back(tau);
      c.rho.push_back(tab.rho_at(s, tau));
    }
    tab.curves.push_back(std::move(c));
  }
  return tab;
}

}  // namespace settr
