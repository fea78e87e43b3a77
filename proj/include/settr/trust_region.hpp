#pragma once

// Trust-region method for set optimization under the lower set-less order:
// minimal elements -> partition -> min-max subproblem -> componentwise
// reduction ratios -> acceptance and radius update.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "settr/cone.hpp"
#include "settr/partition.hpp"
#include "settr/problem.hpp"
#include "settr/subproblem.hpp"

namespace settr {

/// Solver parameters. Defaults are the values used in the reference
/// experiments.
struct TrustRegionConfig {
  double omega0 = 1.0;
  double omega_max = 20.0;
  double epsilon = 1e-3;
  double eta1 = 0.001;
  double eta2 = 0.75;
  double gamma1 = 0.4;
  double gamma2 = 0.9;
  int max_iter = 100;
  std::size_t partition_cap = kDefaultPartitionCap;
  double dedup_tol = kDefaultDedupTol;
  SubproblemSettings subproblem;

  void validate() const {
    detail::require(0.0 < eta1 && eta1 < eta2 && eta2 < 1.0, "config: need 0 < eta1 < eta2 < 1");
    detail::require(0.0 < gamma1 && gamma1 <= gamma2 && gamma2 < 1.0, "config: need 0 < gamma1 <= gamma2 < 1");
    detail::require(0.0 < omega0 && omega0 <= omega_max && std::isfinite(omega_max),
                    "config: need 0 < omega0 <= omega_max");
    detail::require(epsilon > 0.0, "config: epsilon must be positive");
    detail::require(max_iter >= 0, "config: max_iter must be nonnegative");
    detail::require(partition_cap >= 1, "config: partition_cap must be at least 1");
    detail::require(dedup_tol >= 0.0, "config: dedup_tol must be nonnegative");
    detail::require(subproblem.n_random >= 0 && subproblem.n_starts >= 0 && subproblem.refine_iters >= 0 &&
                        subproblem.polish_iters >= 0,
                    "config: subproblem counts must be nonnegative");
  }
};

enum class StepStatus { Successful, VerySuccessful, Unsuccessful, Converged };

inline const char* to_string(StepStatus s) {
  switch (s) {
    case StepStatus::Successful: return "successful";
    case StepStatus::VerySuccessful: return "very-successful";
    case StepStatus::Unsuccessful: return "unsuccessful";
    case StepStatus::Converged: return "converged";
  }
  return "?";
}

inline bool is_accepted(StepStatus s) {
  return s == StepStatus::Successful || s == StepStatus::VerySuccessful;
}

struct IterationRecord {
  int k = 0;
  Vector x;                 // iterate at the start of iteration k
  double omega = 0.0;       // radius used at iteration k
  PartitionElement a;
  Vector s;
  double t = 0.0;
  std::vector<double> rho;  // empty on the converged record
  StepStatus status = StepStatus::Unsuccessful;
  double step_length = 0.0; // ||x_{k+1} - x_k||_2
  double wall_ms = 0.0;
  int omega_count = 0;      // omega(x_k)
  bool truncated = false;   // partition enumeration hit the cap
  std::optional<bool> descent_verified;  // F(x_{k+1}) <^l F(x_k) on accepted steps

  double rho_min() const {
    return rho.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::min_element(rho.begin(), rho.end());
  }
  double rho_max() const {
    return rho.empty() ? std::numeric_limits<double>::quiet_NaN() : *std::max_element(rho.begin(), rho.end());
  }
};

enum class RunStatus { Converged, MaxIter, Failed };

inline const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIter: return "max-iter";
    case RunStatus::Failed: return "failed";
  }
  return "?";
}

struct RunResult {
  std::string solver;
  RunStatus status = RunStatus::MaxIter;
  std::vector<IterationRecord> trace;
  Vector x_final;
  double t_final = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;        // index k of the last iteration performed
  double wall_seconds = 0.0;
  bool truncated = false;    // any iteration ran on a truncated partition
  std::string message;

  int accepted_steps() const {
    return static_cast<int>(std::count_if(trace.begin(), trace.end(),
                                          [](const IterationRecord& r) { return is_accepted(r.status); }));
  }
  double avg_step_length() const {
    double sum = 0.0;
    int cnt = 0;
    for (const auto& r : trace)
      if (is_accepted(r.status)) {
        sum += r.step_length;
        ++cnt;
      }
    return cnt ? sum / cnt : 0.0;
  }
};

struct ReductionRatio {
  std::vector<double> rho;
  std::vector<double> actual;     // -Delta(f(x+s) - f(x))
  std::vector<double> predicted;  // Delta(m(0) - m(s)) = Delta(-m(s))
  bool degenerate = false;        // some predicted reduction below the guard
};

namespace detail {

inline double denominator_guard(double predicted) {
  return 1e-14 * std::max(1.0, std::abs(predicted));
}

template <typename NumeratorFn>
ReductionRatio ratio_impl(LocalModels& models, const PolyhedralCone& cone, const PartitionElement& a,
                          const Vector& s, const PointSet& f_x, const PointSet& f_xs,
                          NumeratorFn numerator) {
  ReductionRatio out;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const Vector m_s = models.model_value(a[j], s);
    const double pred = cone.oriented_distance(-m_s);
    const double act = numerator(f_xs[j] - f_x[j]);
    out.actual.push_back(act);
    out.predicted.push_back(pred);
    // Delta(m(0)) - Delta(m(s)) with m(0) = 0.
    if (!(pred > denominator_guard(-cone.oriented_distance(m_s)))) {
      out.degenerate = true;
      out.rho.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      out.rho.push_back(act / pred);
    }
  }
  return out;
}

inline PointSet eval_selected(const SetMapProblem& problem, const PartitionElement& a, const Vector& x) {
  PointSet out;
  for (int i : a) out.push_back(problem.eval(i, x));
  return out;
}

}  // namespace detail

/// rho_j = -Delta(f^{a_j}(x+s) - f^{a_j}(x)) / Delta(m^{a_j}(0) - m^{a_j}(s)).
inline ReductionRatio reduction_ratio(LocalModels& models, const PolyhedralCone& cone,
                                      const PartitionElement& a, const Vector& s) {
  const auto& problem = models.problem();
  const PointSet fx = detail::eval_selected(problem, a, models.x());
  const PointSet fxs = detail::eval_selected(problem, a, models.x() + s);
  return detail::ratio_impl(models, cone, a, s, fx, fxs,
                            [&](const Vector& diff) { return -cone.oriented_distance(diff); });
}

inline ReductionRatio reduction_ratio(const SetMapProblem& problem, const PolyhedralCone& cone,
                                      const Vector& x, const PartitionElement& a, const Vector& s) {
  LocalModels models(problem, x);
  return reduction_ratio(models, cone, a, s);
}

/// Diagnostic only: Delta(f(x) - f(x+s)) / Delta(m(0) - m(s)). Positive
/// values of this ratio do not certify componentwise decrease.
inline ReductionRatio naive_reduction_ratio(const SetMapProblem& problem, const PolyhedralCone& cone,
                                            const Vector& x, const PartitionElement& a, const Vector& s) {
  LocalModels models(problem, x);
  const PointSet fx = detail::eval_selected(problem, a, x);
  const PointSet fxs = detail::eval_selected(problem, a, x + s);
  return detail::ratio_impl(models, cone, a, s, fx, fxs,
                            [&](const Vector& diff) { return cone.oriented_distance(-diff); });
}

/// Unsuccessful iff some rho_j < eta1; very successful iff all rho_j >= eta2.
inline StepStatus classify_step(const std::vector<double>& rho, double eta1, double eta2) {
  detail::require(!rho.empty(), "classify_step: empty ratio vector");
  bool all_high = true;
  for (double r : rho) {
    if (!(r >= eta1)) return StepStatus::Unsuccessful;  // NaN counts as failure
    if (r < eta2) all_high = false;
  }
  return all_high ? StepStatus::VerySuccessful : StepStatus::Successful;
}

/// Successful keeps omega, very successful doubles it (capped at omega_max),
/// unsuccessful shrinks it by (gamma1 + gamma2) / 2.
inline double update_radius(StepStatus status, double omega, const TrustRegionConfig& cfg) {
  detail::require(omega > 0.0, "update_radius: radius must be positive");
  switch (status) {
    case StepStatus::VerySuccessful: return std::min(2.0 * omega, cfg.omega_max);
    case StepStatus::Unsuccessful: return 0.5 * (cfg.gamma1 + cfg.gamma2) * omega;
    case StepStatus::Successful:
    case StepStatus::Converged: return omega;
  }
  return omega;
}

/// Runs the trust-region method from x0.
///
/// Terminates with Converged once |t_k| < epsilon (or when the predicted
/// reduction vanishes numerically), with MaxIter after max_iter iterations,
/// and with Failed (partial trace kept) when an oracle fails at an iterate.
/// A non-finite value at a trial point x_k + s_k only rejects that step.
inline RunResult trust_region_run(const SetMapProblem& problem, const PolyhedralCone& cone,
                                  const Vector& x0, const TrustRegionConfig& cfg = {}) {
  cfg.validate();
  detail::require(problem.m() == cone.dim(), "trust_region_run: cone dimension differs from problem image dimension");
  detail::require(x0.size() == problem.n(), "trust_region_run: x0 has wrong dimension");
  using clock = std::chrono::steady_clock;
  const auto run_start = clock::now();
  RunResult res;
  res.solver = "trm";
  res.x_final = x0;
  Vector x = x0;
  double omega = cfg.omega0;
  try {
    PartitionView view = partition_at(problem, cone, x, cfg.dedup_tol);
    for (int k = 0;; ++k) {
      res.iterations = k;
      if (k >= cfg.max_iter) {
        res.status = RunStatus::MaxIter;
        break;
      }
      const auto it_start = clock::now();
      IterationRecord rec;
      rec.k = k;
      rec.x = x;
      rec.omega = omega;
      rec.omega_count = view.omega();

      LocalModels models(problem, x);
      SubproblemSolution sol = solve_outer(models, cone, view, omega, cfg.subproblem, cfg.partition_cap);
      rec.a = sol.a;
      rec.s = sol.s;
      rec.t = sol.t;
      rec.truncated = sol.truncated;
      res.truncated = res.truncated || sol.truncated;
      res.t_final = sol.t;

      auto finish = [&](StepStatus st) {
        rec.status = st;
        rec.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - it_start).count();
        res.trace.push_back(rec);
      };

      if (std::abs(sol.t) < cfg.epsilon) {
        finish(StepStatus::Converged);
        res.status = RunStatus::Converged;
        break;
      }

      const Vector x_trial = x + sol.s;
      ReductionRatio ratio;
      bool trial_ok = true;
      try {
        ratio = reduction_ratio(models, cone, sol.a, sol.s);
      } catch (const EvaluationError&) {
        // f(x_k) and the models are already known to be finite here.
        trial_ok = false;
      }
      if (trial_ok && ratio.degenerate) {
        rec.rho = ratio.rho;
        finish(StepStatus::Converged);
        res.status = RunStatus::Converged;
        res.message = "predicted reduction vanished";
        break;
      }
      StepStatus st = StepStatus::Unsuccessful;
      if (trial_ok) {
        rec.rho = ratio.rho;
        st = classify_step(ratio.rho, cfg.eta1, cfg.eta2);
      } else {
        rec.rho.assign(sol.a.size(), -std::numeric_limits<double>::infinity());
      }

      if (is_accepted(st)) {
        PartitionView next = partition_at(problem, cone, x_trial, cfg.dedup_tol);
        rec.descent_verified =
            lower_set_relation(next.values, view.values, cone) == SetRelation::StrictLower;
        rec.step_length = sol.s.norm();
        x = x_trial;
        view = std::move(next);
      }
      omega = update_radius(st, omega, cfg);
      finish(st);
    }
  } catch (const EvaluationError& e) {
    res.status = RunStatus::Failed;
    res.message = e.what();
  }
  res.x_final = x;
  res.wall_seconds = std::chrono::duration<double>(clock::now() - run_start).count();
  return res;
}

}  // namespace settr
