#pragma once

// Pluggable solver interface shared by the benchmark harness, the
// trust-region adapter, and a first-order steepest-descent baseline.

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "settr/cone.hpp"
#include "settr/detail/min_norm.hpp"
#include "settr/partition.hpp"
#include "settr/problem.hpp"
#include "settr/subproblem.hpp"
#include "settr/trust_region.hpp"

namespace settr {

/// Anything that maps (problem, cone, x0) to a trace with the
/// IterationRecord schema. Statuses used by first-order methods are
/// Successful (accepted), Unsuccessful (rejected) and Converged.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual std::string name() const = 0;
  virtual int max_iter() const = 0;
  virtual RunResult run(const SetMapProblem& problem, const PolyhedralCone& cone, const Vector& x0) const = 0;
};

class TrustRegionSolver final : public Solver {
 public:
  explicit TrustRegionSolver(TrustRegionConfig cfg = {}) : cfg_(std::move(cfg)) { cfg_.validate(); }

  std::string name() const override { return "trm"; }
  int max_iter() const override { return cfg_.max_iter; }
  const TrustRegionConfig& config() const noexcept { return cfg_; }

  RunResult run(const SetMapProblem& problem, const PolyhedralCone& cone, const Vector& x0) const override {
    return trust_region_run(problem, cone, x0, cfg_);
  }

 private:
  TrustRegionConfig cfg_;
};

struct SteepestDescentParams {
  double beta_sd = 0.0001;     // accepted for parity with the reference setup; unused
  double sigma = 0.1;          // conjugate-gradient parameter; unused by SD
  double nu = 0.5;             // backtracking factor
  double armijo_rho = 0.0001;  // Armijo constant
  double epsilon = 1e-3;       // stop when the direction value exceeds -epsilon
  int max_iter = 100;
  int max_backtracks = 50;
  std::size_t partition_cap = kDefaultPartitionCap;
  double dedup_tol = kDefaultDedupTol;

  void validate() const {
    detail::require(0.0 < nu && nu < 1.0, "sd: need 0 < nu < 1");
    detail::require(0.0 < armijo_rho && armijo_rho < 1.0, "sd: need 0 < armijo_rho < 1");
    detail::require(epsilon > 0.0, "sd: epsilon must be positive");
    detail::require(max_iter >= 0 && max_backtracks >= 1, "sd: iteration limits must be positive");
  }
};

struct SteepestDirection {
  PartitionElement a;
  Vector d;
  double value = 0.0;  // max_j Delta(J_{a_j} d) + 1/2 ||d||^2 <= 0
};

/// Direction subproblem min_{a, d} max_j Delta(J_{a_j} d) + 1/2 ||d||^2.
/// For fixed a the minimizer is d = -G lambda with lambda the min-norm
/// weights of the columns J_{a_j}^T w_l, and the value is -1/2 ||d||^2.
inline SteepestDirection steepest_direction(LocalModels& models, const PolyhedralCone& cone,
                                            const PartitionView& view,
                                            std::size_t cap = kDefaultPartitionCap) {
  const Matrix& W = cone.normalized_normals();
  const auto en = iter_partition(view, cap);
  detail::require(!en.elements.empty(), "steepest_direction: empty partition set");
  SteepestDirection best;
  bool have = false;
  for (const auto& a : en.elements) {
    Matrix G(models.problem().n(), static_cast<Eigen::Index>(a.size()) * W.rows());
    Eigen::Index c = 0;
    for (int idx : a) {
      const Matrix& J = models.jacobian(idx);
      for (Eigen::Index l = 0; l < W.rows(); ++l) G.col(c++) = J.transpose() * W.row(l).transpose();
    }
    Vector d = -(G * detail::min_norm_weights(G));
    // Evaluate the primal objective at d rather than trusting the dual value.
    double val = 0.5 * d.squaredNorm();
    double lin = -std::numeric_limits<double>::infinity();
    for (int idx : a) lin = std::max(lin, cone.oriented_distance(models.jacobian(idx) * d));
    val += lin;
    if (val > 0.0) {
      d.setZero();
      val = 0.0;
    }
    if (!have || val < best.value - 1e-15 * std::max(1.0, std::abs(best.value))) {
      best.a = a;
      best.d = std::move(d);
      best.value = val;
      have = true;
    }
  }
  return best;
}

/// First-order steepest descent for the set problem with Armijo
/// backtracking on every selected component.
inline RunResult steepest_descent_run(const SetMapProblem& problem, const PolyhedralCone& cone,
                                      const Vector& x0, const SteepestDescentParams& params = {}) {
  params.validate();
  detail::require(problem.m() == cone.dim(), "sd: cone dimension differs from problem image dimension");
  detail::require(x0.size() == problem.n(), "sd: x0 has wrong dimension");
  using clock = std::chrono::steady_clock;
  const auto run_start = clock::now();
  RunResult res;
  res.solver = "sd";
  Vector x = x0;
  try {
    PartitionView view = partition_at(problem, cone, x, params.dedup_tol);
    for (int k = 0;; ++k) {
      res.iterations = k;
      if (k >= params.max_iter) {
        res.status = RunStatus::MaxIter;
        break;
      }
      const auto it_start = clock::now();
      IterationRecord rec;
      rec.k = k;
      rec.x = x;
      rec.omega_count = view.omega();
      LocalModels models(problem, x);
      const SteepestDirection dir = steepest_direction(models, cone, view, params.partition_cap);
      rec.a = dir.a;
      rec.s = dir.d;
      rec.t = dir.value;
      res.t_final = dir.value;
      auto finish = [&](StepStatus st) {
        rec.status = st;
        rec.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - it_start).count();
        res.trace.push_back(rec);
      };
      if (dir.value > -params.epsilon) {
        finish(StepStatus::Converged);
        res.status = RunStatus::Converged;
        break;
      }
      std::vector<Vector> fx;
      std::vector<double> slope;
      for (int idx : dir.a) {
        fx.push_back(view.values[static_cast<std::size_t>(idx)]);
        slope.push_back(cone.oriented_distance(models.jacobian(idx) * dir.d));
      }
      double step = 1.0;
      bool found = false;
      for (int bt = 0; bt < params.max_backtracks; ++bt, step *= params.nu) {
        const Vector xt = x + step * dir.d;
        bool ok = true;
        try {
          for (std::size_t j = 0; j < dir.a.size() && ok; ++j) {
            const Vector diff = problem.eval(dir.a[j], xt) - fx[j];
            ok = cone.oriented_distance(diff) <= params.armijo_rho * step * slope[j];
          }
        } catch (const EvaluationError&) {
          ok = false;
        }
        if (ok) {
          found = true;
          break;
        }
      }
      rec.omega = step;
      if (!found) {
        finish(StepStatus::Unsuccessful);
        res.status = RunStatus::Failed;
        res.message = "backtracking exhausted";
        break;
      }
      const Vector x_next = x + step * dir.d;
      PartitionView next = partition_at(problem, cone, x_next, params.dedup_tol);
      rec.descent_verified = lower_set_relation(next.values, view.values, cone) == SetRelation::StrictLower;
      rec.step_length = (x_next - x).norm();
      x = x_next;
      view = std::move(next);
      finish(StepStatus::Successful);
    }
  } catch (const EvaluationError& e) {
    res.status = RunStatus::Failed;
    res.message = e.what();
  }
  res.x_final = x;
  res.wall_seconds = std::chrono::duration<double>(clock::now() - run_start).count();
  return res;
}

class SteepestDescentSolver final : public Solver {
 public:
  explicit SteepestDescentSolver(SteepestDescentParams params = {}) : params_(params) { params_.validate(); }

  std::string name() const override { return "sd"; }
  int max_iter() const override { return params_.max_iter; }
  const SteepestDescentParams& params() const noexcept { return params_; }

  RunResult run(const SetMapProblem& problem, const PolyhedralCone& cone, const Vector& x0) const override {
    return steepest_descent_run(problem, cone, x0, params_);
  }

 private:
  SteepestDescentParams params_;
};

/// Name -> factory registry. "trm" and "sd" are registered by default;
/// third-party methods (e.g. a conjugate-gradient variant) can be added.
class SolverRegistry {
 public:
  using Factory = std::function<std::unique_ptr<Solver>(const TrustRegionConfig&, const SteepestDescentParams&)>;

  SolverRegistry() {
    add("trm", [](const TrustRegionConfig& c, const SteepestDescentParams&) {
      return std::make_unique<TrustRegionSolver>(c);
    });
    add("sd", [](const TrustRegionConfig&, const SteepestDescentParams& p) {
      return std::make_unique<SteepestDescentSolver>(p);
    });
  }

  void add(const std::string& name, Factory f) { factories_[name] = std::move(f); }

  bool contains(const std::string& name) const { return factories_.count(name) != 0; }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : factories_) out.push_back(k);
    return out;
  }

  std::unique_ptr<Solver> make(const std::string& name, const TrustRegionConfig& trm = {},
                               const SteepestDescentParams& sd = {}) const {
    auto it = factories_.find(name);
    if (it == factories_.end()) throw ContractError("unknown solver '" + name + "'");
    return it->second(trm, sd);
  }

 private:
  std::map<std::string, Factory> factories_;
};

}  // namespace settr
