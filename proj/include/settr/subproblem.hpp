#pragma once

// Quadratic models m^{a_j}(s) = J s + 1/2 [s^T H_r s]_r, the merit
// Theta_x(a, s) = max_j max{Delta(m^{a_j}(s)), Delta(J_{a_j} s)}, and the
// trust-region min-max subproblem over P_x x {||s||_2 <= Omega}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "settr/cone.hpp"
#include "settr/detail/min_norm.hpp"
#include "settr/partition.hpp"
#include "settr/problem.hpp"

namespace settr {

/// Lazily evaluated first/second derivatives of the component functions at a
/// fixed point x. Only the components actually used are differentiated.
class LocalModels {
 public:
  LocalModels(const SetMapProblem& problem, Vector x) : problem_(&problem), x_(std::move(x)) {}

  const SetMapProblem& problem() const noexcept { return *problem_; }
  const Vector& x() const noexcept { return x_; }

  const Matrix& jacobian(int i) {
    auto it = jac_.find(i);
    if (it == jac_.end()) it = jac_.emplace(i, problem_->jacobian(i, x_)).first;
    return it->second;
  }

  const std::vector<Matrix>& hessians(int i) {
    auto it = hess_.find(i);
    if (it == hess_.end()) it = hess_.emplace(i, problem_->hessians(i, x_)).first;
    return it->second;
  }

  /// Linear part J s.
  Vector linear_value(int i, const Vector& s) { return jacobian(i) * s; }

  /// m^i(s) = J s + 1/2 (s^T H_1 s, ..., s^T H_m s).
  Vector model_value(int i, const Vector& s) {
    Vector v = jacobian(i) * s;
    const auto& H = hessians(i);
    for (std::size_t r = 0; r < H.size(); ++r)
      v[static_cast<Eigen::Index>(r)] += 0.5 * s.dot(H[r] * s);
    return v;
  }

 private:
  const SetMapProblem* problem_;
  Vector x_;
  std::map<int, Matrix> jac_;
  std::map<int, std::vector<Matrix>> hess_;
};

/// m^i(s) for one component at x.
inline Vector model_value(const SetMapProblem& problem, const Vector& x, int i, const Vector& s) {
  detail::require(s.size() == problem.n() && s.allFinite(), "model_value: step must be finite with dimension n");
  LocalModels models(problem, x);
  return models.model_value(i, s);
}

/// The scalar pieces of Theta_x(a, .) for one a: for every j and facet l,
///   q(s) = g^T s + 1/2 s^T H s  and  lambda(s) = g^T s,
/// with g = J_{a_j}^T w_l and H = sum_r w_{l,r} H_{a_j,r} (w_l l1-normalized).
/// Since Delta is a max of these linear functionals, Theta is exactly their max.
class ScalarizedFamily {
 public:
  struct Member {
    Vector g;
    Matrix H;
  };

  ScalarizedFamily() = default;
  explicit ScalarizedFamily(std::vector<Member> members) : members_(std::move(members)) {}

  const std::vector<Member>& members() const noexcept { return members_; }
  int dim() const noexcept { return members_.empty() ? 0 : static_cast<int>(members_.front().g.size()); }

  /// Number of scalar pieces (two per member).
  int num_pieces() const noexcept { return 2 * static_cast<int>(members_.size()); }

  double piece_value(int k, const Vector& s) const {
    const Member& mb = members_[static_cast<std::size_t>(k / 2)];
    const double lin = mb.g.dot(s);
    return (k % 2 == 0) ? lin + 0.5 * s.dot(mb.H * s) : lin;
  }

  Vector piece_gradient(int k, const Vector& s) const {
    const Member& mb = members_[static_cast<std::size_t>(k / 2)];
    return (k % 2 == 0) ? Vector(mb.g + mb.H * s) : mb.g;
  }

  /// max over all pieces; `argmax` receives the first maximizing piece.
  double value(const Vector& s, int* argmax = nullptr) const {
    double best = -std::numeric_limits<double>::infinity();
    int arg = 0;
    for (int k = 0; k < num_pieces(); ++k) {
      const double v = piece_value(k, s);
      if (v > best) {
        best = v;
        arg = k;
      }
    }
    if (argmax) *argmax = arg;
    return best;
  }

  /// Typical magnitude of the objective over the ball of radius omega.
  double scale(double omega) const {
    double sc = 0.0;
    for (const auto& mb : members_)
      sc = std::max(sc, mb.g.norm() * omega + 0.5 * mb.H.norm() * omega * omega);
    return sc;
  }

 private:
  std::vector<Member> members_;
};

inline ScalarizedFamily build_family(LocalModels& models, const PolyhedralCone& cone,
                                     const PartitionElement& a) {
  detail::require(models.problem().m() == cone.dim(), "build_family: cone dimension differs from problem image dimension");
  detail::require(!a.empty(), "build_family: empty partition element");
  const Matrix& W = cone.normalized_normals();
  std::vector<ScalarizedFamily::Member> members;
  members.reserve(a.size() * static_cast<std::size_t>(W.rows()));
  const int n = models.problem().n();
  for (int idx : a) {
    const Matrix& J = models.jacobian(idx);
    const auto& H = models.hessians(idx);
    for (Eigen::Index l = 0; l < W.rows(); ++l) {
      ScalarizedFamily::Member mb;
      mb.g = J.transpose() * W.row(l).transpose();
      mb.H = Matrix::Zero(n, n);
      for (Eigen::Index r = 0; r < W.cols(); ++r)
        if (W(l, r) != 0.0) mb.H += W(l, r) * H[static_cast<std::size_t>(r)];
      members.push_back(std::move(mb));
    }
  }
  return ScalarizedFamily(std::move(members));
}

/// Theta_x(a, s), evaluated directly through Delta on the model vectors.
inline double theta_of(LocalModels& models, const PolyhedralCone& cone, const PartitionElement& a,
                       const Vector& s) {
  double best = -std::numeric_limits<double>::infinity();
  for (int idx : a) {
    best = std::max(best, cone.oriented_distance(models.model_value(idx, s)));
    best = std::max(best, cone.oriented_distance(models.linear_value(idx, s)));
  }
  return best;
}

inline double theta_of(const SetMapProblem& problem, const PolyhedralCone& cone, const Vector& x,
                       const PartitionElement& a, const Vector& s) {
  LocalModels models(problem, x);
  return theta_of(models, cone, a, s);
}

/// Knobs of the multistart + refinement subproblem solver.
struct SubproblemSettings {
  std::uint64_t seed = 20240601;
  int n_random = 64;          // random ball candidates
  int n_starts = 4;           // best candidates refined
  int refine_iters = 200;     // projected subgradient iterations per start
  double step_scale = 0.5;    // subgradient step = step_scale * Omega / sqrt(iter)
  int polish_iters = 200;     // min-norm descent iterations after refinement
  double active_tol = 1e-10;  // pieces within this of the max count as active
};

struct InnerSolution {
  Vector s;
  double t = 0.0;
  int candidates_evaluated = 0;
};

namespace detail {

inline Vector project_ball(const Vector& s, double omega) {
  const double nrm = s.norm();
  return nrm > omega ? Vector(s * (omega / nrm)) : s;
}

// Min-norm element of the eps-active gradients, followed by a projected arc
// search with an Armijo test on the displacement. The active tolerance
// shrinks whenever no progress is possible.
inline void polish(const ScalarizedFamily& fam, double omega, const SubproblemSettings& cfg,
                   Vector& s, double& fs, int& evals) {
  const double scale = fam.scale(omega);
  if (!(scale > 0.0)) return;
  double eps = 1e-2 * scale;
  const double eps_floor = cfg.active_tol * std::max(1.0, scale);
  double step = 1.0;
  const int n = fam.dim();
  for (int it = 0; it < cfg.polish_iters; ++it) {
    std::vector<int> active;
    for (int k = 0; k < fam.num_pieces(); ++k)
      if (fam.piece_value(k, s) >= fs - eps) active.push_back(k);
    Matrix G(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t c = 0; c < active.size(); ++c)
      G.col(static_cast<Eigen::Index>(c)) = fam.piece_gradient(active[c], s);
    const Vector d = -(G * min_norm_weights(G));
    const double dn = d.norm();
    bool moved = false;
    if (dn > 1e-15 * std::max(1.0, G.norm())) {
      double trial = std::min(step, 2.0 * omega / dn);
      for (int bt = 0; bt < 50; ++bt, trial *= 0.5) {
        const Vector cand = project_ball(s + trial * d, omega);
        const Vector disp = cand - s;
        const double slope = d.dot(disp);
        if (!(slope > 0.0)) continue;
        const double fc = fam.value(cand);
        ++evals;
        if (fc <= fs - 1e-4 * slope) {
          s = cand;
          fs = fc;
          moved = true;
          step = 2.0 * trial;
          break;
        }
      }
    }
    if (!moved) {
      if (eps <= eps_floor) return;
      eps = std::max(eps_floor, 0.1 * eps);
    }
  }
}

}  // namespace detail

/// Minimizes the family's max-function over ||s||_2 <= omega.
///
/// Candidates: s = 0, the Cauchy point of every piece (exact 1-D minimizer
/// along -g, clipped to the ball) and n_random seeded ball points. The best
/// n_starts candidates are refined by projected subgradient descent and the
/// overall best point is polished by min-norm descent. s = 0 is always a
/// candidate, so t <= 0.
inline InnerSolution solve_inner(const ScalarizedFamily& fam, double omega,
                                 const SubproblemSettings& cfg = {}) {
  detail::require(omega > 0.0 && std::isfinite(omega), "solve_inner: trust-region radius must be positive");
  const int n = fam.dim();
  detail::require(n >= 1, "solve_inner: empty family");
  InnerSolution out;
  std::vector<Vector> cands;
  cands.push_back(Vector::Zero(n));
  for (const auto& mb : fam.members()) {
    const double gn = mb.g.norm();
    if (gn == 0.0) continue;
    const Vector dir = -mb.g / gn;
    const double curv = dir.dot(mb.H * dir);
    const double alpha = curv > 0.0 ? std::min(gn / curv, omega) : omega;
    cands.push_back(alpha * dir);
    if (alpha < omega) cands.push_back(omega * dir);
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int r = 0; r < cfg.n_random; ++r) {
    Vector v(n);
    for (int k = 0; k < n; ++k) v[k] = gauss(rng);
    const double vn = v.norm();
    if (vn == 0.0) continue;
    const double radius = omega * std::pow(unif(rng), 1.0 / n);
    cands.push_back(v * (radius / vn));
  }
  std::vector<double> vals(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) vals[c] = fam.value(cands[c]);
  out.candidates_evaluated = static_cast<int>(cands.size());

  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) { return vals[l] < vals[r]; });

  Vector best = cands[order.front()];
  double fbest = vals[order.front()];
  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.n_starts, 0)), order.size());
  for (std::size_t st = 0; st < starts; ++st) {
    Vector s = cands[order[st]];
    for (int it = 1; it <= cfg.refine_iters; ++it) {
      int k = 0;
      fam.value(s, &k);
      const Vector g = fam.piece_gradient(k, s);
      const double gn = g.norm();
      if (gn == 0.0) break;
      s = detail::project_ball(s - (cfg.step_scale * omega / std::sqrt(static_cast<double>(it)) / gn) * g, omega);
      const double fs = fam.value(s);
      ++out.candidates_evaluated;
      if (fs < fbest) {
        fbest = fs;
        best = s;
      }
    }
  }
  detail::polish(fam, omega, cfg, best, fbest, out.candidates_evaluated);
  out.s = std::move(best);
  out.t = fam.value(out.s);
  return out;
}

inline InnerSolution solve_inner(const SetMapProblem& problem, const PolyhedralCone& cone,
                                 const Vector& x, const PartitionElement& a, double omega,
                                 const SubproblemSettings& cfg = {}) {
  LocalModels models(problem, x);
  return solve_inner(build_family(models, cone, a), omega, cfg);
}

/// (a^k, s_k, t_k) for one trust-region iteration.
struct SubproblemSolution {
  PartitionElement a;
  Vector s;
  double t = 0.0;
  int candidates_evaluated = 0;
  int partitions_evaluated = 0;
  bool truncated = false;
  std::optional<double> oracle_gap;
};

/// Runs solve_inner for every enumerated a in P_x and keeps the smallest t.
/// Ties go to the lexicographically smallest a (enumeration order), then the
/// shorter step.
inline SubproblemSolution solve_outer(LocalModels& models, const PolyhedralCone& cone,
                                      const PartitionView& view, double omega,
                                      const SubproblemSettings& cfg = {},
                                      std::size_t cap = kDefaultPartitionCap) {
  detail::require(omega > 0.0 && std::isfinite(omega), "solve_outer: trust-region radius must be positive");
  const auto en = iter_partition(view, cap);
  detail::require(!en.elements.empty(), "solve_outer: empty partition set");
  SubproblemSolution best;
  best.truncated = en.truncated;
  bool have = false;
  for (const auto& a : en.elements) {
    InnerSolution sol = solve_inner(build_family(models, cone, a), omega, cfg);
    best.candidates_evaluated += sol.candidates_evaluated;
    ++best.partitions_evaluated;
    const double tie = 1e-12 * std::max(1.0, std::abs(best.t));
    const bool better = !have || sol.t < best.t - tie ||
                        (a == best.a && std::abs(sol.t - best.t) <= tie && sol.s.norm() < best.s.norm());
    if (better) {
      best.a = a;
      best.s = std::move(sol.s);
      best.t = sol.t;
      have = true;
    }
  }
  return best;
}

inline SubproblemSolution solve_outer(const SetMapProblem& problem, const PolyhedralCone& cone,
                                      const Vector& x, double omega,
                                      const SubproblemSettings& cfg = {},
                                      std::size_t cap = kDefaultPartitionCap,
                                      double dedup_tol = kDefaultDedupTol) {
  LocalModels models(problem, x);
  const PartitionView view = partition_at(problem, cone, x, dedup_tol);
  return solve_outer(models, cone, view, omega, cfg, cap);
}

/// Grid oracle for the inner problem: minimum over the points of a uniform
/// grid of [-omega, omega]^n (about grid_resolution points in total, ends
/// included) that fall inside the ball, plus s = 0. Restricted to n <= 3.
inline double brute_force_inner(const ScalarizedFamily& fam, double omega, long grid_resolution) {
  const int n = fam.dim();
  detail::require(n >= 1 && n <= 3, "brute_force_inner: only n <= 3 is supported");
  detail::require(omega > 0.0, "brute_force_inner: radius must be positive");
  detail::require(grid_resolution >= 2, "brute_force_inner: resolution too small");
  const long per_axis = std::max(2L, static_cast<long>(std::floor(std::pow(static_cast<double>(grid_resolution), 1.0 / n) + 1e-9)));
  double best = fam.value(Vector::Zero(n));
  std::vector<long> idx(static_cast<std::size_t>(n), 0);
  Vector s(n);
  const double h = 2.0 * omega / static_cast<double>(per_axis - 1);
  while (true) {
    for (int k = 0; k < n; ++k) s[k] = -omega + h * static_cast<double>(idx[static_cast<std::size_t>(k)]);
    if (s.squaredNorm() <= omega * omega * (1.0 + 1e-14)) best = std::min(best, fam.value(s));
    int k = 0;
    while (k < n && ++idx[static_cast<std::size_t>(k)] == per_axis) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == n) break;
  }
  return best;
}

inline double brute_force_inner(const SetMapProblem& problem, const PolyhedralCone& cone,
                                const Vector& x, const PartitionElement& a, double omega,
                                long grid_resolution) {
  detail::require(problem.n() <= 3, "brute_force_inner: only n <= 3 is supported");
  LocalModels models(problem, x);
  return brute_force_inner(build_family(models, cone, a), omega, grid_resolution);
}

}  // namespace settr
