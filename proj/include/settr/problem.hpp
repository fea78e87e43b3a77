#pragma once

// Set-valued objective F(x) = {f^1(x), ..., f^p(x)}, f^i : R^n -> R^m, with
// value/Jacobian/Hessian oracles. Missing derivative oracles fall back to
// central finite differences.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "settr/common.hpp"

namespace settr {

/// Axis-aligned box used for sampling initial points.
struct Box {
  Vector lower;
  Vector upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Vector& x) const {
    return x.size() == lower.size() && (x.array() >= lower.array()).all() &&
           (x.array() <= upper.array()).all();
  }
};

inline Box uniform_box(int n, double lo, double hi) {
  return Box{Vector::Constant(n, lo), Vector::Constant(n, hi)};
}

// Component indices are 0-based throughout: i in [0, p).
using ValueOracle = std::function<Vector(int i, const Vector& x)>;
using JacobianOracle = std::function<Matrix(int i, const Vector& x)>;
using HessianOracle = std::function<std::vector<Matrix>(int i, const Vector& x)>;

enum class DerivativeKind { Analytic, FiniteDifference };

inline const char* to_string(DerivativeKind k) {
  return k == DerivativeKind::Analytic ? "analytic" : "finite-difference";
}

namespace detail {

inline double fd_step(double xj, double base) { return base * std::max(1.0, std::abs(xj)); }

inline const double kCbrtEps = std::cbrt(std::numeric_limits<double>::epsilon());
inline const double kQrtEps = std::sqrt(std::sqrt(std::numeric_limits<double>::epsilon()));

}  // namespace detail

class SetMapProblem {
 public:
  SetMapProblem(std::string name, int n, int m, int p, ValueOracle value, Box box)
      : name_(std::move(name)), n_(n), m_(m), p_(p), value_(std::move(value)),
        box_(std::move(box)) {
    detail::require(n_ >= 1 && m_ >= 1 && p_ >= 1, "problem '" + name_ + "': n, m, p must be positive");
    detail::require(static_cast<bool>(value_), "problem '" + name_ + "': value oracle is required");
    detail::require(box_.lower.size() == n_ && box_.upper.size() == n_,
                    "problem '" + name_ + "': initial-point box has wrong dimension");
  }

  SetMapProblem& with_jacobian(JacobianOracle jac) {
    jacobian_ = std::move(jac);
    return *this;
  }
  SetMapProblem& with_hessians(HessianOracle hess) {
    hessians_ = std::move(hess);
    return *this;
  }

  const std::string& name() const noexcept { return name_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int p() const noexcept { return p_; }
  const Box& init_box() const noexcept { return box_; }

  DerivativeKind jacobian_kind() const noexcept {
    return jacobian_ ? DerivativeKind::Analytic : DerivativeKind::FiniteDifference;
  }
  DerivativeKind hessian_kind() const noexcept {
    return hessians_ ? DerivativeKind::Analytic : DerivativeKind::FiniteDifference;
  }

  /// f^i(x) in R^m.
  Vector eval(int i, const Vector& x) const {
    check_args(i, x);
    Vector v = value_(i, x);
    if (v.size() != m_)
      throw ContractError("problem '" + name_ + "': value oracle returned wrong dimension");
    if (!v.allFinite())
      throw EvaluationError("problem '" + name_ + "': f^" + std::to_string(i) +
                                " is not finite at x = " + detail::format_vector(x),
                            i, x);
    return v;
  }

  /// All p values at x.
  PointSet eval_all(const Vector& x) const {
    PointSet out;
    out.reserve(static_cast<std::size_t>(p_));
    for (int i = 0; i < p_; ++i) out.push_back(eval(i, x));
    return out;
  }

  /// m x n Jacobian of f^i at x.
  Matrix jacobian(int i, const Vector& x) const {
    check_args(i, x);
    Matrix J = jacobian_ ? jacobian_(i, x) : fd_jacobian(i, x);
    if (J.rows() != m_ || J.cols() != n_)
      throw ContractError("problem '" + name_ + "': Jacobian oracle returned wrong shape");
    if (!J.allFinite())
      throw EvaluationError("problem '" + name_ + "': Jacobian of f^" + std::to_string(i) +
                                " is not finite at x = " + detail::format_vector(x),
                            i, x);
    return J;
  }

  /// Central-difference Jacobian, h_j = eps^(1/3) * max(1, |x_j|).
  Matrix fd_jacobian(int i, const Vector& x) const {
    check_args(i, x);
    Matrix J(m_, n_);
    Vector xp = x;
    for (int j = 0; j < n_; ++j) {
      const double h = detail::fd_step(x[j], detail::kCbrtEps);
      xp[j] = x[j] + h;
      const Vector fp = eval(i, xp);
      xp[j] = x[j] - h;
      const Vector fm = eval(i, xp);
      xp[j] = x[j];
      J.col(j) = (fp - fm) / (2.0 * h);
    }
    return J;
  }

  /// The m Hessians of the coordinate functions f^{i,r}, each symmetric n x n.
  std::vector<Matrix> hessians(int i, const Vector& x) const {
    check_args(i, x);
    std::vector<Matrix> H = hessians_ ? hessians_(i, x) : fd_hessians(i, x);
    if (H.size() != static_cast<std::size_t>(m_))
      throw ContractError("problem '" + name_ + "': Hessian oracle returned wrong count");
    for (auto& Hr : H) {
      if (Hr.rows() != n_ || Hr.cols() != n_)
        throw ContractError("problem '" + name_ + "': Hessian oracle returned wrong shape");
      if (!Hr.allFinite())
        throw EvaluationError("problem '" + name_ + "': Hessian of f^" + std::to_string(i) +
                                  " is not finite at x = " + detail::format_vector(x),
                              i, x);
    }
    return H;
  }

  /// Finite-difference Hessians. With an analytic Jacobian: central
  /// differences of the Jacobian (h = eps^(1/3) scaling). Without one, a
  /// second-order central stencil on values with h = eps^(1/4) scaling.
  /// Both results are symmetrized.
  std::vector<Matrix> fd_hessians(int i, const Vector& x) const {
    check_args(i, x);
    std::vector<Matrix> H(static_cast<std::size_t>(m_), Matrix::Zero(n_, n_));
    if (jacobian_) {
      Vector xp = x;
      for (int j = 0; j < n_; ++j) {
        const double h = detail::fd_step(x[j], detail::kCbrtEps);
        xp[j] = x[j] + h;
        const Matrix Jp = jacobian(i, xp);
        xp[j] = x[j] - h;
        const Matrix Jm = jacobian(i, xp);
        xp[j] = x[j];
        const Matrix dJ = (Jp - Jm) / (2.0 * h);  // m x n, column j of each Hessian
        for (int r = 0; r < m_; ++r) H[static_cast<std::size_t>(r)].col(j) = dJ.row(r).transpose();
      }
    } else {
      const Vector f0 = eval(i, x);
      Vector hs(n_);
      for (int j = 0; j < n_; ++j) hs[j] = detail::fd_step(x[j], detail::kQrtEps);
      Vector xp = x;
      for (int j = 0; j < n_; ++j) {
        const double hj = hs[j];
        xp[j] = x[j] + hj;
        const Vector fp = eval(i, xp);
        xp[j] = x[j] - hj;
        const Vector fm = eval(i, xp);
        xp[j] = x[j];
        const Vector d2 = (fp - 2.0 * f0 + fm) / (hj * hj);
        for (int r = 0; r < m_; ++r) H[static_cast<std::size_t>(r)](j, j) = d2[r];
        for (int k = j + 1; k < n_; ++k) {
          const double hk = hs[k];
          auto at = [&](double sj, double sk) {
            Vector z = x;
            z[j] += sj * hj;
            z[k] += sk * hk;
            return eval(i, z);
          };
          const Vector mixed = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hj * hk);
          for (int r = 0; r < m_; ++r) {
            H[static_cast<std::size_t>(r)](j, k) = mixed[r];
            H[static_cast<std::size_t>(r)](k, j) = mixed[r];
          }
        }
      }
    }
    for (auto& Hr : H) Hr = 0.5 * (Hr + Hr.transpose()).eval();
    return H;
  }

 private:
  void check_args(int i, const Vector& x) const {
    if (i < 0 || i >= p_)
      throw ContractError("problem '" + name_ + "': component index " + std::to_string(i) +
                          " out of range [0, " + std::to_string(p_) + ")");
    if (x.size() != n_)
      throw ContractError("problem '" + name_ + "': argument has dimension " +
                          std::to_string(x.size()) + ", expected " + std::to_string(n_));
  }

  std::string name_;
  int n_;
  int m_;
  int p_;
  ValueOracle value_;
  JacobianOracle jacobian_;
  HessianOracle hessians_;
  Box box_;
};

/// Result of comparing analytic derivative oracles against finite differences.
struct DerivativeReport {
  bool jacobian_checked = false;
  bool hessian_checked = false;
  double jacobian_deviation = 0.0;  // max |J - J_fd| / max(1, |J|), entrywise
  double hessian_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

inline double relative_deviation(const Matrix& analytic, const Matrix& reference) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < analytic.rows(); ++r)
    for (Eigen::Index c = 0; c < analytic.cols(); ++c) {
      const double a = analytic(r, c);
      const double d = std::abs(a - reference(r, c)) / std::max(1.0, std::abs(a));
      worst = std::max(worst, std::isfinite(d) ? d : std::numeric_limits<double>::infinity());
    }
  return worst;
}

/// Compares whichever analytic oracles the problem has against central
/// differences at x. The report is produced even when nothing is checked.
inline DerivativeReport check_derivatives(const SetMapProblem& problem, int i, const Vector& x,
                                          double tol) {
  DerivativeReport rep;
  rep.tolerance = tol;
  if (problem.jacobian_kind() == DerivativeKind::Analytic) {
    rep.jacobian_checked = true;
    rep.jacobian_deviation = relative_deviation(problem.jacobian(i, x), problem.fd_jacobian(i, x));
  }
  if (problem.hessian_kind() == DerivativeKind::Analytic) {
    rep.hessian_checked = true;
    const auto Ha = problem.hessians(i, x);
    const auto Hf = problem.fd_hessians(i, x);
    for (std::size_t r = 0; r < Ha.size(); ++r)
      rep.hessian_deviation = std::max(rep.hessian_deviation, relative_deviation(Ha[r], Hf[r]));
  }
  rep.pass = rep.jacobian_deviation <= tol && rep.hessian_deviation <= tol;
  return rep;
}

}  // namespace settr
