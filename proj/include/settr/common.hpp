#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace settr {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A finite point set in image space, e.g. F(x) = {f^1(x), ..., f^p(x)}.
using PointSet = std::vector<Vector>;

/// Raised when a caller breaks a precondition (dimension mismatch, empty
/// input, out-of-range index, invalid parameter).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a component function produces a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, int index, Vector x)
      : std::runtime_error(what), index_(index), x_(std::move(x)) {}

  int index() const noexcept { return index_; }
  const Vector& point() const noexcept { return x_; }

 private:
  int index_;
  Vector x_;
};

namespace detail {

inline std::string format_vector(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k) os << ", ";
    os << v[k];
  }
  os << ')';
  return os.str();
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractError(msg);
}

}  // namespace detail
}  // namespace settr
