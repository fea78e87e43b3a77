#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "settr/common.hpp"

namespace settr::detail {

/// Euclidean projection onto the probability simplex.
inline Vector project_simplex(const Vector& v) {
  const auto q = v.size();
  std::vector<double> u(v.data(), v.data() + q);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < q; ++k) {
    cumsum += u[static_cast<std::size_t>(k)];
    const double t = (cumsum - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<std::size_t>(k)] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

/// Minimum-norm point of conv{columns of G}: returns the weights lambda on
/// the simplex. Accelerated projected gradient on 1/2 ||G lambda||^2.
inline Vector min_norm_weights(const Matrix& G, int iterations = 2000) {
  const auto q = G.cols();
  require(q >= 1, "min_norm_weights: no vectors");
  if (q == 1) return Vector::Ones(1);
  const Matrix Q = G.transpose() * G;
  const double L = std::max(Q.diagonal().sum(), 1e-300);
  // Warm start at the shortest single vector.
  Eigen::Index best;
  Q.diagonal().minCoeff(&best);
  Vector lam = Vector::Zero(q);
  lam[best] = 1.0;
  Vector y = lam;
  double tk = 1.0;
  for (int it = 0; it < iterations; ++it) {
    const Vector next = project_simplex(y - (Q * y) / L);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    y = next + ((tk - 1.0) / tn) * (next - lam);
    if ((next - lam).lpNorm<Eigen::Infinity>() < 1e-15) {
      lam = next;
      break;
    }
    lam = next;
    tk = tn;
  }
  return lam;
}

}  // namespace settr::detail
