#pragma once

// Polyhedral ordering cones K = {y : <w_l, y> >= 0 for all l}, the oriented
// distance function of -K, the cone orders, and minimal-element /
// set-relation computations on finite point sets.

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "settr/common.hpp"

namespace settr {

enum class ConeRegion { Interior, Boundary, Outside };

/// Outcome of comparing two finite sets under the lower set-less relations.
enum class SetRelation { StrictLower, WeakLower, None };

inline const char* to_string(ConeRegion r) {
  switch (r) {
    case ConeRegion::Interior: return "interior";
    case ConeRegion::Boundary: return "boundary";
    case ConeRegion::Outside: return "outside";
  }
  return "?";
}

inline const char* to_string(SetRelation r) {
  switch (r) {
    case SetRelation::StrictLower: return "strict-lower";
    case SetRelation::WeakLower: return "weak-lower";
    case SetRelation::None: return "none";
  }
  return "?";
}

/// Closed, solid, (rank-)pointed polyhedral cone in halfspace representation.
///
/// Immutable after construction. The facet normals are kept in input order;
/// their l1-normalized copies define the oriented distance
///   Delta(y) = max_l <w_l, y> / ||w_l||_1,
/// which is the l-infinity oriented distance to -K for the orthant and a
/// signed facet-distance surrogate for other cones.
class PolyhedralCone {
 public:
  /// `normals` holds one facet normal per row (L x m).
  explicit PolyhedralCone(Matrix normals) : normals_(std::move(normals)) {
    const auto L = normals_.rows();
    const auto m = normals_.cols();
    detail::require(L >= 1 && m >= 1, "cone: need at least one facet normal of positive dimension");
    detail::require(normals_.allFinite(), "cone: facet normals must be finite");
    normalized_.resize(L, m);
    for (Eigen::Index l = 0; l < L; ++l) {
      const double n1 = normals_.row(l).lpNorm<1>();
      detail::require(n1 > 0.0, "cone: facet normal " + std::to_string(l) + " is zero");
      normalized_.row(l) = normals_.row(l) / n1;
    }
    Eigen::FullPivLU<Matrix> lu(normals_);
    detail::require(lu.rank() == m, "cone: facet normals do not span R^" + std::to_string(m) +
                                        " (cone is not pointed)");
    witness_ = find_interior_witness();
  }

  /// Convenience constructor from a list of normals.
  explicit PolyhedralCone(const std::vector<std::vector<double>>& normals)
      : PolyhedralCone(to_matrix(normals)) {}

  /// K = R^m_+ (identity normals).
  static PolyhedralCone orthant(int m) {
    detail::require(m >= 1, "cone: orthant dimension must be positive");
    return PolyhedralCone(Matrix::Identity(m, m));
  }

  int dim() const noexcept { return static_cast<int>(normals_.cols()); }
  int num_facets() const noexcept { return static_cast<int>(normals_.rows()); }
  const Matrix& normals() const noexcept { return normals_; }
  const Matrix& normalized_normals() const noexcept { return normalized_; }
  const Vector& interior_witness() const noexcept { return witness_; }

  /// Oriented distance Delta_{-K}(y).
  double oriented_distance(const Vector& y) const {
    check_dim(y);
    return (normalized_ * y).maxCoeff();
  }

  /// Position of y relative to K; boundary detection uses
  /// tau = 1e-12 * max(1, ||y||_inf) on the normalized facet values.
  ConeRegion classify(const Vector& y) const {
    check_dim(y);
    const double tau = 1e-12 * std::max(1.0, y.lpNorm<Eigen::Infinity>());
    const double lo = (normalized_ * y).minCoeff();
    if (lo > tau) return ConeRegion::Interior;
    if (lo < -tau) return ConeRegion::Outside;
    return ConeRegion::Boundary;
  }

  /// y in K (boundary included), exact test.
  bool contains(const Vector& y) const {
    check_dim(y);
    return ((normals_ * y).array() >= 0.0).all();
  }

  /// y in int(K), exact test.
  bool contains_interior(const Vector& y) const {
    check_dim(y);
    return ((normals_ * y).array() > 0.0).all();
  }

  /// y <=_K z  iff  z - y in K.
  bool leq(const Vector& y, const Vector& z) const {
    check_dim(y);
    check_dim(z);
    return contains(z - y);
  }

  /// y <_K z  iff  z - y in int(K).
  bool lt(const Vector& y, const Vector& z) const {
    check_dim(y);
    check_dim(z);
    return contains_interior(z - y);
  }

 private:
  static Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
    detail::require(!rows.empty(), "cone: need at least one facet normal");
    const auto m = rows.front().size();
    Matrix W(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m));
    for (std::size_t l = 0; l < rows.size(); ++l) {
      detail::require(rows[l].size() == m, "cone: facet normals have inconsistent dimension");
      for (std::size_t r = 0; r < m; ++r) W(l, r) = rows[l][r];
    }
    return W;
  }

  void check_dim(const Vector& y) const {
    if (y.size() != normals_.cols())
      throw ContractError("cone: dimension mismatch (expected " + std::to_string(normals_.cols()) +
                          ", got " + std::to_string(y.size()) + ")");
  }

  bool strictly_inside(const Vector& d) const {
    return d.allFinite() && ((normals_ * d).array() > 0.0).all();
  }

  // Certificate that int(K) is nonempty, tried in a fixed order:
  // sum of normalized normals, least-squares solve of W d = 1, then seeded
  // random unit directions.
  Vector find_interior_witness() const {
    const auto m = normals_.cols();
    Vector d = normalized_.colwise().sum().transpose();
    if (d.norm() > 0.0) {
      d.normalize();
      if (strictly_inside(d)) return d;
    }
    d = normals_.colPivHouseholderQr().solve(Vector::Ones(normals_.rows()));
    if (d.norm() > 0.0) {
      d.normalize();
      if (strictly_inside(d)) return d;
    }
    std::mt19937_64 rng(0x5e77c0e5ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
      for (Eigen::Index r = 0; r < m; ++r) d[r] = gauss(rng);
      if (d.norm() == 0.0) continue;
      d.normalize();
      if (strictly_inside(d)) return d;
    }
    throw ContractError("cone: no interior point found (cone is not solid)");
  }

  Matrix normals_;
  Matrix normalized_;
  Vector witness_;
};

/// Indices of the K-minimal points: no other point y != y0 with y <=_K y0.
inline std::vector<int> min_elements(const PointSet& points, const PolyhedralCone& cone) {
  detail::require(!points.empty(), "min_elements: empty point set");
  std::vector<int> out;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i) {
    bool minimal = true;
    for (int j = 0; j < n && minimal; ++j) {
      if (j == i || points[j] == points[i]) continue;
      if (cone.leq(points[j], points[i])) minimal = false;
    }
    if (minimal) out.push_back(i);
  }
  return out;
}

/// Indices of the weakly K-minimal points: no point y with y <_K y0.
inline std::vector<int> wmin_elements(const PointSet& points, const PolyhedralCone& cone) {
  detail::require(!points.empty(), "wmin_elements: empty point set");
  std::vector<int> out;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i) {
    bool minimal = true;
    for (int j = 0; j < n && minimal; ++j) {
      if (j != i && cone.lt(points[j], points[i])) minimal = false;
    }
    if (minimal) out.push_back(i);
  }
  return out;
}

/// Lower set-less comparison of finite sets: A <=^l B iff B is a subset of
/// A + K, i.e. every b is dominated by some a. Strict uses int(K).
inline SetRelation lower_set_relation(const PointSet& A, const PointSet& B,
                                      const PolyhedralCone& cone) {
  detail::require(!A.empty() && !B.empty(), "lower_set_relation: empty set");
  bool strict = true;
  for (const auto& b : B) {
    bool weak_hit = false;
    bool strict_hit = false;
    for (const auto& a : A) {
      if (cone.lt(a, b)) {
        strict_hit = weak_hit = true;
        break;
      }
      if (!weak_hit && cone.leq(a, b)) weak_hit = true;
    }
    if (!weak_hit) return SetRelation::None;
    strict = strict && strict_hit;
  }
  return strict ? SetRelation::StrictLower : SetRelation::WeakLower;
}

}  // namespace settr
