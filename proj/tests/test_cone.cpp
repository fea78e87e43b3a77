#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "settr/cone.hpp"
#include "settr/suite.hpp"
#include "test_problems.hpp"

namespace settr {
namespace {

using testing::vec;

// d_inf(y, -R^2_+) - d_inf(y, complement of -R^2_+) by brute force over a
// grid of z values with spacing h. Exact up to O(h).
double orthant_oriented_distance_by_grid(const Vector& y, double h) {
  double d_in = std::numeric_limits<double>::infinity();
  double d_out = std::numeric_limits<double>::infinity();
  const int N = static_cast<int>(std::ceil(8.0 / h));
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b) {
      const Vector z = vec({a * h, b * h});
      const double d = (y - z).lpNorm<Eigen::Infinity>();
      if (z[0] <= 0.0 && z[1] <= 0.0)
        d_in = std::min(d_in, d);
      else
        d_out = std::min(d_out, d);
    }
  const bool inside = y[0] <= 0.0 && y[1] <= 0.0;
  return inside ? -d_out : d_in;
}

TEST(Cone, OrientedDistanceMatchesProjectionOracleOnOrthant) {
  const auto K = cone_k1(2);
  EXPECT_DOUBLE_EQ(K.oriented_distance(vec({-1, -2})), -1.0);
  EXPECT_DOUBLE_EQ(K.oriented_distance(vec({0, 0})), 0.0);
  EXPECT_DOUBLE_EQ(K.oriented_distance(vec({1, -1})), 1.0);
  const double h = 1.0 / 64.0;
  for (const Vector& y : {vec({-1, -2}), vec({1, -1}), vec({0.3, 0.7}), vec({-0.25, 2.5}), vec({-3, -0.5})})
    EXPECT_NEAR(K.oriented_distance(y), orthant_oriented_distance_by_grid(y, h), h) << y.transpose();
}

TEST(Cone, NormalizedNormalFormulaOnK2) {
  EXPECT_DOUBLE_EQ(cone_k2().oriented_distance(vec({1, 0})), 7.0 / 8.0);
}

TEST(Cone, BuildersAndMembership) {
  EXPECT_TRUE(cone_k1(2).contains(vec({1, 1})));
  const auto K2 = cone_k2();
  EXPECT_TRUE(K2.contains(vec({1, 7})));
  EXPECT_FALSE(K2.contains_interior(vec({1, 7})));
  EXPECT_EQ(K2.classify(vec({1, 7})), ConeRegion::Boundary);
  const auto K3 = cone_k3();
  EXPECT_EQ(K3.classify(vec({-1, -1})), ConeRegion::Interior);
  EXPECT_TRUE(K3.contains_interior(K3.interior_witness()));
  EXPECT_TRUE(K2.contains_interior(K2.interior_witness()));
  EXPECT_EQ(cone_k1(5).num_facets(), 5);
}

TEST(Cone, OrderRelations) {
  const auto K = cone_k1(2);
  EXPECT_TRUE(K.leq(vec({0, 0}), vec({1, 1})));
  EXPECT_FALSE(K.lt(vec({0, 0}), vec({1, 0})));
  EXPECT_TRUE(K.lt(vec({0, 0}), vec({1, 2})));
  EXPECT_THROW(K.leq(vec({0, 0}), vec({1, 1, 1})), ContractError);
}

TEST(Cone, RejectsInvalidNormals) {
  EXPECT_THROW(PolyhedralCone(std::vector<std::vector<double>>{{0.0, 0.0}, {1.0, 0.0}}), ContractError);
  EXPECT_THROW(PolyhedralCone(std::vector<std::vector<double>>{{1.0, 1.0}, {2.0, 2.0}}), ContractError);
  EXPECT_THROW(PolyhedralCone(std::vector<std::vector<double>>{{1.0, 0.0}, {1.0}}), ContractError);
  // Normals spanning R^2 whose cone {y : y1 >= 0, -y1 >= 0} has empty interior.
  EXPECT_THROW(PolyhedralCone(std::vector<std::vector<double>>{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}}), ContractError);
}

TEST(Cone, OrientedDistanceRejectsDimensionMismatch) {
  EXPECT_THROW(cone_k1(2).oriented_distance(vec({1, 2, 3})), ContractError);
}

TEST(Cone, SignTrichotomyAgreesWithExactMembership) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 3.0);
  for (const auto& K : {cone_k1(2), cone_k1(3), cone_k2(), cone_k3()}) {
    for (int t = 0; t < 2000; ++t) {
      Vector y(K.dim());
      for (int r = 0; r < K.dim(); ++r) y[r] = g(rng);
      const double d = K.oriented_distance(y);
      EXPECT_EQ(d < 0.0, K.contains_interior(-y));
      EXPECT_EQ(d <= 0.0, K.contains(-y));
    }
    // Points exactly on the boundary of -K.
    for (int l = 0; l < K.num_facets(); ++l) {
      Vector y = -K.interior_witness();
      const Vector w = K.normals().row(l).transpose();
      y -= (w.dot(y) / w.squaredNorm()) * w;  // now <w_l, y> = 0
      if (K.contains(-y)) EXPECT_NEAR(K.oriented_distance(y), 0.0, 1e-12);
    }
  }
}

TEST(Cone, MinElementsExamples) {
  const auto K = cone_k1(2);
  EXPECT_EQ(min_elements({vec({1, 0}), vec({0, 1}), vec({1, 1})}, K), (std::vector<int>{0, 1}));
  EXPECT_EQ(min_elements({vec({5, 5})}, K), (std::vector<int>{0}));
  EXPECT_THROW(min_elements({}, K), ContractError);
  // (1,0) is weakly minimal next to (0,0) under R^2_+, but not minimal.
  EXPECT_EQ(min_elements({vec({0, 0}), vec({1, 0})}, K), (std::vector<int>{0}));
  EXPECT_EQ(wmin_elements({vec({0, 0}), vec({1, 0})}, K), (std::vector<int>{0, 1}));
}

TEST(Cone, LowerSetRelation) {
  const auto K = cone_k1(2);
  const PointSet A{vec({0, 0}), vec({2, -1})};
  const PointSet B{vec({1, 1}), vec({3, 0})};
  EXPECT_EQ(lower_set_relation(A, B, K), SetRelation::StrictLower);
  EXPECT_EQ(lower_set_relation(A, A, K), SetRelation::WeakLower);
  EXPECT_EQ(lower_set_relation(B, A, K), SetRelation::None);
}

}  // namespace
}  // namespace settr
