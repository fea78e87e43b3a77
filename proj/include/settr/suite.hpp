#pragma once

// Catalog of set-valued test problems F(x) = {f^1(x), ..., f^100(x)} built by
// perturbing classical multiobjective test functions, plus the standard
// ordering cones used with them.
//
// Index conventions: the component index k passed to the oracles is 0-based;
// the formulas below use i = k + 1. Where a row carries a parameter grid
// {(phi_i, psi_i)} = A x B with |A| = |B| = 10, component i maps to
// (A[(i-1) / 10], B[(i-1) % 10]).

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "settr/cone.hpp"
#include "settr/problem.hpp"

namespace settr {

inline constexpr int kSuiteComponents = 100;

// K1 = R^m_+.
inline PolyhedralCone cone_k1(int m) { return PolyhedralCone::orthant(m); }

// K2 = {y : 5 y2 >= 7 y1, y2 <= 7 y1}.
inline PolyhedralCone cone_k2() { return PolyhedralCone(std::vector<std::vector<double>>{{-7.0, 5.0}, {7.0, -1.0}}); }

// K3 = {y : y1 >= 3 y2, 3 y1 <= y2}.
inline PolyhedralCone cone_k3() { return PolyhedralCone(std::vector<std::vector<double>>{{1.0, -3.0}, {-3.0, 1.0}}); }

/// Builder by name: "K1" (needs m), "K2", "K3".
inline PolyhedralCone named_cone(const std::string& name, int m) {
  if (name == "K1") return cone_k1(m);
  if (name == "K2") {
    detail::require(m == 2, "cone K2 is two-dimensional, problem has m = " + std::to_string(m));
    return cone_k2();
  }
  if (name == "K3") {
    detail::require(m == 2, "cone K3 is two-dimensional, problem has m = " + std::to_string(m));
    return cone_k3();
  }
  throw ContractError("unknown cone builder '" + name + "' (expected K1, K2 or K3)");
}

struct ProblemVariant {
  int n;
  int m;
};

struct ProblemSpec {
  std::string name;
  std::vector<ProblemVariant> variants;
  std::string domain;  // human-readable initial-point box
  DerivativeKind jacobian;
  std::function<SetMapProblem(int n, int m)> make;

  bool supports(int n, int m) const {
    for (const auto& v : variants)
      if (v.n == n && v.m == m) return true;
    return false;
  }
};

namespace suite_detail {

using std::cos;
using std::exp;
using std::sin;
using std::sqrt;
inline constexpr double pi = std::numbers::pi;

struct Grid {
  std::array<double, kSuiteComponents> phi{};
  std::array<double, kSuiteComponents> psi{};
};

inline Grid make_grid(double phi0, double dphi, double psi0, double dpsi) {
  Grid g;
  for (int j = 0; j < 10; ++j)
    for (int l = 0; l < 10; ++l) {
      g.phi[static_cast<std::size_t>(10 * j + l)] = phi0 + dphi * j;
      g.psi[static_cast<std::size_t>(10 * j + l)] = psi0 + dpsi * l;
    }
  return g;
}

// {pi/5 (j-1)} x {pi/5 (l-1)}
inline const Grid& grid_pi5() {
  static const Grid g = make_grid(0.0, pi / 5.0, 0.0, pi / 5.0);
  return g;
}

// {2 pi/5 (j-1)} x {0.01 + 0.098 (k-1)}
inline const Grid& grid_log() {
  static const Grid g = make_grid(0.0, 2.0 * pi / 5.0, 0.01, 0.098);
  return g;
}

// {pi/10 (j-1)} x {pi/5 (l-1)}
inline const Grid& grid_sphere() {
  static const Grid g = make_grid(0.0, pi / 10.0, 0.0, pi / 5.0);
  return g;
}

inline double phi_of(const Grid& g, int k) { return g.phi[static_cast<std::size_t>(k)]; }
inline double psi_of(const Grid& g, int k) { return g.psi[static_cast<std::size_t>(k)]; }

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index r = 0;
  for (double e : v) out[r++] = e;
  return out;
}

inline Box box_from(std::initializer_list<std::pair<double, double>> ranges) {
  Box b{Vector(static_cast<Eigen::Index>(ranges.size())), Vector(static_cast<Eigen::Index>(ranges.size()))};
  Eigen::Index r = 0;
  for (const auto& [lo, hi] : ranges) {
    b.lower[r] = lo;
    b.upper[r] = hi;
    ++r;
  }
  return b;
}

// ---------------------------------------------------------------- ZDT family

inline double zdt_c16(int i) { return std::pow(cos(4.0 * pi * i / 100.0), 16); }

inline SetMapProblem make_zdt1(int n, int m) {
  auto value = [n](int k, const Vector& x) {
    const int i = k + 1;
    const double c16 = zdt_c16(i);
    const double g = 1.0 + 9.0 * x.tail(n - 1).sum();
    return vec({x[0] + (0.02 + 0.02 * c16) * cos(2.0 * pi * i / 100.0),
                g - sqrt(x[0] * g) + 0.15 + 0.15 * c16 * sin(2.0 * pi * i / 100.0)});
  };
  auto jac = [n](int, const Vector& x) {
    const double g = 1.0 + 9.0 * x.tail(n - 1).sum();
    Matrix J = Matrix::Zero(2, n);
    J(0, 0) = 1.0;
    J(1, 0) = -0.5 * sqrt(g / x[0]);
    for (int k = 1; k < n; ++k) J(1, k) = 9.0 * (1.0 - 0.5 * sqrt(x[0] / g));
    return J;
  };
  return SetMapProblem("GGTZ1-ZDT1", n, m, kSuiteComponents, value, uniform_box(n, 0.0, 1.0)).with_jacobian(jac);
}

inline SetMapProblem make_zdt4(int n, int m) {
  auto gfun = [n](const Vector& x) {
    double g = 1.0 + 10.0 * (n - 1);
    for (int k = 1; k < n; ++k) g += x[k] * x[k] - 10.0 * cos(4.0 * pi * x[k]);
    return g;
  };
  auto value = [gfun](int k, const Vector& x) {
    const int i = k + 1;
    const double c16 = zdt_c16(i);
    const double g = gfun(x);
    return vec({x[0] + (1.0 + c16 * cos(2.0 * pi * i / 100.0)),
                g - sqrt(x[0] * g) + (1.0 + c16 * sin(2.0 * pi * i / 100.0))});
  };
  auto jac = [n, gfun](int, const Vector& x) {
    const double g = gfun(x);
    Matrix J = Matrix::Zero(2, n);
    J(0, 0) = 1.0;
    J(1, 0) = -0.5 * sqrt(g / x[0]);
    for (int k = 1; k < n; ++k)
      J(1, k) = (2.0 * x[k] + 40.0 * pi * sin(4.0 * pi * x[k])) * (1.0 - 0.5 * sqrt(x[0] / g));
    return J;
  };
  Box box = uniform_box(n, -5.0, 5.0);
  box.lower[0] = 0.0;
  box.upper[0] = 1.0;
  return SetMapProblem("GGTZ2-ZDT4", n, m, kSuiteComponents, value, box).with_jacobian(jac);
}

// --------------------------------------------------------------- DTLZ family

// 100 (l + sum (x_i - 1/2)^2 - cos(20 pi (x_i - 1/2))) over the last l = n-m+1 variables.
inline double dtlz_g_rastrigin(const Vector& x, int m) {
  const auto l = x.size() - m + 1;
  double g = static_cast<double>(l);
  for (auto k = x.size() - l; k < x.size(); ++k) {
    const double d = x[k] - 0.5;
    g += d * d - cos(20.0 * pi * d);
  }
  return 100.0 * g;
}

// (1+g) * spherical coordinates of the angles theta_1..theta_{m-1} (in units of pi/2).
inline Vector dtlz_sphere(const Vector& theta, double one_plus_g, int m) {
  Vector f(m);
  for (int r = 0; r < m; ++r) {
    double v = one_plus_g;
    const int ncos = m - 1 - r;
    for (int k = 0; k < ncos; ++k) v *= cos(theta[k] * pi / 2.0);
    if (r > 0) v *= sin(theta[ncos] * pi / 2.0);
    f[r] = v;
  }
  return f;
}

// Coefficients (1, 1, 1/4, 1/2) follow the printed rows for m = 4.
inline SetMapProblem make_dtlz1(int n, int m) {
  auto value = [m](int k, const Vector& x) {
    const double phi = phi_of(grid_pi5(), k);
    const double psi = psi_of(grid_log(), k);
    const double opg = 1.0 + dtlz_g_rastrigin(x, m);
    Vector f(m);
    f << opg * x[0] * x[1] * x[2], opg * x[0] * x[1] * (1.0 - x[2]), 0.25 * opg * x[0] * (1.0 - x[1]),
        0.5 * (1.0 - x[0]) * opg;
    f[0] += cos(phi) * sin(psi);
    f[1] += sin(phi) * sin(psi);
    f[2] += cos(psi) + std::log(std::tan(psi / 2.0)) + 0.2 * phi;
    return f;
  };
  return SetMapProblem("GGTZ3-DTLZ1", n, m, kSuiteComponents, value, uniform_box(n, 0.0, 1.0));
}

inline SetMapProblem make_dtlz3(int n, int m) {
  auto value = [m](int k, const Vector& x) {
    const double phi = phi_of(grid_pi5(), k);
    const double psi = psi_of(grid_pi5(), k);
    Vector f = dtlz_sphere(x.head(m - 1), 1.0 + dtlz_g_rastrigin(x, m), m);
    f[0] += cos(psi) / std::cosh(phi);
    f[1] += sin(psi) / std::cosh(phi);
    f[2] += phi - std::tanh(phi);
    return f;
  };
  return SetMapProblem("GGTZ4-DTLZ3", n, m, kSuiteComponents, value, uniform_box(n, 0.0, 1.0));
}

inline SetMapProblem make_dtlz5(int n, int m) {
  auto value = [n, m](int k, const Vector& x) {
    const double phi = phi_of(grid_pi5(), k);
    const double psi = psi_of(grid_pi5(), k);
    const int l = n - m + 1;
    double g = 0.0;
    for (int q = n - l; q < n; ++q) g += (x[q] - 0.5) * (x[q] - 0.5);
    Vector theta(m - 1);
    theta[0] = x[0];
    for (int q = 1; q < m - 1; ++q) theta[q] = (1.0 + g * x[q]) / (2.0 * (1.0 + g));
    Vector f = dtlz_sphere(theta, 1.0 + g, m);
    const double lambda = pi + (psi - pi) * (psi - pi);
    f[0] += 5.0 * psi / (2.0 * pi);
    f[1] += lambda * cos(phi) / 10.0;
    f[2] += lambda * sin(phi) / 10.0;
    return f;
  };
  return SetMapProblem("GGTZ6-DTLZ5", n, m, kSuiteComponents, value, uniform_box(n, 0.0, 1.0));
}

// ------------------------------------------------------------ classical rows

inline SetMapProblem make_fdsa(int n, int m) {
  auto value = [n](int k, const Vector& x) {
    const double phi = phi_of(grid_pi5(), k);
    const double psi = psi_of(grid_pi5(), k);
    double s1 = 0.0, s3 = 0.0;
    for (int q = 0; q < n; ++q) {
      const double idx = q + 1;
      s1 += idx * std::pow(x[q] - idx, 4);
      s3 += idx * (n - idx + 1) * exp(-x[q]);
    }
    return vec({s1 / (n * n) + (1.0 + cos(phi) * cos(psi)),
                exp(x.sum() / n) + x.squaredNorm() + (1.0 + cos(phi) * sin(psi)),
                s3 / (n * (n + 1.0)) + sin(phi)});
  };
  auto jac = [n](int, const Vector& x) {
    Matrix J(3, n);
    const double e = exp(x.sum() / n);
    for (int q = 0; q < n; ++q) {
      const double idx = q + 1;
      J(0, q) = 4.0 * idx * std::pow(x[q] - idx, 3) / (n * n);
      J(1, q) = e / n + 2.0 * x[q];
      J(2, q) = -idx * (n - idx + 1) * exp(-x[q]) / (n * (n + 1.0));
    }
    return J;
  };
  return SetMapProblem("GGTZ5-FDSa", n, m, kSuiteComponents, value, uniform_box(n, -2.0, 2.0)).with_jacobian(jac);
}

inline SetMapProblem make_dgo1(int n, int m) {
  auto value = [](int k, const Vector& x) {
    const double a = pi * (k + 1) / 50.0;
    return vec({sin(x[0]) + sin(a + cos(a)), sin(x[0] + 0.7) + cos(a + sin(a))});
  };
  auto jac = [](int, const Vector& x) {
    Matrix J(2, 1);
    J << cos(x[0]), cos(x[0] + 0.7);
    return J;
  };
  return SetMapProblem("GGTZ7-DGO1", n, m, kSuiteComponents, value, uniform_box(1, -4.0 * pi, 4.0 * pi))
      .with_jacobian(jac);
}

inline SetMapProblem make_dgo2(int n, int m) {
  auto value = [](int k, const Vector& x) {
    const double a = pi * (k + 1) / 50.0;
    return vec({x[0] * x[0] + sin(a + cos(a)), 9.0 - sqrt(81.0 - x[0] * x[0]) + cos(a + sin(2.0 * a))});
  };
  auto jac = [](int, const Vector& x) {
    Matrix J(2, 1);
    J << 2.0 * x[0], x[0] / sqrt(81.0 - x[0] * x[0]);
    return J;
  };
  // sqrt(81 - x^2) needs |x| <= 9.
  return SetMapProblem("GGTZ8-DGO2", n, m, kSuiteComponents, value, uniform_box(1, -9.0, 9.0)).with_jacobian(jac);
}

inline SetMapProblem make_hil(int n, int m) {
  auto parts = [](const Vector& x, double& A, double& B) {
    A = (pi / 180.0) * (45.0 + 40.0 * sin(2.0 * pi * x[0]) + 25.0 * sin(2.0 * pi * x[1]));
    B = 1.0 + 0.5 * cos(2.0 * pi * x[0]);
  };
  auto value = [parts](int k, const Vector& x) {
    const int i = k + 1;
    const double s = sin(pi * i / 25.0);
    const double c = cos(2.0 * pi * i / 25.0);
    const double radius = 10.0 * ((9.0 + exp(s) - s + 2.0 * c * c) / 128.0);
    double A, B;
    parts(x, A, B);
    return vec({cos(A) * B + radius * cos(pi * i / 50.0), sin(A) * B + radius * sin(pi * i / 50.0)});
  };
  auto jac = [parts](int, const Vector& x) {
    double A, B;
    parts(x, A, B);
    const double A1 = (pi / 180.0) * 40.0 * 2.0 * pi * cos(2.0 * pi * x[0]);
    const double A2 = (pi / 180.0) * 25.0 * 2.0 * pi * cos(2.0 * pi * x[1]);
    const double B1 = -pi * sin(2.0 * pi * x[0]);
    Matrix J(2, 2);
    J << -sin(A) * A1 * B + cos(A) * B1, -sin(A) * A2 * B, cos(A) * A1 * B + sin(A) * B1, cos(A) * A2 * B;
    return J;
  };
  return SetMapProblem("GGTZ9-Hil", n, m, kSuiteComponents, value, uniform_box(n, 0.0, 1.0)).with_jacobian(jac);
}

inline SetMapProblem make_jos1a(int n, int m) {
  auto value = [n](int k, const Vector& x) {
    const double a = pi * (k + 1) / 50.0;
    return vec({x.squaredNorm() / n + 0.1 * cos(a), (x.array() - 2.0).square().sum() / n + 0.1 * sin(a)});
  };
  auto jac = [n](int, const Vector& x) {
    Matrix J(2, n);
    J.row(0) = 2.0 * x.transpose() / n;
    J.row(1) = 2.0 * (x.array() - 2.0).matrix().transpose() / n;
    return J;
  };
  return SetMapProblem("GGTZ10-JOS1a", n, m, kSuiteComponents, value, uniform_box(n, -100.0, 100.0))
      .with_jacobian(jac);
}

inline SetMapProblem make_rosenbrock(int n, int m) {
  auto value = [](int k, const Vector& x) {
    const double phi = phi_of(grid_pi5(), k);
    const double psi = psi_of(grid_pi5(), k);
    const double r2 = 16.0 * 16.0;
    Vector f(3);
    for (int r = 0; r < 3; ++r) {
      const double d = x[r + 1] - x[r] * x[r];
      f[r] = 100.0 * d * d + (x[r + 1] - 1.0) * (x[r + 1] - 1.0);
    }
    f[0] += r2 * (cos(phi) * cos(psi) * sin(psi));
    f[1] += r2 * (cos(phi) * sin(psi) * sin(psi));
    f[2] += r2 * (cos(phi) * sin(psi) * cos(psi) * cos(psi));
    return f;
  };
  auto jac = [](int, const Vector& x) {
    Matrix J = Matrix::Zero(3, 4);
    for (int r = 0; r < 3; ++r) {
      const double d = x[r + 1] - x[r] * x[r];
      J(r, r) = -400.0 * x[r] * d;
      J(r, r + 1) = 200.0 * d + 2.0 * (x[r + 1] - 1.0);
    }
    return J;
  };
  return SetMapProblem("GGTZ11-Rosenbrock", n, m, kSuiteComponents, value, uniform_box(n, -2.0, 2.0))
      .with_jacobian(jac);
}

// The third row couples x1 with x3 (as printed), the first two with x2.
inline SetMapProblem make_brown_dennis(int n, int m) {
  auto value = [](int k, const Vector& x) {
    const double phi = phi_of(grid_log(), k);
    const double psi = psi_of(grid_log(), k);
    Vector f(3);
    for (int r = 0; r < 3; ++r) {
      const double t = (r + 1) / 5.0;
      const double u = x[0] + t * (r < 2 ? x[1] : x[2]) - exp(t);
      const double v = x[2] + x[3] * sin(t) - cos(t);
      f[r] = u * u + v * v;
    }
    f[0] += cos(phi) * sin(psi);
    f[1] += sin(phi) * sin(psi);
    f[2] += (cos(psi) + std::log(std::tan(psi / 2.0))) + 0.5 * phi;
    return f;
  };
  auto jac = [](int, const Vector& x) {
    Matrix J = Matrix::Zero(3, 4);
    for (int r = 0; r < 3; ++r) {
      const double t = (r + 1) / 5.0;
      const int coupled = r < 2 ? 1 : 2;
      const double u = x[0] + t * x[coupled] - exp(t);
      const double v = x[2] + x[3] * sin(t) - cos(t);
      J(r, 0) += 2.0 * u;
      J(r, coupled) += 2.0 * u * t;
      J(r, 2) += 2.0 * v;
      J(r, 3) += 2.0 * v * sin(t);
    }
    return J;
  };
  return SetMapProblem("GGTZ12-BrownDennis", n, m, kSuiteComponents, value,
                       box_from({{-25.0, 25.0}, {-5.0, 5.0}, {-5.0, 5.0}, {-1.0, 1.0}}))
      .with_jacobian(jac);
}

inline SetMapProblem make_trigonometric(int n, int m) {
  auto base = [](const Vector& x, int r, double& b, double& S) {
    S = x.head(r + 1).sum();
    const double rr = r + 1;
    b = rr - cos(S) + rr * (1.0 - cos(x[r])) - sin(x[r]);
  };
  auto value = [base](int k, const Vector& x) {
    const double phi = phi_of(grid_log(), k);
    const double psi = psi_of(grid_log(), k);
    Vector f(4);
    for (int r = 0; r < 4; ++r) {
      double b, S;
      base(x, r, b, S);
      f[r] = b * b;
    }
    f[0] += cos(phi) * sin(psi);
    f[1] += sin(phi) * sin(psi);
    f[2] += (cos(psi) + std::log(std::tan(psi / 2.0))) + 0.2 * phi;
    return f;
  };
  auto jac = [base](int, const Vector& x) {
    Matrix J = Matrix::Zero(4, 4);
    for (int r = 0; r < 4; ++r) {
      double b, S;
      base(x, r, b, S);
      for (int q = 0; q <= r; ++q) {
        double db = sin(S);
        if (q == r) db += (r + 1.0) * sin(x[r]) - cos(x[r]);
        J(r, q) = 2.0 * b * db;
      }
    }
    return J;
  };
  return SetMapProblem("GGTZ13-Trigonometric", n, m, kSuiteComponents, value, uniform_box(n, -1.0, 1.0))
      .with_jacobian(jac);
}

inline SetMapProblem make_das_dennis(int n, int m) {
  auto value = [](int k, const Vector& x) {
    const double a = (k + 1) * pi / 50.0;
    const double c = sin(a) + cos(a);
    const double d = x[3] - x[4];
    return vec({x.squaredNorm() + c, 3.0 * x[0] + 2.0 * x[1] - x[2] / 3.0 + 0.01 * d * d * d + c});
  };
  auto jac = [](int, const Vector& x) {
    const double d = x[3] - x[4];
    Matrix J(2, 5);
    J.row(0) = 2.0 * x.transpose();
    J.row(1) << 3.0, 2.0, -1.0 / 3.0, 0.03 * d * d, -0.03 * d * d;
    return J;
  };
  return SetMapProblem("GGTZ14-DasDennis", n, m, kSuiteComponents, value, uniform_box(n, -20.0, 20.0))
      .with_jacobian(jac);
}

// (x, x sin(x) / 2) + cos^2(x) [t (1, -1) + (1 - t)(1, 1)], t = (i - 1) / 99.
inline SetMapProblem make_bqt1(int n, int m) {
  auto value = [](int k, const Vector& x) {
    const double t = k / 99.0;
    const double c2 = cos(x[0]) * cos(x[0]);
    return vec({x[0] + c2, 0.5 * x[0] * sin(x[0]) + c2 * (1.0 - 2.0 * t)});
  };
  auto jac = [](int k, const Vector& x) {
    const double t = k / 99.0;
    const double dc2 = -sin(2.0 * x[0]);
    Matrix J(2, 1);
    J << 1.0 + dc2, 0.5 * sin(x[0]) + 0.5 * x[0] * cos(x[0]) + dc2 * (1.0 - 2.0 * t);
    return J;
  };
  return SetMapProblem("GGCZ15-BQT1", n, m, kSuiteComponents, value, uniform_box(1, 2.0, 10.0)).with_jacobian(jac);
}

// Shared body of BQT2 and its modification: the second component's angular
// frequency is pi (i-1) / div2.
inline SetMapProblem make_bqt2_like(std::string name, double div2) {
  auto coeffs = [div2](int k) {
    const double a = pi * k / 50.0;
    const double b = pi * k / div2;
    const double sb = sin(b);
    const double ca = cos(a);
    return std::array<double, 4>{sin(a), ca * ca * ca, sb * sb * sb, cos(b)};
  };
  auto value = [coeffs](int k, const Vector& x) {
    const auto c = coeffs(k);
    const double x1 = x[0], x2 = x[1];
    return vec({exp(x1 / 2.0) * cos(x2) + x1 * cos(x2) * c[0] - x2 * sin(x2) * c[1],
                exp(x2 / 20.0) * sin(x1) + x1 * sin(x2) * c[2] + x2 * cos(x2) * c[3]});
  };
  auto jac = [coeffs](int k, const Vector& x) {
    const auto c = coeffs(k);
    const double x1 = x[0], x2 = x[1];
    Matrix J(2, 2);
    J(0, 0) = 0.5 * exp(x1 / 2.0) * cos(x2) + cos(x2) * c[0];
    J(0, 1) = -exp(x1 / 2.0) * sin(x2) - x1 * sin(x2) * c[0] - (sin(x2) + x2 * cos(x2)) * c[1];
    J(1, 0) = exp(x2 / 20.0) * cos(x1) + sin(x2) * c[2];
    J(1, 1) = exp(x2 / 20.0) * sin(x1) / 20.0 + x1 * cos(x2) * c[2] + (cos(x2) - x2 * sin(x2)) * c[3];
    return J;
  };
  return SetMapProblem(std::move(name), 2, 2, kSuiteComponents, value, uniform_box(2, -20.0, 20.0))
      .with_jacobian(jac);
}

inline SetMapProblem make_bqt2(int, int) { return make_bqt2_like("GGCZ16-BQT2", 50.0); }

inline SetMapProblem make_example51(int, int) { return make_bqt2_like("Example5.1", 100.0); }

inline SetMapProblem make_sphere(int n, int m) {
  auto value = [](int k, const Vector& x) {
    const double phi = phi_of(grid_sphere(), k);
    const double psi = psi_of(grid_sphere(), k);
    auto g = [](double t) { return (t - 0.5) * (t - 0.5); };
    const double u = pi * x[0] / 2.0;
    const double v = pi * (1.0 + 2.0 * g(x[2]) * x[1]) / (4.0 * (1.0 + g(x.norm())));
    const double opg = 1.0 + g(x[2]);
    return vec({opg * cos(u) * cos(v) + cos(phi) / 16.0, opg * cos(u) * sin(v) + cos(psi) * sin(phi) / 16.0,
                opg * sin(u) + sin(psi) * sin(phi) / 16.0});
  };
  return SetMapProblem("GGTZ17-Sphere", n, m, kSuiteComponents, value, uniform_box(3, 0.0, 1.0));
}

}  // namespace suite_detail

/// All catalog entries, in a fixed order.
inline const std::vector<ProblemSpec>& catalog() {
  using namespace suite_detail;
  using DK = DerivativeKind;
  static const std::vector<ProblemSpec> specs = {
      {"GGTZ1-ZDT1", {{2, 2}, {5, 2}, {8, 2}, {10, 2}}, "[0,1]^n", DK::Analytic, make_zdt1},
      {"GGTZ2-ZDT4", {{10, 2}}, "[0,1]x[-5,5]^(n-1)", DK::Analytic, make_zdt4},
      {"GGTZ3-DTLZ1", {{6, 4}}, "[0,1]^n", DK::FiniteDifference, make_dtlz1},
      {"GGTZ4-DTLZ3", {{5, 4}}, "[0,1]^n", DK::FiniteDifference, make_dtlz3},
      {"GGTZ5-FDSa", {{2, 3}}, "[-2,2]^n", DK::Analytic, make_fdsa},
      {"GGTZ6-DTLZ5", {{3, 3}, {5, 3}, {7, 5}}, "[0,1]^n", DK::FiniteDifference, make_dtlz5},
      {"GGTZ7-DGO1", {{1, 2}}, "[-4pi,4pi]", DK::Analytic, make_dgo1},
      {"GGTZ8-DGO2", {{1, 2}}, "[-9,9]", DK::Analytic, make_dgo2},
      {"GGTZ9-Hil", {{2, 2}}, "[0,1]^n", DK::Analytic, make_hil},
      {"GGTZ10-JOS1a", {{5, 2}}, "[-100,100]^n", DK::Analytic, make_jos1a},
      {"GGTZ11-Rosenbrock", {{4, 3}}, "[-2,2]^n", DK::Analytic, make_rosenbrock},
      {"GGTZ12-BrownDennis", {{4, 3}}, "[-25,25]x[-5,5]^2x[-1,1]", DK::Analytic, make_brown_dennis},
      {"GGTZ13-Trigonometric", {{4, 4}}, "[-1,1]^n", DK::Analytic, make_trigonometric},
      {"GGTZ14-DasDennis", {{5, 2}}, "[-20,20]^n", DK::Analytic, make_das_dennis},
      {"GGCZ15-BQT1", {{1, 2}}, "[2,10]", DK::Analytic, make_bqt1},
      {"GGCZ16-BQT2", {{2, 2}}, "[-20,20]^2", DK::Analytic, make_bqt2},
      {"GGTZ17-Sphere", {{3, 3}}, "[0,1]^3", DK::FiniteDifference, make_sphere},
      {"Example5.1", {{2, 2}}, "[-20,20]^2", DK::Analytic, make_example51},
  };
  return specs;
}

inline const ProblemSpec& find_spec(const std::string& name) {
  for (const auto& s : catalog())
    if (s.name == name) return s;
  throw ContractError("unknown problem '" + name + "'");
}

/// Builds the named problem at one of its supported (n, m) variants.
inline SetMapProblem instantiate(const std::string& name, int n, int m) {
  const ProblemSpec& spec = find_spec(name);
  if (!spec.supports(n, m))
    throw ContractError("problem '" + name + "' does not support (n, m) = (" + std::to_string(n) + ", " +
                        std::to_string(m) + ")");
  return spec.make(n, m);
}

/// Builds the named problem at its first listed variant.
inline SetMapProblem instantiate(const std::string& name) {
  const ProblemSpec& spec = find_spec(name);
  return spec.make(spec.variants.front().n, spec.variants.front().m);
}

/// Identifier of one (name, n, m) instance, e.g. "GGTZ1-ZDT1/n5m2".
inline std::string instance_name(const std::string& name, int n, int m) {
  return name + "/n" + std::to_string(n) + "m" + std::to_string(m);
}

struct ProblemInstance {
  std::string name;
  int n;
  int m;

  std::string id() const { return instance_name(name, n, m); }
  SetMapProblem make() const { return instantiate(name, n, m); }
};

/// Every (name, n, m) of the catalog except the standalone Example5.1 entry.
inline std::vector<ProblemInstance> benchmark_instances() {
  std::vector<ProblemInstance> out;
  for (const auto& s : catalog()) {
    if (s.name == "Example5.1") continue;
    for (const auto& v : s.variants) out.push_back({s.name, v.n, v.m});
  }
  return out;
}

}  // namespace settr
