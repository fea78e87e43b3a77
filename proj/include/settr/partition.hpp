#pragma once

// Minimal values of F(x), their index sets I_v(x), and the partition set
// P_x = I_{v_1} x ... x I_{v_omega}.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "settr/cone.hpp"
#include "settr/problem.hpp"

namespace settr {

/// One representative component index per minimal value: (a_1, ..., a_omega).
using PartitionElement = std::vector<int>;

struct PartitionView {
  Vector x;
  PointSet values;                       // f^i(x) for all i
  PointSet minimal_values;               // v_1, ..., v_omega (deduplicated)
  std::vector<std::vector<int>> index_sets;  // I_{v_j}, ascending
  bool truncated = false;                // set when an enumeration hit its cap

  int omega() const noexcept { return static_cast<int>(minimal_values.size()); }

  /// |P_x| = prod_j |I_{v_j}|, saturating at SIZE_MAX.
  std::size_t partition_size() const noexcept {
    std::size_t total = 1;
    for (const auto& I : index_sets) {
      if (I.empty()) return 0;
      if (total > static_cast<std::size_t>(-1) / I.size()) return static_cast<std::size_t>(-1);
      total *= I.size();
    }
    return total;
  }
};

inline constexpr double kDefaultDedupTol = 1e-9;
inline constexpr std::size_t kDefaultPartitionCap = 1024;

/// Builds the partition view at x from precomputed values.
///
/// Values within dedup_tol * max(1, ||v||_inf) (l-inf) of a cluster's first
/// member are treated as the same point; minimality is decided on cluster
/// representatives, so I_{v_j} holds every index whose value equals v_j.
inline PartitionView partition_from_values(const Vector& x, PointSet values,
                                           const PolyhedralCone& cone,
                                           double dedup_tol = kDefaultDedupTol) {
  detail::require(!values.empty(), "partition: empty value set");
  const int p = static_cast<int>(values.size());
  std::vector<int> cluster_of(static_cast<std::size_t>(p), -1);
  std::vector<std::vector<int>> clusters;
  PointSet reps;
  for (int i = 0; i < p; ++i) {
    if (cluster_of[static_cast<std::size_t>(i)] >= 0) continue;
    const Vector& v = values[static_cast<std::size_t>(i)];
    const double tol = dedup_tol * std::max(1.0, v.lpNorm<Eigen::Infinity>());
    const int c = static_cast<int>(clusters.size());
    clusters.push_back({});
    reps.push_back(v);
    for (int k = i; k < p; ++k) {
      if (cluster_of[static_cast<std::size_t>(k)] >= 0) continue;
      if ((values[static_cast<std::size_t>(k)] - v).lpNorm<Eigen::Infinity>() <= tol) {
        cluster_of[static_cast<std::size_t>(k)] = c;
        clusters.back().push_back(k);
      }
    }
  }
  PartitionView view;
  view.x = x;
  for (int c : min_elements(reps, cone)) {
    view.minimal_values.push_back(reps[static_cast<std::size_t>(c)]);
    view.index_sets.push_back(clusters[static_cast<std::size_t>(c)]);
  }
  view.values = std::move(values);
  return view;
}

/// Evaluates F(x) and builds its partition view.
inline PartitionView partition_at(const SetMapProblem& problem, const PolyhedralCone& cone,
                                  const Vector& x, double dedup_tol = kDefaultDedupTol) {
  detail::require(problem.m() == cone.dim(), "partition_at: cone dimension differs from problem image dimension");
  return partition_from_values(x, problem.eval_all(x), cone, dedup_tol);
}

struct PartitionEnumeration {
  std::vector<PartitionElement> elements;
  bool truncated = false;
};

/// Lexicographic enumeration of prod_j I_{v_j}, stopping after `cap`
/// elements (truncated is set when elements were left out).
inline PartitionEnumeration iter_partition(const PartitionView& view,
                                           std::size_t cap = kDefaultPartitionCap) {
  PartitionEnumeration out;
  const std::size_t w = view.index_sets.size();
  if (w == 0 || cap == 0) {
    out.truncated = w != 0 && view.partition_size() > 0;
    return out;
  }
  for (const auto& I : view.index_sets)
    if (I.empty()) return out;
  std::vector<std::size_t> pos(w, 0);
  while (true) {
    if (out.elements.size() == cap) {
      out.truncated = true;
      return out;
    }
    PartitionElement a(w);
    for (std::size_t j = 0; j < w; ++j) a[j] = view.index_sets[j][pos[j]];
    out.elements.push_back(std::move(a));
    // Odometer with the last slot fastest gives lexicographic order.
    std::size_t j = w;
    while (j > 0) {
      --j;
      if (++pos[j] < view.index_sets[j].size()) break;
      pos[j] = 0;
      if (j == 0) return out;
    }
  }
}

}  // namespace settr
