// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "episodia/corpus.hpp"
#include "episodia/errors.hpp"

namespace episodia {

/// Cosine distance 1 - u.v/(|u||v|), in [0, 2]. 0 for parallel vectors,
/// 1 for orthogonal, 2 for opposed.
template <typename DerivedU, typename DerivedV>
typename DerivedU::Scalar cosine_distance(const Eigen::MatrixBase<DerivedU>& u,
                                          const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedU::Scalar;
  static_assert(std::is_same_v<Scalar, typename DerivedV::Scalar>,
                "cosine_distance: mixed scalar types");
  if (u.size() != v.size())
    throw DataError("cosine_distance: length mismatch (" +
                    std::to_string(u.size()) + " vs " +
                    std::to_string(v.size()) + ")");
  const Scalar uu = u.squaredNorm();
  const Scalar vv = v.squaredNorm();
  if (uu == Scalar(0) || vv == Scalar(0))
    throw DataError("cosine_distance: zero vector");
  Scalar cos = u.dot(v) / std::sqrt(uu * vv);
  cos = std::clamp(cos, Scalar(-1), Scalar(1));
  return Scalar(1) - cos;
}

/// Symmetric pairwise cosine distance matrix with a zero diagonal. Entries
/// are computed independently, so a parallel build would be bit-identical.
Eigen::MatrixXd cosine_distance_matrix(std::span<const Embedding> points);

/// Result of partitioning N points around num_clusters medoids.
struct ClusterAssignment {
  int num_clusters = 0;      // M
  std::vector<int> medoids;  // point index of each cluster's medoid
  std::vector<int> labels;   // per point: owning cluster in [0, num_clusters)
  std::vector<int> sizes;    // per cluster: member count
  double objective = 0.0;    // sum of cosine distances to assigned medoids
};

/// PAM k-medoids under cosine distance: BUILD initialization, then SWAP
/// until no single medoid/non-medoid exchange lowers the objective. All
/// ties break toward the lowest index, so the result is deterministic; the
/// seed is accepted for interface stability and provenance only.
ClusterAssignment kmedoids(const Eigen::MatrixXd& distances, int num_clusters,
                           std::uint64_t seed);
ClusterAssignment kmedoids(std::span<const Embedding> points, int num_clusters,
                           std::uint64_t seed);

}  // namespace episodia
