// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/clustering.hpp"

#include <limits>
#include <string>

namespace episodia {

namespace {

constexpr double kImprovementEps = 1e-12;

// Nearest and second-nearest medoid distances for every point; needed for
// O(N) evaluation of a candidate swap.
struct NearestInfo {
  std::vector<int> nearest_pos;      // medoid list position
  std::vector<double> nearest_dist;
  std::vector<double> second_dist;
};

NearestInfo compute_nearest(const Eigen::MatrixXd& dist, const std::vector<int>& medoids) {
  const int n = static_cast<int>(dist.rows());
  NearestInfo info;
  info.nearest_pos.assign(n, -1);
  info.nearest_dist.assign(n, std::numeric_limits<double>::infinity());
  info.second_dist.assign(n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    for (int pos = 0; pos < static_cast<int>(medoids.size()); ++pos) {
      const double d = dist(i, medoids[pos]);
      if (d < info.nearest_dist[i]) {
        info.second_dist[i] = info.nearest_dist[i];
        info.nearest_dist[i] = d;
        info.nearest_pos[i] = pos;
      } else if (d < info.second_dist[i]) {
        info.second_dist[i] = d;
      }
    }
  }
  return info;
}

std::vector<int> pam_build(const Eigen::MatrixXd& dist, int m) {
  const int n = static_cast<int>(dist.rows());
  std::vector<int> medoids;
  medoids.reserve(m);

  // First medoid: the 1-median. Ties go to the lowest index.
  int best = 0;
  double best_total = std::numeric_limits<double>::infinity();
  for (int c = 0; c < n; ++c) {
    const double total = dist.col(c).sum();
    if (total < best_total) {
      best_total = total;
      best = c;
    }
  }
  medoids.push_back(best);

  std::vector<double> nearest(n);
  for (int i = 0; i < n; ++i) nearest[i] = dist(i, best);

  std::vector<char> is_medoid(n, 0);
  is_medoid[best] = 1;

  while (static_cast<int>(medoids.size()) < m) {
    int best_c = -1;
    double best_obj = std::numeric_limits<double>::infinity();
    for (int c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double obj = 0.0;
      for (int i = 0; i < n; ++i) obj += std::min(nearest[i], dist(i, c));
      if (obj < best_obj) {
        best_obj = obj;
        best_c = c;
      }
    }
    medoids.push_back(best_c);
    is_medoid[best_c] = 1;
    for (int i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, best_c));
  }
  return medoids;
}

// Exact objective change when the medoid at `pos` is replaced by point `h`.
double swap_delta(const Eigen::MatrixXd& dist, const NearestInfo& info, int pos, int h) {
  const int n = static_cast<int>(dist.rows());
  double delta = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dih = dist(i, h);
    if (info.nearest_pos[i] == pos) {
      delta += std::min(dih, info.second_dist[i]) - info.nearest_dist[i];
    } else if (dih < info.nearest_dist[i]) {
      delta += dih - info.nearest_dist[i];
    }
  }
  return delta;
}

}  // namespace

Eigen::MatrixXd cosine_distance_matrix(std::span<const Embedding> points) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = cosine_distance(points[i], points[j]);
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

ClusterAssignment kmedoids(const Eigen::MatrixXd& dist, int num_clusters,
                           std::uint64_t seed) {
  (void)seed;  // PAM with lowest-index tie-breaking is already deterministic
  const int n = static_cast<int>(dist.rows());
  if (n == 0) throw DataError("kmedoids: no points");
  if (dist.cols() != n) throw DataError("kmedoids: distance matrix must be square");
  if (num_clusters < 1 || num_clusters > n)
    throw DataError("kmedoids: num_clusters must be in [1, " + std::to_string(n) +
                    "], got " + std::to_string(num_clusters));

  std::vector<int> medoids = pam_build(dist, num_clusters);

  std::vector<char> is_medoid(n, 0);
  for (int m : medoids) is_medoid[m] = 1;

  // SWAP: apply the single best improving exchange until none remains.
  // Ties resolve to the first candidate in (medoid position, point) order.
  for (;;) {
    const NearestInfo info = compute_nearest(dist, medoids);
    double best_delta = -kImprovementEps;
    int best_pos = -1, best_h = -1;
    for (int pos = 0; pos < num_clusters; ++pos) {
      for (int h = 0; h < n; ++h) {
        if (is_medoid[h]) continue;
        const double delta = swap_delta(dist, info, pos, h);
        if (delta < best_delta) {
          best_delta = delta;
          best_pos = pos;
          best_h = h;
        }
      }
    }
    if (best_pos < 0) break;
    is_medoid[medoids[best_pos]] = 0;
    is_medoid[best_h] = 1;
    medoids[best_pos] = best_h;
  }

  ClusterAssignment result;
  result.num_clusters = num_clusters;
  result.medoids = medoids;
  result.labels.assign(n, -1);
  result.sizes.assign(num_clusters, 0);
  result.objective = 0.0;

  const NearestInfo info = compute_nearest(dist, medoids);
  for (int i = 0; i < n; ++i) result.labels[i] = info.nearest_pos[i];
  // A medoid always owns itself, even when another medoid sits at distance 0.
  for (int pos = 0; pos < num_clusters; ++pos) result.labels[medoids[pos]] = pos;
  for (int i = 0; i < n; ++i) {
    result.sizes[result.labels[i]] += 1;
    result.objective += dist(i, medoids[result.labels[i]]);
  }
  return result;
}

ClusterAssignment kmedoids(std::span<const Embedding> points, int num_clusters,
                           std::uint64_t seed) {
  return kmedoids(cosine_distance_matrix(points), num_clusters, seed);
}

}  // namespace episodia
