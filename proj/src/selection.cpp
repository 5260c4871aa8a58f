// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#include "episodia/selection.hpp"

#include <algorithm>
#include <cmath>

#include "episodia/errors.hpp"
#include "episodia/rng.hpp"

namespace episodia {

std::string to_string(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::All: return "All";
    case SelectionMethod::Random: return "Random";
    case SelectionMethod::Interval: return "Interval";
    case SelectionMethod::ClusterCap: return "ClusterCap";
    case SelectionMethod::ClusterEmo: return "ClusterEmo";
    case SelectionMethod::ClusterCapEmo: return "ClusterCapEmo";
  }
  throw UsageError("unknown selection method enum value");
}

std::string display_name(SelectionMethod method) {
  switch (method) {
    case SelectionMethod::ClusterCap: return "Cluster(cap)";
    case SelectionMethod::ClusterEmo: return "Cluster(emo)";
    case SelectionMethod::ClusterCapEmo: return "Cluster(cap+emo)";
    default: return to_string(method);
  }
}

SelectionMethod selection_method_from_string(const std::string& name) {
  for (SelectionMethod m :
       {SelectionMethod::All, SelectionMethod::Random, SelectionMethod::Interval,
        SelectionMethod::ClusterCap, SelectionMethod::ClusterEmo,
        SelectionMethod::ClusterCapEmo}) {
    if (name == to_string(m) || name == display_name(m)) return m;
  }
  throw UsageError("unknown selection method: '" + name + "'");
}

bool is_cluster_method(SelectionMethod method) {
  return method == SelectionMethod::ClusterCap || method == SelectionMethod::ClusterEmo ||
         method == SelectionMethod::ClusterCapEmo;
}

SelectionDistribution probs_from_clusters(const ClusterAssignment& assignment,
                                          SelectionMethod method, std::string date) {
  if (!is_cluster_method(method))
    throw UsageError("probs_from_clusters: method must be cluster-based");
  const int n = static_cast<int>(assignment.labels.size());
  if (n == 0) throw DataError("probs_from_clusters: empty assignment");
  const double m = static_cast<double>(assignment.num_clusters);
  SelectionDistribution dist;
  dist.method = method;
  dist.date = std::move(date);
  dist.probs.resize(n);
  for (int i = 0; i < n; ++i) {
    const int size = assignment.sizes[assignment.labels[i]];
    dist.probs[i] = 1.0 / (m * static_cast<double>(size));
  }
  return dist;
}

SelectionDistribution combine_cap_emo(const SelectionDistribution& cap,
                                      const SelectionDistribution& emo) {
  if (!is_cluster_method(cap.method) || !is_cluster_method(emo.method))
    throw UsageError("combine_cap_emo: both distributions must be cluster-based");
  if (cap.date != emo.date)
    throw DataError("combine_cap_emo: date mismatch ('" + cap.date + "' vs '" +
                    emo.date + "')");
  if (cap.probs.size() != emo.probs.size())
    throw DataError("combine_cap_emo: misaligned distributions (" +
                    std::to_string(cap.probs.size()) + " vs " +
                    std::to_string(emo.probs.size()) + " scenes)");

  SelectionDistribution out;
  out.method = SelectionMethod::ClusterCapEmo;
  out.date = cap.date;
  out.probs = cap.probs.cwiseProduct(emo.probs);
  const double total = out.probs.sum();
  if (!(total > 0.0))
    throw DataError("combine_cap_emo: product distribution has zero mass");
  out.probs /= total;
  return out;
}

std::vector<int> weighted_indices_without_replacement(const Eigen::VectorXd& probs,
                                                      int count, std::uint64_t seed) {
  const int n = static_cast<int>(probs.size());
  if (count < 1) throw UsageError("sample: count must be >= 1");
  if (count > n)
    throw DataError("sample: count " + std::to_string(count) + " exceeds " +
                    std::to_string(n) + " scenes");
  for (int i = 0; i < n; ++i) {
    if (!(probs[i] > 0.0) || !std::isfinite(probs[i]))
      throw DataError("sample: probabilities must be positive and finite");
  }

  SplitMix64 rng(seed);
  std::vector<char> picked(n, 0);
  std::vector<int> order;
  order.reserve(count);
  for (int c = 0; c < count; ++c) {
    double total = 0.0;
    for (int i = 0; i < n; ++i)
      if (!picked[i]) total += probs[i];
    const double target = rng.next_double() * total;
    double acc = 0.0;
    int chosen = -1;
    for (int i = 0; i < n; ++i) {
      if (picked[i]) continue;
      chosen = i;  // falls through to the last unpicked index on FP shortfall
      acc += probs[i];
      if (target < acc) break;
    }
    picked[chosen] = 1;
    order.push_back(chosen);
  }
  return order;
}

SceneSelection sample_without_replacement(const SelectionDistribution& dist,
                                          std::span<const SceneRecord> day, int count,
                                          std::uint64_t seed) {
  if (dist.method != SelectionMethod::Random && !is_cluster_method(dist.method))
    throw UsageError("sample_without_replacement: distribution must be cluster-based or Random");
  if (static_cast<std::size_t>(dist.probs.size()) != day.size())
    throw DataError("sample_without_replacement: distribution not aligned with day");

  std::vector<int> indices = weighted_indices_without_replacement(dist.probs, count, seed);
  std::sort(indices.begin(), indices.end());  // diary order is chronological

  SceneSelection selection;
  selection.method = dist.method;
  selection.date = dist.date;
  selection.seed = seed;
  selection.scene_ids.reserve(indices.size());
  for (int i : indices) selection.scene_ids.push_back(day[i].scene_id);
  return selection;
}

std::vector<int> interval_select(int n, int count) {
  if (count < 1) throw UsageError("interval_select: count must be >= 1");
  if (count > n)
    throw DataError("interval_select: count " + std::to_string(count) + " exceeds " +
                    std::to_string(n) + " scenes");
  std::vector<int> indices(count);
  for (int i = 0; i < count; ++i)
    indices[i] = static_cast<int>((static_cast<long long>(i) * n) / count);
  return indices;
}

std::vector<int> random_select(int n, int count, std::uint64_t seed) {
  if (count < 1) throw UsageError("random_select: count must be >= 1");
  if (count > n)
    throw DataError("random_select: count " + std::to_string(count) + " exceeds " +
                    std::to_string(n) + " scenes");
  SplitMix64 rng(seed);
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;
  std::vector<int> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    const auto k = static_cast<std::size_t>(rng.next_below(remaining.size()));
    out.push_back(remaining[k]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace episodia
