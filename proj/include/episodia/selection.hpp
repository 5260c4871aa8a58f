// Copyright (C) 2026 Episodia Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "episodia/clustering.hpp"
#include "episodia/corpus.hpp"

namespace episodia {

enum class SelectionMethod { All, Random, Interval, ClusterCap, ClusterEmo, ClusterCapEmo };

std::string to_string(SelectionMethod method);
/// Paper-style label for tables: "Cluster(cap)", "Cluster(cap+emo)", ...
std::string display_name(SelectionMethod method);
/// Accepts both canonical ("ClusterCap") and display ("Cluster(cap)") names.
SelectionMethod selection_method_from_string(const std::string& name);

bool is_cluster_method(SelectionMethod method);

/// Per-scene selection probabilities for one method on one date, aligned
/// with day_scenes order. For Interval and All the vector is the 0/1
/// indicator of the deterministic choice, not a distribution.
struct SelectionDistribution {
  SelectionMethod method = SelectionMethod::ClusterCap;
  std::string date;
  Eigen::VectorXd probs;
};

/// The scenes chosen for one diary: distinct ids, chronological order.
struct SceneSelection {
  SelectionMethod method = SelectionMethod::Random;
  std::string date;
  std::vector<std::string> scene_ids;
  std::uint64_t seed = 0;
};

/// Frequency-inverse probabilities: a scene in a cluster of size L gets
/// 1 / (num_clusters * L), i.e. pick a cluster uniformly, then a member
/// uniformly. Sums to 1; scenes in bigger clusters get strictly less mass.
SelectionDistribution probs_from_clusters(const ClusterAssignment& assignment,
                                          SelectionMethod method = SelectionMethod::ClusterCap,
                                          std::string date = {});

/// Renormalized elementwise product of the caption and affective
/// distributions. Symmetric in its arguments.
SelectionDistribution combine_cap_emo(const SelectionDistribution& cap,
                                      const SelectionDistribution& emo);

/// `count` sequential draws, each proportional to the probabilities of the
/// not-yet-selected scenes. Returned in draw order (the first element is
/// distributed exactly as `probs`).
std::vector<int> weighted_indices_without_replacement(const Eigen::VectorXd& probs,
                                                      int count,
                                                      std::uint64_t seed);

/// Weighted sampling over a day's scenes; ids come back chronological.
SceneSelection sample_without_replacement(const SelectionDistribution& dist,
                                          std::span<const SceneRecord> day,
                                          int count, std::uint64_t seed);

/// floor(i*n/count) for i in [0, count): always anchors the first frame,
/// strictly increasing.
std::vector<int> interval_select(int n, int count);

/// Uniform sample of `count` distinct indices from [0, n), sorted ascending.
std::vector<int> random_select(int n, int count, std::uint64_t seed);

}  // namespace episodia
