/*
 * Copyright (C) 2026 The Shutter Sim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#ifndef SHUTTER__GROUPS_HPP
#define SHUTTER__GROUPS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "shutter/world_model.hpp"

namespace shutter::groups {

inline constexpr double kDefaultDistThreshold = 1.5;
inline constexpr double kDefaultZoneRadius = 2.5;

struct GroupCluster
{
  std::vector<PersonId> members;  // ascending
  bool includes_robot = false;

  bool operator==(const GroupCluster&) const = default;
};

/// Connected components of the "within dist_threshold" graph, ordered by
/// smallest member id. Throws ConfigError if dist_threshold <= 0.
std::vector<GroupCluster> cluster_groups(
  std::span<const PersonObservation> persons, double dist_threshold);

/// Index of the cluster the robot is interacting with: among clusters with a
/// member inside zone_radius of the origin, the one whose nearest member is
/// closest (ties go to the smaller smallest-member id).
std::optional<std::size_t> interaction_group(
  std::span<const GroupCluster> clusters,
  std::span<const PersonObservation> persons, double zone_radius);

/// Size of the interaction group, 0 when nobody is inside the zone.
std::size_t interaction_group_size(
  std::span<const GroupCluster> clusters,
  std::span<const PersonObservation> persons, double zone_radius);

/// Clusters and flags the interaction group in one go.
std::vector<GroupCluster> detect_groups(
  std::span<const PersonObservation> persons, double dist_threshold,
  double zone_radius);

}  // namespace shutter::groups

#endif  // SHUTTER__GROUPS_HPP
