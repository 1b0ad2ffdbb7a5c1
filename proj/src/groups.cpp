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

#include "shutter/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "shutter/errors.hpp"

namespace shutter::groups {

namespace {

class DisjointSets
{
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t i)
  {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

double distance(const Position& a, const Position& b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

double range(const Position& p) { return std::hypot(p.x, p.y); }

}  // namespace

std::vector<GroupCluster> cluster_groups(
  std::span<const PersonObservation> persons, double dist_threshold)
{
  if (!(dist_threshold > 0.0)) {
    throw ConfigError("dist_threshold must be positive");
  }
  DisjointSets sets(persons.size());
  for (std::size_t i = 0; i < persons.size(); ++i) {
    for (std::size_t j = i + 1; j < persons.size(); ++j) {
      if (distance(persons[i].position, persons[j].position) <= dist_threshold) {
        sets.unite(i, j);
      }
    }
  }

  std::map<std::size_t, GroupCluster> by_root;
  for (std::size_t i = 0; i < persons.size(); ++i) {
    by_root[sets.find(i)].members.push_back(persons[i].id);
  }
  std::vector<GroupCluster> out;
  out.reserve(by_root.size());
  for (auto& [_, cluster] : by_root) {
    std::sort(cluster.members.begin(), cluster.members.end());
    out.push_back(std::move(cluster));
  }
  std::sort(out.begin(), out.end(), [](const GroupCluster& a, const GroupCluster& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

std::optional<std::size_t> interaction_group(
  std::span<const GroupCluster> clusters,
  std::span<const PersonObservation> persons, double zone_radius)
{
  if (!(zone_radius > 0.0)) {
    throw ConfigError("zone_radius must be positive");
  }
  std::map<PersonId, double> ranges;
  for (const auto& p : persons) ranges[p.id] = range(p.position);

  std::optional<std::size_t> best;
  double best_range = 0.0;
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    double nearest = INFINITY;
    for (PersonId id : clusters[i].members) {
      if (auto it = ranges.find(id); it != ranges.end()) {
        nearest = std::min(nearest, it->second);
      }
    }
    if (nearest > zone_radius) continue;
    const bool better = !best || nearest < best_range ||
      (nearest == best_range &&
       clusters[i].members.front() < clusters[*best].members.front());
    if (better) {
      best = i;
      best_range = nearest;
    }
  }
  return best;
}

std::size_t interaction_group_size(
  std::span<const GroupCluster> clusters,
  std::span<const PersonObservation> persons, double zone_radius)
{
  const auto idx = interaction_group(clusters, persons, zone_radius);
  return idx ? clusters[*idx].members.size() : 0;
}

std::vector<GroupCluster> detect_groups(
  std::span<const PersonObservation> persons, double dist_threshold,
  double zone_radius)
{
  auto clusters = cluster_groups(persons, dist_threshold);
  if (auto idx = interaction_group(clusters, persons, zone_radius)) {
    clusters[*idx].includes_robot = true;
  }
  return clusters;
}

}  // namespace shutter::groups
