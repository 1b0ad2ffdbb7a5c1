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

#include "shutter/catalogue.hpp"

#include "shutter/errors.hpp"

namespace shutter {

void Catalogue::add_condition(std::string name, ConditionFn fn)
{
  if (!fn) {
    throw ConfigError("condition '" + name + "' has no predicate");
  }
  conditions_.insert_or_assign(std::move(name), std::move(fn));
}

void Catalogue::add_behavior(std::string name, Behavior behavior)
{
  if (behavior.duration < 1) {
    throw ConfigError("behavior '" + name + "' needs duration >= 1");
  }
  if (!behavior.step) {
    throw ConfigError("behavior '" + name + "' has no step function");
  }
  behaviors_.insert_or_assign(std::move(name), std::move(behavior));
}

const ConditionFn* Catalogue::find_condition(const std::string& name) const
{
  auto it = conditions_.find(name);
  return it == conditions_.end() ? nullptr : &it->second;
}

const Behavior* Catalogue::find_behavior(const std::string& name) const
{
  auto it = behaviors_.find(name);
  return it == behaviors_.end() ? nullptr : &it->second;
}

std::vector<std::string> Catalogue::condition_names() const
{
  std::vector<std::string> out;
  for (const auto& [name, _] : conditions_) out.push_back(name);
  return out;
}

std::vector<std::string> Catalogue::behavior_names() const
{
  std::vector<std::string> out;
  for (const auto& [name, _] : behaviors_) out.push_back(name);
  return out;
}

}  // namespace shutter
