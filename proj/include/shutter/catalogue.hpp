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

#ifndef SHUTTER__CATALOGUE_HPP
#define SHUTTER__CATALOGUE_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "shutter/world_model.hpp"

namespace shutter {

/// Outcome reported by one advance of a behavior.
enum class StepResult {
  Continue,  // defer to the duration countdown
  Succeed,
  Fail,
};

using ConditionFn = std::function<bool(const InteractionContext&)>;

/**
 * A named leaf activity.
 *
 * `step` is invoked once per advance with a 0-based step index. A timed
 * behavior reports Running until its `duration`-th advance; an open-ended one
 * keeps running until `step` returns Succeed or Fail.
 */
struct Behavior
{
  int duration = 1;
  bool open_ended = false;
  std::function<StepResult(InteractionContext&, int step)> step;
};

/// Named conditions and behaviors that trees and state machines refer to.
class Catalogue
{
public:
  void add_condition(std::string name, ConditionFn fn);
  void add_behavior(std::string name, Behavior behavior);

  const ConditionFn* find_condition(const std::string& name) const;
  const Behavior* find_behavior(const std::string& name) const;

  std::vector<std::string> condition_names() const;
  std::vector<std::string> behavior_names() const;

private:
  std::map<std::string, ConditionFn> conditions_;
  std::map<std::string, Behavior> behaviors_;
};

}  // namespace shutter

#endif  // SHUTTER__CATALOGUE_HPP
