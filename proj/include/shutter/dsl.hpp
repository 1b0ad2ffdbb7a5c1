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

#ifndef SHUTTER__DSL_HPP
#define SHUTTER__DSL_HPP

#include <string>
#include <string_view>
#include <vector>

#include "shutter/bt.hpp"
#include "shutter/world_model.hpp"

namespace shutter::dsl {

/**
 * A replayable stimulus timeline.
 *
 * Text form, one statement per line:
 *
 *     scenario solo ticks 40
 *     # comment
 *     @0 person_appear id=1 x=1.0 y=0.5
 *     @5 button yes
 *     @30 person_leave id=1
 *
 * Events are kept sorted by tick, stable in file order within a tick.
 */
struct ScenarioScript
{
  std::string name;
  Tick duration = 0;
  std::vector<Event> events;

  /// Events scheduled for tick t, in order.
  std::vector<Event> events_at(Tick t) const;
};

/// Throws ParseError on the first syntax violation and ValidationError when
/// the script references an absent person or schedules past its duration.
ScenarioScript parse_scenario(std::string_view text);

/// Sorts events and checks durations and person references. Throws
/// ValidationError.
void validate_scenario(ScenarioScript& script);

/// Canonical text form; parse_scenario(print_scenario(s)) reproduces s.
std::string print_scenario(const ScenarioScript& script);

/// Parses the brace-structured tree notation. Names are not resolved here;
/// binding against a catalogue reports unknown ones. Node ids are assigned
/// in pre-order.
bt::TreeNode parse_tree(std::string_view text);

/// Canonical form: two-space indent, one node per line.
std::string print_tree(const bt::TreeNode& tree);

}  // namespace shutter::dsl

#endif  // SHUTTER__DSL_HPP
