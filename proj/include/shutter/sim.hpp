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

#ifndef SHUTTER__SIM_HPP
#define SHUTTER__SIM_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shutter/bt.hpp"
#include "shutter/dsl.hpp"
#include "shutter/fsm.hpp"
#include "shutter/world_model.hpp"

namespace shutter::sim {

enum class ControllerKind { Bt, Fsm };

std::string_view to_string(ControllerKind k);

struct TickRecord
{
  Tick tick = 0;
  ControllerKind controller = ControllerKind::Bt;
  std::string status;  // root status for bt, current state for fsm
  std::vector<ActionEmission> emissions;
  std::size_t persons = 0;
  bool hazard = false;
  bool network = true;

  bool operator==(const TickRecord&) const = default;
};

using Trace = std::vector<TickRecord>;

/// Runs the scenario from a fresh context: every tick applies its events,
/// ticks the controller once and flushes the emissions. The controller is
/// reset first. Validation errors surface before tick 0.
Trace run(bt::BehaviorTree& tree, const dsl::ScenarioScript& scenario);
Trace run(fsm::StateMachine& machine, const dsl::ScenarioScript& scenario);

struct Divergence
{
  std::size_t position = 0;  // index in the padding-free emission sequence
  std::optional<ActionEmission> a;
  std::optional<ActionEmission> b;
};

struct DivergenceReport
{
  bool equivalent = true;
  std::optional<Divergence> first_divergence;
};

/// Emissions in order with idle/halt padding removed.
std::vector<ActionEmission> observable_emissions(const Trace& trace);

/// Compares (action, payload) sequences ignoring padding and tick values.
DivergenceReport compare(const Trace& a, const Trace& b);

std::string format_report(const DivergenceReport& report);

/// `tick=<n> ctl=<bt|fsm> status=<s> emit=[a(p);...] persons=<n> hazard=<0|1> net=<0|1>`
std::string format_record(const TickRecord& record);
std::string format_trace(const Trace& trace);

/// Inverse of format_trace. Throws ValidationError on malformed lines.
Trace parse_trace(std::string_view text);

}  // namespace shutter::sim

#endif  // SHUTTER__SIM_HPP
