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

#ifndef SHUTTER__FSM_HPP
#define SHUTTER__FSM_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shutter/catalogue.hpp"
#include "shutter/world_model.hpp"

namespace shutter::fsm {

struct State
{
  std::string id;
  std::string on_entry;  // behavior name, may be empty
  std::string on_tick;   // behavior name, may be empty
};

/**
 * Guarded edge. Lower `priority` is evaluated first.
 *
 * `records_origin` stores `from` in the machine's return slot when the edge
 * fires. `returns_to_origin` edges only fire while the return slot equals
 * `to`, which is how an interrupt state resumes the state it came from.
 */
struct Transition
{
  std::string from;
  std::string guard;
  std::string to;
  int priority = 0;
  bool records_origin = false;
  bool returns_to_origin = false;
};

struct Timeout
{
  std::string state;
  int after_ticks = 1;
  std::string to;
};

struct ElementCounts
{
  int n_states = 0;
  int n_transitions = 0;
  int n_timeouts = 0;

  bool operator==(const ElementCounts&) const = default;
};

class StateMachine
{
public:
  explicit StateMachine(std::string initial);

  void add_state(State state);
  void add_transition(Transition transition);
  /// Registers a residency timeout. It fires on the `after_ticks`-th
  /// consecutive step in `state` during which no guarded transition fires.
  void add_timeout(const std::string& state, int after_ticks, const std::string& to);

  /// Validates endpoints and resolves every name against the catalogue.
  /// Must be called before step().
  void bind(std::shared_ptr<const Catalogue> catalogue);

  void step(InteractionContext& ctx);

  /// Returns to the initial state with cleared residency and return slot.
  void reset();

  ElementCounts count_elements() const;

  const std::string& current() const noexcept { return current_; }
  int ticks_in_state() const noexcept { return ticks_in_state_; }
  const std::optional<std::string>& return_slot() const noexcept { return return_slot_; }
  const std::string& initial() const noexcept { return initial_; }
  bool has_state(const std::string& id) const { return states_.contains(id); }

  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  const std::map<std::string, Timeout>& timeouts() const noexcept { return timeouts_; }

private:
  void run_behavior(const std::string& name, InteractionContext& ctx, int step) const;
  void enter(const std::string& target, InteractionContext& ctx);

  std::string initial_;
  std::map<std::string, State> states_;
  std::vector<Transition> transitions_;  // kept sorted by (from, priority)
  std::map<std::string, Timeout> timeouts_;
  std::shared_ptr<const Catalogue> catalogue_;

  std::string current_;
  int ticks_in_state_ = 0;
  std::optional<std::string> return_slot_;
};

}  // namespace shutter::fsm

#endif  // SHUTTER__FSM_HPP
