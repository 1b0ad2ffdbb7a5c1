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

#include "shutter/fsm.hpp"

#include <algorithm>

#include "shutter/errors.hpp"

namespace shutter::fsm {

StateMachine::StateMachine(std::string initial)
: initial_(std::move(initial)), current_(initial_)
{}

void StateMachine::add_state(State state)
{
  if (state.id.empty()) {
    throw ConfigError("state id must not be empty");
  }
  const std::string id = state.id;
  if (!states_.emplace(id, std::move(state)).second) {
    throw ConfigError("duplicate state '" + id + "'");
  }
}

void StateMachine::add_transition(Transition transition)
{
  for (const auto& t : transitions_) {
    if (t.from == transition.from && t.priority == transition.priority) {
      throw ConfigError(
        "duplicate priority " + std::to_string(t.priority) + " on state '" +
        t.from + "'");
    }
  }
  auto pos = std::upper_bound(
    transitions_.begin(), transitions_.end(), transition,
    [](const Transition& a, const Transition& b) {
      return a.from != b.from ? a.from < b.from : a.priority < b.priority;
    });
  transitions_.insert(pos, std::move(transition));
}

void StateMachine::add_timeout(const std::string& state, int after_ticks, const std::string& to)
{
  if (after_ticks < 1) {
    throw ConfigError("timeout on '" + state + "' needs after_ticks >= 1");
  }
  if (!states_.contains(state)) {
    throw ConfigError("timeout on unknown state '" + state + "'");
  }
  if (timeouts_.contains(state)) {
    throw ConfigError("state '" + state + "' already has a timeout");
  }
  timeouts_.emplace(state, Timeout{state, after_ticks, to});
}

void StateMachine::bind(std::shared_ptr<const Catalogue> catalogue)
{
  if (!catalogue) {
    throw ConfigError("state machine needs a catalogue");
  }
  std::vector<std::string> problems;
  auto need_state = [&](const std::string& id, const std::string& where) {
    if (!states_.contains(id)) problems.push_back("unknown state '" + id + "' in " + where);
  };
  auto need_behavior = [&](const std::string& name) {
    if (!name.empty() && catalogue->find_behavior(name) == nullptr) {
      problems.push_back("behavior '" + name + "'");
    }
  };

  need_state(initial_, "initial");
  for (const auto& [id, s] : states_) {
    need_behavior(s.on_entry);
    need_behavior(s.on_tick);
  }
  for (const auto& t : transitions_) {
    const std::string where = "transition " + t.from + "->" + t.to;
    need_state(t.from, where);
    need_state(t.to, where);
    if (catalogue->find_condition(t.guard) == nullptr) {
      problems.push_back("condition '" + t.guard + "'");
    }
  }
  for (const auto& [state, t] : timeouts_) {
    need_state(t.to, "timeout of " + state);
  }
  if (!problems.empty()) {
    std::string msg = "invalid state machine:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw ConfigError(msg);
  }
  catalogue_ = std::move(catalogue);
  reset();
}

void StateMachine::reset()
{
  current_ = initial_;
  ticks_in_state_ = 0;
  return_slot_.reset();
}

void StateMachine::run_behavior(const std::string& name, InteractionContext& ctx, int step) const
{
  if (name.empty()) return;
  const Behavior* b = catalogue_->find_behavior(name);
  b->step(ctx, step % b->duration);
}

void StateMachine::enter(const std::string& target, InteractionContext& ctx)
{
  current_ = target;
  ticks_in_state_ = 0;
  run_behavior(states_.at(target).on_entry, ctx, 0);
}

void StateMachine::step(InteractionContext& ctx)
{
  if (!catalogue_) {
    throw ConfigError("state machine stepped before bind()");
  }
  for (const auto& t : transitions_) {
    if (t.from != current_) continue;
    if (t.returns_to_origin && return_slot_ != t.to) continue;
    if (!(*catalogue_->find_condition(t.guard))(ctx)) continue;

    if (t.records_origin) {
      return_slot_ = t.from;
    } else {
      return_slot_.reset();
    }
    enter(t.to, ctx);
    return;
  }

  if (auto it = timeouts_.find(current_);
      it != timeouts_.end() && ticks_in_state_ + 1 >= it->second.after_ticks)
  {
    return_slot_.reset();
    enter(it->second.to, ctx);
    return;
  }

  run_behavior(states_.at(current_).on_tick, ctx, ticks_in_state_);
  ++ticks_in_state_;
}

ElementCounts StateMachine::count_elements() const
{
  return ElementCounts{
    static_cast<int>(states_.size()), static_cast<int>(transitions_.size()),
    static_cast<int>(timeouts_.size())};
}

}  // namespace shutter::fsm
