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

#include "shutter/world_model.hpp"

#include <algorithm>
#include <cmath>

#include "shutter/errors.hpp"

namespace shutter {

std::string_view to_string(Button b)
{
  switch (b) {
    case Button::Yes: return "yes";
    case Button::No: return "no";
    case Button::Aux: return "aux";
  }
  return "?";
}

std::optional<Button> parse_button(std::string_view s)
{
  if (s == "yes") return Button::Yes;
  if (s == "no") return Button::No;
  if (s == "aux") return Button::Aux;
  return std::nullopt;
}

std::string_view to_string(EventKind k)
{
  switch (k) {
    case EventKind::PersonAppear: return "person_appear";
    case EventKind::PersonMove: return "person_move";
    case EventKind::PersonLeave: return "person_leave";
    case EventKind::ButtonPress: return "button";
    case EventKind::HazardOn: return "hazard_on";
    case EventKind::HazardOff: return "hazard_off";
    case EventKind::NetworkDown: return "network_down";
    case EventKind::NetworkUp: return "network_up";
  }
  return "?";
}

namespace action {

bool is_known(std::string_view name)
{
  return name == kSay || name == kTakePhoto || name == kShowPhoto ||
         name == kHaltMotionHold || name == kIdle;
}

bool is_padding(std::string_view name)
{
  return name == kIdle || name == kHaltMotionHold;
}

}  // namespace action

Event Event::appear(Tick t, PersonId id, double x, double y)
{
  Event e;
  e.at_tick = t;
  e.kind = EventKind::PersonAppear;
  e.person_id = id;
  e.position = {x, y};
  return e;
}

Event Event::move(Tick t, PersonId id, double x, double y)
{
  Event e = appear(t, id, x, y);
  e.kind = EventKind::PersonMove;
  return e;
}

Event Event::leave(Tick t, PersonId id)
{
  Event e;
  e.at_tick = t;
  e.kind = EventKind::PersonLeave;
  e.person_id = id;
  return e;
}

Event Event::press(Tick t, Button b)
{
  Event e;
  e.at_tick = t;
  e.kind = EventKind::ButtonPress;
  e.button = b;
  return e;
}

Event Event::simple(Tick t, EventKind k)
{
  Event e;
  e.at_tick = t;
  e.kind = k;
  return e;
}

bool InteractionContext::pressed(Button b) const
{
  return std::find(
           buttons_pressed_this_tick.begin(), buttons_pressed_this_tick.end(),
           b) != buttons_pressed_this_tick.end();
}

std::vector<PersonObservation> InteractionContext::person_list() const
{
  std::vector<PersonObservation> out;
  out.reserve(persons.size());
  for (const auto& [id, pos] : persons) {
    out.push_back({id, pos});
  }
  return out;
}

namespace {

std::string at(const Event& e)
{
  return " at tick " + std::to_string(e.at_tick);
}

}  // namespace

void apply_events(InteractionContext& ctx, std::span<const Event> events)
{
  for (const auto& e : events) {
    if (e.at_tick != ctx.clock) {
      throw ValidationError(
        "event for tick " + std::to_string(e.at_tick) +
        " applied at tick " + std::to_string(ctx.clock));
    }
    switch (e.kind) {
      case EventKind::PersonAppear:
      case EventKind::PersonMove: {
        if (!std::isfinite(e.position.x) || !std::isfinite(e.position.y)) {
          throw ValidationError(
            "non-finite position for person " + std::to_string(e.person_id) +
            at(e));
        }
        const bool present = ctx.persons.contains(e.person_id);
        if (e.kind == EventKind::PersonAppear && present) {
          throw ValidationError(
            "person " + std::to_string(e.person_id) + " already present" +
            at(e));
        }
        if (e.kind == EventKind::PersonMove && !present) {
          throw ValidationError(
            "unknown person " + std::to_string(e.person_id) + at(e));
        }
        ctx.persons[e.person_id] = e.position;
        break;
      }
      case EventKind::PersonLeave:
        if (ctx.persons.erase(e.person_id) == 0) {
          throw ValidationError(
            "unknown person " + std::to_string(e.person_id) + at(e));
        }
        break;
      case EventKind::ButtonPress:
        if (!ctx.pressed(e.button)) {
          ctx.buttons_pressed_this_tick.push_back(e.button);
        }
        break;
      case EventKind::HazardOn: ctx.hazard_hand_near_arm = true; break;
      case EventKind::HazardOff: ctx.hazard_hand_near_arm = false; break;
      case EventKind::NetworkDown: ctx.network_ok = false; break;
      case EventKind::NetworkUp: ctx.network_ok = true; break;
    }
  }
}

std::vector<ActionEmission> end_tick(InteractionContext& ctx)
{
  std::vector<ActionEmission> out = std::move(ctx.emissions_this_tick);
  ctx.emissions_this_tick.clear();
  ctx.buttons_pressed_this_tick.clear();
  ++ctx.clock;
  return out;
}

void emit(InteractionContext& ctx, ActionEmission emission)
{
  if (emission.tick != ctx.clock) {
    throw ConsistencyError(
      "emission stamped tick " + std::to_string(emission.tick) +
      " during tick " + std::to_string(ctx.clock));
  }
  if (!action::is_known(emission.action)) {
    throw ConsistencyError("unknown action '" + emission.action + "'");
  }
  ctx.emissions_this_tick.push_back(std::move(emission));
}

void emit_now(InteractionContext& ctx, std::string_view action, std::string payload)
{
  emit(ctx, ActionEmission{ctx.clock, std::string(action), std::move(payload)});
}

}  // namespace shutter
