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

#ifndef SHUTTER__WORLD_MODEL_HPP
#define SHUTTER__WORLD_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace shutter {

using Tick = std::int64_t;
using PersonId = int;

enum class Button { Yes, No, Aux };

std::string_view to_string(Button b);
std::optional<Button> parse_button(std::string_view s);

/// Planar position in meters. The robot cart sits at the origin.
struct Position
{
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Position&) const = default;
};

struct PersonObservation
{
  PersonId id = 0;
  Position position;

  bool operator==(const PersonObservation&) const = default;
};

/// Closed set of action names the controllers may emit.
namespace action {
inline constexpr std::string_view kSay = "say";
inline constexpr std::string_view kTakePhoto = "take_photo";
inline constexpr std::string_view kShowPhoto = "show_photo";
inline constexpr std::string_view kHaltMotionHold = "halt_motion_hold";
inline constexpr std::string_view kIdle = "idle";

bool is_known(std::string_view name);
/// Padding actions carry no interaction content and are skipped when
/// comparing traces.
bool is_padding(std::string_view name);
}  // namespace action

struct ActionEmission
{
  Tick tick = 0;
  std::string action;
  std::string payload;

  bool operator==(const ActionEmission&) const = default;
};

enum class EventKind {
  PersonAppear,
  PersonMove,
  PersonLeave,
  ButtonPress,
  HazardOn,
  HazardOff,
  NetworkDown,
  NetworkUp,
};

std::string_view to_string(EventKind k);

/// External stimulus applied at the start of a tick.
struct Event
{
  Tick at_tick = 0;
  EventKind kind = EventKind::HazardOn;
  PersonId person_id = 0;   // appear / move / leave
  Position position;        // appear / move
  Button button = Button::Yes;  // button_press

  bool operator==(const Event&) const = default;

  static Event appear(Tick t, PersonId id, double x, double y);
  static Event move(Tick t, PersonId id, double x, double y);
  static Event leave(Tick t, PersonId id);
  static Event press(Tick t, Button b);
  static Event simple(Tick t, EventKind k);
};

/// The shared blackboard read by conditions and written by behaviors.
struct InteractionContext
{
  Tick clock = 0;
  std::map<PersonId, Position> persons;
  std::vector<Button> buttons_pressed_this_tick;
  bool hazard_hand_near_arm = false;
  bool network_ok = true;

  int photos_taken = 0;
  // Photos that have been displayed and praised in the current episode.
  int photos_shown = 0;
  // Group size captured when the greeting was spoken.
  int greeting_group_size = 0;
  Tick cooldown_until = 0;

  std::vector<ActionEmission> emissions_this_tick;

  bool pressed(Button b) const;
  std::vector<PersonObservation> person_list() const;

  bool operator==(const InteractionContext&) const = default;
};

/// Applies one tick's worth of events in order. Throws ValidationError if an
/// event references an absent person, re-adds a present one, carries a
/// non-finite coordinate, or is stamped for a different tick.
void apply_events(InteractionContext& ctx, std::span<const Event> events);

/// Flushes this tick's emissions, clears button edges and advances the clock.
std::vector<ActionEmission> end_tick(InteractionContext& ctx);

/// Appends an emission. Throws ConsistencyError when the tick does not match
/// the clock or the action name is not in the closed catalogue.
void emit(InteractionContext& ctx, ActionEmission emission);

/// Convenience wrapper stamping the current clock.
void emit_now(
  InteractionContext& ctx, std::string_view action, std::string payload = {});

}  // namespace shutter

#endif  // SHUTTER__WORLD_MODEL_HPP
