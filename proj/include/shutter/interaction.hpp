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

#ifndef SHUTTER__INTERACTION_HPP
#define SHUTTER__INTERACTION_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "shutter/bt.hpp"
#include "shutter/catalogue.hpp"
#include "shutter/fsm.hpp"
#include "shutter/groups.hpp"

namespace shutter::interaction {

inline constexpr int kPhotosPerEpisode = 3;
inline constexpr std::string_view kAnnounceText = "I am about to take your photo.";
inline constexpr std::string_view kFarewellText = "Maybe next time!";

/// Timing and perception knobs of the photographer interaction.
struct Params
{
  int greet_ticks = 2;
  int announce_ticks = 1;
  int photo_ticks = 1;
  int praise_ticks = 2;  // per photo: show, then praise
  int cooldown_ticks = 10;
  double dist_threshold = groups::kDefaultDistThreshold;
  double zone_radius = groups::kDefaultZoneRadius;
};

/// "Would you like me to take your photo?" for one person, otherwise the
/// group form with the count spelled out up to twelve. Throws ValidationError
/// for n == 0.
std::string greeting_text(int group_size);

/// Rotates over three fixed remarks. Throws ValidationError outside 1..3.
std::string praise_text(int photo_index);

/// Size of the group the robot would currently address.
int current_group_size(const InteractionContext& ctx, const Params& params = {});

/// Behaviors and conditions of the photographer interaction.
std::shared_ptr<const Catalogue> make_catalogue(const Params& params = {});

struct BtOptions
{
  // Wraps the interaction in a Parallel with the person_detected check.
  bool abandonment = true;
  // One no_hazard guard per motion action.
  bool halt = true;
  // network_up guard around the whole interaction body.
  bool network_pause = true;
};

/// Structure of the photographer tree, not yet bound to a catalogue.
bt::TreeNode photographer_tree(const BtOptions& options = {});

bt::BehaviorTree build_photographer_bt(
  const Params& params = {}, const BtOptions& options = {});

enum class Abandonment { None, Transitions, Timeouts };

std::string_view to_string(Abandonment mode);
std::optional<Abandonment> parse_abandonment(std::string_view s);

inline constexpr int kAbandonmentTimeoutTicks = 15;

namespace state {
inline const std::string kWaiting = "Waiting";
inline const std::string kGreet = "Greet";
inline const std::string kAskConsent = "AskConsent";
inline const std::string kAnnouncePhoto = "AnnouncePhoto";
inline const std::string kTakePhoto = "TakePhoto";
inline const std::string kShowPraise = "ShowPraise";
inline const std::string kFarewell = "Farewell";
inline const std::string kHaltMotion = "HaltMotion";
}  // namespace state

/// Unbound photographer state machine. With `halt` false the HaltMotion
/// state and its edges are left out.
fsm::StateMachine photographer_machine(Abandonment mode, bool halt = true);

fsm::StateMachine build_photographer_fsm(
  Abandonment mode, const Params& params = {}, bool halt = true);

/// Structural cost of adding abandonment handling and the motion halt to
/// each architecture, measured by diffing built artifacts.
struct EconomyReport
{
  int bt_nodes_added_for_abandonment = 0;   // control-flow nodes
  int bt_leaves_added_for_abandonment = 0;  // reused condition leaves
  int fsm_transitions_added_for_abandonment = 0;
  int fsm_timeouts_added_for_abandonment = 0;
  int fsm_non_waiting_states = 0;
  int bt_nodes_added_for_halt = 0;
  int fsm_transitions_added_for_halt = 0;
  int fsm_states_added_for_halt = 0;
};

EconomyReport structural_economy_report();

std::string format_report(const EconomyReport& report);

}  // namespace shutter::interaction

#endif  // SHUTTER__INTERACTION_HPP
