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

#include "shutter/interaction.hpp"

#include <array>
#include <sstream>

#include "shutter/errors.hpp"

namespace shutter::interaction {

namespace {

constexpr std::array<std::string_view, 13> kNumberWords = {
  "zero", "one", "two", "three", "four", "five", "six",
  "seven", "eight", "nine", "ten", "eleven", "twelve"};

constexpr std::array<std::string_view, 3> kPraise = {
  "You look great in this photo.",
  "What a great shot!",
  "This one is a keeper.",
};

bool engaged(const InteractionContext& ctx, const Params& p)
{
  return ctx.clock >= ctx.cooldown_until && current_group_size(ctx, p) >= 1;
}

void finish_episode(InteractionContext& ctx, const Params& p)
{
  ctx.cooldown_until = ctx.clock + p.cooldown_ticks;
}

}  // namespace

std::string greeting_text(int group_size)
{
  if (group_size < 1) {
    throw ValidationError("cannot greet a group of " + std::to_string(group_size));
  }
  if (group_size == 1) {
    return "Would you like me to take your photo?";
  }
  const std::string count = group_size < static_cast<int>(kNumberWords.size())
    ? std::string(kNumberWords[group_size])
    : std::to_string(group_size);
  return "Would you like me to take a photo of the " + count + " of you?";
}

std::string praise_text(int photo_index)
{
  if (photo_index < 1 || photo_index > kPhotosPerEpisode) {
    throw ValidationError("photo index " + std::to_string(photo_index) + " out of range 1..3");
  }
  return std::string(kPraise[(photo_index - 1) % kPraise.size()]);
}

int current_group_size(const InteractionContext& ctx, const Params& params)
{
  if (ctx.persons.empty()) return 0;
  const auto persons = ctx.person_list();
  const auto clusters = groups::cluster_groups(persons, params.dist_threshold);
  return static_cast<int>(groups::interaction_group_size(clusters, persons, params.zone_radius));
}

std::shared_ptr<const Catalogue> make_catalogue(const Params& params)
{
  const Params p = params;
  auto cat = std::make_shared<Catalogue>();

  // Conditions.
  cat->add_condition("person_detected", [p](const InteractionContext& c) { return engaged(c, p); });
  // Also true while cooling down, so the waiting branch owns those ticks.
  cat->add_condition("no_person", [p](const InteractionContext& c) { return !engaged(c, p); });
  cat->add_condition("no_hazard", [](const InteractionContext& c) { return !c.hazard_hand_near_arm; });
  cat->add_condition("hazard", [](const InteractionContext& c) { return c.hazard_hand_near_arm; });
  cat->add_condition("network_up", [](const InteractionContext& c) { return c.network_ok; });
  cat->add_condition("button_yes", [](const InteractionContext& c) { return c.pressed(Button::Yes); });
  cat->add_condition("button_no", [](const InteractionContext& c) { return c.pressed(Button::No); });
  cat->add_condition("button_aux", [](const InteractionContext& c) { return c.pressed(Button::Aux); });
  cat->add_condition("greeted", [](const InteractionContext& c) { return c.greeting_group_size >= 1; });
  cat->add_condition("photos_remaining", [](const InteractionContext& c) {
    return c.photos_taken < kPhotosPerEpisode;
  });
  cat->add_condition("photos_complete", [](const InteractionContext& c) {
    return c.photos_taken >= kPhotosPerEpisode;
  });
  cat->add_condition("all_photos_shown", [](const InteractionContext& c) {
    return c.photos_shown >= kPhotosPerEpisode;
  });
  cat->add_condition("always", [](const InteractionContext&) { return true; });

  // Behaviors.
  cat->add_behavior("idle", {1, false, [](InteractionContext& c, int) {
    emit_now(c, action::kIdle);
    return StepResult::Continue;
  }});

  cat->add_behavior("halt_motion_hold", {1, false, [](InteractionContext& c, int) {
    emit_now(c, action::kHaltMotionHold);
    return StepResult::Continue;
  }});

  cat->add_behavior("greet", {p.greet_ticks, false, [p](InteractionContext& c, int step) {
    if (step != 0) return StepResult::Continue;
    const int n = current_group_size(c, p);
    if (n < 1) return StepResult::Fail;
    c.greeting_group_size = n;
    c.photos_taken = 0;
    c.photos_shown = 0;
    emit_now(c, action::kSay, greeting_text(n));
    return StepResult::Continue;
  }});

  cat->add_behavior("await_consent", {1, true, [](InteractionContext& c, int) {
    if (c.pressed(Button::Yes)) return StepResult::Succeed;
    if (c.pressed(Button::No)) return StepResult::Fail;
    return StepResult::Continue;
  }});

  cat->add_behavior("announce", {p.announce_ticks, false, [](InteractionContext& c, int step) {
    if (step == 0) emit_now(c, action::kSay, std::string(kAnnounceText));
    return StepResult::Continue;
  }});

  cat->add_behavior("take_photo", {p.photo_ticks, false, [](InteractionContext& c, int step) {
    if (step != 0) return StepResult::Continue;
    if (c.photos_taken >= kPhotosPerEpisode) return StepResult::Fail;
    ++c.photos_taken;
    emit_now(c, action::kTakePhoto, std::to_string(c.photos_taken));
    return StepResult::Continue;
  }});

  // Step 0 shows the next photo, step 1 praises it, the last step marks it
  // done. Finishing the third photo closes the episode.
  const int praise_step = p.praise_ticks > 1 ? 1 : 0;
  cat->add_behavior("show_and_praise", {p.praise_ticks, false,
    [p, praise_step](InteractionContext& c, int step) {
      const int index = c.photos_shown + 1;
      if (index > kPhotosPerEpisode) return StepResult::Fail;
      if (step == 0) emit_now(c, action::kShowPhoto, std::to_string(index));
      if (step == praise_step) emit_now(c, action::kSay, praise_text(index));
      if (step == p.praise_ticks - 1) {
        ++c.photos_shown;
        if (c.photos_shown == kPhotosPerEpisode) finish_episode(c, p);
      }
      return StepResult::Continue;
    }});

  // Reports failure so the surrounding sequence stops after a decline.
  cat->add_behavior("farewell", {1, false, [p](InteractionContext& c, int) {
    emit_now(c, action::kSay, std::string(kFarewellText));
    finish_episode(c, p);
    return StepResult::Fail;
  }});

  return cat;
}

bt::TreeNode photographer_tree(const BtOptions& options)
{
  auto motion = [&](std::string behavior, std::string label) {
    bt::TreeNode leaf = bt::action(std::move(behavior));
    return options.halt ? bt::guard("no_hazard", std::move(label), std::move(leaf)) : leaf;
  };

  std::vector<bt::TreeNode> steps;
  steps.push_back(bt::action("greet"));
  steps.push_back(bt::fallback("consent", {bt::action("await_consent"), bt::action("farewell")}));
  steps.push_back(motion("announce", "halt_announce"));
  for (int i = 1; i <= kPhotosPerEpisode; ++i) {
    steps.push_back(motion("take_photo", "halt_photo_" + std::to_string(i)));
  }
  for (int i = 1; i <= kPhotosPerEpisode; ++i) {
    steps.push_back(bt::action("show_and_praise"));
  }
  bt::TreeNode body = bt::sequence("main", std::move(steps), /*memory=*/true);
  if (options.network_pause) {
    body = bt::guard("network_up", "network_pause", std::move(body));
  }
  if (options.abandonment) {
    body = bt::parallel("interact", {bt::condition("person_detected"), std::move(body)});
  }

  bt::TreeNode root = bt::fallback("root", {
    bt::sequence("wait", {bt::condition("no_person"), bt::action("idle")}),
    std::move(body),
  });
  bt::assign_ids(root);
  return root;
}

bt::BehaviorTree build_photographer_bt(const Params& params, const BtOptions& options)
{
  return bt::BehaviorTree(photographer_tree(options), make_catalogue(params));
}

std::string_view to_string(Abandonment mode)
{
  switch (mode) {
    case Abandonment::None: return "none";
    case Abandonment::Transitions: return "transitions";
    case Abandonment::Timeouts: return "timeouts";
  }
  return "?";
}

std::optional<Abandonment> parse_abandonment(std::string_view s)
{
  if (s == "none") return Abandonment::None;
  if (s == "transitions") return Abandonment::Transitions;
  if (s == "timeouts") return Abandonment::Timeouts;
  return std::nullopt;
}

fsm::StateMachine photographer_machine(Abandonment mode, bool halt)
{
  using fsm::State;
  using fsm::Transition;
  using namespace state;

  fsm::StateMachine m(kWaiting);
  m.add_state(State{kWaiting, "idle", "idle"});
  m.add_state(State{kGreet, "greet", ""});
  m.add_state(State{kAskConsent, "", ""});
  m.add_state(State{kAnnouncePhoto, "announce", ""});
  m.add_state(State{kTakePhoto, "take_photo", ""});
  m.add_state(State{kShowPraise, "", "show_and_praise"});
  m.add_state(State{kFarewell, "farewell", ""});

  m.add_transition({kWaiting, "person_detected", kGreet, 10});
  m.add_transition({kGreet, "greeted", kAskConsent, 10});
  m.add_transition({kAskConsent, "button_yes", kAnnouncePhoto, 10});
  m.add_transition({kAskConsent, "button_no", kFarewell, 11});
  m.add_transition({kAnnouncePhoto, "no_hazard", kTakePhoto, 10});
  m.add_transition({kTakePhoto, "photos_remaining", kTakePhoto, 10});
  m.add_transition({kTakePhoto, "photos_complete", kShowPraise, 11});
  m.add_transition({kShowPraise, "all_photos_shown", kWaiting, 10});
  m.add_transition({kFarewell, "always", kWaiting, 10});

  if (halt) {
    m.add_state(State{kHaltMotion, "halt_motion_hold", "halt_motion_hold"});
    // Into the interrupt from every motion state, and back out to whichever
    // state was interrupted.
    for (const auto& origin : {kAnnouncePhoto, kTakePhoto}) {
      Transition in{origin, "hazard", kHaltMotion, 5};
      in.records_origin = true;
      m.add_transition(in);
    }
    int priority = 10;
    for (const auto& origin : {kAnnouncePhoto, kTakePhoto}) {
      Transition out{kHaltMotion, "no_hazard", origin, priority++};
      out.returns_to_origin = true;
      m.add_transition(out);
    }
  }

  std::vector<std::string> non_waiting = {
    kGreet, kAskConsent, kAnnouncePhoto, kTakePhoto, kShowPraise, kFarewell};
  if (halt) non_waiting.push_back(kHaltMotion);

  for (const auto& s : non_waiting) {
    switch (mode) {
      case Abandonment::None:
        break;
      case Abandonment::Transitions:
        m.add_transition({s, "no_person", kWaiting, 0});
        break;
      case Abandonment::Timeouts:
        m.add_timeout(s, kAbandonmentTimeoutTicks, kWaiting);
        break;
    }
  }
  return m;
}

fsm::StateMachine build_photographer_fsm(Abandonment mode, const Params& params, bool halt)
{
  fsm::StateMachine m = photographer_machine(mode, halt);
  m.bind(make_catalogue(params));
  return m;
}

EconomyReport structural_economy_report()
{
  EconomyReport r;

  const auto bt_full = bt::count_nodes(photographer_tree({}));
  const auto bt_no_abandon = bt::count_nodes(photographer_tree({.abandonment = false}));
  const auto bt_no_halt = bt::count_nodes(photographer_tree({.halt = false}));
  r.bt_nodes_added_for_abandonment = bt_full.control - bt_no_abandon.control;
  r.bt_leaves_added_for_abandonment = bt_full.leaves - bt_no_abandon.leaves;
  r.bt_nodes_added_for_halt = bt_full.total - bt_no_halt.total;

  const auto none = photographer_machine(Abandonment::None).count_elements();
  const auto trans = photographer_machine(Abandonment::Transitions).count_elements();
  const auto timeouts = photographer_machine(Abandonment::Timeouts).count_elements();
  r.fsm_transitions_added_for_abandonment = trans.n_transitions - none.n_transitions;
  r.fsm_timeouts_added_for_abandonment = timeouts.n_timeouts - none.n_timeouts;
  r.fsm_non_waiting_states = none.n_states - 1;

  const auto none_no_halt = photographer_machine(Abandonment::None, false).count_elements();
  r.fsm_transitions_added_for_halt = none.n_transitions - none_no_halt.n_transitions;
  r.fsm_states_added_for_halt = none.n_states - none_no_halt.n_states;
  return r;
}

std::string format_report(const EconomyReport& r)
{
  std::ostringstream out;
  auto row = [&out](std::string_view change, std::string_view bt, std::string_view fsm) {
    out << change;
    for (std::size_t i = change.size(); i < 24; ++i) out << ' ';
    out << bt;
    for (std::size_t i = bt.size(); i < 34; ++i) out << ' ';
    out << fsm << '\n';
  };
  row("change", "behavior tree", "state machine");
  row("abandonment",
      std::to_string(r.bt_nodes_added_for_abandonment) + " control node (+" +
        std::to_string(r.bt_leaves_added_for_abandonment) + " reused leaf)",
      std::to_string(r.fsm_transitions_added_for_abandonment) + " transitions or " +
        std::to_string(r.fsm_timeouts_added_for_abandonment) + " timeouts");
  row("motion halt",
      std::to_string(r.bt_nodes_added_for_halt) + " guard nodes",
      std::to_string(r.fsm_transitions_added_for_halt) + " transitions + " +
        std::to_string(r.fsm_states_added_for_halt) + " state");
  row("non-waiting states", "-", std::to_string(r.fsm_non_waiting_states));
  return out.str();
}

}  // namespace shutter::interaction
