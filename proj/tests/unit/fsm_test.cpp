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

#include <algorithm>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include "shutter/errors.hpp"
#include "shutter/fsm.hpp"
#include "shutter/interaction.hpp"

namespace shutter::fsm {
namespace {

namespace st = interaction::state;

// Conditions over the hazard/network flags and buttons; "tock" emits
// idle(<step>) so on_tick progress is visible.
std::shared_ptr<Catalogue> toy_catalogue()
{
  auto cat = std::make_shared<Catalogue>();
  cat->add_condition("hazard", [](const InteractionContext& c) { return c.hazard_hand_near_arm; });
  cat->add_condition("net_down", [](const InteractionContext& c) { return !c.network_ok; });
  cat->add_condition("yes", [](const InteractionContext& c) { return c.pressed(Button::Yes); });
  Behavior tock;
  tock.duration = 3;
  tock.step = [](InteractionContext& c, int step) {
    emit_now(c, action::kIdle, std::to_string(step));
    return StepResult::Continue;
  };
  cat->add_behavior("tock", tock);
  Behavior hello;
  hello.step = [](InteractionContext& c, int) {
    emit_now(c, action::kSay, "hello");
    return StepResult::Continue;
  };
  cat->add_behavior("hello", hello);
  return cat;
}

StateMachine toy_machine()
{
  StateMachine m("A");
  m.add_state({"A", "", "tock"});
  m.add_state({"B", "hello", ""});
  m.add_state({"C", "hello", ""});
  m.add_transition({"A", "net_down", "C", 20});
  m.add_transition({"A", "hazard", "B", 10});
  m.add_transition({"B", "yes", "A", 1});
  return m;
}

std::vector<std::string> payloads(const InteractionContext& ctx)
{
  std::vector<std::string> out;
  for (const auto& e : ctx.emissions_this_tick) out.push_back(e.payload);
  return out;
}

TEST(StateMachine, NoTransitionRunsOnTick)
{
  auto m = toy_machine();
  m.bind(toy_catalogue());
  InteractionContext ctx;
  for (int i = 0; i < 4; ++i) {
    m.step(ctx);
    EXPECT_EQ(m.current(), "A");
    EXPECT_EQ(m.ticks_in_state(), i + 1);
  }
  EXPECT_EQ(payloads(ctx), (std::vector<std::string>{"0", "1", "2", "0"}));
}

TEST(StateMachine, LowestPriorityWins)
{
  auto m = toy_machine();
  m.bind(toy_catalogue());
  InteractionContext ctx;
  ctx.hazard_hand_near_arm = true;
  ctx.network_ok = false;
  m.step(ctx);
  EXPECT_EQ(m.current(), "B");
  EXPECT_EQ(m.ticks_in_state(), 0);
  EXPECT_EQ(payloads(ctx), (std::vector<std::string>{"hello"}));
}

TEST(StateMachine, AtMostOneTransitionPerStep)
{
  auto m = toy_machine();
  m.bind(toy_catalogue());
  InteractionContext ctx;
  ctx.hazard_hand_near_arm = true;
  ctx.buttons_pressed_this_tick = {Button::Yes};
  m.step(ctx);
  EXPECT_EQ(m.current(), "B");
  m.step(ctx);
  EXPECT_EQ(m.current(), "A");
}

TEST(StateMachine, RejectsBadDefinitions)
{
  StateMachine m("A");
  m.add_state({"A", "", ""});
  EXPECT_THROW(m.add_state({"A", "", ""}), ConfigError);
  m.add_state({"B", "", ""});
  m.add_transition({"A", "hazard", "B", 1});
  EXPECT_THROW(m.add_transition({"A", "yes", "B", 1}), ConfigError);
  EXPECT_THROW(m.add_timeout("A", 0, "B"), ConfigError);
  EXPECT_THROW(m.add_timeout("Z", 3, "B"), ConfigError);
  m.add_timeout("A", 3, "B");
  EXPECT_THROW(m.add_timeout("A", 4, "B"), ConfigError);
}

TEST(StateMachine, BindChecksNamesAndEndpoints)
{
  {
    StateMachine m("A");
    m.add_state({"A", "", ""});
    m.add_transition({"A", "unknown_guard", "A", 1});
    EXPECT_THROW(m.bind(toy_catalogue()), ConfigError);
  }
  {
    StateMachine m("A");
    m.add_state({"A", "", ""});
    m.add_transition({"A", "hazard", "Nowhere", 1});
    EXPECT_THROW(m.bind(toy_catalogue()), ConfigError);
  }
  {
    StateMachine m("Missing");
    m.add_state({"A", "", ""});
    EXPECT_THROW(m.bind(toy_catalogue()), ConfigError);
  }
  {
    StateMachine m("A");
    m.add_state({"A", "no_such_behavior", ""});
    EXPECT_THROW(m.bind(toy_catalogue()), ConfigError);
  }
  StateMachine unbound("A");
  unbound.add_state({"A", "", ""});
  InteractionContext ctx;
  EXPECT_THROW(unbound.step(ctx), ConfigError);
}

TEST(StateMachine, TimeoutAfterResidency)
{
  auto m = toy_machine();
  m.add_timeout("A", 10, "C");
  m.bind(toy_catalogue());
  InteractionContext ctx;
  for (int i = 1; i < 10; ++i) {
    m.step(ctx);
    EXPECT_EQ(m.current(), "A") << "step " << i;
  }
  m.step(ctx);
  EXPECT_EQ(m.current(), "C");
}

TEST(StateMachine, GuardBeatsTimeout)
{
  auto m = toy_machine();
  m.add_timeout("A", 10, "C");
  m.bind(toy_catalogue());
  InteractionContext ctx;
  for (int i = 1; i < 10; ++i) m.step(ctx);
  ctx.hazard_hand_near_arm = true;
  m.step(ctx);
  EXPECT_EQ(m.current(), "B");
}

TEST(StateMachine, TimeoutCountResetsOnEntry)
{
  auto m = toy_machine();
  m.add_timeout("A", 3, "C");
  m.bind(toy_catalogue());
  InteractionContext ctx;
  m.step(ctx);
  m.step(ctx);
  ctx.hazard_hand_near_arm = true;
  m.step(ctx);
  ctx.hazard_hand_near_arm = false;
  ctx.buttons_pressed_this_tick = {Button::Yes};
  m.step(ctx);
  ctx.buttons_pressed_this_tick.clear();
  ASSERT_EQ(m.current(), "A");
  m.step(ctx);
  m.step(ctx);
  EXPECT_EQ(m.current(), "A");
  m.step(ctx);
  EXPECT_EQ(m.current(), "C");
}

TEST(StateMachine, CountElementsIsPure)
{
  auto m = toy_machine();
  m.add_timeout("B", 4, "A");
  const auto first = m.count_elements();
  EXPECT_EQ(first, (ElementCounts{3, 3, 1}));
  EXPECT_EQ(m.count_elements(), first);
}

TEST(StateMachine, ResetRestoresInitial)
{
  auto m = toy_machine();
  m.bind(toy_catalogue());
  InteractionContext ctx;
  ctx.hazard_hand_near_arm = true;
  m.step(ctx);
  m.reset();
  EXPECT_EQ(m.current(), "A");
  EXPECT_EQ(m.ticks_in_state(), 0);
  EXPECT_FALSE(m.return_slot().has_value());
}

// Photographer machine.

void drive(StateMachine& m, InteractionContext& ctx)
{
  m.step(ctx);
  end_tick(ctx);
}

TEST(PhotographerMachine, ConsentLeadsToAnnounce)
{
  auto m = interaction::build_photographer_fsm(interaction::Abandonment::Transitions);
  InteractionContext ctx;
  ctx.persons[1] = {1.0, 0.5};
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kGreet);
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kAskConsent);
  ctx.buttons_pressed_this_tick = {Button::Yes};
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kAnnouncePhoto);
}

TEST(PhotographerMachine, HazardInterruptsAndReturns)
{
  auto m = interaction::build_photographer_fsm(interaction::Abandonment::Transitions);
  InteractionContext ctx;
  ctx.persons[1] = {1.0, 0.5};
  drive(m, ctx);
  drive(m, ctx);
  ctx.buttons_pressed_this_tick = {Button::Yes};
  drive(m, ctx);
  drive(m, ctx);
  ASSERT_EQ(m.current(), st::kTakePhoto);
  EXPECT_EQ(ctx.photos_taken, 1);
  ctx.hazard_hand_near_arm = true;
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kHaltMotion);
  EXPECT_EQ(m.return_slot(), st::kTakePhoto);
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kHaltMotion);
  EXPECT_EQ(ctx.photos_taken, 1);
  ctx.hazard_hand_near_arm = false;
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kTakePhoto);
  EXPECT_FALSE(m.return_slot().has_value());
  EXPECT_EQ(ctx.photos_taken, 2);
}

TEST(PhotographerMachine, WaitingStaysWithoutPersons)
{
  auto m = interaction::build_photographer_fsm(interaction::Abandonment::None);
  InteractionContext ctx;
  drive(m, ctx);
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kWaiting);
  EXPECT_EQ(m.ticks_in_state(), 2);
}

TEST(PhotographerMachine, ElementCounts)
{
  using interaction::Abandonment;
  using interaction::photographer_machine;
  EXPECT_EQ(photographer_machine(Abandonment::None, false).count_elements(), (ElementCounts{7, 9, 0}));
  EXPECT_EQ(photographer_machine(Abandonment::None).count_elements(), (ElementCounts{8, 13, 0}));
  EXPECT_EQ(photographer_machine(Abandonment::Transitions).count_elements(), (ElementCounts{8, 20, 0}));
  EXPECT_EQ(photographer_machine(Abandonment::Timeouts).count_elements(), (ElementCounts{8, 13, 7}));
}

TEST(PhotographerMachine, AbandonmentEdgesFromEveryNonWaitingState)
{
  auto m = interaction::photographer_machine(interaction::Abandonment::Transitions);
  std::vector<std::string> from;
  for (const auto& t : m.transitions()) {
    if (t.guard == "no_person") {
      EXPECT_EQ(t.to, st::kWaiting);
      from.push_back(t.from);
    }
  }
  std::sort(from.begin(), from.end());
  EXPECT_EQ(from, (std::vector<std::string>{
    st::kAnnouncePhoto, st::kAskConsent, st::kFarewell, st::kGreet, st::kHaltMotion,
    st::kShowPraise, st::kTakePhoto}));
}

TEST(PhotographerMachine, TimeoutModeReturnsToWaiting)
{
  auto m = interaction::build_photographer_fsm(interaction::Abandonment::Timeouts);
  InteractionContext ctx;
  ctx.persons[1] = {1.0, 0.5};
  drive(m, ctx);
  drive(m, ctx);
  ASSERT_EQ(m.current(), st::kAskConsent);
  ctx.persons.clear();
  for (int i = 1; i < interaction::kAbandonmentTimeoutTicks; ++i) {
    drive(m, ctx);
    EXPECT_EQ(m.current(), st::kAskConsent);
  }
  drive(m, ctx);
  EXPECT_EQ(m.current(), st::kWaiting);
}

TEST(PhotographerMachine, NoAbandonmentStaysStuck)
{
  auto m = interaction::build_photographer_fsm(interaction::Abandonment::None);
  InteractionContext ctx;
  ctx.persons[1] = {1.0, 0.5};
  drive(m, ctx);
  drive(m, ctx);
  ctx.persons.clear();
  for (int i = 0; i < 40; ++i) drive(m, ctx);
  EXPECT_EQ(m.current(), st::kAskConsent);
}

TEST(PhotographerMachine, Deterministic)
{
  auto run_once = []() {
    auto m = interaction::build_photographer_fsm(interaction::Abandonment::Transitions);
    InteractionContext ctx;
    ctx.persons[1] = {1.0, 0.5};
    std::vector<std::string> states;
    for (int i = 0; i < 20; ++i) {
      if (i == 3) ctx.buttons_pressed_this_tick = {Button::Yes};
      ctx.hazard_hand_near_arm = i == 5;
      m.step(ctx);
      states.push_back(m.current());
      end_tick(ctx);
    }
    return states;
  };
  EXPECT_EQ(run_once(), run_once());
}

}  // namespace
}  // namespace shutter::fsm
