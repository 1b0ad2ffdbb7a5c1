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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/photographer_oracle.hpp"
#include "shutter/errors.hpp"
#include "shutter/interaction.hpp"
#include "shutter/sim.hpp"
#include "support/test_util.hpp"

namespace shutter::sim {
namespace {

using interaction::Abandonment;

TEST(Run, QuiescentScenario)
{
  auto tree = interaction::build_photographer_bt();
  const auto trace = run(tree, dsl::parse_scenario("scenario empty ticks 5\n"));
  ASSERT_EQ(trace.size(), 5u);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    EXPECT_EQ(trace[i].tick, static_cast<Tick>(i));
    EXPECT_EQ(trace[i].controller, ControllerKind::Bt);
    EXPECT_EQ(trace[i].status, "success");
    EXPECT_EQ(testutil::pairs(trace[i].emissions), (std::vector<testutil::Pair>{{"idle", ""}}));
    EXPECT_EQ(trace[i].persons, 0u);
    EXPECT_FALSE(trace[i].hazard);
    EXPECT_TRUE(trace[i].network);
  }
}

TEST(Run, RecordsWorldFlags)
{
  auto machine = interaction::build_photographer_fsm(Abandonment::Transitions);
  const auto trace = run(machine, testutil::scenario("network_drop"));
  EXPECT_TRUE(trace[0].network);
  EXPECT_FALSE(trace[1].network);
  EXPECT_TRUE(trace[4].network);
  EXPECT_EQ(trace[0].persons, 1u);
  EXPECT_EQ(trace[0].controller, ControllerKind::Fsm);
}

TEST(Run, InvalidScenarioFailsBeforeTickZero)
{
  dsl::ScenarioScript bad;
  bad.name = "bad";
  bad.duration = 5;
  bad.events.push_back(Event::leave(2, 9));
  auto tree = interaction::build_photographer_bt();
  EXPECT_THROW(run(tree, bad), ValidationError);
  bad.events = {Event::press(7, Button::Yes)};
  EXPECT_THROW(run(tree, bad), ValidationError);
}

TEST(Run, ResetsControllerBetweenRuns)
{
  auto tree = interaction::build_photographer_bt();
  const auto script = testutil::scenario("solo");
  const auto first = format_trace(run(tree, script));
  EXPECT_EQ(format_trace(run(tree, script)), first);
  auto machine = interaction::build_photographer_fsm(Abandonment::Timeouts);
  const auto fsm_first = format_trace(run(machine, script));
  EXPECT_EQ(format_trace(run(machine, script)), fsm_first);
}

TEST(Run, LeaveShowsWaitingImmediately)
{
  for (Tick leave = 1; leave <= 6; ++leave) {
    auto tree = interaction::build_photographer_bt();
    const auto trace = run(tree, testutil::solo_with(12, leave));
    const auto& rec = trace[static_cast<std::size_t>(leave)];
    EXPECT_EQ(rec.persons, 0u);
    EXPECT_EQ(testutil::pairs(rec.emissions), (std::vector<testutil::Pair>{{"idle", ""}}))
      << "leave " << leave;
    for (std::size_t t = static_cast<std::size_t>(leave); t < trace.size(); ++t) {
      EXPECT_EQ(testutil::pairs(trace[t].emissions), (std::vector<testutil::Pair>{{"idle", ""}}));
    }
  }
}

TEST(Run, FsmTimeoutModeIsSlowToAbandon)
{
  auto machine = interaction::build_photographer_fsm(Abandonment::Timeouts);
  const auto trace = run(machine, testutil::scenario("abandon"));
  // Person leaves at tick 4 while the machine is taking photos; nothing pulls
  // it back to Waiting until the photo chain runs out.
  EXPECT_NE(trace[5].status, interaction::state::kWaiting);
}

TEST(Compare, ReflexiveAndSymmetric)
{
  auto tree = interaction::build_photographer_bt();
  auto machine = interaction::build_photographer_fsm(Abandonment::Transitions);
  for (const char* name : {"solo", "hazard_photos", "abandon", "network_drop"}) {
    const auto a = run(tree, testutil::scenario(name));
    const auto b = run(machine, testutil::scenario(name));
    EXPECT_TRUE(compare(a, a).equivalent);
    EXPECT_EQ(compare(a, b).equivalent, compare(b, a).equivalent) << name;
  }
}

TEST(Compare, HazardWindowIsPaddingOnly)
{
  auto tree = interaction::build_photographer_bt();
  // 14 ticks keeps both runs inside one episode (no re-greet after cooldown).
  const auto plain = run(tree, testutil::solo_with(14, -1));
  const auto blocked = run(tree, testutil::solo_with(14, -1, 3, 4));
  EXPECT_NE(format_trace(plain), format_trace(blocked));
  EXPECT_TRUE(compare(plain, blocked).equivalent);
}

TEST(Compare, ReportsFirstDivergence)
{
  Trace a(2);
  Trace b(2);
  a[0].emissions = {{0, "say", "hi"}, {0, "idle", ""}};
  a[1].emissions = {{1, "take_photo", "1"}};
  b[0].emissions = {{0, "say", "hi"}};
  b[1].emissions = {{1, "halt_motion_hold", ""}, {1, "take_photo", "2"}};
  const auto r = compare(a, b);
  EXPECT_FALSE(r.equivalent);
  ASSERT_TRUE(r.first_divergence.has_value());
  EXPECT_EQ(r.first_divergence->position, 1u);
  EXPECT_EQ(r.first_divergence->a->payload, "1");
  EXPECT_EQ(r.first_divergence->b->payload, "2");
  EXPECT_EQ(format_report(r), "diverged at 1: a=take_photo(1) @1 b=take_photo(2) @1\n");
  b[1].emissions.pop_back();
  const auto shorter = compare(a, b);
  EXPECT_FALSE(shorter.first_divergence->b.has_value());
  EXPECT_EQ(format_report(shorter), "diverged at 1: a=take_photo(1) @1 b=<end>\n");
  EXPECT_EQ(format_report(compare(b, b)), "equivalent\n");
}

TEST(Compare, IgnoresTickOffsets)
{
  Trace a(1);
  Trace b(3);
  a[0].emissions = {{0, "say", "x"}};
  b[2].emissions = {{2, "say", "x"}};
  EXPECT_TRUE(compare(a, b).equivalent);
}

TEST(TraceFormat, FixedFieldOrder)
{
  TickRecord r;
  r.tick = 3;
  r.controller = ControllerKind::Fsm;
  r.status = "TakePhoto";
  r.emissions = {{3, "take_photo", "1"}, {3, "say", "What a great shot!"}};
  r.persons = 2;
  r.hazard = true;
  r.network = false;
  EXPECT_EQ(format_record(r),
            "tick=3 ctl=fsm status=TakePhoto emit=[take_photo(1);say(What a great shot!)] "
            "persons=2 hazard=1 net=0");
}

TEST(TraceFormat, RoundTrip)
{
  auto tree = interaction::build_photographer_bt();
  auto machine = interaction::build_photographer_fsm(Abandonment::Transitions);
  for (const char* name : {"solo", "trio", "hazard_photos"}) {
    for (const auto& trace : {run(tree, testutil::scenario(name)), run(machine, testutil::scenario(name))}) {
      const std::string text = format_trace(trace);
      const auto back = parse_trace(text);
      ASSERT_EQ(back.size(), trace.size());
      EXPECT_EQ(format_trace(back), text);
      EXPECT_EQ(back[3].emissions, trace[3].emissions);
    }
  }
}

TEST(TraceFormat, RejectsMalformedLines)
{
  EXPECT_THROW(parse_trace("tick=x ctl=bt status=s emit=[] persons=0 hazard=0 net=1\n"), ValidationError);
  EXPECT_THROW(parse_trace("tick=1 ctl=xx status=s emit=[] persons=0 hazard=0 net=1\n"), ValidationError);
  EXPECT_THROW(parse_trace("tick=1 ctl=bt status=s emit=[idle] persons=0 hazard=0 net=1\n"), ValidationError);
  EXPECT_THROW(parse_trace("tick=1 ctl=bt status=s emit=[] persons=0 hazard=2 net=1\n"), ValidationError);
  EXPECT_THROW(parse_trace("tick=1 ctl=bt status=s emit=[] persons=0\n"), ValidationError);
  EXPECT_TRUE(parse_trace("").empty());
}

TEST(Photos, FsmConservesPhotosUnderHazard)
{
  for (Tick a = 0; a <= 12; ++a) {
    for (Tick k = 1; k <= 5; ++k) {
      auto machine = interaction::build_photographer_fsm(Abandonment::Transitions);
      const auto trace = run(machine, testutil::solo_with(40, -1, a, k));
      std::vector<std::string> photos;
      for (const auto& rec : trace) {
        for (const auto& e : rec.emissions) {
          if (e.action != "take_photo") continue;
          photos.push_back(e.payload);
          EXPECT_FALSE(rec.hazard) << "a=" << a << " k=" << k;
        }
      }
      EXPECT_EQ(photos, (std::vector<std::string>{"1", "2", "3"})) << "a=" << a << " k=" << k;
    }
  }
}

// CLI.

int shell(const std::string& args)
{
  const int rc = std::system((std::string(SHUTTER_SIM_BIN) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = std::filesystem::temp_directory_path() /
           ("shutter_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string out(const std::string& name) const { return (dir_ / name).string(); }
  static std::string scn(const std::string& name) { return testutil::data_path("scenarios/" + name + ".scn"); }

  std::filesystem::path dir_;
};

TEST_F(Cli, RunWritesTrace)
{
  EXPECT_EQ(shell("run --controller bt --scenario " + scn("solo") + " --out " + out("bt.txt")), 0);
  auto tree = interaction::build_photographer_bt();
  EXPECT_EQ(testutil::read_file(out("bt.txt")), format_trace(run(tree, testutil::scenario("solo"))));
}

TEST_F(Cli, RunBothWritesBothControllers)
{
  EXPECT_EQ(shell("run --controller both --scenario " + scn("pair") + " --out " + out("both.txt")), 0);
  const auto trace = parse_trace(testutil::read_file(out("both.txt")));
  ASSERT_EQ(trace.size(), 48u);
  EXPECT_EQ(trace.front().controller, ControllerKind::Bt);
  EXPECT_EQ(trace.back().controller, ControllerKind::Fsm);
}

TEST_F(Cli, CompareExitCodes)
{
  ASSERT_EQ(shell("run --controller bt --scenario " + scn("trio") + " --out " + out("a.txt")), 0);
  ASSERT_EQ(shell("run --controller fsm --scenario " + scn("trio") + " --out " + out("b.txt")), 0);
  ASSERT_EQ(shell("run --controller fsm --scenario " + scn("abandon") + " --out " + out("c.txt")), 0);
  EXPECT_EQ(shell("compare --a " + out("a.txt") + " --b " + out("b.txt")), 0);
  EXPECT_EQ(shell("compare --a " + out("a.txt") + " --b " + out("c.txt")), 1);
  EXPECT_EQ(shell("compare --a " + out("a.txt") + " --b " + out("missing.txt")), 2);
}

TEST_F(Cli, ValidationErrorsExitTwo)
{
  const std::string malformed = testutil::data_path("malformed/l2_bad_button.scn");
  EXPECT_EQ(shell("run --controller bt --scenario " + malformed), 2);
  EXPECT_EQ(shell("check --scenario " + malformed), 2);
  EXPECT_EQ(shell("check --scenario " + scn("solo") + " --tree " +
                  testutil::data_path("malformed/l4_guard_two_children.bt")), 2);
  EXPECT_EQ(shell("run --controller fsm --fsm-mode sometimes --scenario " + scn("solo")), 2);
  EXPECT_EQ(shell("run --scenario"), 2);
  EXPECT_EQ(shell(""), 2);
}

TEST_F(Cli, CheckAndReport)
{
  EXPECT_EQ(shell("check --scenario " + scn("solo") + " --tree " +
                  testutil::data_path("trees/photographer.bt")), 0);
  EXPECT_EQ(shell("report"), 0);
}

TEST_F(Cli, TreeFileMatchesBuiltIn)
{
  ASSERT_EQ(shell("run --scenario " + scn("hazard_photos") + " --out " + out("a.txt")), 0);
  ASSERT_EQ(shell("run --scenario " + scn("hazard_photos") + " --tree " +
                  testutil::data_path("trees/photographer.bt") + " --out " + out("b.txt")), 0);
  EXPECT_EQ(testutil::read_file(out("a.txt")), testutil::read_file(out("b.txt")));
}

TEST_F(Cli, UnknownTreeNamesExitTwo)
{
  {
    std::ofstream f(out("t.bt"));
    f << "sequence s { action moonwalk }\n";
  }
  EXPECT_EQ(shell("run --scenario " + scn("solo") + " --tree " + out("t.bt")), 2);
}

}  // namespace
}  // namespace shutter::sim
