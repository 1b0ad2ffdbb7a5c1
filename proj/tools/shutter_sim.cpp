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

// shutter-sim: run, compare and inspect photographer controllers.
//
//   shutter-sim run --controller bt|fsm|both --scenario FILE [--tree FILE]
//                   [--fsm-mode none|transitions|timeouts] [--out FILE]
//   shutter-sim compare --a FILE --b FILE
//   shutter-sim check --scenario FILE [--tree FILE]
//   shutter-sim report

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shutter/dsl.hpp"
#include "shutter/errors.hpp"
#include "shutter/interaction.hpp"
#include "shutter/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDiverged = 1;
constexpr int kExitInvalid = 2;

std::string read_file(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw shutter::ValidationError("cannot read '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text)
{
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw shutter::ValidationError("cannot write '" + path + "'");
  }
  out << text;
}

shutter::bt::BehaviorTree load_tree(const std::string& tree_path)
{
  if (tree_path.empty()) {
    return shutter::interaction::build_photographer_bt();
  }
  return shutter::bt::BehaviorTree(
    shutter::dsl::parse_tree(read_file(tree_path)), shutter::interaction::make_catalogue());
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Deterministic simulator for the robot photographer controllers"};
  app.require_subcommand(1);

  std::string controller = "bt";
  std::string scenario_path;
  std::string tree_path;
  std::string fsm_mode = "transitions";
  std::string out_path;
  auto* run = app.add_subcommand("run", "Run a scenario and write the trace");
  run->add_option("--controller", controller, "bt, fsm or both")
    ->check(CLI::IsMember({"bt", "fsm", "both"}));
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  run->add_option("--tree", tree_path, "Tree file replacing the built-in photographer tree");
  run->add_option("--fsm-mode", fsm_mode, "Abandonment handling of the state machine")
    ->check(CLI::IsMember({"none", "transitions", "timeouts"}));
  run->add_option("--out", out_path, "Trace output file (stdout if omitted)");

  std::string trace_a;
  std::string trace_b;
  auto* compare = app.add_subcommand("compare", "Compare two trace files");
  compare->add_option("--a", trace_a, "First trace")->required();
  compare->add_option("--b", trace_b, "Second trace")->required();

  auto* check = app.add_subcommand("check", "Parse and validate inputs only");
  check->add_option("--scenario", scenario_path, "Scenario file")->required();
  check->add_option("--tree", tree_path, "Tree file");

  auto* report = app.add_subcommand("report", "Print the structural cost table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  namespace sim = shutter::sim;
  namespace interaction = shutter::interaction;
  try {
    if (*run) {
      const auto scenario = shutter::dsl::parse_scenario(read_file(scenario_path));
      std::string text;
      sim::Trace bt_trace;
      sim::Trace fsm_trace;
      if (controller == "bt" || controller == "both") {
        auto tree = load_tree(tree_path);
        bt_trace = sim::run(tree, scenario);
        text += sim::format_trace(bt_trace);
      }
      if (controller == "fsm" || controller == "both") {
        auto machine = interaction::build_photographer_fsm(*interaction::parse_abandonment(fsm_mode));
        fsm_trace = sim::run(machine, scenario);
        text += sim::format_trace(fsm_trace);
      }
      write_output(out_path, text);
      if (controller == "both") {
        std::cerr << "bt vs fsm: " << sim::format_report(sim::compare(bt_trace, fsm_trace));
      }
      return kExitOk;
    }
    if (*compare) {
      const auto a = sim::parse_trace(read_file(trace_a));
      const auto b = sim::parse_trace(read_file(trace_b));
      const auto result = sim::compare(a, b);
      std::cout << sim::format_report(result);
      return result.equivalent ? kExitOk : kExitDiverged;
    }
    if (*check) {
      const auto scenario = shutter::dsl::parse_scenario(read_file(scenario_path));
      if (!tree_path.empty()) load_tree(tree_path);
      std::cout << "ok: scenario '" << scenario.name << "' (" << scenario.duration << " ticks, "
                << scenario.events.size() << " events)";
      if (!tree_path.empty()) std::cout << ", tree valid";
      std::cout << "\n";
      return kExitOk;
    }
    if (*report) {
      std::cout << interaction::format_report(interaction::structural_economy_report());
      return kExitOk;
    }
  } catch (const shutter::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
