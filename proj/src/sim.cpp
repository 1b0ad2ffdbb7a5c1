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

#include "shutter/sim.hpp"

#include <algorithm>
#include <charconv>

#include "shutter/errors.hpp"

namespace shutter::sim {

std::string_view to_string(ControllerKind k)
{
  return k == ControllerKind::Bt ? "bt" : "fsm";
}

namespace {

template <typename StepFn>
Trace run_loop(const dsl::ScenarioScript& scenario, ControllerKind kind, StepFn&& step)
{
  dsl::ScenarioScript script = scenario;
  dsl::validate_scenario(script);

  Trace trace;
  trace.reserve(static_cast<std::size_t>(script.duration));
  InteractionContext ctx;
  std::size_t next_event = 0;
  for (Tick t = 0; t < script.duration; ++t) {
    std::size_t first = next_event;
    while (next_event < script.events.size() && script.events[next_event].at_tick == t) {
      ++next_event;
    }
    apply_events(ctx, std::span(script.events).subspan(first, next_event - first));

    TickRecord rec;
    rec.tick = t;
    rec.controller = kind;
    rec.status = step(ctx);
    rec.persons = ctx.persons.size();
    rec.hazard = ctx.hazard_hand_near_arm;
    rec.network = ctx.network_ok;
    rec.emissions = end_tick(ctx);
    trace.push_back(std::move(rec));
  }
  return trace;
}

std::string format_emission(const ActionEmission& e)
{
  return e.action + "(" + e.payload + ")";
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& why)
{
  throw ValidationError("trace line " + std::to_string(line_no) + ": " + why);
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no, const char* field)
{
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    bad_line(line_no, std::string("bad ") + field + " '" + std::string(s) + "'");
  }
  return value;
}

bool parse_flag(std::string_view s, std::size_t line_no, const char* field)
{
  if (s == "0") return false;
  if (s == "1") return true;
  bad_line(line_no, std::string("bad ") + field + " '" + std::string(s) + "'");
}

// Consumes `prefix` then returns the text up to (not including) `stop`.
std::string_view field(std::string_view& rest, std::string_view prefix, std::string_view stop,
                       std::size_t line_no)
{
  if (rest.substr(0, prefix.size()) != prefix) {
    bad_line(line_no, "expected '" + std::string(prefix) + "'");
  }
  rest.remove_prefix(prefix.size());
  const std::size_t end = stop.empty() ? rest.size() : rest.find(stop);
  if (end == std::string_view::npos) {
    bad_line(line_no, "expected '" + std::string(stop) + "'");
  }
  std::string_view value = rest.substr(0, end);
  rest.remove_prefix(end);
  return value;
}

TickRecord parse_record(std::string_view line, std::size_t line_no)
{
  TickRecord rec;
  std::string_view rest = line;
  rec.tick = parse_number<Tick>(field(rest, "tick=", " ", line_no), line_no, "tick");
  const auto ctl = field(rest, " ctl=", " ", line_no);
  if (ctl == "bt") {
    rec.controller = ControllerKind::Bt;
  } else if (ctl == "fsm") {
    rec.controller = ControllerKind::Fsm;
  } else {
    bad_line(line_no, "bad ctl '" + std::string(ctl) + "'");
  }
  rec.status = std::string(field(rest, " status=", " ", line_no));

  if (rest.substr(0, 7) != " emit=[") bad_line(line_no, "expected ' emit=['");
  rest.remove_prefix(7);
  const std::size_t close = rest.rfind("] persons=");
  if (close == std::string_view::npos) bad_line(line_no, "expected '] persons='");
  std::string_view emits = rest.substr(0, close);
  rest.remove_prefix(close + 1);

  while (!emits.empty()) {
    const std::size_t sep = emits.find(';');
    std::string_view item = emits.substr(0, sep);
    const std::size_t open = item.find('(');
    if (open == std::string_view::npos || item.empty() || item.back() != ')') {
      bad_line(line_no, "bad emission '" + std::string(item) + "'");
    }
    rec.emissions.push_back(ActionEmission{
      rec.tick, std::string(item.substr(0, open)),
      std::string(item.substr(open + 1, item.size() - open - 2))});
    if (sep == std::string_view::npos) break;
    emits.remove_prefix(sep + 1);
  }

  rec.persons = parse_number<std::size_t>(field(rest, " persons=", " ", line_no), line_no, "persons");
  rec.hazard = parse_flag(field(rest, " hazard=", " ", line_no), line_no, "hazard");
  rec.network = parse_flag(field(rest, " net=", "", line_no), line_no, "net");
  return rec;
}

}  // namespace

Trace run(bt::BehaviorTree& tree, const dsl::ScenarioScript& scenario)
{
  tree.reset();
  return run_loop(scenario, ControllerKind::Bt, [&tree](InteractionContext& ctx) {
    return std::string(bt::to_string(tree.tick(ctx)));
  });
}

Trace run(fsm::StateMachine& machine, const dsl::ScenarioScript& scenario)
{
  machine.reset();
  return run_loop(scenario, ControllerKind::Fsm, [&machine](InteractionContext& ctx) {
    machine.step(ctx);
    return machine.current();
  });
}

std::vector<ActionEmission> observable_emissions(const Trace& trace)
{
  std::vector<ActionEmission> out;
  for (const auto& rec : trace) {
    for (const auto& e : rec.emissions) {
      if (!action::is_padding(e.action)) out.push_back(e);
    }
  }
  return out;
}

DivergenceReport compare(const Trace& a, const Trace& b)
{
  const auto ea = observable_emissions(a);
  const auto eb = observable_emissions(b);
  const std::size_t n = std::max(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const bool has_a = i < ea.size();
    const bool has_b = i < eb.size();
    if (has_a && has_b && ea[i].action == eb[i].action && ea[i].payload == eb[i].payload) {
      continue;
    }
    Divergence d;
    d.position = i;
    if (has_a) d.a = ea[i];
    if (has_b) d.b = eb[i];
    return DivergenceReport{false, d};
  }
  return DivergenceReport{true, std::nullopt};
}

std::string format_report(const DivergenceReport& report)
{
  if (report.equivalent) return "equivalent\n";
  const Divergence& d = *report.first_divergence;
  auto show = [](const std::optional<ActionEmission>& e) {
    return e ? format_emission(*e) + " @" + std::to_string(e->tick) : std::string("<end>");
  };
  return "diverged at " + std::to_string(d.position) + ": a=" + show(d.a) + " b=" + show(d.b) + "\n";
}

std::string format_record(const TickRecord& r)
{
  std::string out = "tick=" + std::to_string(r.tick) + " ctl=" + std::string(to_string(r.controller)) +
                    " status=" + r.status + " emit=[";
  for (std::size_t i = 0; i < r.emissions.size(); ++i) {
    if (i != 0) out += ";";
    out += format_emission(r.emissions[i]);
  }
  out += "] persons=" + std::to_string(r.persons) + " hazard=" + (r.hazard ? "1" : "0") +
         " net=" + (r.network ? "1" : "0");
  return out;
}

std::string format_trace(const Trace& trace)
{
  std::string out;
  for (const auto& r : trace) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

Trace parse_trace(std::string_view text)
{
  Trace out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;
    out.push_back(parse_record(line, line_no));
  }
  return out;
}

}  // namespace shutter::sim
