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

#include "shutter/bt.hpp"

#include <set>

#include "shutter/errors.hpp"

namespace shutter::bt {

std::string_view to_string(NodeStatus s)
{
  switch (s) {
    case NodeStatus::Success: return "success";
    case NodeStatus::Running: return "running";
    case NodeStatus::Failure: return "failure";
  }
  return "?";
}

std::string_view to_string(NodeKind k)
{
  switch (k) {
    case NodeKind::Sequence: return "sequence";
    case NodeKind::Fallback: return "fallback";
    case NodeKind::Parallel: return "parallel";
    case NodeKind::Guard: return "guard";
    case NodeKind::Condition: return "condition";
    case NodeKind::Action: return "action";
  }
  return "?";
}

TreeNode sequence(std::string name, std::vector<TreeNode> children, bool memory)
{
  TreeNode n;
  n.kind = NodeKind::Sequence;
  n.name = std::move(name);
  n.children = std::move(children);
  n.memory = memory;
  return n;
}

TreeNode fallback(std::string name, std::vector<TreeNode> children, bool memory)
{
  TreeNode n = sequence(std::move(name), std::move(children), memory);
  n.kind = NodeKind::Fallback;
  return n;
}

TreeNode parallel(std::string name, std::vector<TreeNode> children)
{
  TreeNode n = sequence(std::move(name), std::move(children), false);
  n.kind = NodeKind::Parallel;
  return n;
}

TreeNode guard(std::string condition, std::string name, TreeNode child)
{
  TreeNode n;
  n.kind = NodeKind::Guard;
  n.condition = std::move(condition);
  n.name = std::move(name);
  n.children.push_back(std::move(child));
  return n;
}

TreeNode condition(std::string name)
{
  TreeNode n;
  n.kind = NodeKind::Condition;
  n.condition = std::move(name);
  return n;
}

TreeNode action(std::string behavior, std::optional<int> duration)
{
  TreeNode n;
  n.kind = NodeKind::Action;
  n.behavior = std::move(behavior);
  n.duration = duration;
  return n;
}

namespace {

void assign_ids_from(TreeNode& node, int& next)
{
  node.id = next++;
  for (auto& c : node.children) assign_ids_from(c, next);
}

std::string describe(const TreeNode& n)
{
  std::string out(to_string(n.kind));
  if (!n.name.empty()) out += " '" + n.name + "'";
  if (n.kind == NodeKind::Condition) out += " '" + n.condition + "'";
  if (n.kind == NodeKind::Action) out += " '" + n.behavior + "'";
  return out;
}

void validate_node(const TreeNode& n, std::set<int>& ids)
{
  if (!ids.insert(n.id).second) {
    throw ConfigError("duplicate node id " + std::to_string(n.id));
  }
  switch (n.kind) {
    case NodeKind::Sequence:
    case NodeKind::Fallback:
    case NodeKind::Parallel:
      if (n.children.empty()) {
        throw ConfigError(describe(n) + " requires at least one child");
      }
      if (n.memory && n.kind == NodeKind::Parallel) {
        throw ConfigError(describe(n) + " cannot have memory");
      }
      break;
    case NodeKind::Guard:
      if (n.children.size() != 1) {
        throw ConfigError(describe(n) + " requires exactly one child");
      }
      if (n.condition.empty()) {
        throw ConfigError(describe(n) + " has no condition");
      }
      break;
    case NodeKind::Condition:
    case NodeKind::Action:
      if (!n.children.empty()) {
        throw ConfigError(describe(n) + " cannot have children");
      }
      if (n.kind == NodeKind::Condition && n.condition.empty()) {
        throw ConfigError("condition without a name");
      }
      if (n.kind == NodeKind::Action && n.behavior.empty()) {
        throw ConfigError("action without a behavior name");
      }
      if (n.duration && *n.duration < 1) {
        throw ConfigError(describe(n) + " needs duration >= 1");
      }
      break;
  }
  if (n.memory && n.kind != NodeKind::Sequence && n.kind != NodeKind::Fallback) {
    throw ConfigError(describe(n) + " cannot have memory");
  }
  for (const auto& c : n.children) validate_node(c, ids);
}

void collect_unresolved(
  const TreeNode& n, const Catalogue& cat, std::vector<std::string>& out)
{
  auto add = [&out](std::string s) {
    for (const auto& existing : out) {
      if (existing == s) return;
    }
    out.push_back(std::move(s));
  };
  if ((n.kind == NodeKind::Condition || n.kind == NodeKind::Guard) &&
      cat.find_condition(n.condition) == nullptr)
  {
    add("condition '" + n.condition + "'");
  }
  if (n.kind == NodeKind::Action && cat.find_behavior(n.behavior) == nullptr) {
    add("behavior '" + n.behavior + "'");
  }
  for (const auto& c : n.children) collect_unresolved(c, cat, out);
}

void bind_node(TreeNode& n, const Catalogue& cat)
{
  if (n.kind == NodeKind::Condition || n.kind == NodeKind::Guard) {
    n.bound_condition = cat.find_condition(n.condition);
  }
  if (n.kind == NodeKind::Action) {
    n.bound_behavior = cat.find_behavior(n.behavior);
  }
  for (auto& c : n.children) bind_node(c, cat);
}

// Switch rule: a child that was running last tick and is not running now
// gets its subtree cleared.
void settle_running_child(TreeNode& node, std::optional<std::size_t> now_running)
{
  if (node.running_child && node.running_child != now_running) {
    reset(node.children[*node.running_child]);
  }
  node.running_child = now_running;
}

// Sequence and Fallback differ only in which status short-circuits.
NodeStatus tick_ordered(TreeNode& node, InteractionContext& ctx, NodeStatus stop_on)
{
  const NodeStatus completes =
    stop_on == NodeStatus::Failure ? NodeStatus::Success : NodeStatus::Failure;
  const std::size_t start = node.memory ? node.resume_index : 0;
  for (std::size_t i = start; i < node.children.size(); ++i) {
    const NodeStatus s = tick(node.children[i], ctx);
    if (s == NodeStatus::Running) {
      if (node.memory) node.resume_index = i;
      settle_running_child(node, i);
      return NodeStatus::Running;
    }
    if (s == stop_on) {
      node.resume_index = 0;
      settle_running_child(node, std::nullopt);
      return stop_on;
    }
  }
  node.resume_index = 0;
  settle_running_child(node, std::nullopt);
  return completes;
}

NodeStatus tick_parallel(TreeNode& node, InteractionContext& ctx)
{
  bool any_failure = false;
  bool all_success = true;
  std::optional<std::size_t> first_running;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const NodeStatus s = tick(node.children[i], ctx);
    if (s == NodeStatus::Failure) any_failure = true;
    if (s != NodeStatus::Success) all_success = false;
    if (s == NodeStatus::Running && !first_running) first_running = i;
  }
  if (any_failure || all_success) {
    for (auto& c : node.children) reset(c);
    node.running_child.reset();
    return any_failure ? NodeStatus::Failure : NodeStatus::Success;
  }
  node.running_child = first_running;
  return NodeStatus::Running;
}

NodeStatus tick_guard(TreeNode& node, InteractionContext& ctx)
{
  if (!(*node.bound_condition)(ctx)) {
    emit_now(ctx, action::kHaltMotionHold);
    return NodeStatus::Running;
  }
  return tick(node.children.front(), ctx);
}

NodeStatus tick_action(TreeNode& node, InteractionContext& ctx)
{
  const Behavior& b = *node.bound_behavior;
  const int duration = node.duration.value_or(b.duration);
  const StepResult r = b.step(ctx, node.elapsed_ticks);
  ++node.elapsed_ticks;
  switch (r) {
    case StepResult::Succeed:
      node.elapsed_ticks = 0;
      return NodeStatus::Success;
    case StepResult::Fail:
      node.elapsed_ticks = 0;
      return NodeStatus::Failure;
    case StepResult::Continue:
      break;
  }
  if (!b.open_ended && node.elapsed_ticks >= duration) {
    node.elapsed_ticks = 0;
    return NodeStatus::Success;
  }
  return NodeStatus::Running;
}

}  // namespace

void assign_ids(TreeNode& root)
{
  int next = 1;
  assign_ids_from(root, next);
}

void validate_structure(const TreeNode& root)
{
  std::set<int> ids;
  validate_node(root, ids);
}

std::vector<std::string> unresolved_names(const TreeNode& root, const Catalogue& catalogue)
{
  std::vector<std::string> out;
  collect_unresolved(root, catalogue, out);
  return out;
}

void bind(TreeNode& root, const Catalogue& catalogue)
{
  const auto missing = unresolved_names(root, catalogue);
  if (!missing.empty()) {
    std::string msg = "unresolved names:";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }
  bind_node(root, catalogue);
}

NodeStatus tick(TreeNode& node, InteractionContext& ctx)
{
  ++node.times_ticked;
  switch (node.kind) {
    case NodeKind::Sequence:
      return tick_ordered(node, ctx, NodeStatus::Failure);
    case NodeKind::Fallback:
      return tick_ordered(node, ctx, NodeStatus::Success);
    case NodeKind::Parallel:
      return tick_parallel(node, ctx);
    case NodeKind::Guard:
      if (node.bound_condition == nullptr) {
        throw ConfigError("guard '" + node.name + "' is not bound");
      }
      return tick_guard(node, ctx);
    case NodeKind::Condition:
      if (node.bound_condition == nullptr) {
        throw ConfigError("condition '" + node.condition + "' is not bound");
      }
      return (*node.bound_condition)(ctx) ? NodeStatus::Success : NodeStatus::Failure;
    case NodeKind::Action:
      if (node.bound_behavior == nullptr) {
        throw ConfigError("action '" + node.behavior + "' is not bound");
      }
      return tick_action(node, ctx);
  }
  return NodeStatus::Failure;
}

void reset(TreeNode& node)
{
  node.resume_index = 0;
  node.elapsed_ticks = 0;
  node.running_child.reset();
  for (auto& c : node.children) reset(c);
}

bool is_pristine(const TreeNode& node)
{
  if (node.resume_index != 0 || node.elapsed_ticks != 0 || node.running_child) {
    return false;
  }
  for (const auto& c : node.children) {
    if (!is_pristine(c)) return false;
  }
  return true;
}

bool same_structure(const TreeNode& a, const TreeNode& b)
{
  if (a.kind != b.kind || a.name != b.name || a.memory != b.memory ||
      a.condition != b.condition || a.behavior != b.behavior ||
      a.duration != b.duration || a.children.size() != b.children.size())
  {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_structure(a.children[i], b.children[i])) return false;
  }
  return true;
}

NodeCounts count_nodes(const TreeNode& root)
{
  NodeCounts c;
  c.total = 1;
  if (root.kind == NodeKind::Condition || root.kind == NodeKind::Action) {
    c.leaves = 1;
  } else {
    c.control = 1;
  }
  for (const auto& child : root.children) {
    const NodeCounts sub = count_nodes(child);
    c.total += sub.total;
    c.control += sub.control;
    c.leaves += sub.leaves;
  }
  return c;
}

TreeNode* find_by_name(TreeNode& root, std::string_view name)
{
  if (!root.name.empty() && root.name == name) return &root;
  for (auto& c : root.children) {
    if (auto* hit = find_by_name(c, name)) return hit;
  }
  return nullptr;
}

const TreeNode* find_by_name(const TreeNode& root, std::string_view name)
{
  return find_by_name(const_cast<TreeNode&>(root), name);
}

BehaviorTree::BehaviorTree(TreeNode root, std::shared_ptr<const Catalogue> catalogue)
: root_(std::move(root)), catalogue_(std::move(catalogue))
{
  if (!catalogue_) {
    throw ConfigError("behavior tree needs a catalogue");
  }
  if (root_.id == 0) assign_ids(root_);
  validate_structure(root_);
  bind(root_, *catalogue_);
}

}  // namespace shutter::bt
