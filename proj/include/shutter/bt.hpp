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

#ifndef SHUTTER__BT_HPP
#define SHUTTER__BT_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shutter/catalogue.hpp"
#include "shutter/world_model.hpp"

namespace shutter::bt {

enum class NodeStatus { Success, Running, Failure };

std::string_view to_string(NodeStatus s);

enum class NodeKind { Sequence, Fallback, Parallel, Guard, Condition, Action };

std::string_view to_string(NodeKind k);

/**
 * One node of a behavior tree.
 *
 * Structure (kind, labels, children) is plain data and can be built by hand,
 * by the interaction builders or by the tree parser. Before ticking, a tree
 * must be bound to a catalogue so leaves and guards resolve their names.
 *
 * Runtime fields are owned by the engine:
 *  - `resume_index`: first child ticked next time (memory composites).
 *  - `elapsed_ticks`: advances performed so far (actions).
 *  - `running_child`: child that returned Running on the last tick.
 */
struct TreeNode
{
  int id = 0;
  NodeKind kind = NodeKind::Condition;
  std::string name;       // composite / guard label
  bool memory = false;    // Sequence / Fallback only
  std::string condition;  // Condition, Guard
  std::string behavior;   // Action
  std::optional<int> duration;  // Action override of the catalogue duration
  std::vector<TreeNode> children;

  std::size_t resume_index = 0;
  int elapsed_ticks = 0;
  std::optional<std::size_t> running_child;

  // Diagnostic counter; survives reset().
  std::uint64_t times_ticked = 0;

  const ConditionFn* bound_condition = nullptr;
  const Behavior* bound_behavior = nullptr;

  bool is_composite() const noexcept
  {
    return kind == NodeKind::Sequence || kind == NodeKind::Fallback ||
           kind == NodeKind::Parallel;
  }
};

// Construction helpers.
TreeNode sequence(std::string name, std::vector<TreeNode> children, bool memory = false);
TreeNode fallback(std::string name, std::vector<TreeNode> children, bool memory = false);
TreeNode parallel(std::string name, std::vector<TreeNode> children);
TreeNode guard(std::string condition, std::string name, TreeNode child);
TreeNode condition(std::string name);
TreeNode action(std::string behavior, std::optional<int> duration = std::nullopt);

/// Numbers nodes in pre-order starting at 1.
void assign_ids(TreeNode& root);

/// Checks arity, memory flags, durations and id uniqueness. Throws
/// ConfigError describing the first violation.
void validate_structure(const TreeNode& root);

/// Resolves every condition and behavior name. Throws ConfigError listing all
/// unresolved names when any are missing.
void bind(TreeNode& root, const Catalogue& catalogue);

/// Names referenced by the tree that the catalogue does not provide.
std::vector<std::string> unresolved_names(const TreeNode& root, const Catalogue& catalogue);

/// One depth-first traversal. The tree must be bound.
NodeStatus tick(TreeNode& node, InteractionContext& ctx);

/// Clears runtime state in the whole subtree.
void reset(TreeNode& node);

/// True when no runtime state is set anywhere in the subtree.
bool is_pristine(const TreeNode& node);

/// Structural equality ignoring ids, bindings and runtime state.
bool same_structure(const TreeNode& a, const TreeNode& b);

struct NodeCounts
{
  int total = 0;
  int control = 0;  // composites and guards
  int leaves = 0;
};

NodeCounts count_nodes(const TreeNode& root);

/// Finds the first node (pre-order) with the given composite/guard label.
TreeNode* find_by_name(TreeNode& root, std::string_view name);
const TreeNode* find_by_name(const TreeNode& root, std::string_view name);

/// A validated, bound tree that keeps its catalogue alive.
class BehaviorTree
{
public:
  BehaviorTree(TreeNode root, std::shared_ptr<const Catalogue> catalogue);

  NodeStatus tick(InteractionContext& ctx) { return bt::tick(root_, ctx); }
  void reset() { bt::reset(root_); }

  TreeNode& root() noexcept { return root_; }
  const TreeNode& root() const noexcept { return root_; }
  const Catalogue& catalogue() const noexcept { return *catalogue_; }

private:
  TreeNode root_;
  std::shared_ptr<const Catalogue> catalogue_;
};

}  // namespace shutter::bt

#endif  // SHUTTER__BT_HPP
