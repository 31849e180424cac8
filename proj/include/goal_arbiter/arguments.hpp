#ifndef GOAL_ARBITER_ARGUMENTS_HPP
#define GOAL_ARBITER_ARGUMENTS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "goal_arbiter/errors.hpp"
#include "goal_arbiter/kb.hpp"
#include "goal_arbiter/literal.hpp"

namespace goal_arbiter {

// A partial plan [support, conclusion]: the conclusion is either a literal
// (belief, action or goal) or a resource demand; the support is the premise
// of the rule that produced a goal conclusion, and empty for leaves.
struct PartialPlan {
  std::variant<Literal, ResourceAtom> conclusion;
  SymbolKind conclusion_kind = SymbolKind::Belief;  // meaningful for literals
  std::vector<PremiseElement> support;              // canonical (sorted) order

  bool is_resource() const { return std::holds_alternative<ResourceAtom>(conclusion); }
  bool is_goal() const { return !is_resource() && conclusion_kind == SymbolKind::Goal; }
  bool elementary() const { return support.empty() && !is_goal(); }

  const Literal& literal() const { return std::get<Literal>(conclusion); }
  const ResourceAtom& resource() const { return std::get<ResourceAtom>(conclusion); }

  std::string conclusion_text() const {
    return is_resource() ? resource().text() : literal().text();
  }

  std::string text() const {
    std::string out = "[{";
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (i) out += ",";
      out += premise_element_text(support[i]);
    }
    out += "}," + conclusion_text() + "]";
    return out;
  }

  bool operator==(const PartialPlan& other) const { return text() == other.text(); }
  bool operator<(const PartialPlan& other) const { return text() < other.text(); }
};

// One node of an instrumental-argument tree.
struct ArgNode {
  PartialPlan plan;
  std::vector<ArgNode> children;  // sorted by canonical subtree text

  // Canonical serialization; equal trees produce equal text.
  std::string canonical_text() const {
    std::string out = plan.conclusion_text();
    if (!children.empty()) {
      out += "<-(";
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i) out += ",";
        out += children[i].canonical_text();
      }
      out += ")";
    }
    return out;
  }
};

// A node-tagged resource occurrence: the tag identifies the partial plan
// whose support carries the demand, so equal demands in different plans stay
// distinct while shared subtrees collapse to a single occurrence.
struct ResourceOccurrence {
  std::uint64_t node_tag = 0;
  ResourceAtom atom;

  bool operator==(const ResourceOccurrence& other) const {
    return node_tag == other.node_tag && atom == other.atom;
  }
  bool operator<(const ResourceOccurrence& other) const {
    if (node_tag != other.node_tag) return node_tag < other.node_tag;
    return atom < other.atom;
  }
};

// An instrumental argument: a finite tree of partial plans whose root
// concludes a goal.
struct Argument {
  std::string id;  // content hash of the canonical tree serialization
  ArgNode root;
  Literal claim;
  std::vector<std::string> sub_ids;       // proper goal-rooted subtrees, sorted
  std::vector<PartialPlan> support_set;   // SUPPORT: all partial plans, sorted, unique
  std::vector<ResourceOccurrence> rec;    // REC: node-tagged demands, sorted, unique

  bool has_sub(const std::string& other_id) const {
    return std::binary_search(sub_ids.begin(), sub_ids.end(), other_id);
  }
};

// All instrumental arguments of a knowledge base, content-addressed and
// closed under goal-rooted subtrees.
struct ArgumentStore {
  std::vector<Argument> args;  // sorted by (claim text, id)
  std::map<std::string, std::size_t> index_by_id;
  std::map<std::string, std::vector<std::size_t>> by_claim;
  std::uint64_t kb_fingerprint = 0;

  const Argument& at(const std::string& id) const {
    auto it = index_by_id.find(id);
    if (it == index_by_id.end())
      throw Error(ErrorKind::UnknownGoal, "no argument with id '" + id + "'");
    return args[it->second];
  }

  std::vector<std::string> arg_for(const Literal& goal) const {
    std::vector<std::string> out;
    auto it = by_claim.find(goal.text());
    if (it == by_claim.end()) return out;
    for (std::size_t idx : it->second) out.push_back(args[idx].id);
    return out;
  }

  void rebuild_indexes() {
    std::sort(args.begin(), args.end(), [](const Argument& a, const Argument& b) {
      if (a.claim.text() != b.claim.text()) return a.claim.text() < b.claim.text();
      return a.id < b.id;
    });
    index_by_id.clear();
    by_claim.clear();
    for (std::size_t i = 0; i < args.size(); ++i) {
      index_by_id[args[i].id] = i;
      by_claim[args[i].claim.text()].push_back(i);
    }
  }
};

namespace detail {

inline void collect_plans(const ArgNode& node, std::vector<PartialPlan>& out) {
  out.push_back(node.plan);
  for (const auto& child : node.children) collect_plans(child, out);
}

inline void collect_goal_subtrees(const ArgNode& node, std::vector<const ArgNode*>& out) {
  for (const auto& child : node.children) {
    if (child.plan.is_goal()) out.push_back(&child);
    collect_goal_subtrees(child, out);
  }
}

inline Argument make_argument(const ArgNode& root) {
  Argument arg;
  arg.root = root;
  arg.claim = root.plan.literal();
  arg.id = hash_hex(fnv1a64(root.canonical_text()));

  std::vector<const ArgNode*> subtrees;
  collect_goal_subtrees(root, subtrees);
  for (const ArgNode* node : subtrees)
    arg.sub_ids.push_back(hash_hex(fnv1a64(node->canonical_text())));
  std::sort(arg.sub_ids.begin(), arg.sub_ids.end());
  arg.sub_ids.erase(std::unique(arg.sub_ids.begin(), arg.sub_ids.end()), arg.sub_ids.end());

  collect_plans(root, arg.support_set);
  std::sort(arg.support_set.begin(), arg.support_set.end());
  arg.support_set.erase(std::unique(arg.support_set.begin(), arg.support_set.end()),
                        arg.support_set.end());

  for (const auto& plan : arg.support_set) {
    std::uint64_t tag = fnv1a64(plan.text());
    for (const auto& elem : plan.support)
      if (std::holds_alternative<ResourceAtom>(elem))
        arg.rec.push_back({tag, std::get<ResourceAtom>(elem)});
  }
  std::sort(arg.rec.begin(), arg.rec.end());
  arg.rec.erase(std::unique(arg.rec.begin(), arg.rec.end()), arg.rec.end());
  return arg;
}

}  // namespace detail

// SUPPORT(A): every partial plan of the tree, as a set.
inline const std::vector<PartialPlan>& support(const Argument& arg) {
  return arg.support_set;
}

// CLAIM(A): the goal concluded by the root.
inline const Literal& claim(const Argument& arg) { return arg.claim; }

// REC(A): node-tagged resource demands of the tree.
inline const std::vector<ResourceOccurrence>& rec(const Argument& arg) { return arg.rec; }

// Enumerates every instrumental argument of the knowledge base, for every
// goal that has at least one rule.  The store is closed under goal-rooted
// subtrees and deterministic: equal inputs yield identical stores.
inline ArgumentStore enumerate_arguments(const KnowledgeBase& kb) {
  // Goal dependency graph must be acyclic for trees to be finite.
  std::map<std::string, std::vector<const PlanRule*>> rules_by_head;
  for (const auto& rule : kb.rules) rules_by_head[rule.head.text()].push_back(&rule);

  std::map<std::string, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::string> stack;
  std::map<std::string, std::vector<ArgNode>> trees;

  auto visit = [&](auto&& self, const Literal& goal) -> void {
    const std::string key = goal.text();
    if (state[key] == 2) return;
    if (state[key] == 1) {
      std::string cycle;
      auto it = std::find(stack.begin(), stack.end(), key);
      for (; it != stack.end(); ++it) cycle += *it + " -> ";
      cycle += key;
      throw Error(ErrorKind::CyclicGoalDependency, "goal dependency cycle: " + cycle);
    }
    state[key] = 1;
    stack.push_back(key);

    std::vector<ArgNode> built;
    auto rules_it = rules_by_head.find(key);
    if (rules_it != rules_by_head.end()) {
      for (const PlanRule* rule : rules_it->second) {
        for (const auto& sub : rule->subgoals) {
          self(self, sub);
          if (trees[sub.text()].empty())
            throw Error(ErrorKind::NoRuleForGoal,
                        "subgoal '" + sub.text() + "' has no arguments");
        }
        // One child per premise element; subgoal children range over every
        // tree of that subgoal (cartesian product).
        std::vector<ArgNode> partial(1);
        PartialPlan root_plan;
        root_plan.conclusion = rule->head;
        root_plan.conclusion_kind = SymbolKind::Goal;
        root_plan.support = rule->premise_elements();
        partial[0].plan = root_plan;

        for (const auto& elem : root_plan.support) {
          std::vector<ArgNode> extended;
          if (std::holds_alternative<Literal>(elem) &&
              kb.kind_of(std::get<Literal>(elem)) == SymbolKind::Goal) {
            const auto& options = trees[std::get<Literal>(elem).text()];
            for (const auto& base : partial)
              for (const auto& option : options) {
                ArgNode next = base;
                next.children.push_back(option);
                extended.push_back(std::move(next));
              }
          } else {
            ArgNode leaf;
            leaf.plan.conclusion_kind = SymbolKind::Belief;
            if (std::holds_alternative<Literal>(elem)) {
              const Literal& lit = std::get<Literal>(elem);
              leaf.plan.conclusion = lit;
              auto kind = kb.kind_of(lit);
              leaf.plan.conclusion_kind = kind.value_or(SymbolKind::Belief);
            } else {
              leaf.plan.conclusion = std::get<ResourceAtom>(elem);
            }
            for (auto& base : partial) base.children.push_back(leaf);
            extended = std::move(partial);
          }
          partial = std::move(extended);
        }
        for (auto& tree : partial) {
          std::sort(tree.children.begin(), tree.children.end(),
                    [](const ArgNode& a, const ArgNode& b) {
                      return a.canonical_text() < b.canonical_text();
                    });
          built.push_back(std::move(tree));
        }
      }
    }
    std::sort(built.begin(), built.end(), [](const ArgNode& a, const ArgNode& b) {
      return a.canonical_text() < b.canonical_text();
    });
    trees[key] = std::move(built);
    stack.pop_back();
    state[key] = 2;
  };

  for (const auto& goal : kb.goals) visit(visit, goal);

  ArgumentStore store;
  store.kb_fingerprint = kb.fingerprint();
  std::set<std::string> seen;
  for (const auto& goal : kb.goals)
    for (const auto& tree : trees[goal.text()]) {
      Argument arg = detail::make_argument(tree);
      if (seen.insert(arg.id).second) store.args.push_back(std::move(arg));
    }
  store.rebuild_indexes();
  return store;
}

// Equivalence modes between arguments.
enum class EquivalenceMode { Logical, Resource, Whole };

// Logical: same claim and same support set.  Resource: same set of resource
// atoms (node tags ignored).  Whole: both.
inline bool equivalent(const Argument& a, const Argument& b, EquivalenceMode mode) {
  auto atoms = [](const Argument& arg) {
    std::set<std::string> out;
    for (const auto& occ : arg.rec) out.insert(occ.atom.text());
    return out;
  };
  bool logical = a.claim == b.claim && a.support_set == b.support_set;
  bool resource = atoms(a) == atoms(b);
  switch (mode) {
    case EquivalenceMode::Logical: return logical;
    case EquivalenceMode::Resource: return resource;
    case EquivalenceMode::Whole: return logical && resource;
  }
  return false;
}

// Renders the tree as indented text, one node per line.
inline std::string export_tree_text(const Argument& arg) {
  std::string out;
  auto walk = [&](auto&& self, const ArgNode& node, std::size_t depth) -> void {
    out.append(depth * 2, ' ');
    if (depth) out += "- ";
    out += node.plan.conclusion_text();
    if (node.plan.is_goal()) out += "  [" + hash_hex(fnv1a64(node.canonical_text())) + "]";
    out += "\n";
    for (const auto& child : node.children) self(self, child, depth + 1);
  };
  walk(walk, arg.root, 0);
  return out;
}

// Renders the tree as a DOT digraph.
inline std::string export_tree_dot(const Argument& arg) {
  std::string out = "digraph argument {\n  rankdir=TB;\n";
  std::size_t counter = 0;
  auto walk = [&](auto&& self, const ArgNode& node) -> std::size_t {
    std::size_t my_index = counter++;
    std::string shape = node.plan.is_goal() ? "ellipse" : "box";
    out += "  n" + std::to_string(my_index) + " [label=\"" + node.plan.conclusion_text() +
           "\", shape=" + shape + "];\n";
    for (const auto& child : node.children) {
      std::size_t child_index = self(self, child);
      out += "  n" + std::to_string(my_index) + " -> n" + std::to_string(child_index) + ";\n";
    }
    return my_index;
  };
  walk(walk, arg.root);
  out += "}\n";
  return out;
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_ARGUMENTS_HPP
