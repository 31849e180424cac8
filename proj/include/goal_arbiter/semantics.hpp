#ifndef GOAL_ARBITER_SEMANTICS_HPP
#define GOAL_ARBITER_SEMANTICS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "goal_arbiter/errors.hpp"
#include "goal_arbiter/frameworks.hpp"
#include "goal_arbiter/rational.hpp"

namespace goal_arbiter {

constexpr std::size_t default_enumeration_bound = 25;

// A uniform view over argument-level and goal-level frameworks: nodes carry
// a claim (at goal level the node is its own claim) and that claim's
// preference, so the same enumeration and selection code serves both.
struct FrameworkView {
  std::vector<std::string> nodes;  // sorted
  std::vector<std::string> claim_of;
  std::vector<Rational> pref_of;
  std::vector<bool> claim_pursuable;
  std::vector<std::vector<bool>> attacks;  // directed adjacency
  bool goal_level = false;

  std::size_t size() const { return nodes.size(); }

  bool conflict(std::size_t i, std::size_t j) const { return attacks[i][j] || attacks[j][i]; }
};

inline FrameworkView make_view(const ArgFramework& af) {
  FrameworkView view;
  view.nodes = af.nodes;
  const std::size_t n = view.nodes.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[view.nodes[i]] = i;
  view.claim_of.resize(n);
  view.pref_of.resize(n);
  view.claim_pursuable.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    view.claim_of[i] = af.claim_of.at(view.nodes[i]);
    view.pref_of[i] = af.pref_of.at(view.nodes[i]);
    view.claim_pursuable[i] = af.pursuable_claims.count(view.claim_of[i]) > 0;
  }
  view.attacks.assign(n, std::vector<bool>(n, false));
  for (const auto& edge : af.edges) view.attacks[index.at(edge.src)][index.at(edge.dst)] = true;
  return view;
}

inline FrameworkView make_view(const GoalFramework& gf) {
  FrameworkView view;
  view.goal_level = true;
  view.nodes = gf.goals;
  const std::size_t n = view.nodes.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[view.nodes[i]] = i;
  view.claim_of = view.nodes;
  view.pref_of.resize(n);
  view.claim_pursuable.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    view.pref_of[i] = gf.pref_of.at(view.nodes[i]);
    view.claim_pursuable[i] = gf.pursuable.count(view.nodes[i]) > 0;
  }
  view.attacks.assign(n, std::vector<bool>(n, false));
  for (const auto& [src, dst] : gf.edges) view.attacks[index.at(src)][index.at(dst)] = true;
  return view;
}

using NodeSet = std::uint32_t;  // bitmask over view nodes (bound keeps size <= 25)

namespace detail {

inline std::vector<std::string> set_members(const FrameworkView& view, NodeSet mask) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < view.size(); ++i)
    if (mask & (NodeSet(1) << i)) out.push_back(view.nodes[i]);
  return out;
}

inline void sort_sets_canonically(const FrameworkView& view, std::vector<NodeSet>& sets) {
  std::sort(sets.begin(), sets.end(), [&](NodeSet a, NodeSet b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    return set_members(view, a) < set_members(view, b);
  });
}

}  // namespace detail

// All conflict-free sets (the empty set included), canonically ordered by
// size then member names.  Enumeration refuses frameworks larger than the
// bound rather than degrade silently.
inline std::vector<NodeSet> conflict_free_masks(const FrameworkView& view,
                                                std::size_t bound = default_enumeration_bound) {
  const std::size_t n = view.size();
  if (n > bound || n > 8 * sizeof(NodeSet) - 1)
    throw Error(ErrorKind::SizeBoundExceeded,
                "framework has " + std::to_string(n) + " nodes, enumeration bound is " +
                    std::to_string(bound));
  std::vector<NodeSet> out;
  std::vector<std::size_t> chosen;
  auto recurse = [&](auto&& self, std::size_t next, NodeSet mask) -> void {
    out.push_back(mask);
    for (std::size_t i = next; i < n; ++i) {
      bool ok = true;
      for (std::size_t j : chosen)
        if (view.conflict(i, j)) {
          ok = false;
          break;
        }
      if (!ok || view.conflict(i, i)) continue;
      chosen.push_back(i);
      self(self, i + 1, mask | (NodeSet(1) << i));
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, 0);
  detail::sort_sets_canonically(view, out);
  return out;
}

inline std::vector<std::vector<std::string>> conflict_free_sets(
    const FrameworkView& view, std::size_t bound = default_enumeration_bound) {
  std::vector<std::vector<std::string>> out;
  for (NodeSet mask : conflict_free_masks(view, bound))
    out.push_back(detail::set_members(view, mask));
  return out;
}

namespace detail {

inline NodeSet attacked_by(const FrameworkView& view, NodeSet mask) {
  NodeSet hit = 0;
  for (std::size_t i = 0; i < view.size(); ++i)
    if (mask & (NodeSet(1) << i))
      for (std::size_t j = 0; j < view.size(); ++j)
        if (view.attacks[i][j]) hit |= NodeSet(1) << j;
  return hit;
}

inline bool defends_all(const FrameworkView& view, NodeSet mask) {
  for (std::size_t a = 0; a < view.size(); ++a) {
    if (!(mask & (NodeSet(1) << a))) continue;
    for (std::size_t b = 0; b < view.size(); ++b) {
      if (!view.attacks[b][a]) continue;
      bool countered = false;
      for (std::size_t c = 0; c < view.size() && !countered; ++c)
        if ((mask & (NodeSet(1) << c)) && view.attacks[c][b]) countered = true;
      if (!countered) return false;
    }
  }
  return true;
}

inline std::vector<NodeSet> inclusion_maximal(std::vector<NodeSet> sets) {
  std::vector<NodeSet> out;
  for (NodeSet a : sets) {
    bool maximal = true;
    // Candidates arrive ordered small to large, so a strict superset (if
    // any) is found fastest by scanning from the back.
    for (auto it = sets.rbegin(); it != sets.rend(); ++it)
      if (a != *it && (a & *it) == a) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(a);
  }
  return out;
}

}  // namespace detail

inline std::vector<NodeSet> admissible_masks(const FrameworkView& view,
                                             std::size_t bound = default_enumeration_bound) {
  std::vector<NodeSet> out;
  for (NodeSet mask : conflict_free_masks(view, bound))
    if (detail::defends_all(view, mask)) out.push_back(mask);
  return out;
}

inline std::vector<NodeSet> preferred_masks(const FrameworkView& view,
                                            std::size_t bound = default_enumeration_bound) {
  auto out = detail::inclusion_maximal(admissible_masks(view, bound));
  detail::sort_sets_canonically(view, out);
  return out;
}

// Stage extensions: conflict-free sets whose range (the set plus everything
// it attacks) is inclusion-maximal.
inline std::vector<NodeSet> stage_masks(const FrameworkView& view,
                                        std::size_t bound = default_enumeration_bound) {
  auto cf = conflict_free_masks(view, bound);
  std::vector<NodeSet> range(cf.size());
  for (std::size_t k = 0; k < cf.size(); ++k)
    range[k] = cf[k] | detail::attacked_by(view, cf[k]);
  std::vector<NodeSet> out;
  for (std::size_t k = 0; k < cf.size(); ++k) {
    bool maximal = true;
    // Ranges of larger sets sit towards the back; scan them first.
    for (std::size_t m = cf.size(); m-- > 0;)
      if (range[k] != range[m] && (range[k] & range[m]) == range[k]) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(cf[k]);
  }
  detail::sort_sets_canonically(view, out);
  return out;
}

inline std::vector<std::vector<std::string>> preferred_extensions(
    const FrameworkView& view, std::size_t bound = default_enumeration_bound) {
  std::vector<std::vector<std::string>> out;
  for (NodeSet mask : preferred_masks(view, bound)) out.push_back(detail::set_members(view, mask));
  return out;
}

inline std::vector<std::vector<std::string>> stage_extensions(
    const FrameworkView& view, std::size_t bound = default_enumeration_bound) {
  std::vector<std::vector<std::string>> out;
  for (NodeSet mask : stage_masks(view, bound)) out.push_back(detail::set_members(view, mask));
  return out;
}

// The distinct claims delivered by a set of nodes, sorted.
inline std::vector<std::string> compatible_goals(const FrameworkView& view, NodeSet mask) {
  std::set<std::string> claims;
  for (std::size_t i = 0; i < view.size(); ++i)
    if (mask & (NodeSet(1) << i)) claims.insert(view.claim_of[i]);
  return {claims.begin(), claims.end()};
}

// Goal count used by the selection algorithm.  At the argument level it
// counts the distinct pursuable goals the set delivers; at the goal level
// every member is itself an adopted goal.
inline std::size_t num_goals(const FrameworkView& view, NodeSet mask) {
  std::set<std::string> claims;
  for (std::size_t i = 0; i < view.size(); ++i)
    if ((mask & (NodeSet(1) << i)) && (view.goal_level || view.claim_pursuable[i]))
      claims.insert(view.claim_of[i]);
  return claims.size();
}

// Total utility of a set: each distinct claim counts once.
inline Rational utility(const FrameworkView& view, NodeSet mask) {
  std::set<std::string> seen;
  Rational total;
  for (std::size_t i = 0; i < view.size(); ++i)
    if (mask & (NodeSet(1) << i))
      if (seen.insert(view.claim_of[i]).second) total = total + view.pref_of[i];
  return total;
}

enum class SelectionPolicy { GoalsFirst, UtilityFirst };

inline const char* selection_policy_name(SelectionPolicy policy) {
  return policy == SelectionPolicy::GoalsFirst ? "goals-first" : "utility-first";
}

struct SelectionResult {
  SelectionPolicy policy = SelectionPolicy::GoalsFirst;
  std::size_t candidate_count = 0;           // conflict-free sets considered
  std::vector<std::vector<std::string>> after_first;
  std::vector<std::vector<std::string>> after_second;
  bool second_applied = false;
  std::vector<std::vector<std::string>> tied;  // inclusion-maximal survivors
  std::vector<std::string> chosen;             // canonical representative of the tie
  std::vector<std::string> goals;              // compatible goals of the chosen set
  std::size_t goal_count = 0;
  Rational total_utility;
  std::vector<std::string> trace;
};

// The goal-selection procedure: start from the conflict-free sets, apply
// the policy's first criterion, apply the second only when several sets
// remain, keep inclusion-maximal survivors, and read the compatible goals
// off the chosen set.
inline SelectionResult select_goals(const FrameworkView& view, SelectionPolicy policy,
                                    std::size_t bound = default_enumeration_bound) {
  SelectionResult result;
  result.policy = policy;
  std::vector<NodeSet> current = conflict_free_masks(view, bound);
  result.candidate_count = current.size();
  result.trace.push_back("conflict-free sets: " + std::to_string(current.size()));

  auto keep_max_goal = [&](std::vector<NodeSet>& sets) {
    std::size_t best = 0;
    for (NodeSet mask : sets) best = std::max(best, num_goals(view, mask));
    std::vector<NodeSet> kept;
    for (NodeSet mask : sets)
      if (num_goals(view, mask) == best) kept.push_back(mask);
    sets = std::move(kept);
    return "MAX_GOAL: best count " + std::to_string(best) + ", " +
           std::to_string(sets.size()) + " set(s) remain";
  };
  auto keep_max_util = [&](std::vector<NodeSet>& sets) {
    Rational best;
    bool first = true;
    for (NodeSet mask : sets) {
      Rational u = utility(view, mask);
      if (first || best < u) best = u;
      first = false;
    }
    std::vector<NodeSet> kept;
    for (NodeSet mask : sets)
      if (utility(view, mask) == best) kept.push_back(mask);
    sets = std::move(kept);
    return "MAX_UTIL: best utility " + best.to_decimal_string() + ", " +
           std::to_string(sets.size()) + " set(s) remain";
  };

  if (policy == SelectionPolicy::GoalsFirst)
    result.trace.push_back(keep_max_goal(current));
  else
    result.trace.push_back(keep_max_util(current));
  for (NodeSet mask : current) result.after_first.push_back(detail::set_members(view, mask));

  if (current.size() > 1) {
    result.second_applied = true;
    if (policy == SelectionPolicy::GoalsFirst)
      result.trace.push_back(keep_max_util(current));
    else
      result.trace.push_back(keep_max_goal(current));
    for (NodeSet mask : current) result.after_second.push_back(detail::set_members(view, mask));
  }

  current = detail::inclusion_maximal(current);
  detail::sort_sets_canonically(view, current);
  result.trace.push_back("MAXIMAL: " + std::to_string(current.size()) + " set(s) remain");
  for (NodeSet mask : current) result.tied.push_back(detail::set_members(view, mask));

  NodeSet chosen = current.empty() ? 0 : current.front();
  result.chosen = detail::set_members(view, chosen);
  result.goals = compatible_goals(view, chosen);
  result.goal_count = num_goals(view, chosen);
  result.total_utility = utility(view, chosen);
  std::string joined;
  for (const auto& goal : result.goals) {
    if (!joined.empty()) joined += ", ";
    joined += goal;
  }
  result.trace.push_back("selected goals: {" + joined + "} with utility " +
                         result.total_utility.to_decimal_string());
  return result;
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_SEMANTICS_HPP
