#ifndef GOAL_ARBITER_POSTULATES_HPP
#define GOAL_ARBITER_POSTULATES_HPP

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "goal_arbiter/arguments.hpp"
#include "goal_arbiter/attacks.hpp"
#include "goal_arbiter/kb.hpp"

namespace goal_arbiter {

// What a set of arguments commits to.  The claims set holds the root
// conclusion of every member; the belief, action, and goal pools hold the
// premises consumed inside the member trees, split by category.  A goal
// reaches the goal pool only when some member needs it as a premise, so a
// member's own claim is not in the goal pool unless another member's tree
// consumes it.
struct ConclusionPools {
  std::set<std::string> claims;
  std::set<std::string> beliefs;
  std::set<std::string> actions;
  std::set<std::string> goals;
};

inline ConclusionPools conclusion_pools(const ArgumentStore& store,
                                        const std::vector<std::string>& member_ids) {
  ConclusionPools pools;
  for (const auto& id : member_ids) {
    const Argument& arg = store.at(id);
    pools.claims.insert(arg.claim.text());
    for (const auto& plan : arg.support_set) {
      if (plan.is_resource()) continue;
      // A tree is acyclic, so the only partial plan concluding the claim is
      // the root; everything else is a consumed premise.
      if (plan.literal() == arg.claim) continue;
      switch (plan.conclusion_kind) {
        case SymbolKind::Belief: pools.beliefs.insert(plan.literal().text()); break;
        case SymbolKind::Action: pools.actions.insert(plan.literal().text()); break;
        case SymbolKind::Goal: pools.goals.insert(plan.literal().text()); break;
      }
    }
  }
  return pools;
}

// The conclusions of an argument set: the claims of its members.
inline std::set<std::string> concs(const ArgumentStore& store,
                                   const std::vector<std::string>& member_ids) {
  return conclusion_pools(store, member_ids).claims;
}

namespace detail {

inline bool find_complementary(const std::set<std::string>& pool, std::string& witness) {
  for (const auto& text : pool) {
    if (!text.empty() && text[0] == '~') continue;
    if (pool.count("~" + text)) {
      witness = text + " vs ~" + text;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Closure of a conclusion set under the plan rules.  A rule fires only when
// its entire premise already lies inside the set, element by element, so a
// resource premise always keeps it from firing and a belief or action
// premise fires only if the set happens to carry that very text.
// Premise-free rules always fire.
inline std::set<std::string> closure_pr(const KnowledgeBase& kb, std::set<std::string> set) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& rule : kb.rules) {
      if (!rule.resources.empty()) continue;
      bool premises_in = true;
      for (const auto& b : rule.beliefs) premises_in &= set.count(b.text()) > 0;
      for (const auto& a : rule.actions) premises_in &= set.count(a.text()) > 0;
      for (const auto& sub : rule.subgoals) premises_in &= set.count(sub.text()) > 0;
      if (premises_in && set.insert(rule.head.text()).second) changed = true;
    }
  }
  return set;
}

struct ClauseResult {
  bool ok = true;
  std::vector<std::string> witnesses;
};

// Direct consistency of one extension, clause by clause: no complementary
// beliefs (1), actions (2), or premise goals (3) across the member trees;
// the joint demand of every member pair fits each shared resource (4); and
// no two distinct members are superfluity-related (5).
struct ConsistencyReport {
  std::array<ClauseResult, 5> clauses;

  bool ok() const {
    for (const auto& clause : clauses)
      if (!clause.ok) return false;
    return true;
  }
};

inline ConsistencyReport check_direct_consistency(const ArgumentStore& store,
                                                  const KnowledgeBase& kb,
                                                  const AttackRelation& superfluous,
                                                  const std::vector<std::string>& member_ids) {
  ConsistencyReport report;
  ConclusionPools pools = conclusion_pools(store, member_ids);
  std::string witness;
  if (detail::find_complementary(pools.beliefs, witness)) {
    report.clauses[0].ok = false;
    report.clauses[0].witnesses.push_back(witness);
  }
  if (detail::find_complementary(pools.actions, witness)) {
    report.clauses[1].ok = false;
    report.clauses[1].witnesses.push_back(witness);
  }
  if (detail::find_complementary(pools.goals, witness)) {
    report.clauses[2].ok = false;
    report.clauses[2].witnesses.push_back(witness);
  }
  for (std::size_t i = 0; i < member_ids.size(); ++i)
    for (std::size_t j = i + 1; j < member_ids.size(); ++j) {
      const Argument& a = store.at(member_ids[i]);
      const Argument& b = store.at(member_ids[j]);
      std::set<std::string> shared;
      for (const auto& oa : a.rec)
        for (const auto& ob : b.rec)
          if (oa.atom.name == ob.atom.name) shared.insert(oa.atom.name);
      for (const auto& name : shared) {
        ResourceFormula formula = make_joint_formula({&a, &b}, name, kb.resources);
        if (!resource_entails(kb.resources, formula)) {
          report.clauses[3].ok = false;
          report.clauses[3].witnesses.push_back(a.id + "," + b.id + ": " + formula.text());
        }
      }
      if (superfluous.has(a.id, b.id) || superfluous.has(b.id, a.id)) {
        report.clauses[4].ok = false;
        report.clauses[4].witnesses.push_back(a.id + " and " + b.id +
                                              " are rival plans for a common end");
      }
    }
  return report;
}

struct ClosureCheck {
  bool ok = true;
  std::vector<std::string> missing;  // derivable conclusions absent from the claims
};

// Closure: the claims of the extension already contain everything the plan
// rules can derive from them.
inline ClosureCheck check_closure(const ArgumentStore& store, const KnowledgeBase& kb,
                                  const std::vector<std::string>& member_ids) {
  ClosureCheck check;
  ConclusionPools pools = conclusion_pools(store, member_ids);
  std::set<std::string> closed = closure_pr(kb, pools.claims);
  for (const auto& text : closed)
    if (!pools.claims.count(text)) check.missing.push_back(text);
  check.ok = check.missing.empty();
  return check;
}

struct IndirectCheck {
  bool ok = true;
  std::vector<std::string> witnesses;
};

// Indirect consistency: closing the claims under the plan rules must not
// surface a complementary pair.
inline IndirectCheck check_indirect_consistency(const ArgumentStore& store,
                                                const KnowledgeBase& kb,
                                                const std::vector<std::string>& member_ids) {
  IndirectCheck check;
  ConclusionPools pools = conclusion_pools(store, member_ids);
  std::set<std::string> closed = closure_pr(kb, pools.claims);
  std::string witness;
  if (detail::find_complementary(closed, witness)) {
    check.ok = false;
    check.witnesses.push_back(witness);
  }
  return check;
}

struct ExtensionCheck {
  std::vector<std::string> members;
  ConsistencyReport direct;
  ClosureCheck closure;
  IndirectCheck indirect;

  bool ok() const { return direct.ok() && closure.ok && indirect.ok; }
};

struct PostulateReport {
  std::vector<ExtensionCheck> extensions;
  bool output_closed = true;
  bool output_consistent = true;
  std::vector<std::string> output;  // claims common to every extension

  bool ok() const {
    if (!output_closed || !output_consistent) return false;
    for (const auto& ext : extensions)
      if (!ext.ok()) return false;
    return true;
  }
};

// Runs every postulate over each extension and over the skeptical output
// (the claims common to all extensions), which must itself be closed and
// stay consistent under closure.
inline PostulateReport verify_postulates(const ArgumentStore& store, const KnowledgeBase& kb,
                                         const AttackRelation& superfluous,
                                         const std::vector<std::vector<std::string>>& extensions) {
  PostulateReport report;
  bool first = true;
  std::set<std::string> output_claims;
  for (const auto& members : extensions) {
    ExtensionCheck check;
    check.members = members;
    check.direct = check_direct_consistency(store, kb, superfluous, members);
    check.closure = check_closure(store, kb, members);
    check.indirect = check_indirect_consistency(store, kb, members);
    report.extensions.push_back(std::move(check));

    std::set<std::string> claims = concs(store, members);
    if (first) {
      output_claims = std::move(claims);
      first = false;
    } else {
      std::set<std::string> next;
      for (const auto& t : claims)
        if (output_claims.count(t)) next.insert(t);
      output_claims = std::move(next);
    }
  }
  report.output.assign(output_claims.begin(), output_claims.end());
  std::set<std::string> closed_output = closure_pr(kb, output_claims);
  for (const auto& text : closed_output)
    if (!output_claims.count(text)) report.output_closed = false;
  std::string witness;
  if (detail::find_complementary(closed_output, witness)) report.output_consistent = false;
  return report;
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_POSTULATES_HPP
