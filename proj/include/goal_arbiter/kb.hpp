#ifndef GOAL_ARBITER_KB_HPP
#define GOAL_ARBITER_KB_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "goal_arbiter/errors.hpp"
#include "goal_arbiter/literal.hpp"
#include "goal_arbiter/rational.hpp"

namespace goal_arbiter {

// A plan rule: a conjunctive premise of beliefs, subgoals, actions and
// resource demands, concluding a single goal literal.
struct PlanRule {
  Literal head;
  std::vector<Literal> beliefs;
  std::vector<Literal> subgoals;
  std::vector<Literal> actions;
  std::vector<ResourceAtom> resources;

  // All premise elements in canonical (sorted) order.
  std::vector<PremiseElement> premise_elements() const {
    std::vector<PremiseElement> out;
    for (const auto& b : beliefs) out.emplace_back(b);
    for (const auto& g : subgoals) out.emplace_back(g);
    for (const auto& a : actions) out.emplace_back(a);
    for (const auto& r : resources) out.emplace_back(r);
    std::sort(out.begin(), out.end(), premise_element_less);
    return out;
  }

  std::string text() const {
    std::string out;
    for (const auto& elem : premise_elements()) {
      if (!out.empty()) out += " ";
      out += premise_element_text(elem);
    }
    if (!out.empty()) out += " ";
    out += "-> " + head.text() + ";";
    return out;
  }

  bool operator==(const PlanRule& other) const { return text() == other.text(); }
  bool operator<(const PlanRule& other) const { return text() < other.text(); }
};

// Total resource availability, one entry per declared resource name.
struct ResourceSummary {
  std::map<std::string, std::int64_t> available;

  std::int64_t availability(const std::string& name) const {
    auto it = available.find(name);
    if (it == available.end())
      throw Error(ErrorKind::UnknownResource, "no resource named '" + name + "'");
    return it->second;
  }

  bool knows(const std::string& name) const { return available.count(name) != 0; }
};

// The agent's knowledge base: declared beliefs, actions, goals (each with a
// preference), resource availability, the pursuable goals and the plan rules.
struct KnowledgeBase {
  std::vector<Literal> beliefs;   // sorted by text, unique
  std::vector<Literal> actions;   // sorted by text, unique
  std::vector<Literal> goals;     // sorted by text, unique
  std::map<std::string, Rational> preferences;  // goal text -> preference
  ResourceSummary resources;
  std::vector<Literal> pursuable;  // sorted by text, unique
  std::vector<PlanRule> rules;     // sorted by canonical text, unique

  std::int64_t availability(const std::string& name) const {
    return resources.availability(name);
  }

  Rational preference(const Literal& goal) const {
    auto it = preferences.find(goal.text());
    if (it == preferences.end())
      throw Error(ErrorKind::UnknownGoal, "no goal named '" + goal.text() + "'");
    return it->second;
  }

  bool is_goal(const Literal& lit) const {
    return std::any_of(goals.begin(), goals.end(),
                       [&](const Literal& g) { return g == lit; });
  }

  bool is_pursuable(const Literal& lit) const {
    return std::any_of(pursuable.begin(), pursuable.end(),
                       [&](const Literal& g) { return g == lit; });
  }

  // Classifies a literal by the declaration section of its atom.
  std::optional<SymbolKind> kind_of(const Literal& lit) const {
    const std::string atom = lit.atom_text();
    auto holds = [&](const std::vector<Literal>& decls) {
      return std::any_of(decls.begin(), decls.end(),
                         [&](const Literal& d) { return d.atom_text() == atom; });
    };
    if (holds(beliefs)) return SymbolKind::Belief;
    if (holds(actions)) return SymbolKind::Action;
    if (holds(goals)) return SymbolKind::Goal;
    return std::nullopt;
  }

  std::vector<const PlanRule*> rules_for(const Literal& goal) const {
    std::vector<const PlanRule*> out;
    for (const auto& rule : rules)
      if (rule.head == goal) out.push_back(&rule);
    return out;
  }

  // Content fingerprint used to reject mixing artifacts from different KBs.
  std::uint64_t fingerprint() const { return fnv1a64(serialize()); }

  // Canonical document form: fixed section order, entries sorted
  // lexicographically.  Parsing the result yields an equal knowledge base.
  std::string serialize() const {
    std::string out;
    auto section = [&out](const std::string& header, const std::vector<std::string>& lines) {
      if (lines.empty()) return;
      out += header + ":\n";
      for (const auto& line : lines) out += "  " + line + "\n";
    };
    auto texts = [](const std::vector<Literal>& lits) {
      std::vector<std::string> out;
      for (const auto& lit : lits) out.push_back(lit.text());
      return out;
    };
    section("beliefs", texts(beliefs));
    section("actions", texts(actions));
    {
      std::vector<std::string> lines;
      for (const auto& g : goals)
        lines.push_back(g.text() + "@" + preferences.at(g.text()).to_decimal_string());
      section("goals", lines);
    }
    {
      std::vector<std::string> lines;
      for (const auto& [name, amount] : resources.available)
        lines.push_back(name + " = " + std::to_string(amount));
      section("resources", lines);
    }
    section("pursuable", texts(pursuable));
    {
      std::vector<std::string> lines;
      for (const auto& rule : rules) lines.push_back(rule.text());
      section("rules", lines);
    }
    return out;
  }

  bool operator==(const KnowledgeBase& other) const {
    return serialize() == other.serialize();
  }
};

namespace detail {

inline void sort_unique(std::vector<Literal>& lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
}

inline void sort_unique(std::vector<ResourceAtom>& atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
}

}  // namespace detail

// Checks every structural invariant that does not depend on parse positions.
// parse_kb() reports most of these earlier with line information; this
// validation also covers knowledge bases assembled programmatically.
inline void validate_kb(const KnowledgeBase& kb) {
  // Atom-level disjointness between the three declaration sections.
  std::map<std::string, std::string> atom_section;
  auto claim_section = [&](const std::vector<Literal>& decls, const std::string& which) {
    for (const auto& lit : decls) {
      auto [it, inserted] = atom_section.emplace(lit.atom_text(), which);
      if (!inserted && it->second != which)
        throw Error(ErrorKind::DisjointnessViolation,
                    "'" + lit.atom_text() + "' declared under both " + it->second +
                        " and " + which);
    }
  };
  claim_section(kb.beliefs, "beliefs");
  claim_section(kb.actions, "actions");
  claim_section(kb.goals, "goals");

  // Resource names must not collide with literal names.
  std::set<std::string> literal_names;
  for (const auto& lit : kb.beliefs) literal_names.insert(lit.name);
  for (const auto& lit : kb.actions) literal_names.insert(lit.name);
  for (const auto& lit : kb.goals) literal_names.insert(lit.name);
  for (const auto& [name, amount] : kb.resources.available) {
    if (literal_names.count(name))
      throw Error(ErrorKind::DisjointnessViolation,
                  "resource name '" + name + "' collides with a literal name");
    if (amount < 0)
      throw Error(ErrorKind::SyntaxError, "negative availability for '" + name + "'");
  }

  for (const auto& g : kb.goals)
    if (!kb.preferences.count(g.text()))
      throw Error(ErrorKind::MissingPreference, "goal '" + g.text() + "' has no preference");
  for (const auto& [text, pref] : kb.preferences)
    if (pref < Rational(0, 1) || pref > Rational(1, 1))
      throw Error(ErrorKind::PreferenceOutOfRange,
                  "preference " + pref.to_decimal_string() + " for '" + text + "'");

  for (const auto& g : kb.pursuable)
    if (!kb.is_goal(g))
      throw Error(ErrorKind::UndeclaredSymbol, "pursuable '" + g.text() + "' is not a goal");

  auto has_rule_for = [&](const Literal& goal) {
    return std::any_of(kb.rules.begin(), kb.rules.end(),
                       [&](const PlanRule& r) { return r.head == goal; });
  };

  for (const auto& rule : kb.rules) {
    if (!kb.is_goal(rule.head))
      throw Error(ErrorKind::UndeclaredSymbol,
                  "rule head '" + rule.head.text() + "' is not a declared goal");
    for (const auto& sub : rule.subgoals) {
      if (sub == rule.head)
        throw Error(ErrorKind::HeadInOwnPremise,
                    "rule for '" + rule.head.text() + "' uses its own head as premise");
      if (!has_rule_for(sub))
        throw Error(ErrorKind::NoRuleForGoal,
                    "subgoal '" + sub.text() + "' has no rule with it as head");
    }
    auto expect_kind = [&](const std::vector<Literal>& lits, SymbolKind want) {
      for (const auto& lit : lits) {
        auto kind = kb.kind_of(lit);
        if (!kind)
          throw Error(ErrorKind::UndeclaredSymbol, "undeclared '" + lit.text() + "'");
        if (*kind != want)
          throw Error(ErrorKind::UndeclaredSymbol,
                      "'" + lit.text() + "' is a " + symbol_kind_name(*kind) +
                          ", used as " + symbol_kind_name(want));
      }
    };
    expect_kind(rule.beliefs, SymbolKind::Belief);
    expect_kind(rule.subgoals, SymbolKind::Goal);
    expect_kind(rule.actions, SymbolKind::Action);
    for (const auto& res : rule.resources) {
      if (!kb.resources.knows(res.name))
        throw Error(ErrorKind::UndeclaredSymbol, "undeclared resource '" + res.name + "'");
      if (res.amount < 0)
        throw Error(ErrorKind::SyntaxError, "negative resource amount in rule premise");
    }
  }

  for (const auto& g : kb.pursuable)
    if (!has_rule_for(g))
      throw Error(ErrorKind::NoRuleForGoal,
                  "pursuable goal '" + g.text() + "' has no rule with it as head");
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_KB_HPP
