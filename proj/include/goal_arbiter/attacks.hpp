#ifndef GOAL_ARBITER_ATTACKS_HPP
#define GOAL_ARBITER_ATTACKS_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "goal_arbiter/arguments.hpp"
#include "goal_arbiter/errors.hpp"
#include "goal_arbiter/kb.hpp"

namespace goal_arbiter {

enum class AttackKind { Rebuttal, Resource, Superfluous, General };

inline char attack_kind_letter(AttackKind kind) {
  switch (kind) {
    case AttackKind::Rebuttal: return 't';
    case AttackKind::Resource: return 'r';
    case AttackKind::Superfluous: return 's';
    case AttackKind::General: return 'g';
  }
  return '?';
}

// A conjunction of node-tagged demands on one resource, judged against the
// total availability of that resource.
struct ResourceFormula {
  struct Occurrence {
    std::string owner_ids;  // argument id(s) whose trees carry the node
    std::uint64_t node_tag = 0;
    std::int64_t amount = 0;
  };
  std::string resource;
  std::vector<Occurrence> occurrences;
  std::int64_t required = 0;
  std::int64_t available = 0;

  std::string text() const {
    std::string sum;
    for (const auto& occ : occurrences) {
      if (!sum.empty()) sum += "+";
      sum += std::to_string(occ.amount);
    }
    if (sum.empty()) sum = "0";
    return resource + ": " + sum + " = " + std::to_string(required) +
           (required <= available ? " <= " : " > ") + std::to_string(available);
  }
};

// The entailment judgment for a resource formula: the summed demand fits
// within availability.  An empty formula is trivially entailed.
inline bool resource_entails(const ResourceSummary& summary, const ResourceFormula& formula) {
  if (formula.occurrences.empty()) return true;
  return formula.required <= summary.availability(formula.resource);
}

// Builds the joint demand formula over one resource for a group of
// arguments, deduplicating shared nodes across the group.
inline ResourceFormula make_joint_formula(const std::vector<const Argument*>& group,
                                          const std::string& resource,
                                          const ResourceSummary& summary) {
  std::map<std::pair<std::uint64_t, std::string>, std::pair<std::int64_t, std::set<std::string>>>
      nodes;  // (tag, atom text) -> (amount, owner ids)
  for (const Argument* arg : group)
    for (const auto& occ : arg->rec)
      if (occ.atom.name == resource) {
        auto& entry = nodes[{occ.node_tag, occ.atom.text()}];
        entry.first = occ.atom.amount;
        entry.second.insert(arg->id);
      }
  ResourceFormula formula;
  formula.resource = resource;
  formula.available = summary.availability(resource);
  for (const auto& [key, entry] : nodes) {
    std::string owners;
    for (const auto& id : entry.second) {
      if (!owners.empty()) owners += ",";
      owners += id;
    }
    formula.occurrences.push_back({owners, key.first, entry.first});
    formula.required += entry.first;
  }
  return formula;
}

struct AttackEdge {
  std::string src;
  std::string dst;
  AttackKind kind = AttackKind::General;
  int superfluity_case = 0;  // 1..3 for superfluous edges
  std::string witness;
  std::optional<ResourceFormula> formula;
};

struct AttackRelation {
  AttackKind kind = AttackKind::General;
  std::vector<AttackEdge> edges;  // sorted by (src, dst)
  std::uint64_t store_fingerprint = 0;
  std::size_t fixpoint_rounds = 0;  // meaningful for the superfluity relation

  bool has(const std::string& src, const std::string& dst) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(src, dst),
                               [](const AttackEdge& e, const std::pair<std::string, std::string>& key) {
                                 return std::make_pair(e.src, e.dst) < key;
                               });
    return it != edges.end() && it->src == src && it->dst == dst;
  }

  void sort_edges() {
    std::sort(edges.begin(), edges.end(), [](const AttackEdge& a, const AttackEdge& b) {
      return std::make_pair(a.src, a.dst) < std::make_pair(b.src, b.dst);
    });
  }
};

// Terminal incompatibility: two arguments with different claims whose trees
// conclude complementary literals of the same category.
inline AttackRelation rebuttal_attacks(const ArgumentStore& store) {
  AttackRelation rel;
  rel.kind = AttackKind::Rebuttal;
  rel.store_fingerprint = store.kb_fingerprint;
  for (const auto& a : store.args)
    for (const auto& b : store.args) {
      if (a.id == b.id || a.claim == b.claim) continue;
      for (const auto& pa : a.support_set) {
        if (pa.is_resource()) continue;
        bool found = false;
        for (const auto& pb : b.support_set) {
          if (pb.is_resource()) continue;
          if (pa.literal().complements(pb.literal()) &&
              pa.conclusion_kind == pb.conclusion_kind) {
            rel.edges.push_back({a.id, b.id, AttackKind::Rebuttal, 0,
                                 std::string(symbol_kind_name(pa.conclusion_kind)) + " " +
                                     pa.literal().text() + " vs " + pb.literal().text(),
                                 std::nullopt});
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
  rel.sort_edges();
  return rel;
}

namespace detail {

struct GoalPlanRef {
  const PartialPlan* plan;
  std::string goal_text;
  bool proper;  // concluded goal differs from the owning argument's claim
};

inline std::vector<GoalPlanRef> goal_plans(const Argument& arg) {
  std::vector<GoalPlanRef> out;
  for (const auto& plan : arg.support_set)
    if (plan.is_goal())
      out.push_back({&plan, plan.literal().text(),
                     plan.literal().text() != arg.claim.text()});
  return out;
}

inline bool support_contains(const Argument& arg, const PartialPlan& plan) {
  return std::binary_search(arg.support_set.begin(), arg.support_set.end(), plan);
}

}  // namespace detail

// Superfluity: the least fixpoint of the three derivation cases, closed
// under symmetry each round.  No attack is ever added between two arguments
// that occur together inside one tree of the store (the within-one-tree
// exception), so a plan never conflicts with its own parts.
inline AttackRelation superfluous_attacks(const ArgumentStore& store) {
  const std::size_t n = store.args.size();
  AttackRelation rel;
  rel.kind = AttackKind::Superfluous;
  rel.store_fingerprint = store.kb_fingerprint;

  // blocked(i, j): i and j occur (content-wise) in a common tree.
  std::vector<std::vector<bool>> blocked(n, std::vector<bool>(n, false));
  for (const auto& z : store.args) {
    std::vector<std::size_t> members;
    members.push_back(store.index_by_id.at(z.id));
    for (const auto& sub : z.sub_ids) {
      auto it = store.index_by_id.find(sub);
      if (it != store.index_by_id.end()) members.push_back(it->second);
    }
    for (std::size_t x : members)
      for (std::size_t y : members) blocked[x][y] = true;
  }

  std::vector<std::vector<detail::GoalPlanRef>> plans(n);
  for (std::size_t i = 0; i < n; ++i) plans[i] = detail::goal_plans(store.args[i]);

  std::set<std::pair<std::size_t, std::size_t>> relation;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<int, std::string>> labels;

  auto add = [&](std::size_t x, std::size_t y, int which_case, const std::string& witness) {
    if (x == y) return false;
    auto key = std::make_pair(x, y);
    if (relation.count(key)) return false;
    relation.insert(key);
    labels[key] = {which_case, witness};
    return true;
  };

  // Case 1 seeds: equal claims, different supports.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Argument& a = store.args[i];
      const Argument& b = store.args[j];
      if (a.claim == b.claim && a.support_set != b.support_set)
        add(i, j, 1, "both conclude " + a.claim.text() + " with different supports");
    }

  auto args_claiming = [&](const std::string& goal_text) -> const std::vector<std::size_t>& {
    static const std::vector<std::size_t> none;
    auto it = store.by_claim.find(goal_text);
    return it == store.by_claim.end() ? none : it->second;
  };

  const std::size_t max_rounds = n * n + 1;
  while (true) {
    ++rel.fixpoint_rounds;
    if (rel.fixpoint_rounds > max_rounds)
      throw Error(ErrorKind::SizeBoundExceeded, "superfluity fixpoint did not settle");
    const auto snapshot = relation;
    bool changed = false;

    auto mirror_new = [&]() {
      auto current = relation;
      for (const auto& [x, y] : current) {
        auto key = std::make_pair(y, x);
        if (!relation.count(key)) {
          const auto& source = labels.at({x, y});
          relation.insert(key);
          labels[key] = {source.first, "converse of (" + store.args[x].id + "," +
                                           store.args[y].id + ")"};
          changed = true;
        }
      }
    };

    // Case 2 over proper subplans of both sides of an established attack.
    for (const auto& [ai, bi] : snapshot) {
      for (const auto& px : plans[ai]) {
        if (!px.proper) continue;
        for (const auto& py : plans[bi]) {
          if (!py.proper || px.goal_text == py.goal_text) continue;
          for (std::size_t x : args_claiming(px.goal_text))
            for (std::size_t y : args_claiming(py.goal_text)) {
              if (blocked[x][y]) continue;
              changed |= add(x, y, 2,
                             "via (" + store.args[ai].id + "," + store.args[bi].id +
                                 "): " + px.plan->text() + " and " + py.plan->text());
            }
        }
      }
    }
    // Case 3: a goal-concluding plan inside an attacker of y, absent from y.
    for (const auto& [ai, yi] : snapshot) {
      const Argument& y = store.args[yi];
      for (const auto& px : plans[ai]) {
        if (px.goal_text == y.claim.text()) continue;
        if (detail::support_contains(y, *px.plan)) continue;
        for (std::size_t x : args_claiming(px.goal_text)) {
          if (blocked[x][yi]) continue;
          changed |= add(x, yi, 3,
                         "via (" + store.args[ai].id + "," + y.id + "): " +
                             px.plan->text() + " not in the target's support");
        }
      }
    }
    mirror_new();
    // Case 2 without the properness restriction (root plans included); only
    // contributes edges unreachable through the runs above.
    for (const auto& [ai, bi] : snapshot) {
      for (const auto& px : plans[ai])
        for (const auto& py : plans[bi]) {
          if (px.goal_text == py.goal_text) continue;
          for (std::size_t x : args_claiming(px.goal_text))
            for (std::size_t y : args_claiming(py.goal_text)) {
              if (blocked[x][y]) continue;
              changed |= add(x, y, 2,
                             "via (" + store.args[ai].id + "," + store.args[bi].id +
                                 "): " + px.plan->text() + " and " + py.plan->text());
            }
        }
    }
    mirror_new();
    if (!changed) break;
  }

  for (const auto& [x, y] : relation) {
    const auto& label = labels.at({x, y});
    rel.edges.push_back({store.args[x].id, store.args[y].id, AttackKind::Superfluous,
                         label.first, label.second, std::nullopt});
  }
  rel.sort_edges();
  return rel;
}

// Resource incompatibility: joint demand on a shared resource exceeds
// availability.  Excluded: subargument pairs (a plan does not compete with
// its own subplan) and pairs already related by superfluity (rival plans for
// a common end are never co-executed, so they do not compete for resources).
inline AttackRelation resource_attacks(const ArgumentStore& store,
                                       const ResourceSummary& summary,
                                       const AttackRelation& superfluous) {
  AttackRelation rel;
  rel.kind = AttackKind::Resource;
  rel.store_fingerprint = store.kb_fingerprint;
  const std::size_t n = store.args.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Argument& a = store.args[i];
      const Argument& b = store.args[j];
      if (a.has_sub(b.id) || b.has_sub(a.id)) continue;
      if (superfluous.has(a.id, b.id) || superfluous.has(b.id, a.id)) continue;
      std::set<std::string> shared;
      for (const auto& oa : a.rec)
        for (const auto& ob : b.rec)
          if (oa.atom.name == ob.atom.name) shared.insert(oa.atom.name);
      for (const auto& name : shared) {
        ResourceFormula formula = make_joint_formula({&a, &b}, name, summary);
        if (!resource_entails(summary, formula)) {
          rel.edges.push_back({a.id, b.id, AttackKind::Resource, 0, formula.text(), formula});
          rel.edges.push_back({b.id, a.id, AttackKind::Resource, 0, formula.text(), formula});
          break;
        }
      }
    }
  rel.sort_edges();
  return rel;
}

inline AttackRelation resource_attacks(const ArgumentStore& store,
                                       const ResourceSummary& summary) {
  return resource_attacks(store, summary, superfluous_attacks(store));
}

// Re-validates every superfluity edge's recorded case against the final
// relation; converse-derived edges validate through their mirror.
inline bool validate_superfluous_provenance(const ArgumentStore& store,
                                            const AttackRelation& rel) {
  auto index = [&](const std::string& id) { return store.index_by_id.at(id); };
  auto direct_valid = [&](const std::string& xs, const std::string& ys, int which_case) {
    const Argument& x = store.args[index(xs)];
    const Argument& y = store.args[index(ys)];
    switch (which_case) {
      case 1:
        return x.claim == y.claim && x.support_set != y.support_set;
      case 2: {
        if (x.claim == y.claim) return false;
        for (const auto& edge : rel.edges) {
          const Argument& a = store.args[index(edge.src)];
          const Argument& b = store.args[index(edge.dst)];
          bool left = false, right = false;
          for (const auto& p : detail::goal_plans(a))
            left |= p.goal_text == x.claim.text();
          for (const auto& p : detail::goal_plans(b))
            right |= p.goal_text == y.claim.text();
          if (left && right) return true;
        }
        return false;
      }
      case 3: {
        if (x.claim == y.claim) return false;
        for (const auto& edge : rel.edges) {
          if (edge.dst != y.id) continue;
          const Argument& a = store.args[index(edge.src)];
          for (const auto& p : detail::goal_plans(a))
            if (p.goal_text == x.claim.text() && !detail::support_contains(y, *p.plan))
              return true;
        }
        return false;
      }
      default:
        return false;
    }
  };
  for (const auto& edge : rel.edges) {
    bool ok = direct_valid(edge.src, edge.dst, edge.superfluity_case);
    if (!ok && rel.has(edge.dst, edge.src)) {
      // Mirror edge with the same case justifies a converse-derived edge.
      for (const auto& other : rel.edges)
        if (other.src == edge.dst && other.dst == edge.src &&
            other.superfluity_case == edge.superfluity_case)
          ok = direct_valid(other.src, other.dst, edge.superfluity_case);
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_ATTACKS_HPP
