#ifndef GOAL_ARBITER_FRAMEWORKS_HPP
#define GOAL_ARBITER_FRAMEWORKS_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "goal_arbiter/attacks.hpp"
#include "goal_arbiter/arguments.hpp"
#include "goal_arbiter/errors.hpp"
#include "goal_arbiter/kb.hpp"
#include "goal_arbiter/rational.hpp"

namespace goal_arbiter {

struct FrameworkEdge {
  std::string src;
  std::string dst;
  std::string kinds;  // subset of "trs" in that order
  std::string witness;
};

struct ArgFramework {
  std::vector<std::string> nodes;  // argument ids, sorted
  std::vector<FrameworkEdge> edges;  // sorted by (src, dst)
  std::map<std::string, std::string> claim_of;   // id -> claim text
  std::map<std::string, Rational> pref_of;       // id -> preference of its claim
  std::set<std::string> pursuable_claims;
  bool filtered = false;
  std::uint64_t store_fingerprint = 0;

  bool has(const std::string& src, const std::string& dst) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(src, dst),
                               [](const FrameworkEdge& e, const std::pair<std::string, std::string>& key) {
                                 return std::make_pair(e.src, e.dst) < key;
                               });
    return it != edges.end() && it->src == src && it->dst == dst;
  }
};

namespace detail {

inline ArgFramework framework_shell(const ArgumentStore& store, const KnowledgeBase& kb) {
  ArgFramework af;
  af.store_fingerprint = store.kb_fingerprint;
  for (const auto& arg : store.args) {
    af.nodes.push_back(arg.id);
    af.claim_of[arg.id] = arg.claim.text();
    af.pref_of[arg.id] = kb.preference(arg.claim);
  }
  std::sort(af.nodes.begin(), af.nodes.end());
  for (const auto& goal : kb.pursuable) af.pursuable_claims.insert(goal.text());
  return af;
}

}  // namespace detail

// Assembles the union framework over the supplied attack relations.  Edges
// repeated across relations collapse into one edge carrying all kind
// letters.  Every relation must have been computed over the same store.
inline ArgFramework build_framework(const ArgumentStore& store, const KnowledgeBase& kb,
                                    const std::vector<const AttackRelation*>& relations) {
  if (store.kb_fingerprint != kb.fingerprint())
    throw Error(ErrorKind::MixedStores, "argument store was built from a different knowledge base");
  ArgFramework af = detail::framework_shell(store, kb);
  std::map<std::pair<std::string, std::string>, FrameworkEdge> merged;
  for (const AttackRelation* rel : relations) {
    if (rel->store_fingerprint != store.kb_fingerprint)
      throw Error(ErrorKind::MixedStores, "attack relation was computed over a different store");
    for (const auto& edge : rel->edges) {
      auto key = std::make_pair(edge.src, edge.dst);
      auto it = merged.find(key);
      char letter = attack_kind_letter(edge.kind);
      if (it == merged.end()) {
        merged[key] = {edge.src, edge.dst, std::string(1, letter), edge.witness};
      } else if (it->second.kinds.find(letter) == std::string::npos) {
        it->second.kinds += letter;
        std::sort(it->second.kinds.begin(), it->second.kinds.end(),
                  [](char a, char b) {
                    auto rank = [](char c) { return c == 't' ? 0 : c == 'r' ? 1 : 2; };
                    return rank(a) < rank(b);
                  });
      }
    }
  }
  for (auto& [key, edge] : merged) af.edges.push_back(std::move(edge));
  std::sort(af.edges.begin(), af.edges.end(), [](const FrameworkEdge& a, const FrameworkEdge& b) {
    return std::make_pair(a.src, a.dst) < std::make_pair(b.src, b.dst);
  });
  return af;
}

// Keeps an attack only when the attacker's claim is preferred at least as
// much as the target's; the surviving edges are the successful attacks.
inline ArgFramework filter_successful(const ArgFramework& af) {
  ArgFramework out = af;
  out.filtered = true;
  out.edges.clear();
  for (const auto& edge : af.edges)
    if (!(af.pref_of.at(edge.src) < af.pref_of.at(edge.dst))) out.edges.push_back(edge);
  return out;
}

// The goal-level framework derived from a (normally filtered) argument
// framework: nodes are the goals claimed in the store; two goals conflict
// when every cross pair of their plans is attacked in at least one
// direction.  A uniform direction yields one edge, otherwise both.
struct GoalFramework {
  std::vector<std::string> goals;  // sorted goal literal texts
  std::vector<std::pair<std::string, std::string>> edges;  // sorted, directed
  std::map<std::string, std::vector<std::string>> args_for;  // goal -> sorted argument ids
  std::map<std::string, Rational> pref_of;
  std::set<std::string> pursuable;
  std::vector<std::string> certificates;  // one line per emitted edge
  std::uint64_t store_fingerprint = 0;

  bool has(const std::string& src, const std::string& dst) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(src, dst));
  }
};

inline GoalFramework build_goal_framework(const ArgumentStore& store, const KnowledgeBase& kb,
                                          const ArgFramework& af) {
  if (af.store_fingerprint != store.kb_fingerprint)
    throw Error(ErrorKind::MixedStores, "framework was built over a different store");
  GoalFramework gf;
  gf.store_fingerprint = store.kb_fingerprint;
  for (const auto& arg : store.args) {
    gf.args_for[arg.claim.text()].push_back(arg.id);
    gf.pref_of[arg.claim.text()] = kb.preference(arg.claim);
  }
  for (auto& [goal, ids] : gf.args_for) {
    std::sort(ids.begin(), ids.end());
    gf.goals.push_back(goal);
  }
  std::sort(gf.goals.begin(), gf.goals.end());
  for (const auto& goal : kb.pursuable) gf.pursuable.insert(goal.text());

  for (std::size_t i = 0; i < gf.goals.size(); ++i)
    for (std::size_t j = i + 1; j < gf.goals.size(); ++j) {
      const auto& g = gf.goals[i];
      const auto& h = gf.goals[j];
      bool all = true, fwd = true, bwd = true;
      std::size_t pairs = 0;
      for (const auto& x : gf.args_for[g])
        for (const auto& y : gf.args_for[h]) {
          ++pairs;
          bool xy = af.has(x, y), yx = af.has(y, x);
          all &= (xy || yx);
          fwd &= xy;
          bwd &= yx;
        }
      if (!all || pairs == 0) continue;
      std::string basis = std::to_string(pairs) + " plan pair" + (pairs == 1 ? "" : "s");
      if (fwd && !bwd) {
        gf.edges.emplace_back(g, h);
        gf.certificates.push_back(g + " -> " + h + " (" + basis + ", uniform)");
      } else if (bwd && !fwd) {
        gf.edges.emplace_back(h, g);
        gf.certificates.push_back(h + " -> " + g + " (" + basis + ", uniform)");
      } else {
        gf.edges.emplace_back(g, h);
        gf.edges.emplace_back(h, g);
        gf.certificates.push_back(g + " <-> " + h + " (" + basis + ", " +
                                  (fwd && bwd ? "uniform both ways" : "mixed directions") + ")");
      }
    }
  std::sort(gf.edges.begin(), gf.edges.end());
  std::sort(gf.certificates.begin(), gf.certificates.end());
  return gf;
}

namespace detail {

inline std::string dot_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace detail

inline std::string export_framework_dot(const ArgFramework& af, const std::string& name = "framework") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n  node [shape=ellipse];\n";
  for (const auto& id : af.nodes)
    out << "  \"" << id << "\" [label=\"" << id << "\\n"
        << detail::dot_escape(af.claim_of.at(id)) << "\"];\n";
  for (const auto& edge : af.edges)
    out << "  \"" << edge.src << "\" -> \"" << edge.dst << "\" [label=\"" << edge.kinds
        << "\"];\n";
  out << "}\n";
  return out.str();
}

inline std::string export_goal_framework_dot(const GoalFramework& gf,
                                             const std::string& name = "goals") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n  node [shape=box];\n";
  for (const auto& goal : gf.goals) {
    out << "  \"" << detail::dot_escape(goal) << "\"";
    if (gf.pursuable.count(goal)) out << " [penwidth=2]";
    out << ";\n";
  }
  for (const auto& [src, dst] : gf.edges) {
    out << "  \"" << detail::dot_escape(src) << "\" -> \"" << detail::dot_escape(dst) << "\"";
    if (!gf.has(dst, src)) out << " [style=dashed]";  // one-directional conflicts dashed
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_FRAMEWORKS_HPP
