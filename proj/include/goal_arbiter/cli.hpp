#ifndef GOAL_ARBITER_CLI_HPP
#define GOAL_ARBITER_CLI_HPP

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "goal_arbiter/goal_arbiter.hpp"

namespace goal_arbiter {
namespace cli {

struct Options {
  std::string kb_path;
  std::string kind = "all";
  std::string level = "arguments";
  std::string policy = "goals-first";
  std::string format = "report";
  std::string out_path;
  std::size_t bound = default_enumeration_bound;
  bool filtered = false;
};

namespace detail {

inline void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::IoError, "cannot open output file: " + opt.out_path);
  file << text;
  if (!file) throw Error(ErrorKind::IoError, "cannot write output file: " + opt.out_path);
}

inline ArgumentStore load_store(const KnowledgeBase& kb, const Options& opt) {
  ArgumentStore store = enumerate_arguments(kb);
  if (store.args.size() > opt.bound)
    throw Error(ErrorKind::SizeBoundExceeded,
                "store has " + std::to_string(store.args.size()) + " arguments, bound is " +
                    std::to_string(opt.bound));
  return store;
}

inline std::string rec_summary(const Argument& arg) {
  std::string out = "[";
  bool first = true;
  for (const auto& occ : arg.rec) {
    if (!first) out += ",";
    out += occ.atom.name + ":" + std::to_string(occ.atom.amount);
    first = false;
  }
  return out + "]";
}

inline std::string join_ids(const std::vector<std::string>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  return out + "}";
}

inline std::string arguments_report(const ArgumentStore& store) {
  std::ostringstream out;
  out << "arguments: " << store.args.size() << "\n";
  for (const auto& arg : store.args)
    out << "  " << arg.id << "  claim=" << arg.claim.text() << "  plans="
        << arg.support_set.size() << "  subargs=" << arg.sub_ids.size()
        << "  rec=" << rec_summary(arg) << "\n";
  return out.str();
}

inline std::string arguments_trees(const ArgumentStore& store) {
  std::ostringstream out;
  bool first = true;
  for (const auto& arg : store.args) {
    if (!first) out << "\n";
    out << "argument " << arg.id << "  claim=" << arg.claim.text() << "\n";
    out << export_tree_text(arg);
    first = false;
  }
  return out.str();
}

inline std::string arguments_dot(const ArgumentStore& store) {
  std::ostringstream out;
  out << "digraph arguments {\n  node [shape=box];\n";
  for (const auto& arg : store.args) {
    out << "  subgraph \"cluster_" << arg.id << "\" {\n";
    out << "    label=\"" << arg.id << ": " << goal_arbiter::detail::dot_escape(arg.claim.text())
        << "\";\n";
    std::size_t counter = 0;
    auto walk = [&](auto&& self, const ArgNode& node) -> std::size_t {
      std::size_t my = counter++;
      out << "    \"" << arg.id << "_" << my << "\" [label=\""
          << goal_arbiter::detail::dot_escape(node.plan.conclusion_text()) << "\""
          << (node.plan.is_goal() ? ", shape=ellipse" : "") << "];\n";
      for (const auto& child : node.children) {
        std::size_t theirs = self(self, child);
        out << "    \"" << arg.id << "_" << my << "\" -> \"" << arg.id << "_" << theirs
            << "\";\n";
      }
      return my;
    };
    walk(walk, arg.root);
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

inline const char* kind_title(AttackKind kind) {
  switch (kind) {
    case AttackKind::Rebuttal: return "terminal rebuttal attacks";
    case AttackKind::Resource: return "resource attacks";
    case AttackKind::Superfluous: return "superfluity attacks";
    case AttackKind::General: return "attacks";
  }
  return "attacks";
}

inline std::string attacks_report(const std::vector<const AttackRelation*>& relations) {
  std::ostringstream out;
  for (const AttackRelation* rel : relations) {
    out << kind_title(rel->kind) << ": " << rel->edges.size() << "\n";
    for (const auto& edge : rel->edges) {
      out << "  " << edge.src << " -> " << edge.dst;
      if (edge.superfluity_case) out << "  [case " << edge.superfluity_case << "]";
      out << "  (" << edge.witness << ")\n";
    }
  }
  return out.str();
}

inline std::string attacks_dot(const std::vector<const AttackRelation*>& relations) {
  std::ostringstream out;
  out << "digraph attacks {\n  rankdir=LR;\n";
  std::map<std::pair<std::string, std::string>, std::string> labels;
  for (const AttackRelation* rel : relations)
    for (const auto& edge : rel->edges) {
      auto& label = labels[{edge.src, edge.dst}];
      char letter = attack_kind_letter(rel->kind);
      if (label.find(letter) == std::string::npos) label += letter;
    }
  for (const auto& [key, label] : labels)
    out << "  \"" << key.first << "\" -> \"" << key.second << "\" [label=\"" << label
        << "\"];\n";
  out << "}\n";
  return out.str();
}

inline std::string framework_report(const ArgFramework& af, const std::string& title) {
  std::ostringstream out;
  out << "framework: " << title << "\n";
  out << "filtered: " << (af.filtered ? "yes (successful attacks only)" : "no") << "\n";
  out << "nodes: " << af.nodes.size() << "\n";
  for (const auto& id : af.nodes)
    out << "  " << id << "  claim=" << af.claim_of.at(id) << "  pref="
        << af.pref_of.at(id).to_decimal_string() << "\n";
  out << "edges: " << af.edges.size() << "\n";
  for (const auto& edge : af.edges)
    out << "  " << edge.src << " -> " << edge.dst << "  [" << edge.kinds << "]\n";
  return out.str();
}

inline std::string goal_framework_report(const GoalFramework& gf) {
  std::ostringstream out;
  out << "goal framework (derived from successful attacks)\n";
  out << "goals: " << gf.goals.size() << "\n";
  for (const auto& goal : gf.goals)
    out << "  " << goal << "  pref=" << gf.pref_of.at(goal).to_decimal_string() << "  "
        << (gf.pursuable.count(goal) ? "pursuable" : "subgoal") << "  args="
        << join_ids(gf.args_for.at(goal)) << "\n";
  out << "edges: " << gf.edges.size() << "\n";
  for (const auto& [src, dst] : gf.edges) out << "  " << src << " -> " << dst << "\n";
  out << "certificates:\n";
  for (const auto& line : gf.certificates) out << "  " << line << "\n";
  return out.str();
}

inline std::string selection_report(const SelectionResult& result, const std::string& level) {
  std::ostringstream out;
  out << "selection (" << level << " level, " << selection_policy_name(result.policy)
      << " policy)\n";
  for (const auto& line : result.trace) out << "  " << line << "\n";
  out << "chosen set: " << join_ids(result.chosen) << "\n";
  if (result.tied.size() > 1) {
    out << "tied sets:\n";
    for (const auto& members : result.tied) out << "  " << join_ids(members) << "\n";
  }
  out << "goals: " << join_ids(result.goals) << "\n";
  out << "pursuable goals achieved: " << result.goal_count << "\n";
  out << "total utility: " << result.total_utility.to_decimal_string() << "\n";
  return out.str();
}

inline std::string check_report(const PostulateReport& report, std::size_t extension_count) {
  std::ostringstream out;
  out << "postulate check over " << extension_count << " conflict-free sets\n";
  for (const auto& ext : report.extensions) {
    out << "  " << join_ids(ext.members) << "  direct=" << (ext.direct.ok() ? "ok" : "FAIL")
        << "  closure=" << (ext.closure.ok ? "ok" : "FAIL")
        << "  indirect=" << (ext.indirect.ok ? "ok" : "FAIL") << "\n";
    for (std::size_t c = 0; c < 5; ++c)
      for (const auto& witness : ext.direct.clauses[c].witnesses)
        out << "    clause " << (c + 1) << ": " << witness << "\n";
    for (const auto& missing : ext.closure.missing)
      out << "    closure misses: " << missing << "\n";
    for (const auto& witness : ext.indirect.witnesses)
      out << "    indirect: " << witness << "\n";
  }
  out << "output: " << join_ids(report.output) << "\n";
  out << "output closed: " << (report.output_closed ? "yes" : "NO") << "\n";
  out << "output consistent: " << (report.output_consistent ? "yes" : "NO") << "\n";
  out << "result: " << (report.ok() ? "all postulates hold" : "POSTULATE VIOLATION") << "\n";
  return out.str();
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"goal-arbiter: instrumental arguments, attacks, and goal selection over "
               "plan-rule knowledge bases"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool with_format, const std::string& formats) {
    sub->add_option("kb", opt.kb_path, "knowledge base file")->required();
    sub->add_option("--bound", opt.bound, "enumeration bound (default 25)")
        ->envname("GOAL_ARBITER_BOUND");
    sub->add_option("--out", opt.out_path, "write the output to a file");
    if (with_format)
      sub->add_option("--format", opt.format, "output format: " + formats)
          ->check(CLI::IsMember(CLI::detail::split(formats, '|')));
  };

  CLI::App* cmd_arguments = app.add_subcommand("arguments", "enumerate instrumental arguments");
  add_common(cmd_arguments, true, "report|tree|dot");

  CLI::App* cmd_attacks = app.add_subcommand("attacks", "compute attack relations");
  add_common(cmd_attacks, true, "report|dot");
  cmd_attacks->add_option("--kind", opt.kind, "attack kind: t, r, s, or all")
      ->check(CLI::IsMember({"t", "r", "s", "all"}));

  CLI::App* cmd_framework = app.add_subcommand("framework", "assemble argumentation frameworks");
  add_common(cmd_framework, true, "report|dot");
  cmd_framework->add_option("--kind", opt.kind, "attack kind: t, r, s, or all")
      ->check(CLI::IsMember({"t", "r", "s", "all"}));
  cmd_framework->add_flag("--filtered", opt.filtered, "keep successful attacks only");
  cmd_framework->add_option("--level", opt.level, "framework level: arguments or goals")
      ->check(CLI::IsMember({"arguments", "goals"}));

  CLI::App* cmd_select = app.add_subcommand("select", "run the goal-selection procedure");
  add_common(cmd_select, true, "report");
  cmd_select->add_option("--level", opt.level, "selection level: arguments or goals")
      ->check(CLI::IsMember({"arguments", "goals"}));
  cmd_select->add_option("--policy", opt.policy, "goals-first or utility-first")
      ->check(CLI::IsMember({"goals-first", "utility-first"}));

  CLI::App* cmd_check = app.add_subcommand("check", "verify the rationality postulates");
  add_common(cmd_check, false, "");

  CLI::App* cmd_export = app.add_subcommand("export", "print the canonical knowledge base");
  add_common(cmd_export, false, "");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    KnowledgeBase kb = parse_kb_file(opt.kb_path);

    if (cmd_export->parsed()) {
      detail::emit(opt, out, kb.serialize());
      return 0;
    }

    ArgumentStore store = detail::load_store(kb, opt);

    if (cmd_arguments->parsed()) {
      std::string text = opt.format == "tree" ? detail::arguments_trees(store)
                         : opt.format == "dot" ? detail::arguments_dot(store)
                                               : detail::arguments_report(store);
      detail::emit(opt, out, text);
      return 0;
    }

    AttackRelation rs = superfluous_attacks(store);
    AttackRelation rt = rebuttal_attacks(store);
    AttackRelation rr = resource_attacks(store, kb.resources, rs);

    std::vector<const AttackRelation*> selected;
    if (opt.kind == "t") selected = {&rt};
    else if (opt.kind == "r") selected = {&rr};
    else if (opt.kind == "s") selected = {&rs};
    else selected = {&rt, &rr, &rs};

    if (cmd_attacks->parsed()) {
      std::string text = opt.format == "dot" ? detail::attacks_dot(selected)
                                             : detail::attacks_report(selected);
      detail::emit(opt, out, text);
      return 0;
    }

    if (cmd_framework->parsed() && opt.level == "goals") {
      ArgFramework general = build_framework(store, kb, {&rt, &rr, &rs});
      GoalFramework gf = build_goal_framework(store, kb, filter_successful(general));
      std::string text = opt.format == "dot" ? export_goal_framework_dot(gf)
                                             : detail::goal_framework_report(gf);
      detail::emit(opt, out, text);
      return 0;
    }

    if (cmd_framework->parsed()) {
      ArgFramework af = build_framework(store, kb, selected);
      if (opt.filtered) af = filter_successful(af);
      std::string title = opt.kind == "t"   ? "terminal rebuttal"
                          : opt.kind == "r" ? "resource"
                          : opt.kind == "s" ? "superfluity"
                                            : "general";
      std::string text = opt.format == "dot" ? export_framework_dot(af)
                                             : detail::framework_report(af, title);
      detail::emit(opt, out, text);
      return 0;
    }

    ArgFramework filtered = filter_successful(build_framework(store, kb, {&rt, &rr, &rs}));

    if (cmd_select->parsed()) {
      SelectionPolicy policy = opt.policy == "utility-first" ? SelectionPolicy::UtilityFirst
                                                             : SelectionPolicy::GoalsFirst;
      FrameworkView view = opt.level == "goals"
                               ? make_view(build_goal_framework(store, kb, filtered))
                               : make_view(filtered);
      SelectionResult result = select_goals(view, policy, opt.bound);
      detail::emit(opt, out, detail::selection_report(result, opt.level));
      return 0;
    }

    if (cmd_check->parsed()) {
      FrameworkView view = make_view(filtered);
      auto extensions = conflict_free_sets(view, opt.bound);
      PostulateReport report = verify_postulates(store, kb, rs, extensions);
      detail::emit(opt, out, detail::check_report(report, extensions.size()));
      return report.ok() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace cli
}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_CLI_HPP
