#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "goal_arbiter/goal_arbiter.hpp"
#include "support/fixtures.hpp"

using namespace goal_arbiter;
using goal_arbiter_tests::cleaner_handles;
using goal_arbiter_tests::CleanerHandles;
using goal_arbiter_tests::fixture_path;

TEST_CASE("the cleaner base yields exactly seven arguments", "[arguments]") {
  CleanerHandles h = cleaner_handles();
  REQUIRE(h.store.args.size() == 7);
  REQUIRE(h.id_of.size() == 7);  // every letter resolved uniquely

  SECTION("tree sizes and demands match the plans") {
    auto plan_count = [&](char c) { return h.arg(c).support_set.size(); };
    CHECK(plan_count('A') == 10);
    CHECK(plan_count('C') == 10);
    CHECK(plan_count('B') == 6);
    CHECK(plan_count('F') == 5);
    CHECK(plan_count('D') == 8);
    CHECK(plan_count('E') == 8);
    CHECK(plan_count('H') == 4);

    CHECK(rec(h.arg('F')).size() == 1);
    CHECK(rec(h.arg('F')).front().atom.name == "oil");
    CHECK(rec(h.arg('F')).front().atom.amount == 20);
    CHECK(rec(h.arg('D')).front().atom.amount == 60);
  }

  SECTION("subargument relations hold") {
    CHECK(h.arg('A').has_sub(h.id_of.at('E')));
    CHECK(h.arg('C').has_sub(h.id_of.at('D')));
    CHECK(h.arg('B').has_sub(h.id_of.at('H')));
    CHECK_FALSE(h.arg('A').has_sub(h.id_of.at('D')));
    CHECK(h.arg('D').sub_ids.empty());
    CHECK(h.arg('E').sub_ids.empty());
    CHECK(h.arg('F').sub_ids.empty());
    CHECK(h.arg('H').sub_ids.empty());
  }

  SECTION("a shared subtree keeps its node identity in both trees") {
    // The vacuum plan's battery demand sits on the same node whether viewed
    // from the pickup argument or from the clean argument built on top of it.
    CHECK(rec(h.arg('A')) == rec(h.arg('E')));
    CHECK(rec(h.arg('C')) == rec(h.arg('D')));
  }

  SECTION("the store is closed under goal-rooted subtrees") {
    for (const auto& arg : h.store.args)
      for (const auto& sub : arg.sub_ids) CHECK_NOTHROW(h.store.at(sub));
  }

  SECTION("claims index the store") {
    Literal clean;
    clean.name = "clean";
    clean.args = {Term(std::int64_t{5}), Term(std::int64_t{5})};
    auto ids = h.store.arg_for(clean);
    REQUIRE(ids.size() == 2);
    CHECK(h.letter_of.at(ids[0]) == 'C');
    CHECK(h.letter_of.at(ids[1]) == 'A');
    CHECK(claim(h.arg('A')).text() == "clean(5,5)");
    CHECK(&support(h.arg('A')) == &h.arg('A').support_set);

    Literal nothing;
    nothing.name = "nothing";
    CHECK(h.store.arg_for(nothing).empty());
    CHECK_THROWS_AS(h.store.at("ffff"), Error);
  }
}

TEST_CASE("argument identities are content hashes and stay stable", "[arguments]") {
  CleanerHandles h = cleaner_handles();
  // Canonical-serialization tripwire: these ids only move when the tree
  // serialization format changes, which invalidates stored references.
  CHECK(h.id_of.at('A') == "6ab0350443fc4d15");
  CHECK(h.id_of.at('B') == "6f0181f90ec9fa60");
  CHECK(h.id_of.at('C') == "1fd24871051ed786");
  CHECK(h.id_of.at('D') == "6f32b52a492244a4");
  CHECK(h.id_of.at('E') == "7fb1a7ac941dc60f");
  CHECK(h.id_of.at('F') == "e5dc2190664bbfbb");
  CHECK(h.id_of.at('H') == "71be84e80515754e");

  SECTION("re-enumeration is deterministic") {
    ArgumentStore again = enumerate_arguments(h.kb);
    REQUIRE(again.args.size() == h.store.args.size());
    for (std::size_t i = 0; i < again.args.size(); ++i) {
      CHECK(again.args[i].id == h.store.args[i].id);
      CHECK(again.args[i].root.canonical_text() == h.store.args[i].root.canonical_text());
    }
    CHECK(again.kb_fingerprint == h.kb.fingerprint());
  }
}

TEST_CASE("tree exports render the plan structure", "[arguments]") {
  CleanerHandles h = cleaner_handles();
  std::string text = export_tree_text(h.arg('A'));
  CHECK(text.find("clean(5,5)") == 0);
  CHECK(text.find("- pickup(5,5)  [" + h.id_of.at('E') + "]") != std::string::npos);
  CHECK(text.find("- res(bat,70)") != std::string::npos);

  std::string dot = export_tree_dot(h.arg('A'));
  CHECK(dot.rfind("digraph argument {", 0) == 0);
  CHECK(dot.find("shape=ellipse") != std::string::npos);  // goal nodes
  CHECK(dot.find("shape=box") != std::string::npos);      // leaves
}

TEST_CASE("a goal occurring twice with two plans yields equivalent twins", "[arguments]") {
  // s has two plans and occurs both directly under g and inside t, so the
  // two mixed assemblies carry the same plan set in different trees.
  KnowledgeBase kb = parse_kb(
      "beliefs: x y\n"
      "actions: ax ay\n"
      "goals: s @ 0.4 t @ 0.4 g @ 0.5\n"
      "pursuable: g\n"
      "rules:\n"
      "  s t -> g;\n"
      "  x ax -> s;\n"
      "  y ay -> s;\n"
      "  s -> t;\n");
  ArgumentStore store = enumerate_arguments(kb);
  CHECK(store.args.size() == 8);  // 2 for s, 2 for t, 4 for g

  Literal g;
  g.name = "g";
  auto g_ids = store.arg_for(g);
  REQUIRE(g_ids.size() == 4);

  std::vector<std::pair<std::string, std::string>> twins;
  for (std::size_t i = 0; i < g_ids.size(); ++i)
    for (std::size_t j = i + 1; j < g_ids.size(); ++j)
      if (equivalent(store.at(g_ids[i]), store.at(g_ids[j]), EquivalenceMode::Logical))
        twins.emplace_back(g_ids[i], g_ids[j]);
  REQUIRE(twins.size() == 1);

  const Argument& m1 = store.at(twins[0].first);
  const Argument& m2 = store.at(twins[0].second);
  CHECK(m1.id != m2.id);
  CHECK(m1.support_set == m2.support_set);
  CHECK(m1.sub_ids != m2.sub_ids);  // assembled differently
  CHECK(equivalent(m1, m2, EquivalenceMode::Resource));  // both demand nothing
  CHECK(equivalent(m1, m2, EquivalenceMode::Whole));

  SECTION("the other assemblies are not equivalent") {
    for (const auto& id : g_ids) {
      const Argument& a = store.at(id);
      if (id == m1.id || id == m2.id) continue;
      CHECK_FALSE(equivalent(a, m1, EquivalenceMode::Logical));
      CHECK_FALSE(equivalent(a, m2, EquivalenceMode::Logical));
    }
  }
}

TEST_CASE("equivalence modes compare the right facets", "[arguments]") {
  CleanerHandles h = cleaner_handles();
  // The workshop plan and its be(in_workshop) part demand the same battery
  // slice, so they are resource-equivalent without being logically so.
  CHECK(equivalent(h.arg('B'), h.arg('H'), EquivalenceMode::Resource));
  CHECK_FALSE(equivalent(h.arg('B'), h.arg('H'), EquivalenceMode::Logical));
  CHECK_FALSE(equivalent(h.arg('B'), h.arg('H'), EquivalenceMode::Whole));
  CHECK_FALSE(equivalent(h.arg('A'), h.arg('C'), EquivalenceMode::Resource));
  for (const auto& arg : h.store.args) {
    CHECK(equivalent(arg, arg, EquivalenceMode::Logical));
    CHECK(equivalent(arg, arg, EquivalenceMode::Resource));
    CHECK(equivalent(arg, arg, EquivalenceMode::Whole));
  }
}

TEST_CASE("cyclic goal dependencies are refused", "[arguments][errors]") {
  KnowledgeBase kb = parse_kb(
      "goals: a @ 0.5 b @ 0.5\n"
      "pursuable: a\n"
      "rules: b -> a; a -> b;\n");
  try {
    enumerate_arguments(kb);
    FAIL("expected a cycle error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CyclicGoalDependency);
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
}

TEST_CASE("a subgoal without plans is refused during enumeration", "[arguments][errors]") {
  // Assembled by hand to bypass document validation.
  KnowledgeBase kb;
  Literal a, b;
  a.name = "a";
  b.name = "b";
  kb.goals = {a, b};
  kb.preferences.emplace("a", Rational(1, 2));
  kb.preferences.emplace("b", Rational(1, 2));
  PlanRule rule;
  rule.head = a;
  rule.subgoals = {b};
  kb.rules = {rule};
  CHECK_THROWS_MATCHES(enumerate_arguments(kb), Error, Catch::Matchers::Predicate<Error>(
      [](const Error& e) { return e.kind() == ErrorKind::NoRuleForGoal; }));
}

TEST_CASE("the minimal base yields one premise-free argument", "[arguments]") {
  KnowledgeBase kb = parse_kb_file(fixture_path("minimal.kb"));
  ArgumentStore store = enumerate_arguments(kb);
  REQUIRE(store.args.size() == 1);
  const Argument& arg = store.args.front();
  CHECK(arg.claim.text() == "idle");
  CHECK(arg.support_set.size() == 1);
  CHECK(arg.sub_ids.empty());
  CHECK(rec(arg).empty());
  CHECK(arg.root.children.empty());
}
