#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "goal_arbiter/goal_arbiter.hpp"
#include "support/fixtures.hpp"

using namespace goal_arbiter;
using goal_arbiter_tests::cleaner_handles;
using goal_arbiter_tests::CleanerHandles;
using goal_arbiter_tests::letter_set;

namespace {

FrameworkView cleaner_view(CleanerHandles& h) {
  AttackRelation rt = rebuttal_attacks(h.store);
  AttackRelation rs = superfluous_attacks(h.store);
  AttackRelation rr = resource_attacks(h.store, h.kb.resources, rs);
  ArgFramework general = build_framework(h.store, h.kb, {&rt, &rr, &rs});
  return make_view(filter_successful(general));
}

GoalFramework cleaner_goal_framework(CleanerHandles& h) {
  AttackRelation rt = rebuttal_attacks(h.store);
  AttackRelation rs = superfluous_attacks(h.store);
  AttackRelation rr = resource_attacks(h.store, h.kb.resources, rs);
  ArgFramework general = build_framework(h.store, h.kb, {&rt, &rr, &rs});
  return build_goal_framework(h.store, h.kb, filter_successful(general));
}

// A bare view over anonymous nodes, for hand-built and synthetic graphs.
FrameworkView anon_view(std::size_t n,
                        const std::function<bool(std::size_t, std::size_t)>& attacks) {
  FrameworkView view;
  view.goal_level = true;
  for (std::size_t i = 0; i < n; ++i) {
    char name[8];
    std::snprintf(name, sizeof name, "n%02zu", i);
    view.nodes.push_back(name);
  }
  view.claim_of = view.nodes;
  view.pref_of.assign(n, Rational(1, 2));
  view.claim_pursuable.assign(n, true);
  view.attacks.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && attacks(i, j)) view.attacks[i][j] = true;
  return view;
}

NodeSet mask_of(const FrameworkView& view, const std::vector<std::string>& names) {
  NodeSet mask = 0;
  for (const auto& name : names)
    for (std::size_t i = 0; i < view.size(); ++i)
      if (view.nodes[i] == name) mask |= NodeSet(1) << i;
  return mask;
}

std::set<std::vector<std::string>> family(const std::vector<std::vector<std::string>>& sets) {
  return {sets.begin(), sets.end()};
}

}  // namespace

TEST_CASE("the cleaner's conflict-free landscape", "[semantics]") {
  CleanerHandles h = cleaner_handles();
  FrameworkView view = cleaner_view(h);
  CHECK_FALSE(view.goal_level);

  struct Row {
    const char* letters;
    std::size_t goals;
    const char* utility;
  };
  // Canonical enumeration order: size first, then member ids.  The lone
  // deviation from the familiar hand tabulation of this scenario is the
  // vacuum-and-pickup pair: summing both distinct claims gives 1.5, and the
  // often-quoted 0.75 contradicts the very summation rule the tabulation
  // states.  The brute-force re-summation below pins the 1.5.
  const std::vector<Row> expected = {
      {"", 0, "0"},      {"C", 1, "0.75"},    {"A", 1, "0.75"},   {"B", 1, "0.6"},
      {"D", 0, "0.8"},   {"H", 0, "0.6"},     {"E", 0, "0.75"},   {"F", 1, "0.6"},
      {"CD", 1, "1.55"}, {"CF", 2, "1.35"},   {"AE", 1, "1.5"},   {"AF", 2, "1.35"},
      {"BH", 1, "1.2"},  {"DF", 1, "1.4"},    {"EF", 1, "1.35"},  {"CDF", 2, "2.15"},
      {"AEF", 2, "2.1"}};

  std::vector<NodeSet> masks = conflict_free_masks(view);
  std::vector<std::vector<std::string>> sets = conflict_free_sets(view);
  REQUIRE(masks.size() == expected.size());
  REQUIRE(sets.size() == expected.size());

  for (std::size_t i = 0; i < expected.size(); ++i) {
    INFO("row " << i << " = {" << expected[i].letters << "}");
    CHECK(letter_set(h, sets[i]) == expected[i].letters);
    CHECK(num_goals(view, masks[i]) == expected[i].goals);
    CHECK(utility(view, masks[i]).to_decimal_string() == expected[i].utility);
  }

  SECTION("utilities re-derive by brute-force summation over distinct claims") {
    for (NodeSet mask : masks) {
      std::set<std::string> claims;
      for (std::size_t i = 0; i < view.size(); ++i)
        if (mask & (NodeSet(1) << i)) claims.insert(view.claim_of[i]);
      Rational total;
      for (const auto& claim : claims) total = total + h.kb.preferences.at(claim);
      CHECK(utility(view, mask) == total);
    }
  }

  SECTION("the vacuum-and-pickup pair sums to 1.5 exactly") {
    NodeSet ae = mask_of(view, {h.id_of.at('A'), h.id_of.at('E')});
    CHECK(utility(view, ae) == Rational(3, 2));
  }

  SECTION("pursuability decides which members count as goals") {
    CHECK(view.claim_pursuable[0] == (view.claim_of[0] == "clean(5,5)" ||
                                      view.claim_of[0] == "be(fixed)"));
    NodeSet d_only = mask_of(view, {h.id_of.at('D')});
    CHECK(num_goals(view, d_only) == 0);  // mop is desirable but not pursuable
    CHECK(compatible_goals(view, d_only) == std::vector<std::string>{"mop(5,5)"});
  }
}

TEST_CASE("plan-level selection favours the mop bundle", "[semantics]") {
  CleanerHandles h = cleaner_handles();
  FrameworkView view = cleaner_view(h);

  SelectionResult goals_first = select_goals(view, SelectionPolicy::GoalsFirst);
  CHECK(goals_first.candidate_count == 17);
  CHECK(goals_first.trace ==
        std::vector<std::string>{
            "conflict-free sets: 17", "MAX_GOAL: best count 2, 4 set(s) remain",
            "MAX_UTIL: best utility 2.15, 1 set(s) remain", "MAXIMAL: 1 set(s) remain",
            "selected goals: {be(fixed), clean(5,5), mop(5,5)} with utility 2.15"});
  REQUIRE(goals_first.after_first.size() == 4);
  CHECK(letter_set(h, goals_first.after_first[0]) == "CF");
  CHECK(letter_set(h, goals_first.after_first[1]) == "AF");
  CHECK(letter_set(h, goals_first.after_first[2]) == "CDF");
  CHECK(letter_set(h, goals_first.after_first[3]) == "AEF");
  CHECK(goals_first.second_applied);
  REQUIRE(goals_first.tied.size() == 1);
  CHECK(letter_set(h, goals_first.chosen) == "CDF");
  CHECK(goals_first.goals ==
        std::vector<std::string>{"be(fixed)", "clean(5,5)", "mop(5,5)"});
  CHECK(goals_first.goal_count == 2);
  CHECK(goals_first.total_utility == Rational(43, 20));

  SelectionResult utility_first = select_goals(view, SelectionPolicy::UtilityFirst);
  CHECK(utility_first.trace[1] == "MAX_UTIL: best utility 2.15, 1 set(s) remain");
  CHECK_FALSE(utility_first.second_applied);  // a single survivor needs no tie-break
  CHECK(letter_set(h, utility_first.chosen) == "CDF");
  CHECK(utility_first.goals == goals_first.goals);
  CHECK(utility_first.total_utility == goals_first.total_utility);
}

TEST_CASE("goal-level selection agrees with the plan-level outcome", "[semantics]") {
  CleanerHandles h = cleaner_handles();
  GoalFramework gf = cleaner_goal_framework(h);
  FrameworkView view = make_view(gf);
  CHECK(view.goal_level);
  CHECK(view.claim_of == view.nodes);

  CHECK(conflict_free_sets(view).size() == 14);

  SelectionResult result = select_goals(view, SelectionPolicy::GoalsFirst);
  CHECK(result.candidate_count == 14);
  CHECK(result.trace[1] == "MAX_GOAL: best count 3, 2 set(s) remain");
  REQUIRE(result.after_first.size() == 2);
  CHECK(result.after_first[0] ==
        std::vector<std::string>{"be(fixed)", "clean(5,5)", "mop(5,5)"});
  CHECK(result.after_first[1] ==
        std::vector<std::string>{"be(fixed)", "clean(5,5)", "pickup(5,5)"});
  CHECK(result.second_applied);
  CHECK(result.trace[2] == "MAX_UTIL: best utility 2.15, 1 set(s) remain");
  CHECK(result.chosen ==
        std::vector<std::string>{"be(fixed)", "clean(5,5)", "mop(5,5)"});
  CHECK(result.goal_count == 3);  // at goal level every adopted goal counts
  CHECK(result.total_utility == Rational(43, 20));

  SelectionResult utility_first = select_goals(view, SelectionPolicy::UtilityFirst);
  CHECK(utility_first.chosen == result.chosen);
}

TEST_CASE("policies can disagree when breadth and worth pull apart", "[semantics]") {
  // One high-stakes goal g1 conflicts with two modest goals g2 and g3 that
  // get along with each other.
  FrameworkView view;
  view.goal_level = true;
  view.nodes = {"g1", "g2", "g3"};
  view.claim_of = view.nodes;
  view.pref_of = {Rational(9, 10), Rational(3, 10), Rational(2, 5)};
  view.claim_pursuable = {true, true, true};
  view.attacks = {{false, true, true}, {false, false, false}, {false, false, false}};

  CHECK(family(conflict_free_sets(view)) ==
        family({{}, {"g1"}, {"g2"}, {"g3"}, {"g2", "g3"}}));

  SelectionResult breadth = select_goals(view, SelectionPolicy::GoalsFirst);
  CHECK(breadth.trace[1] == "MAX_GOAL: best count 2, 1 set(s) remain");
  CHECK_FALSE(breadth.second_applied);
  CHECK(breadth.chosen == std::vector<std::string>{"g2", "g3"});
  CHECK(breadth.total_utility == Rational(7, 10));

  SelectionResult worth = select_goals(view, SelectionPolicy::UtilityFirst);
  CHECK(worth.trace[1] == "MAX_UTIL: best utility 0.9, 1 set(s) remain");
  CHECK_FALSE(worth.second_applied);
  CHECK(worth.chosen == std::vector<std::string>{"g1"});
  CHECK(worth.goal_count == 1);
}

TEST_CASE("five rival survey plans, preferred and stage alike", "[semantics]") {
  // Three thorough plans I, J, K and two quick ones M, N.  M clashes with I
  // and K over the survey site; N clashes with J over the instrument.
  const std::vector<std::string> names = {"I", "J", "K", "M", "N"};
  auto build = [&](const std::set<std::pair<int, int>>& edges) {
    FrameworkView view;
    view.goal_level = true;
    view.nodes = names;
    view.claim_of = names;
    view.pref_of = {Rational(4, 5), Rational(4, 5), Rational(4, 5), Rational(3, 10),
                    Rational(3, 10)};
    view.claim_pursuable.assign(5, true);
    view.attacks.assign(5, std::vector<bool>(5, false));
    for (auto [i, j] : edges) view.attacks[i][j] = true;
    return view;
  };
  // I=0 J=1 K=2 M=3 N=4; unfiltered conflicts are mutual.
  FrameworkView unfiltered =
      build({{3, 0}, {0, 3}, {3, 2}, {2, 3}, {4, 1}, {1, 4}});

  const std::set<std::vector<std::string>> both_ways = {
      {"J", "M"}, {"M", "N"}, {"I", "J", "K"}, {"I", "K", "N"}};
  CHECK(family(preferred_extensions(unfiltered)) == both_ways);
  CHECK(family(stage_extensions(unfiltered)) == both_ways);

  SECTION("dropping the dispreferred directions leaves one answer") {
    FrameworkView filtered = build({{0, 3}, {2, 3}, {1, 4}});
    CHECK(preferred_extensions(filtered) ==
          std::vector<std::vector<std::string>>{{"I", "J", "K"}});
    CHECK(stage_extensions(filtered) ==
          std::vector<std::vector<std::string>>{{"I", "J", "K"}});
  }

  SECTION("the mutual-conflict graph is the unique one with these preferred sets") {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) pairs.emplace_back(i, j);
    REQUIRE(pairs.size() == 10);
    int matches = 0;
    unsigned matching_mask = 0;
    for (unsigned mask = 0; mask < 1024u; ++mask) {
      std::set<std::pair<int, int>> edges;
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (mask & (1u << p)) {
          edges.insert(pairs[p]);
          edges.insert({pairs[p].second, pairs[p].first});
        }
      if (family(preferred_extensions(build(edges))) == both_ways) {
        ++matches;
        matching_mask = mask;
      }
    }
    CHECK(matches == 1);
    std::set<std::pair<int, int>> found;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (matching_mask & (1u << p)) found.insert(pairs[p]);
    CHECK(found == std::set<std::pair<int, int>>{{0, 3}, {1, 4}, {2, 3}});
  }
}

TEST_CASE("closed-form landscapes check the enumerators", "[semantics]") {
  SECTION("no attacks: every subset is conflict-free, one preferred set") {
    FrameworkView view = anon_view(15, [](std::size_t, std::size_t) { return false; });
    CHECK(conflict_free_masks(view).size() == 32768);
    auto preferred = preferred_extensions(view);
    REQUIRE(preferred.size() == 1);
    CHECK(preferred.front() == view.nodes);
    CHECK(stage_extensions(view) == preferred);
  }

  SECTION("all-out war: only singletons survive") {
    FrameworkView view = anon_view(15, [](std::size_t, std::size_t) { return true; });
    CHECK(conflict_free_masks(view).size() == 16);  // empty set plus 15 singletons
    CHECK(preferred_extensions(view).size() == 15);
    CHECK(stage_extensions(view).size() == 15);
    CHECK(admissible_masks(view).size() == 16);  // each singleton defends itself
  }

  SECTION("the bound is a guard, not a truncation") {
    FrameworkView wide = anon_view(26, [](std::size_t, std::size_t) { return true; });
    CHECK(conflict_free_masks(wide, 30).size() == 27);
    CHECK_THROWS_MATCHES(conflict_free_masks(wide), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::SizeBoundExceeded;
                         }));
    FrameworkView huge = anon_view(32, [](std::size_t, std::size_t) { return true; });
    CHECK_THROWS_MATCHES(conflict_free_masks(huge, 40), Error,
                         Catch::Matchers::Predicate<Error>([](const Error& e) {
                           return e.kind() == ErrorKind::SizeBoundExceeded;
                         }));
  }
}

TEST_CASE("conflict-free enumeration matches the powerset filter", "[semantics]") {
  std::mt19937 rng(20260815);
  for (int round = 0; round < 20; ++round) {
    std::vector<std::vector<bool>> adj(10, std::vector<bool>(10, false));
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j)
        if (i != j) adj[i][j] = rng() % 4 == 0;
    FrameworkView view = anon_view(10, [&](std::size_t i, std::size_t j) { return adj[i][j]; });

    std::vector<NodeSet> oracle;
    for (NodeSet mask = 0; mask < 1024u; ++mask) {
      bool ok = true;
      for (int i = 0; i < 10 && ok; ++i)
        for (int j = 0; j < 10 && ok; ++j)
          if ((mask & (NodeSet(1) << i)) && (mask & (NodeSet(1) << j)) && view.attacks[i][j])
            ok = false;
      if (ok) oracle.push_back(mask);
    }
    detail::sort_sets_canonically(view, oracle);
    CHECK(conflict_free_masks(view) == oracle);
  }
}
