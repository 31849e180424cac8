#ifndef GOAL_ARBITER_TESTS_FIXTURES_HPP
#define GOAL_ARBITER_TESTS_FIXTURES_HPP

#include <map>
#include <set>
#include <string>

#include "goal_arbiter/goal_arbiter.hpp"

namespace goal_arbiter_tests {

inline std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

// Letter handles for the seven cleaner arguments, resolved structurally so
// the tests read like the worked example they encode:
//   A  clean(5,5) via the vacuum plan   rec [bat:70]
//   B  be(fixed) via the workshop       rec [bat:30], one subargument
//   C  clean(5,5) via the spin mop      rec [bat:60]
//   D  mop(5,5)                         rec [bat:60]
//   E  pickup(5,5)                      rec [bat:70]
//   F  be(fixed) via the technician     rec [oil:20], elementary
//   H  be(in_workshop)                  rec [bat:30]
struct CleanerHandles {
  goal_arbiter::KnowledgeBase kb;
  goal_arbiter::ArgumentStore store;
  std::map<char, std::string> id_of;
  std::map<std::string, char> letter_of;

  const goal_arbiter::Argument& arg(char letter) const { return store.at(id_of.at(letter)); }
};

inline CleanerHandles cleaner_handles() {
  CleanerHandles h;
  h.kb = goal_arbiter::parse_kb_file(fixture_path("cleaner.kb"));
  h.store = goal_arbiter::enumerate_arguments(h.kb);
  for (const auto& arg : h.store.args) {
    const std::string claim = arg.claim.text();
    char letter = '?';
    if (claim == "clean(5,5)")
      letter = !arg.rec.empty() && arg.rec.front().atom.amount == 70 ? 'A' : 'C';
    else if (claim == "be(fixed)")
      letter = arg.sub_ids.empty() ? 'F' : 'B';
    else if (claim == "mop(5,5)")
      letter = 'D';
    else if (claim == "pickup(5,5)")
      letter = 'E';
    else if (claim == "be(in_workshop)")
      letter = 'H';
    h.id_of[letter] = arg.id;
    h.letter_of[arg.id] = letter;
  }
  return h;
}

// The edge set of an attack relation as two-letter strings ("AB" = A -> B).
inline std::set<std::string> letter_edges(const CleanerHandles& h,
                                          const goal_arbiter::AttackRelation& rel) {
  std::set<std::string> out;
  for (const auto& edge : rel.edges)
    out.insert(std::string{h.letter_of.at(edge.src), h.letter_of.at(edge.dst)});
  return out;
}

inline std::set<std::string> letter_edges(const CleanerHandles& h,
                                          const goal_arbiter::ArgFramework& af) {
  std::set<std::string> out;
  for (const auto& edge : af.edges)
    out.insert(std::string{h.letter_of.at(edge.src), h.letter_of.at(edge.dst)});
  return out;
}

// A member set rendered as sorted letters, e.g. "CDF".
inline std::string letter_set(const CleanerHandles& h, const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) out += h.letter_of.at(id);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace goal_arbiter_tests

#endif  // GOAL_ARBITER_TESTS_FIXTURES_HPP
