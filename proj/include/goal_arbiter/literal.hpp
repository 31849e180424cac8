#ifndef GOAL_ARBITER_LITERAL_HPP
#define GOAL_ARBITER_LITERAL_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace goal_arbiter {

// A term inside a literal's argument list: either an identifier or an integer.
using Term = std::variant<std::int64_t, std::string>;

inline std::string term_text(const Term& term) {
  if (std::holds_alternative<std::int64_t>(term))
    return std::to_string(std::get<std::int64_t>(term));
  return std::get<std::string>(term);
}

// A ground literal: an optionally negated atom `name(term, ...)`.
struct Literal {
  bool negated = false;
  std::string name;
  std::vector<Term> args;

  // Canonical text, e.g. "~be(operative)" or "clean(5,5)".
  std::string text() const {
    std::string out = negated ? "~" : "";
    out += name;
    if (!args.empty()) {
      out += "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        out += term_text(args[i]);
      }
      out += ")";
    }
    return out;
  }

  // Text of the underlying atom, ignoring polarity.
  std::string atom_text() const {
    Literal copy = *this;
    copy.negated = false;
    return copy.text();
  }

  Literal complement() const {
    Literal copy = *this;
    copy.negated = !copy.negated;
    return copy;
  }

  bool operator==(const Literal& other) const {
    return negated == other.negated && name == other.name && args == other.args;
  }
  bool operator!=(const Literal& other) const { return !(*this == other); }
  bool operator<(const Literal& other) const { return text() < other.text(); }

  bool complements(const Literal& other) const {
    return negated != other.negated && name == other.name && args == other.args;
  }
};

// A ground resource demand `res(name, amount)`.
struct ResourceAtom {
  std::string name;
  std::int64_t amount = 0;

  std::string text() const {
    return "res(" + name + "," + std::to_string(amount) + ")";
  }

  bool operator==(const ResourceAtom& other) const {
    return name == other.name && amount == other.amount;
  }
  bool operator!=(const ResourceAtom& other) const { return !(*this == other); }
  bool operator<(const ResourceAtom& other) const {
    if (name != other.name) return name < other.name;
    return amount < other.amount;
  }
};

// One element of a rule premise or of a partial-plan support.
using PremiseElement = std::variant<Literal, ResourceAtom>;

inline std::string premise_element_text(const PremiseElement& elem) {
  if (std::holds_alternative<Literal>(elem)) return std::get<Literal>(elem).text();
  return std::get<ResourceAtom>(elem).text();
}

inline bool premise_element_less(const PremiseElement& a, const PremiseElement& b) {
  return premise_element_text(a) < premise_element_text(b);
}

inline bool premise_element_eq(const PremiseElement& a, const PremiseElement& b) {
  return premise_element_text(a) == premise_element_text(b);
}

// Which declaration section a literal belongs to.
enum class SymbolKind { Belief, Action, Goal };

inline const char* symbol_kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Belief: return "belief";
    case SymbolKind::Action: return "action";
    case SymbolKind::Goal: return "goal";
  }
  return "?";
}

// 64-bit FNV-1a; used for content-addressed argument and node identities so
// that ids are stable across runs and platforms.
inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

inline std::string hash_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_LITERAL_HPP
