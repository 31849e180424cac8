#ifndef GOAL_ARBITER_PARSER_HPP
#define GOAL_ARBITER_PARSER_HPP

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "goal_arbiter/errors.hpp"
#include "goal_arbiter/kb.hpp"
#include "goal_arbiter/literal.hpp"
#include "goal_arbiter/rational.hpp"

namespace goal_arbiter {

namespace detail {

enum class TokenKind { Ident, Number, Tilde, LParen, RParen, Comma, Semicolon,
                       At, Equals, Colon, Arrow, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& input) : input_(input) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token tok = current_;
    advance();
    return tok;
  }

 private:
  void advance() {
    skip_trivia();
    current_.line = line_;
    current_.column = column_;
    if (pos_ >= input_.size()) {
      current_.kind = TokenKind::End;
      current_.text.clear();
      return;
    }
    char c = input_[pos_];
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < input_.size() &&
             (std::isalnum(static_cast<unsigned char>(input_[pos_])) || input_[pos_] == '_'))
        consume_char();
      current_.kind = TokenKind::Ident;
      current_.text = input_.substr(start, pos_ - start);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < input_.size() && std::isdigit(static_cast<unsigned char>(input_[pos_])))
        consume_char();
      if (pos_ + 1 < input_.size() && input_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(input_[pos_ + 1]))) {
        consume_char();
        while (pos_ < input_.size() && std::isdigit(static_cast<unsigned char>(input_[pos_])))
          consume_char();
      }
      current_.kind = TokenKind::Number;
      current_.text = input_.substr(start, pos_ - start);
      return;
    }
    if (c == '-' && pos_ + 1 < input_.size() && input_[pos_ + 1] == '>') {
      consume_char();
      consume_char();
      current_.kind = TokenKind::Arrow;
      current_.text = "->";
      return;
    }
    TokenKind kind;
    switch (c) {
      case '~': kind = TokenKind::Tilde; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ',': kind = TokenKind::Comma; break;
      case ';': kind = TokenKind::Semicolon; break;
      case '@': kind = TokenKind::At; break;
      case '=': kind = TokenKind::Equals; break;
      case ':': kind = TokenKind::Colon; break;
      default:
        throw Error(ErrorKind::SyntaxError,
                    std::string("unexpected character '") + c + "'", line_, column_);
    }
    consume_char();
    current_.kind = kind;
    current_.text = std::string(1, c);
  }

  void skip_trivia() {
    while (pos_ < input_.size()) {
      char c = input_[pos_];
      if (c == '#') {
        while (pos_ < input_.size() && input_[pos_] != '\n') consume_char();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        consume_char();
      } else {
        break;
      }
    }
  }

  void consume_char() {
    if (input_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& input_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

class Parser {
 public:
  explicit Parser(const std::string& input) : lexer_(input) {}

  KnowledgeBase parse() {
    if (lexer_.peek().kind == TokenKind::End)
      fail("a section header", lexer_.peek());
    while (lexer_.peek().kind != TokenKind::End) parse_section();
    finalize();
    validate_kb(kb_);
    return kb_;
  }

 private:
  static bool is_section_name(const std::string& name) {
    return name == "beliefs" || name == "actions" || name == "goals" ||
           name == "resources" || name == "pursuable" || name == "rules";
  }

  // True when the upcoming tokens are `<section-name> :`.
  bool at_section_header() {
    const Token& tok = lexer_.peek();
    if (tok.kind != TokenKind::Ident || !is_section_name(tok.text)) return false;
    Lexer probe = lexer_;
    probe.next();
    return probe.peek().kind == TokenKind::Colon;
  }

  void parse_section() {
    Token name = expect(TokenKind::Ident, "a section header");
    if (!is_section_name(name.text)) fail("a section header", name);
    expect(TokenKind::Colon, "':'");
    if (name.text == "beliefs") {
      parse_literal_entries(beliefs_);
    } else if (name.text == "actions") {
      parse_literal_entries(actions_);
    } else if (name.text == "goals") {
      parse_goal_entries();
    } else if (name.text == "resources") {
      parse_resource_entries();
    } else if (name.text == "pursuable") {
      parse_literal_entries(pursuable_);
    } else {
      parse_rule_entries();
    }
  }

  bool at_entry() {
    TokenKind kind = lexer_.peek().kind;
    if (kind == TokenKind::End) return false;
    return !at_section_header();
  }

  void parse_literal_entries(std::vector<Literal>& out) {
    while (at_entry()) out.push_back(parse_literal());
  }

  void parse_goal_entries() {
    while (at_entry()) {
      Literal goal = parse_literal();
      Token at = expect(TokenKind::At, "'@'");
      (void)at;
      Token num = expect(TokenKind::Number, "a preference value");
      Rational pref = Rational::from_decimal(num.text);
      if (pref < Rational(0, 1) || pref > Rational(1, 1))
        throw Error(ErrorKind::PreferenceOutOfRange,
                    "preference " + num.text + " for '" + goal.text() + "'",
                    num.line, num.column);
      auto it = prefs_.find(goal.text());
      if (it != prefs_.end()) {
        if (!(it->second == pref))
          throw Error(ErrorKind::DuplicateGoalDeclaration,
                      "goal '" + goal.text() + "' declared twice with different preferences",
                      num.line, num.column);
      } else {
        goals_.push_back(goal);
        prefs_.emplace(goal.text(), pref);
      }
    }
  }

  void parse_resource_entries() {
    while (at_entry()) {
      Token name = expect(TokenKind::Ident, "a resource name");
      expect(TokenKind::Equals, "'='");
      Token amount = expect(TokenKind::Number, "an availability amount");
      if (kb_.resources.available.count(name.text))
        throw Error(ErrorKind::DuplicateResourceDeclaration,
                    "resource '" + name.text + "' declared twice", name.line, name.column);
      kb_.resources.available[name.text] = parse_integer(amount);
    }
  }

  void parse_rule_entries() {
    while (at_entry()) parse_rule();
  }

  void parse_rule() {
    std::vector<Literal> literals;
    std::vector<ResourceAtom> resources;
    while (lexer_.peek().kind != TokenKind::Arrow) {
      if (lexer_.peek().kind == TokenKind::End)
        fail("'->'", lexer_.peek());
      if (lexer_.peek().kind == TokenKind::Ident && lexer_.peek().text == "res") {
        resources.push_back(parse_resource_atom());
      } else {
        literals.push_back(parse_literal());
      }
    }
    lexer_.next();  // '->'
    Token head_tok = lexer_.peek();
    Literal head = parse_literal();
    expect(TokenKind::Semicolon, "';'");
    pending_rules_.push_back({head, literals, resources, head_tok.line, head_tok.column});
  }

  ResourceAtom parse_resource_atom() {
    expect(TokenKind::Ident, "'res'");
    expect(TokenKind::LParen, "'('");
    Token name = expect(TokenKind::Ident, "a resource name");
    expect(TokenKind::Comma, "','");
    Token amount = expect(TokenKind::Number, "a resource amount");
    expect(TokenKind::RParen, "')'");
    return ResourceAtom{name.text, parse_integer(amount)};
  }

  Literal parse_literal() {
    Literal lit;
    if (lexer_.peek().kind == TokenKind::Tilde) {
      lexer_.next();
      lit.negated = true;
    }
    Token name = expect(TokenKind::Ident, "a literal name");
    lit.name = name.text;
    if (lexer_.peek().kind == TokenKind::LParen) {
      lexer_.next();
      while (true) {
        Token term = lexer_.next();
        if (term.kind == TokenKind::Ident) {
          lit.args.emplace_back(term.text);
        } else if (term.kind == TokenKind::Number) {
          lit.args.emplace_back(parse_integer(term));
        } else {
          fail("a term", term);
        }
        Token sep = lexer_.next();
        if (sep.kind == TokenKind::RParen) break;
        if (sep.kind != TokenKind::Comma) fail("',' or ')'", sep);
      }
    }
    return lit;
  }

  std::int64_t parse_integer(const Token& tok) {
    if (tok.text.find('.') != std::string::npos)
      fail("an integer", tok);
    return std::stoll(tok.text);
  }

  Token expect(TokenKind kind, const std::string& what) {
    Token tok = lexer_.next();
    if (tok.kind != kind) fail(what, tok);
    return tok;
  }

  [[noreturn]] void fail(const std::string& expected, const Token& got) {
    std::string seen = got.kind == TokenKind::End ? "end of input" : "'" + got.text + "'";
    throw Error(ErrorKind::SyntaxError, "expected " + expected + ", got " + seen,
                got.line, got.column);
  }

  // Splits each pending rule premise into beliefs/subgoals/actions using the
  // declarations, then normalizes every section.
  void finalize() {
    detail::sort_unique(beliefs_);
    detail::sort_unique(actions_);
    detail::sort_unique(pursuable_);
    std::sort(goals_.begin(), goals_.end());
    kb_.beliefs = beliefs_;
    kb_.actions = actions_;
    kb_.goals = goals_;
    kb_.preferences = prefs_;
    kb_.pursuable = pursuable_;

    for (const auto& pending : pending_rules_) {
      PlanRule rule;
      rule.head = pending.head;
      for (const auto& lit : pending.literals) {
        auto kind = kb_.kind_of(lit);
        if (!kind)
          throw Error(ErrorKind::UndeclaredSymbol, "undeclared '" + lit.text() + "'",
                      pending.line, pending.column);
        switch (*kind) {
          case SymbolKind::Belief: rule.beliefs.push_back(lit); break;
          case SymbolKind::Goal: rule.subgoals.push_back(lit); break;
          case SymbolKind::Action: rule.actions.push_back(lit); break;
        }
      }
      rule.resources = pending.resources;
      detail::sort_unique(rule.beliefs);
      detail::sort_unique(rule.subgoals);
      detail::sort_unique(rule.actions);
      detail::sort_unique(rule.resources);
      kb_.rules.push_back(rule);
    }
    std::sort(kb_.rules.begin(), kb_.rules.end());
    kb_.rules.erase(std::unique(kb_.rules.begin(), kb_.rules.end()), kb_.rules.end());
  }

  struct PendingRule {
    Literal head;
    std::vector<Literal> literals;
    std::vector<ResourceAtom> resources;
    std::size_t line;
    std::size_t column;
  };

  Lexer lexer_;
  KnowledgeBase kb_;
  std::vector<Literal> beliefs_;
  std::vector<Literal> actions_;
  std::vector<Literal> goals_;
  std::vector<Literal> pursuable_;
  std::map<std::string, Rational> prefs_;
  std::vector<PendingRule> pending_rules_;
};

}  // namespace detail

inline KnowledgeBase parse_kb(const std::string& document) {
  return detail::Parser(document).parse();
}

inline KnowledgeBase parse_kb_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_kb(buffer.str());
}

}  // namespace goal_arbiter

#endif  // GOAL_ARBITER_PARSER_HPP
