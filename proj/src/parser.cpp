#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "atld/errors.hpp"
#include "atld/formula.hpp"

// Recursive-descent parser for the concrete syntax:
//
//   formula      := implies
//   implies      := or ('->' implies)?
//   or           := and ('|' and)*
//   and          := unary ('&' unary)*
//   unary        := '!' unary | 'K' '{' IDENT '}' unary
//                 | coalitionmod | updatemod | atom
//   coalitionmod := '<' agentset '>'
//                   ('X' unary | 'F' unary | 'G' unary
//                   | formula ('U'|'R') formula)
//   updatemod    := '[' item (',' item)* ']' ('+'|'-') unary
//   item         := formula ':' IDENT '->' agentset ('|' agentset)?
//   atom         := 'true' | 'false' | 'has' '(' IDENT ',' IDENT ')'
//                 | IDENT | '(' formula ')'
//   agentset     := '{' (IDENT (',' IDENT)*)? '}'
//
// U, R, X, F, G, K, true, false, has are reserved words. Identifiers
// starting with '@' may contain one ':' (state-tag propositions).

namespace atld {

namespace {

struct Token {
  enum Type {
    Ident, KwTrue, KwFalse, KwHas, KwU, KwR, KwX, KwF, KwG, KwK,
    Bang, Amp, Pipe, Arrow, LParen, RParen, LAngle, RAngle,
    LBrace, RBrace, LBracket, RBracket, Plus, Minus, Colon, Comma, End
  } type;
  std::string text;
  size_t pos;
};

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_' || c == '@'; }
bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    size_t start = i;
    if (ident_start(c)) {
      bool tagged = (c == '@');
      ++i;
      while (i < s.size() && ident_char(s[i])) ++i;
      // "@state:q0" is a single identifier; the ':' is consumed greedily
      // once, together with the trailing name.
      if (tagged && i < s.size() && s[i] == ':' && i + 1 < s.size() &&
          ident_start(s[i + 1]) && s[i + 1] != '@') {
        ++i;
        while (i < s.size() && ident_char(s[i])) ++i;
      }
      std::string word = s.substr(start, i - start);
      Token::Type t = Token::Ident;
      if (word == "true") t = Token::KwTrue;
      else if (word == "false") t = Token::KwFalse;
      else if (word == "has") t = Token::KwHas;
      else if (word == "U") t = Token::KwU;
      else if (word == "R") t = Token::KwR;
      else if (word == "X") t = Token::KwX;
      else if (word == "F") t = Token::KwF;
      else if (word == "G") t = Token::KwG;
      else if (word == "K") t = Token::KwK;
      out.push_back({t, word, start});
      continue;
    }
    ++i;
    switch (c) {
      case '!': out.push_back({Token::Bang, "!", start}); break;
      case '&': out.push_back({Token::Amp, "&", start}); break;
      case '|': out.push_back({Token::Pipe, "|", start}); break;
      case '(': out.push_back({Token::LParen, "(", start}); break;
      case ')': out.push_back({Token::RParen, ")", start}); break;
      case '<': out.push_back({Token::LAngle, "<", start}); break;
      case '>': out.push_back({Token::RAngle, ">", start}); break;
      case '{': out.push_back({Token::LBrace, "{", start}); break;
      case '}': out.push_back({Token::RBrace, "}", start}); break;
      case '[': out.push_back({Token::LBracket, "[", start}); break;
      case ']': out.push_back({Token::RBracket, "]", start}); break;
      case '+': out.push_back({Token::Plus, "+", start}); break;
      case ':': out.push_back({Token::Colon, ":", start}); break;
      case ',': out.push_back({Token::Comma, ",", start}); break;
      case '-':
        if (i < s.size() && s[i] == '>') {
          ++i;
          out.push_back({Token::Arrow, "->", start});
        } else {
          out.push_back({Token::Minus, "-", start});
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  FormulaPtr formula() { return implies(); }

  std::vector<UpdateSpec> update_chain() {
    std::vector<UpdateSpec> specs;
    while (peek().type == Token::LBracket) specs.push_back(update_spec());
    if (specs.empty()) fail("expected '[' starting an update");
    return specs;
  }

  void expect_end() {
    if (peek().type != Token::End) fail("trailing input");
  }

 private:
  std::vector<Token> toks_;
  size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  Token take() { return toks_[at_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + (peek().text.empty() ? "" : ", got '" + peek().text + "'"),
                     peek().pos);
  }
  Token expect(Token::Type t, const char* what) {
    if (peek().type != t) fail(std::string("expected ") + what);
    return take();
  }

  FormulaPtr implies() {
    FormulaPtr a = disj();
    if (peek().type == Token::Arrow) {
      take();
      return f_implies(a, implies());
    }
    return a;
  }

  FormulaPtr disj() {
    FormulaPtr a = conj();
    while (peek().type == Token::Pipe) {
      take();
      a = f_or(a, conj());
    }
    return a;
  }

  FormulaPtr conj() {
    FormulaPtr a = unary();
    while (peek().type == Token::Amp) {
      take();
      a = f_and(a, unary());
    }
    return a;
  }

  std::vector<std::string> agent_set() {
    expect(Token::LBrace, "'{'");
    std::vector<std::string> out;
    if (peek().type != Token::RBrace) {
      out.push_back(expect(Token::Ident, "agent name").text);
      while (peek().type == Token::Comma) {
        take();
        out.push_back(expect(Token::Ident, "agent name").text);
      }
    }
    expect(Token::RBrace, "'}'");
    return out;
  }

  UpdateSpec update_spec() {
    expect(Token::LBracket, "'['");
    UpdateSpec spec;
    for (;;) {
      UpdateItem item;
      item.precondition = implies();
      expect(Token::Colon, "':'");
      item.action = expect(Token::Ident, "action name").text;
      expect(Token::Arrow, "'->'");
      item.targets = agent_set();
      if (peek().type == Token::Pipe) {
        take();
        item.informed = agent_set();
      }
      spec.items.push_back(std::move(item));
      if (peek().type != Token::Comma) break;
      take();
    }
    expect(Token::RBracket, "']'");
    if (peek().type == Token::Plus) {
      take();
      spec.sign = Sign::Grant;
    } else if (peek().type == Token::Minus) {
      take();
      spec.sign = Sign::Remove;
    } else {
      fail("expected '+' or '-' after update");
    }
    return spec;
  }

  FormulaPtr coalition_mod() {
    expect(Token::LAngle, "'<'");
    auto coal = agent_set();
    expect(Token::RAngle, "'>'");
    switch (peek().type) {
      case Token::KwX: take(); return f_next(coal, unary());
      case Token::KwF: take(); return f_eventually(coal, unary());
      case Token::KwG: take(); return f_globally(coal, unary());
      default: break;
    }
    FormulaPtr a = implies();
    if (peek().type == Token::KwU) {
      take();
      return f_until(coal, a, implies());
    }
    if (peek().type == Token::KwR) {
      take();
      return f_release(coal, a, implies());
    }
    fail("expected 'U' or 'R' in coalition modality");
  }

  FormulaPtr unary() {
    switch (peek().type) {
      case Token::Bang:
        take();
        return f_not(unary());
      case Token::KwK: {
        take();
        expect(Token::LBrace, "'{'");
        std::string agent = expect(Token::Ident, "agent name").text;
        expect(Token::RBrace, "'}'");
        return f_knows(agent, unary());
      }
      case Token::LAngle:
        return coalition_mod();
      case Token::LBracket: {
        UpdateSpec spec = update_spec();
        return f_update(std::move(spec), unary());
      }
      case Token::KwTrue: take(); return f_true();
      case Token::KwFalse: take(); return f_false();
      case Token::KwHas: {
        take();
        expect(Token::LParen, "'('");
        std::string agent = expect(Token::Ident, "agent name").text;
        expect(Token::Comma, "','");
        std::string action = expect(Token::Ident, "action name").text;
        expect(Token::RParen, "')'");
        return f_has(agent, action);
      }
      case Token::Ident:
        return f_prop(take().text);
      case Token::LParen: {
        take();
        FormulaPtr a = implies();
        expect(Token::RParen, "')'");
        return a;
      }
      default:
        fail("expected a formula");
    }
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  FormulaPtr f = p.formula();
  p.expect_end();
  return f;
}

std::vector<UpdateSpec> parse_updates(const std::string& text) {
  Parser p(text);
  auto specs = p.update_chain();
  p.expect_end();
  return specs;
}

}  // namespace atld
