#include "delcheck/parser.hpp"

#include <cctype>
#include <charconv>
#include <sstream>
#include <utility>
#include <vector>

#include "delcheck/errors.hpp"

namespace delcheck {

namespace {

enum class TokType {
  KwVars,
  KwLaw,
  KwObs,
  KwValidQ,
  KwTop,
  KwBot,
  KwAnd,
  KwOr,
  KwKnows,
  KwWhether,
  KwThat,
  Ident,
  Int,
  Comma,
  Colon,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Bang,
  Tilde,
  Amp,
  Pipe,
  Arrow,
  DArrow,
  End,
};

struct Token {
  TokType type;
  std::string text;
  int value = 0;  // Int only
  SourcePos pos;
};

TokType keyword_type(const std::string& word) {
  if (word == "VARS") return TokType::KwVars;
  if (word == "LAW") return TokType::KwLaw;
  if (word == "OBS") return TokType::KwObs;
  if (word == "Top") return TokType::KwTop;
  if (word == "Bot") return TokType::KwBot;
  if (word == "AND") return TokType::KwAnd;
  if (word == "OR") return TokType::KwOr;
  if (word == "knows") return TokType::KwKnows;
  if (word == "whether") return TokType::KwWhether;
  if (word == "that") return TokType::KwThat;
  return TokType::Ident;
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;

  auto bump = [&](char c) {
    if (c == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
    ++i;
  };
  auto push = [&](TokType type, std::string lexeme, SourcePos at,
                  int value = 0) {
    out.push_back(Token{type, std::move(lexeme), value, at});
  };

  while (i < text.size()) {
    char c = text[i];
    SourcePos at = pos;
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(c);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') bump(text[i]);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits += text[i];
        bump(text[i]);
      }
      int value = 0;
      auto [ptr, ec] =
          std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec != std::errc{}) {
        throw ParseError(at, "proposition id", digits);
      }
      push(TokType::Int, std::move(digits), at, value);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      while (i < text.size() &&
             std::isalnum(static_cast<unsigned char>(text[i]))) {
        word += text[i];
        bump(text[i]);
      }
      if (word == "VALID" && i < text.size() && text[i] == '?') {
        bump('?');
        push(TokType::KwValidQ, "VALID?", at);
        continue;
      }
      TokType type = keyword_type(word);
      push(type, std::move(word), at);
      continue;
    }
    switch (c) {
      case ',':
        bump(c);
        push(TokType::Comma, ",", at);
        continue;
      case ':':
        bump(c);
        push(TokType::Colon, ":", at);
        continue;
      case '(':
        bump(c);
        push(TokType::LParen, "(", at);
        continue;
      case ')':
        bump(c);
        push(TokType::RParen, ")", at);
        continue;
      case '[':
        bump(c);
        push(TokType::LBracket, "[", at);
        continue;
      case ']':
        bump(c);
        push(TokType::RBracket, "]", at);
        continue;
      case '!':
        bump(c);
        push(TokType::Bang, "!", at);
        continue;
      case '~':
        bump(c);
        push(TokType::Tilde, "~", at);
        continue;
      case '&':
        bump(c);
        push(TokType::Amp, "&", at);
        continue;
      case '|':
        bump(c);
        push(TokType::Pipe, "|", at);
        continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          bump('-');
          bump('>');
          push(TokType::Arrow, "->", at);
          continue;
        }
        break;
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          bump('<');
          bump('-');
          bump('>');
          push(TokType::DArrow, "<->", at);
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(at, "valid token", std::string(1, c));
  }
  push(TokType::End, "end of input", pos);
  return out;
}

constexpr int kMaxNesting = 5000;

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(lex(text)) {}

  Formula formula() {
    Formula f = parse_iff();
    expect(TokType::End, "end of input");
    return f;
  }

  Scene scene() {
    Scene s;
    expect_section(TokType::KwVars, "VARS");
    std::set<int> seen;
    auto declare = [&] {
      SourcePos at = peek().pos;
      Proposition p = prop_id();
      if (!seen.insert(p.id()).second) {
        throw DuplicatePropositionError(at, p.id());
      }
      s.vocabulary.push_back(p);
    };
    declare();
    while (peek().type == TokType::Comma) {
      advance();
      declare();
    }
    expect_section(TokType::KwLaw, "LAW");
    s.law = parse_iff();
    expect_section(TokType::KwObs, "OBS");
    if (peek().type != TokType::Ident) {
      throw ParseError(peek().pos, "agent name", peek().text);
    }
    while (peek().type == TokType::Ident) {
      Token name = advance();
      AgentName agent(name.text);
      if (s.observations.contains(agent)) {
        throw DuplicateAgentError(name.pos, name.text);
      }
      expect(TokType::Colon, "':'");
      std::set<Proposition> observed;
      if (peek().type == TokType::Int) {
        for (Proposition p : props()) observed.insert(p);
      }
      s.observations.emplace(std::move(agent), std::move(observed));
    }
    expect_section(TokType::KwValidQ, "VALID?");
    s.query = parse_iff();
    expect(TokType::End, "end of input");
    validate_scene(s);
    return s;
  }

 private:
  const Token& peek() const { return tokens_[i_]; }

  Token advance() {
    Token t = tokens_[i_];
    if (t.type != TokType::End) ++i_;
    return t;
  }

  Token expect(TokType type, const std::string& description) {
    if (peek().type != type) {
      throw ParseError(peek().pos, description, peek().text);
    }
    return advance();
  }

  void expect_section(TokType type, const std::string& section) {
    if (peek().type != type) {
      throw MissingSectionError(peek().pos, section, peek().text);
    }
    advance();
  }

  std::vector<Proposition> props() {
    std::vector<Proposition> out;
    out.push_back(prop_id());
    while (peek().type == TokType::Comma) {
      advance();
      out.push_back(prop_id());
    }
    return out;
  }

  Proposition prop_id() {
    Token t = expect(TokType::Int, "proposition id");
    if (t.value < 1) throw ParseError(t.pos, "proposition id", t.text);
    return Proposition(t.value);
  }

  struct NestingGuard {
    explicit NestingGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) {
        throw ParseError(parser.peek().pos, "nesting depth <= 5000",
                         parser.peek().text);
      }
    }
    ~NestingGuard() { --parser.depth_; }
    Parser& parser;
  };

  Formula parse_iff() {
    NestingGuard guard(*this);
    Formula f = parse_imp();
    while (peek().type == TokType::DArrow) {
      advance();
      f = Formula::equiv(std::move(f), parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    NestingGuard guard(*this);
    Formula lhs = parse_disj();
    if (peek().type == TokType::Arrow) {
      advance();
      return Formula::impl(std::move(lhs), parse_imp());
    }
    return lhs;
  }

  Formula parse_disj() {
    std::vector<Formula> parts;
    parts.push_back(parse_conj());
    while (peek().type == TokType::Pipe) {
      advance();
      parts.push_back(parse_conj());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Formula::disj(std::move(parts));
  }

  Formula parse_conj() {
    std::vector<Formula> parts;
    parts.push_back(parse_unary());
    while (peek().type == TokType::Amp) {
      advance();
      parts.push_back(parse_unary());
    }
    if (parts.size() == 1) return std::move(parts.front());
    return Formula::conj(std::move(parts));
  }

  Formula parse_unary() {
    NestingGuard guard(*this);
    switch (peek().type) {
      case TokType::Tilde:
        advance();
        return Formula::neg(parse_unary());
      case TokType::LBracket: {
        advance();
        expect(TokType::Bang, "'!'");
        Formula announced = parse_iff();
        expect(TokType::RBracket, "']'");
        return Formula::announce(std::move(announced), parse_unary());
      }
      case TokType::Ident: {
        Token name = advance();
        expect(TokType::KwKnows, "'knows'");
        bool whether = false;
        if (peek().type == TokType::KwWhether) {
          advance();
          whether = true;
        } else {
          expect(TokType::KwThat, "'whether' or 'that'");
        }
        AgentName agent(name.text);
        Formula body = parse_unary();
        return whether ? Formula::knows_whether(std::move(agent),
                                                std::move(body))
                       : Formula::knows_that(std::move(agent),
                                             std::move(body));
      }
      case TokType::KwAnd:
      case TokType::KwOr: {
        bool conj = peek().type == TokType::KwAnd;
        advance();
        expect(TokType::LParen, "'('");
        std::vector<Formula> parts;
        parts.push_back(parse_iff());
        while (peek().type == TokType::Comma) {
          advance();
          parts.push_back(parse_iff());
        }
        expect(TokType::RParen, "')'");
        if (parts.size() == 1) return std::move(parts.front());
        return conj ? Formula::conj(std::move(parts))
                    : Formula::disj(std::move(parts));
      }
      case TokType::KwTop:
        advance();
        return Formula::top();
      case TokType::KwBot:
        advance();
        return Formula::bot();
      case TokType::Int:
        return Formula::prop(prop_id());
      case TokType::LParen: {
        advance();
        Formula f = parse_iff();
        expect(TokType::RParen, "')'");
        return f;
      }
      default:
        throw ParseError(peek().pos, "formula", peek().text);
    }
  }

  std::vector<Token> tokens_;
  std::size_t i_ = 0;
  int depth_ = 0;
};

void print_formula_to(const Formula& f, std::ostream& os) {
  using Kind = Formula::Kind;
  switch (f.kind()) {
    case Kind::Top:
      os << "Top";
      return;
    case Kind::Bot:
      os << "Bot";
      return;
    case Kind::Prop:
      os << f.atom().id();
      return;
    case Kind::Neg:
      os << '~';
      print_formula_to(f.child(), os);
      return;
    case Kind::Conj:
    case Kind::Disj: {
      const char* sep = f.kind() == Kind::Conj ? " & " : " | ";
      os << '(';
      bool first = true;
      for (const Formula& c : f.children()) {
        if (!first) os << sep;
        first = false;
        print_formula_to(c, os);
      }
      os << ')';
      return;
    }
    case Kind::Impl:
    case Kind::Equiv: {
      os << '(';
      print_formula_to(f.child(0), os);
      os << (f.kind() == Kind::Impl ? " -> " : " <-> ");
      print_formula_to(f.child(1), os);
      os << ')';
      return;
    }
    case Kind::KnowsThat:
    case Kind::KnowsWhether:
      os << f.agent().str()
         << (f.kind() == Kind::KnowsThat ? " knows that " : " knows whether ");
      print_formula_to(f.child(), os);
      return;
    case Kind::Announce:
      os << "[!";
      print_formula_to(f.announced(), os);
      os << "] ";
      print_formula_to(f.continuation(), os);
      return;
  }
}

void print_props(const std::vector<Proposition>& props, std::ostream& os) {
  bool first = true;
  for (Proposition p : props) {
    if (!first) os << ',';
    first = false;
    os << p.id();
  }
}

}  // namespace

Scene parse_scene(const std::string& text) { return Parser(text).scene(); }

Formula parse_formula(const std::string& text) {
  return Parser(text).formula();
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print_formula_to(f, os);
  return os.str();
}

std::string print_scene(const Scene& s) {
  std::ostringstream os;
  os << "VARS ";
  print_props(s.vocabulary, os);
  os << "\nLAW ";
  print_formula_to(s.law, os);
  os << "\nOBS";
  for (const auto& [agent, observed] : s.observations) {
    os << ' ' << agent.str() << ':';
    print_props({observed.begin(), observed.end()}, os);
  }
  os << "\nVALID? ";
  print_formula_to(s.query, os);
  os << '\n';
  return os.str();
}

}  // namespace delcheck
