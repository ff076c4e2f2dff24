#include "kripkelab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <vector>

#include "kripkelab/error.hpp"

namespace kripkelab {

// ---- construction ----------------------------------------------------------

Formula Formula::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = index;
  return Formula(std::move(n));
}

Formula Formula::bottom() {
  static const Formula kBottom = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bottom;
    return Formula(std::move(n));
  }();
  return kBottom;
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->size = 1 + lhs.size() + rhs.size();
  n->modal_depth = std::max(lhs.modal_depth(), rhs.modal_depth());
  n->lhs = std::make_shared<const Formula>(std::move(lhs));
  n->rhs = std::make_shared<const Formula>(std::move(rhs));
  return Formula(std::move(n));
}

Formula Formula::box(Formula child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Box;
  n->size = 1 + child.size();
  n->modal_depth = 1 + child.modal_depth();
  n->lhs = std::make_shared<const Formula>(std::move(child));
  return Formula(std::move(n));
}

Formula Formula::top() { return implies(bottom(), bottom()); }
Formula Formula::negation(Formula f) { return implies(std::move(f), bottom()); }
Formula Formula::conjunction(Formula a, Formula b) {
  return negation(implies(std::move(a), negation(std::move(b))));
}
Formula Formula::disjunction(Formula a, Formula b) {
  return implies(negation(std::move(a)), std::move(b));
}
Formula Formula::diamond(Formula f) { return negation(box(negation(std::move(f)))); }

std::set<std::size_t> Formula::variables() const {
  std::set<std::size_t> vars;
  std::vector<const Formula*> todo{this};
  while (!todo.empty()) {
    const Formula* f = todo.back();
    todo.pop_back();
    switch (f->kind()) {
      case Kind::Var: vars.insert(f->var_index()); break;
      case Kind::Bottom: break;
      case Kind::Implies:
        todo.push_back(&f->left());
        todo.push_back(&f->right());
        break;
      case Kind::Box: todo.push_back(&f->child()); break;
    }
  }
  return vars;
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Formula::Kind::Var: return a.var_index() == b.var_index();
    case Formula::Kind::Bottom: return true;
    case Formula::Kind::Implies: return a.left() == b.left() && a.right() == b.right();
    case Formula::Kind::Box: return a.child() == b.child();
  }
  return false;
}

Formula substitute(const Formula& f, std::size_t index, const Formula& replacement) {
  switch (f.kind()) {
    case Formula::Kind::Var: return f.var_index() == index ? replacement : f;
    case Formula::Kind::Bottom: return f;
    case Formula::Kind::Implies:
      return Formula::implies(substitute(f.left(), index, replacement),
                              substitute(f.right(), index, replacement));
    case Formula::Kind::Box: return Formula::box(substitute(f.child(), index, replacement));
  }
  return f;
}

// ---- lexer -----------------------------------------------------------------

namespace {

enum class Tok { Var, False, True, Not, And, Or, Arrow, Box, Dia, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t index = 0;
  std::size_t line = 1;
  std::size_t column = 1;
  std::string text;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Var: return "variable";
    case Tok::False: return "'false'";
    case Tok::True: return "'true'";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Box: return "'box'";
    case Tok::Dia: return "'dia'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, line_start = 0;
  auto push = [&](Tok k, std::size_t begin, std::size_t len) {
    Token t;
    t.kind = k;
    t.line = line;
    t.column = begin - line_start + 1;
    t.text = std::string(s.substr(begin, len));
    out.push_back(std::move(t));
  };
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\n') {
      ++i;
      ++line;
      line_start = i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      const std::string_view word = s.substr(begin, i - begin);
      if (word == "false") push(Tok::False, begin, i - begin);
      else if (word == "true") push(Tok::True, begin, i - begin);
      else if (word == "box") push(Tok::Box, begin, i - begin);
      else if (word == "dia") push(Tok::Dia, begin, i - begin);
      else if (word.size() >= 2 && word[0] == 'p' &&
               std::all_of(word.begin() + 1, word.end(),
                           [](char d) { return d >= '0' && d <= '9'; })) {
        std::size_t index = 0;
        for (char d : word.substr(1)) {
          if (index > (std::numeric_limits<std::size_t>::max() - 9) / 10)
            throw ParseError("variable index too large", line, begin - line_start + 1);
          index = index * 10 + static_cast<std::size_t>(d - '0');
        }
        push(Tok::Var, begin, i - begin);
        out.back().index = index;
      } else {
        throw ParseError("unknown token '" + std::string(word) + "'", line, begin - line_start + 1);
      }
      continue;
    }
    auto two = [&](std::string_view sym) { return s.substr(i, 2) == sym; };
    if (two("->")) { push(Tok::Arrow, begin, 2); i += 2; continue; }
    if (two("[]")) { push(Tok::Box, begin, 2); i += 2; continue; }
    if (two("<>")) { push(Tok::Dia, begin, 2); i += 2; continue; }
    switch (c) {
      case '~': push(Tok::Not, begin, 1); break;
      case '&': push(Tok::And, begin, 1); break;
      case '|': push(Tok::Or, begin, 1); break;
      case '(': push(Tok::LParen, begin, 1); break;
      case ')': push(Tok::RParen, begin, 1); break;
      default:
        throw ParseError("unknown token '" + std::string(1, c) + "'", line, begin - line_start + 1);
    }
    ++i;
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = s.size() - line_start + 1;
  out.push_back(end);
  return out;
}

// ---- recursive descent -----------------------------------------------------

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected " + std::string(describe(peek().kind)));
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) f = Formula::disjunction(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::And)) f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (accept(Tok::Box)) return Formula::box(unary());
    if (accept(Tok::Dia)) return Formula::diamond(unary());
    return atom();
  }

  Formula atom() {
    switch (peek().kind) {
      case Tok::Var: return Formula::var(advance().index);
      case Tok::False: advance(); return Formula::bottom();
      case Tok::True: advance(); return Formula::top();
      case Tok::LParen: {
        advance();
        Formula f = implication();
        if (!accept(Tok::RParen)) fail("expected ')' but found " + std::string(describe(peek().kind)));
        return f;
      }
      default:
        fail("expected a formula but found " + std::string(describe(peek().kind)));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---- rendering -------------------------------------------------------------

enum class Shape { Var, False, True, Not, Dia, Box, And, Or, Imp };

struct View {
  Shape shape;
  const Formula* a = nullptr;
  const Formula* b = nullptr;
};

bool is_bottom(const Formula& f) { return f.kind() == Formula::Kind::Bottom; }

View view(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Var: return {Shape::Var};
    case Formula::Kind::Bottom: return {Shape::False};
    case Formula::Kind::Box: return {Shape::Box, &f.child()};
    case Formula::Kind::Implies: break;
  }
  const Formula& l = f.left();
  const Formula& r = f.right();
  if (is_bottom(r)) {
    if (is_bottom(l)) return {Shape::True};
    if (l.kind() == Formula::Kind::Box && l.child().kind() == Formula::Kind::Implies &&
        is_bottom(l.child().right()))
      return {Shape::Dia, &l.child().left()};
    if (l.kind() == Formula::Kind::Implies && l.right().kind() == Formula::Kind::Implies &&
        is_bottom(l.right().right()))
      return {Shape::And, &l.left(), &l.right().left()};
    return {Shape::Not, &l};
  }
  if (l.kind() == Formula::Kind::Implies && is_bottom(l.right()) && !is_bottom(l.left()))
    return {Shape::Or, &l.left(), &r};
  return {Shape::Imp, &l, &r};
}

int precedence(Shape s) {
  switch (s) {
    case Shape::Var:
    case Shape::False:
    case Shape::True: return 5;
    case Shape::Not:
    case Shape::Dia:
    case Shape::Box: return 4;
    case Shape::And: return 3;
    case Shape::Or: return 2;
    case Shape::Imp: return 1;
  }
  return 0;
}

void render_into(const Formula& f, std::string& out);

void render_child(const Formula& f, bool parens, std::string& out) {
  if (parens) out.push_back('(');
  render_into(f, out);
  if (parens) out.push_back(')');
}

void render_into(const Formula& f, std::string& out) {
  const View v = view(f);
  const int p = precedence(v.shape);
  switch (v.shape) {
    case Shape::Var:
      out += 'p';
      out += std::to_string(f.var_index());
      return;
    case Shape::False: out += "false"; return;
    case Shape::True: out += "true"; return;
    case Shape::Not:
      out += '~';
      render_child(*v.a, precedence(view(*v.a).shape) < p, out);
      return;
    case Shape::Dia:
    case Shape::Box:
      out += v.shape == Shape::Dia ? "dia " : "box ";
      render_child(*v.a, precedence(view(*v.a).shape) < p, out);
      return;
    case Shape::And:
    case Shape::Or:
      render_child(*v.a, precedence(view(*v.a).shape) < p, out);
      out += v.shape == Shape::And ? " & " : " | ";
      render_child(*v.b, precedence(view(*v.b).shape) <= p, out);
      return;
    case Shape::Imp:
      render_child(*v.a, precedence(view(*v.a).shape) <= p, out);
      out += " -> ";
      render_child(*v.b, false, out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(tokenize(text)).parse(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

}  // namespace kripkelab
