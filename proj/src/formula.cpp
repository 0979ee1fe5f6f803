#include "tww/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace tww {

FormulaPtr Formula::atom_eq(std::string a, std::string b) {
  return std::make_shared<Formula>(Formula{Kind::Eq, std::move(a), std::move(b), nullptr, nullptr});
}
FormulaPtr Formula::atom_edge(std::string a, std::string b) {
  return std::make_shared<Formula>(Formula{Kind::Edge, std::move(a), std::move(b), nullptr, nullptr});
}
FormulaPtr Formula::neg(FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Kind::Not, {}, {}, std::move(f), nullptr});
}
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Kind::And, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Kind::Or, {}, {}, std::move(a), std::move(b)});
}
FormulaPtr Formula::exists(std::string v, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Kind::Exists, std::move(v), {}, std::move(f), nullptr});
}
FormulaPtr Formula::forall(std::string v, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Kind::Forall, std::move(v), {}, std::move(f), nullptr});
}

namespace {

struct Token {
  std::string text;
  std::size_t pos;
};

bool is_keyword(const std::string& s) {
  return s == "exists" || s == "forall" || s == "not" || s == "and" || s == "or" || s == "E" || s == "true" ||
         s == "false";
}

class Parser {
 public:
  explicit Parser(std::string_view src) {
    std::size_t i = 0;
    while (i < src.size()) {
      char c = src[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
          ++j;
        toks_.push_back({std::string(src.substr(i, j - i)), i});
        i = j;
      } else if (c == '(' || c == ')' || c == ',' || c == '=') {
        toks_.push_back({std::string(1, c), i});
        ++i;
      } else {
        throw FormulaSyntaxError(i, std::string("unexpected character '") + c + "'");
      }
    }
    end_ = src.size();
  }

  FormulaPtr parse() {
    auto f = parse_or();
    if (i_ != toks_.size()) throw FormulaSyntaxError(toks_[i_].pos, "unexpected '" + toks_[i_].text + "'");
    return f;
  }

 private:
  const Token* peek() const { return i_ < toks_.size() ? &toks_[i_] : nullptr; }
  bool accept(const char* s) {
    if (peek() && peek()->text == s) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(const char* s) {
    if (!accept(s)) throw FormulaSyntaxError(pos(), std::string("expected '") + s + "'");
  }
  std::size_t pos() const { return peek() ? peek()->pos : end_; }

  std::string variable() {
    const Token* t = peek();
    if (!t) throw FormulaSyntaxError(end_, "expected variable, got end of input");
    bool ident = std::isalpha(static_cast<unsigned char>(t->text[0])) || t->text[0] == '_';
    if (!ident || is_keyword(t->text)) throw FormulaSyntaxError(t->pos, "expected variable, got '" + t->text + "'");
    ++i_;
    return t->text;
  }

  FormulaPtr parse_or() {
    auto f = parse_and();
    while (accept("or")) f = Formula::disj(f, parse_and());
    return f;
  }

  FormulaPtr parse_and() {
    auto f = parse_unary();
    while (accept("and")) f = Formula::conj(f, parse_unary());
    return f;
  }

  FormulaPtr parse_unary() {
    if (accept("not")) return Formula::neg(parse_unary());
    if (accept("exists")) {
      auto v = variable();
      return Formula::exists(v, parse_unary());
    }
    if (accept("forall")) {
      auto v = variable();
      return Formula::forall(v, parse_unary());
    }
    if (accept("true")) return std::make_shared<Formula>(Formula{Formula::Kind::True, {}, {}, nullptr, nullptr});
    if (accept("false")) return std::make_shared<Formula>(Formula{Formula::Kind::False, {}, {}, nullptr, nullptr});
    if (accept("(")) {
      auto f = parse_or();
      expect(")");
      return f;
    }
    if (accept("E")) {
      if (accept("(")) {
        auto a = variable();
        expect(",");
        auto b = variable();
        expect(")");
        return Formula::atom_edge(a, b);
      }
      auto a = variable();
      auto b = variable();
      return Formula::atom_edge(a, b);
    }
    auto a = variable();
    expect("=");
    auto b = variable();
    return Formula::atom_eq(a, b);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::size_t end_ = 0;
};

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
    case K::False:
      return;
    case K::Eq:
    case K::Edge:
      if (!bound.count(f.x)) out.insert(f.x);
      if (!bound.count(f.y)) out.insert(f.y);
      return;
    case K::Not:
      collect_free(*f.left, bound, out);
      return;
    case K::And:
    case K::Or:
      collect_free(*f.left, bound, out);
      collect_free(*f.right, bound, out);
      return;
    case K::Exists:
    case K::Forall: {
      bool fresh = bound.insert(f.x).second;
      collect_free(*f.left, bound, out);
      if (fresh) bound.erase(f.x);
      return;
    }
  }
}

struct Evaluator {
  const Graph& g;
  std::map<std::string, int> env;

  int value(const std::string& v) const {
    auto it = env.find(v);
    if (it == env.end()) throw std::invalid_argument("no value for free variable '" + v + "'");
    return it->second;
  }

  bool eval(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Eq: return value(f.x) == value(f.y);
      case K::Edge: {
        int a = value(f.x), b = value(f.y);
        return a != b && g.has_edge(a, b);
      }
      case K::Not: return !eval(*f.left);
      case K::And: return eval(*f.left) && eval(*f.right);
      case K::Or: return eval(*f.left) || eval(*f.right);
      case K::Exists:
      case K::Forall: {
        bool want = f.kind == K::Exists;
        auto it = env.find(f.x);
        bool had = it != env.end();
        int saved = had ? it->second : 0;
        bool result = !want;
        for (int v = 1; v <= g.n(); ++v) {
          env[f.x] = v;
          if (eval(*f.left) == want) {
            result = want;
            break;
          }
        }
        if (had)
          env[f.x] = saved;
        else
          env.erase(f.x);
        return result;
      }
    }
    return false;
  }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Eq: return f.x + " = " + f.y;
    case K::Edge: return "E " + f.x + " " + f.y;
    case K::Not: return "not (" + to_string(*f.left) + ")";
    case K::And: return "(" + to_string(*f.left) + " and " + to_string(*f.right) + ")";
    case K::Or: return "(" + to_string(*f.left) + " or " + to_string(*f.right) + ")";
    case K::Exists: return "exists " + f.x + " (" + to_string(*f.left) + ")";
    case K::Forall: return "forall " + f.x + " (" + to_string(*f.left) + ")";
  }
  return {};
}

std::vector<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return {out.begin(), out.end()};
}

int quantifier_rank(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True:
    case K::False:
    case K::Eq:
    case K::Edge:
      return 0;
    case K::Not:
      return quantifier_rank(*f.left);
    case K::And:
    case K::Or:
      return std::max(quantifier_rank(*f.left), quantifier_rank(*f.right));
    case K::Exists:
    case K::Forall:
      return 1 + quantifier_rank(*f.left);
  }
  return 0;
}

bool naive_eval(const Graph& g, const Formula& f, const Assignment& asg) {
  Evaluator ev{g, asg};
  return ev.eval(f);
}

std::vector<std::vector<int>> naive_satisfying_set(const Graph& g, const Formula& f) {
  auto vars = free_vars(f);
  std::vector<std::vector<int>> out;
  if (g.n() == 0) return out;
  std::vector<int> tup(vars.size(), 1);
  Evaluator ev{g, {}};
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) ev.env[vars[i]] = tup[i];
    if (ev.eval(f)) out.push_back(tup);
    std::size_t i = vars.size();
    while (i > 0 && tup[i - 1] == g.n()) tup[--i] = 1;
    if (i == 0) break;
    ++tup[i - 1];
  }
  return out;
}

}  // namespace tww
