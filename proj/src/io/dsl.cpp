#include "io/dsl.hpp"

#include "core/decompose.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace relcalc {

namespace {

enum class Tok { Ident, Number, Plus, Minus, CwPlus, Star, LParen, RParen, Comma, Equals, Adj, Inv, Sep, End };

struct Token {
  Tok kind;
  std::string text;
  cplx value{};
  int line = 1, col = 1;
};

[[noreturn]] void syntax(int line, int col, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

[[noreturn]] void type_error(const Expr& e, const std::string& msg) {
  throw Error(ErrorCode::Type, "line " + std::to_string(e.line) + ", column " + std::to_string(e.col) + ": " + msg);
}

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token t{Tok::End, "", {}, line_, col_};
      if (pos_ >= s_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = s_[pos_];
      if (c == '\n' || c == ';') {
        t.kind = Tok::Sep;
        t.text = std::string(1, c);
        advance(1);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t e = pos_;
        while (e < s_.size() && ident_char(s_[e])) ++e;
        t.kind = Tok::Ident;
        t.text = s_.substr(pos_, e - pos_);
        advance(e - pos_);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
        lex_number(t);
      } else if (s_.compare(pos_, 3, "(+)") == 0) {
        t.kind = Tok::CwPlus;
        t.text = "(+)";
        advance(3);
      } else if (s_.compare(pos_, 3, "^-1") == 0) {
        t.kind = Tok::Inv;
        t.text = "^-1";
        advance(3);
      } else if (s_.compare(pos_, 2, "^*") == 0) {
        t.kind = Tok::Adj;
        t.text = "^*";
        advance(2);
      } else {
        switch (c) {
          case '+': t.kind = Tok::Plus; break;
          case '-': t.kind = Tok::Minus; break;
          case '*': t.kind = Tok::Star; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case '=': t.kind = Tok::Equals; break;
          default: {
            std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + hex(c);
            syntax(line_, col_, "unexpected character '" + shown + "'");
          }
        }
        t.text = std::string(1, c);
        advance(1);
      }
      out.push_back(t);
    }
  }

 private:
  static std::string hex(char c) {
    const char* d = "0123456789abcdef";
    const auto u = static_cast<unsigned char>(c);
    return {d[u >> 4], d[u & 15]};
  }

  void advance(size_t k) {
    for (size_t i = 0; i < k; ++i) {
      if (s_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_blank() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance(1);
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance(1);
      } else {
        break;
      }
    }
  }

  // Length of a decimal (digits, fraction, exponent) starting at p, or 0.
  size_t decimal_at(size_t p) const {
    size_t e = p;
    bool digits = false;
    while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e, digits = true;
    if (e < s_.size() && s_[e] == '.') {
      ++e;
      while (e < s_.size() && std::isdigit(static_cast<unsigned char>(s_[e]))) ++e, digits = true;
    }
    if (!digits) return 0;
    if (e < s_.size() && (s_[e] == 'e' || s_[e] == 'E')) {
      size_t x = e + 1;
      if (x < s_.size() && (s_[x] == '+' || s_[x] == '-')) ++x;
      const size_t d0 = x;
      while (x < s_.size() && std::isdigit(static_cast<unsigned char>(s_[x]))) ++x;
      if (x > d0) e = x;
    }
    return e - p;
  }

  bool imag_unit_at(size_t p) const { return p < s_.size() && s_[p] == 'i' && (p + 1 >= s_.size() || !ident_char(s_[p + 1])); }

  void lex_number(Token& t) {
    const size_t a = decimal_at(pos_);
    size_t end = pos_ + a;
    if (imag_unit_at(end)) {
      end += 1;
    } else if (end < s_.size() && (s_[end] == '+' || s_[end] == '-')) {
      // "a+bi" glued together is one literal.
      const size_t b = decimal_at(end + 1);
      if (imag_unit_at(end + 1 + b)) end = end + 1 + b + 1;
    }
    t.kind = Tok::Number;
    t.text = s_.substr(pos_, end - pos_);
    auto v = parse_complex(t.text);
    if (!v) syntax(line_, col_, "malformed number '" + t.text + "'");
    if (end < s_.size() && ident_char(s_[end]))
      syntax(line_, col_ + static_cast<int>(end - pos_), "unexpected character after number");
    t.value = *v;
    advance(end - pos_);
  }

  const std::string& s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

std::unique_ptr<Expr> node(Expr::Kind k, const Token& at) {
  auto e = std::make_unique<Expr>();
  e->kind = k;
  e->line = at.line;
  e->col = at.col;
  return e;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Program program() {
    Program p;
    for (;;) {
      while (peek().kind == Tok::Sep) ++i_;
      if (peek().kind == Tok::End) break;
      p.stmts.push_back(statement());
      if (peek().kind != Tok::Sep && peek().kind != Tok::End) unexpected("expected end of statement");
    }
    return p;
  }

 private:
  static constexpr int kMaxDepth = 200;

  const Token& peek(size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  const Token& take() { return t_[std::min(i_++, t_.size() - 1)]; }

  [[noreturn]] void unexpected(const std::string& what) const {
    const Token& t = peek();
    if (t.kind == Tok::End) syntax(t.line, t.col, what + ", found end of input");
    if (t.kind == Tok::Sep) syntax(t.line, t.col, what + ", found end of statement");
    syntax(t.line, t.col, what + ", found '" + t.text + "'");
  }

  void expect(Tok k, const char* what) {
    if (peek().kind != k) unexpected(std::string("expected ") + what);
    ++i_;
  }

  Stmt statement() {
    Stmt s;
    if (peek().kind == Tok::Ident && peek().text == "print") {
      ++i_;
      s.kind = Stmt::Kind::Print;
      s.expr = expr();
    } else if (peek().kind == Tok::Ident && peek(1).kind == Tok::Equals) {
      s.kind = Stmt::Kind::Assign;
      s.target = take().text;
      ++i_;
      s.expr = expr();
    } else {
      s.kind = Stmt::Kind::Bare;
      s.expr = expr();
    }
    return s;
  }

  struct Depth {
    explicit Depth(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth) syntax(p.peek().line, p.peek().col, "expression nested too deeply");
    }
    ~Depth() { --p.depth_; }
    Parser& p;
  };

  std::unique_ptr<Expr> expr() {
    Depth d(*this);
    auto lhs = term();
    for (;;) {
      Expr::Kind k;
      switch (peek().kind) {
        case Tok::Plus: k = Expr::Kind::OpSum; break;
        case Tok::Minus: k = Expr::Kind::OpDiff; break;
        case Tok::CwPlus: k = Expr::Kind::CwSum; break;
        default: return lhs;
      }
      auto n = node(k, take());
      n->args.push_back(std::move(lhs));
      n->args.push_back(term());
      lhs = std::move(n);
    }
  }

  std::unique_ptr<Expr> term() {
    auto lhs = unary();
    while (peek().kind == Tok::Star) {
      auto n = node(Expr::Kind::Product, take());
      n->args.push_back(std::move(lhs));
      n->args.push_back(unary());
      lhs = std::move(n);
    }
    return lhs;
  }

  static bool starts_unary(Tok k) { return k == Tok::Ident || k == Tok::Number || k == Tok::LParen || k == Tok::Minus; }

  std::unique_ptr<Expr> unary() {
    Depth d(*this);
    if (peek().kind == Tok::Minus) {
      auto n = node(Expr::Kind::Neg, take());
      n->args.push_back(unary());
      return n;
    }
    if (peek().kind == Tok::Number && starts_unary(peek(1).kind)) {
      const Token& t = take();
      auto n = node(Expr::Kind::Scale, t);
      auto c = node(Expr::Kind::Scalar, t);
      c->scalar = t.value;
      n->args.push_back(std::move(c));
      n->args.push_back(unary());
      return n;
    }
    return postfix();
  }

  std::unique_ptr<Expr> postfix() {
    auto e = atom();
    for (;;) {
      if (peek().kind == Tok::Adj) {
        auto n = node(Expr::Kind::Adjoint, take());
        n->args.push_back(std::move(e));
        e = std::move(n);
      } else if (peek().kind == Tok::Inv) {
        auto n = node(Expr::Kind::Inverse, take());
        n->args.push_back(std::move(e));
        e = std::move(n);
      } else {
        return e;
      }
    }
  }

  std::unique_ptr<Expr> atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        auto n = node(Expr::Kind::Scalar, take());
        n->scalar = t.value;
        return n;
      }
      case Tok::LParen: {
        ++i_;
        auto e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        if (t.text == "print") unexpected("expected expression");
        const Token& id = take();
        if (peek().kind == Tok::LParen) {
          auto n = node(Expr::Kind::Call, id);
          n->name = id.text;
          ++i_;
          if (peek().kind != Tok::RParen) {
            n->args.push_back(expr());
            while (peek().kind == Tok::Comma) {
              ++i_;
              n->args.push_back(expr());
            }
          }
          expect(Tok::RParen, "')' or ','");
          return n;
        }
        auto n = node(Expr::Kind::Ident, id);
        n->name = id.text;
        return n;
      }
      default: unexpected("expected expression");
    }
  }

  std::vector<Token> t_;
  size_t i_ = 0;
  int depth_ = 0;
};

// ---- types

enum class Ty { Rel, Sub, Scal };

const char* ty_name(Ty t) {
  switch (t) {
    case Ty::Rel: return "relation";
    case Ty::Sub: return "subspace";
    default: return "scalar";
  }
}

Ty ty_of(const Value& v) {
  switch (v.index()) {
    case 0: return Ty::Rel;
    case 1: return Ty::Sub;
    default: return Ty::Scal;
  }
}

struct FuncSig {
  std::vector<Ty> params;
  Ty result;
};

// Overloads per function name.
const std::map<std::string, std::vector<FuncSig>>& functions() {
  static const std::map<std::string, std::vector<FuncSig>> table = {
      {"re", {{{Ty::Rel}, Ty::Rel}}},
      {"im", {{{Ty::Rel}, Ty::Rel}}},
      {"reg", {{{Ty::Rel}, Ty::Rel}}},
      {"sing", {{{Ty::Rel}, Ty::Rel}}},
      {"op", {{{Ty::Rel}, Ty::Rel}}},
      {"mulrel", {{{Ty::Rel}, Ty::Rel}}},
      {"minf", {{{Ty::Rel}, Ty::Rel}}},
      {"graph", {{{Ty::Rel}, Ty::Rel}}},
      {"dom", {{{Ty::Rel}, Ty::Sub}}},
      {"ran", {{{Ty::Rel}, Ty::Sub}}},
      {"ker", {{{Ty::Rel}, Ty::Sub}}},
      {"mul", {{{Ty::Rel}, Ty::Sub}}},
      {"cross", {{{Ty::Sub, Ty::Sub}, Ty::Rel}}},
      {"id", {{{}, Ty::Rel}, {{Ty::Sub}, Ty::Rel}}},
      {"zero", {{{}, Ty::Sub}, {{Ty::Sub}, Ty::Rel}}},
      {"shift", {{{Ty::Rel, Ty::Scal}, Ty::Rel}}},
      {"space", {{{}, Ty::Sub}}},
  };
  return table;
}

using TypeEnv = std::map<std::string, Ty>;

Ty check(const Expr& e, const TypeEnv& env) {
  auto arg = [&](size_t k) { return check(*e.args[k], env); };
  switch (e.kind) {
    case Expr::Kind::Scalar: return Ty::Scal;
    case Expr::Kind::Ident: {
      auto it = env.find(e.name);
      if (it != env.end()) return it->second;
      if (e.name == "i") return Ty::Scal;
      throw Error(ErrorCode::UnknownName, "line " + std::to_string(e.line) + ", column " + std::to_string(e.col) +
                                              ": unknown name '" + e.name + "'");
    }
    case Expr::Kind::Adjoint: return arg(0);
    case Expr::Kind::Inverse: {
      const Ty t = arg(0);
      if (t == Ty::Sub) type_error(e, "'^-1' is not defined for a subspace");
      return t;
    }
    case Expr::Kind::Neg: {
      const Ty t = arg(0);
      if (t == Ty::Sub) type_error(e, "negation is not defined for a subspace");
      return t;
    }
    case Expr::Kind::Scale: {
      const Ty t = arg(1);
      if (t == Ty::Sub) type_error(e, "a scalar cannot scale a subspace");
      return t;
    }
    case Expr::Kind::OpSum:
    case Expr::Kind::OpDiff:
    case Expr::Kind::CwSum: {
      const Ty a = arg(0), b = arg(1);
      const char* op = e.kind == Expr::Kind::OpSum ? "+" : e.kind == Expr::Kind::OpDiff ? "-" : "(+)";
      if (a != b) type_error(e, std::string("'") + op + "' between " + ty_name(a) + " and " + ty_name(b));
      if (a == Ty::Sub && e.kind == Expr::Kind::OpDiff) type_error(e, "'-' is not defined for subspaces");
      if (a == Ty::Scal && e.kind == Expr::Kind::CwSum) type_error(e, "'(+)' is not defined for scalars");
      return a;
    }
    case Expr::Kind::Product: {
      const Ty a = arg(0), b = arg(1);
      if (a == Ty::Scal && b != Ty::Sub) return b;
      if (a == Ty::Rel && b == Ty::Rel) return Ty::Rel;
      if (a == Ty::Rel && b == Ty::Scal) type_error(e, "a scalar factor must come first");
      type_error(e, std::string("'*' between ") + ty_name(a) + " and " + ty_name(b));
    }
    case Expr::Kind::Call: {
      const auto& tab = functions();
      auto it = tab.find(e.name);
      if (it == tab.end()) type_error(e, "unknown function '" + e.name + "'");
      std::vector<Ty> got;
      for (size_t k = 0; k < e.args.size(); ++k) got.push_back(arg(k));
      for (const FuncSig& sig : it->second)
        if (sig.params == got) return sig.result;
      std::string have;
      for (size_t k = 0; k < got.size(); ++k) have += std::string(k ? ", " : "") + ty_name(got[k]);
      type_error(e, e.name + "(" + have + ") does not match any signature");
    }
  }
  type_error(e, "unsupported expression");
}

// ---- evaluation

struct Evaluator {
  const Environment& env;
  int n;

  Value eval(const Expr& e) {
    Value v = eval_node(e);
    if (const cplx* c = std::get_if<cplx>(&v); c && !(std::isfinite(c->real()) && std::isfinite(c->imag())))
      throw Error(ErrorCode::Numeric, "line " + std::to_string(e.line) + ", column " + std::to_string(e.col) +
                                          ": scalar overflow");
    return v;
  }

  Value eval_node(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Scalar: return e.scalar;
      case Expr::Kind::Ident: {
        if (const Value* v = env.find(e.name)) return *v;
        return I1;  // "i" checked by the type pass
      }
      case Expr::Kind::Adjoint: {
        Value v = eval(*e.args[0]);
        if (auto* r = std::get_if<Relation>(&v)) return adjoint(*r);
        if (auto* s = std::get_if<Subspace>(&v)) return complement(*s);
        return std::conj(std::get<cplx>(v));
      }
      case Expr::Kind::Inverse: {
        Value v = eval(*e.args[0]);
        if (auto* r = std::get_if<Relation>(&v)) return inverse(*r);
        const cplx c = std::get<cplx>(v);
        if (c == cplx(0.0)) type_error(e, "division by zero scalar");
        return 1.0 / c;
      }
      case Expr::Kind::Neg: return scale(-1.0, eval(*e.args[0]));
      case Expr::Kind::Scale: return scale(std::get<cplx>(eval(*e.args[0])), eval(*e.args[1]));
      case Expr::Kind::OpSum:
      case Expr::Kind::OpDiff:
      case Expr::Kind::CwSum: {
        Value a = eval(*e.args[0]), b = eval(*e.args[1]);
        if (auto* ca = std::get_if<cplx>(&a)) {
          const cplx cb = std::get<cplx>(b);
          return e.kind == Expr::Kind::OpSum ? *ca + cb : *ca - cb;
        }
        if (auto* sa = std::get_if<Subspace>(&a)) return sum(*sa, std::get<Subspace>(b));
        const Relation& ra = std::get<Relation>(a);
        const Relation& rb = std::get<Relation>(b);
        if (e.kind == Expr::Kind::OpSum) return op_sum(ra, rb);
        if (e.kind == Expr::Kind::OpDiff) return op_diff(ra, rb);
        return cw_sum(ra, rb);
      }
      case Expr::Kind::Product: {
        Value a = eval(*e.args[0]), b = eval(*e.args[1]);
        if (auto* ca = std::get_if<cplx>(&a)) return scale(*ca, b);
        return product(std::get<Relation>(a), std::get<Relation>(b));
      }
      case Expr::Kind::Call: return call(e);
    }
    type_error(e, "unsupported expression");
  }

  static Value scale(cplx c, const Value& v) {
    if (auto* r = std::get_if<Relation>(&v)) return scalar_mul(c, *r);
    return c * std::get<cplx>(v);
  }

  Value call(const Expr& e) {
    std::vector<Value> a;
    for (const auto& x : e.args) a.push_back(eval(*x));
    auto rel = [&](size_t k) -> const Relation& { return std::get<Relation>(a[k]); };
    auto sub = [&](size_t k) -> const Subspace& { return std::get<Subspace>(a[k]); };
    const std::string& f = e.name;
    if (f == "re") return real_part(rel(0));
    if (f == "im") return imag_part(rel(0));
    if (f == "reg") return regular_part(rel(0));
    if (f == "sing") return singular_part(rel(0));
    if (f == "op") return operator_part(rel(0));
    if (f == "mulrel") return mul_part(rel(0));
    if (f == "minf") return infinity_ext(rel(0));
    if (f == "graph") return rel(0);
    if (f == "dom") return rel(0).dom();
    if (f == "ran") return rel(0).ran();
    if (f == "ker") return rel(0).ker();
    if (f == "mul") return rel(0).mul();
    if (f == "cross") return cross(sub(0), sub(1));
    if (f == "id") return a.empty() ? Relation::from_operator(Mat::Identity(n, n)) : identity_on(sub(0));
    if (f == "zero") return a.empty() ? Value(Subspace::zero(n)) : Value(zero_on(sub(0)));
    if (f == "shift") return shift(rel(0), std::get<cplx>(a[1]));
    if (f == "space") return Subspace::full(n);
    type_error(e, "unknown function '" + f + "'");
  }
};

TypeEnv type_env(const Environment& env) {
  TypeEnv t;
  for (const std::string& name : env.names()) t[name] = ty_of(env.at(name));
  return t;
}

void print_expr(const Expr& e, std::ostream& out) {
  auto bin = [&](const char* op) {
    out << "(";
    print_expr(*e.args[0], out);
    out << " " << op << " ";
    print_expr(*e.args[1], out);
    out << ")";
  };
  switch (e.kind) {
    case Expr::Kind::Ident: out << e.name; break;
    case Expr::Kind::Scalar: out << format_complex_short(e.scalar); break;
    case Expr::Kind::Adjoint: print_expr(*e.args[0], out), out << "^*"; break;
    case Expr::Kind::Inverse: print_expr(*e.args[0], out), out << "^-1"; break;
    case Expr::Kind::Neg: out << "-", print_expr(*e.args[0], out); break;
    case Expr::Kind::Scale:
      out << "(";
      print_expr(*e.args[0], out);
      out << " ";
      print_expr(*e.args[1], out);
      out << ")";
      break;
    case Expr::Kind::OpSum: bin("+"); break;
    case Expr::Kind::OpDiff: bin("-"); break;
    case Expr::Kind::CwSum: bin("(+)"); break;
    case Expr::Kind::Product: bin("*"); break;
    case Expr::Kind::Call:
      out << e.name << "(";
      for (size_t k = 0; k < e.args.size(); ++k) {
        if (k) out << ", ";
        print_expr(*e.args[k], out);
      }
      out << ")";
      break;
  }
}

std::string entries(const Mat& b, int col, int from, int count) {
  std::string s;
  for (int i = 0; i < count; ++i) s += (i ? "," : "") + format_complex_short(b(from + i, col), 1e-12);
  return s;
}

}  // namespace

Program parse_program(const std::string& src) { return Parser(Lexer(src).run()).program(); }

std::string expr_to_string(const Expr& e) {
  std::ostringstream out;
  print_expr(e, out);
  return out.str();
}

void typecheck(const Program& p, const Environment& env) {
  TypeEnv t = type_env(env);
  for (const Stmt& s : p.stmts) {
    const Ty ty = check(*s.expr, t);
    if (s.kind == Stmt::Kind::Assign) t[s.target] = ty;
  }
}

std::string format_value(const std::string& name, const Value& v) {
  std::ostringstream out;
  if (const auto* c = std::get_if<cplx>(&v)) {
    out << "scalar " << name << " " << format_complex_short(*c, 1e-14) << "\n";
  } else if (const auto* r = std::get_if<Relation>(&v)) {
    const int n = r->n();
    out << "relation " << name << "  # dim " << r->dim() << ": dom " << r->dom().dim() << ", ran " << r->ran().dim()
        << ", ker " << r->ker().dim() << ", mul " << r->mul().dim() << "\n";
    const Mat b = canonical_basis(r->graph());
    for (int j = 0; j < b.cols(); ++j) out << "  vec (" << entries(b, j, 0, n) << " | " << entries(b, j, n, n) << ")\n";
  } else {
    const auto& s = std::get<Subspace>(v);
    out << "subspace " << name << "  # dim " << s.dim() << "\n";
    const Mat b = canonical_basis(s);
    for (int j = 0; j < b.cols(); ++j) out << "  vec (" << entries(b, j, 0, s.ambient()) << ")\n";
  }
  return out.str();
}

std::string run_program(Environment& env, const std::string& src) {
  const Program p = parse_program(src);
  typecheck(p, env);
  std::string printed;
  for (const Stmt& s : p.stmts) {
    Evaluator ev{env, env.n()};
    Value v = ev.eval(*s.expr);
    if (s.kind == Stmt::Kind::Assign) env.assign(s.target, std::move(v));
    else printed += format_value("_", v);
  }
  return printed;
}

Value evaluate(const Environment& env, const std::string& expr) {
  const Program p = parse_program(expr);
  if (p.stmts.size() != 1 || p.stmts[0].kind != Stmt::Kind::Bare)
    throw Error(ErrorCode::Parse, "expected a single expression");
  typecheck(p, env);
  Evaluator ev{env, env.n()};
  return ev.eval(*p.stmts[0].expr);
}

}  // namespace relcalc
