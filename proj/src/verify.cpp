#include "metab/verify.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <variant>

namespace metab {

namespace {

[[noreturn]] void script_fail(int line, const std::string& msg) {
  throw ScriptError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

// ---------------------------------------------------------------- lexer

struct Tok {
  enum Kind { Num, Id, Sym, End } kind;
  std::string s;
};

std::vector<Tok> lex(const std::string& s, int line) {
  std::vector<Tok> out;
  std::size_t p = 0;
  while (p < s.size()) {
    char c = s[p];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++p;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t q = p;
      while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
      out.push_back({Tok::Num, s.substr(p, q - p)});
      p = q;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t q = p;
      while (q < s.size() && (std::isalnum(static_cast<unsigned char>(s[q])) || s[q] == '_')) ++q;
      out.push_back({Tok::Id, s.substr(p, q - p)});
      p = q;
    } else if (c == '=' && p + 1 < s.size() && s[p + 1] == '=') {
      out.push_back({Tok::Sym, "=="});
      p += 2;
    } else if (std::string("+-*^()[],;.:=~").find(c) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, c)});
      ++p;
    } else {
      script_fail(line, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

class Cursor {
 public:
  Cursor(std::vector<Tok> t, int line) : t_(std::move(t)), line_(line) {}
  const Tok& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
  bool at_sym(const std::string& s, std::size_t k = 0) const { return peek(k).kind == Tok::Sym && peek(k).s == s; }
  bool at_id(const std::string& s) const { return peek().kind == Tok::Id && peek().s == s; }
  bool eat_sym(const std::string& s) {
    if (!at_sym(s)) return false;
    ++p_;
    return true;
  }
  void expect_sym(const std::string& s) {
    if (!eat_sym(s)) fail("expected '" + s + "' near '" + peek().s + "'");
  }
  std::string expect_id() {
    if (peek().kind != Tok::Id) fail("expected a name near '" + peek().s + "'");
    return t_[p_++].s;
  }
  long expect_int() {
    bool neg = eat_sym("-");
    if (peek().kind != Tok::Num) fail("expected an integer near '" + peek().s + "'");
    long v = std::stol(t_[p_++].s);
    return neg ? -v : v;
  }
  const Tok& next() { return t_[p_ < t_.size() - 1 ? p_++ : p_]; }
  std::size_t pos() const { return p_; }
  std::string span(std::size_t a, std::size_t b) const {
    std::string s;
    for (std::size_t k = a; k < b; ++k) s += t_[k].s;
    return s;
  }
  bool done() const { return peek().kind == Tok::End; }
  void expect_done() {
    if (!done()) fail("unexpected '" + peek().s + "'");
  }
  int line() const { return line_; }
  [[noreturn]] void fail(const std::string& msg) const { script_fail(line_, msg); }

 private:
  std::vector<Tok> t_;
  std::size_t p_ = 0;
  int line_;
};

// ---------------------------------------------------------------- parser

NodePtr mk(Node::Kind k, std::string text = {}, std::vector<NodePtr> kids = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->text = std::move(text);
  n->kids = std::move(kids);
  return n;
}

NodePtr parse_expr(Cursor& c);

NodePtr parse_atom(Cursor& c) {
  const Tok& t = c.peek();
  if (t.kind == Tok::Num) return mk(Node::Kind::Num, c.next().s);
  if (c.eat_sym("(")) {
    NodePtr e = parse_expr(c);
    c.expect_sym(")");
    return e;
  }
  if (c.eat_sym("[")) {
    auto lit = mk(Node::Kind::MatLit);
    int rows = 0, cols = -1;
    while (true) {
      int k = 0;
      while (true) {
        lit->kids.push_back(parse_expr(c));
        ++k;
        if (!c.eat_sym(",")) break;
      }
      if (cols >= 0 && k != cols) c.fail("matrix rows have different lengths");
      cols = k;
      ++rows;
      if (c.eat_sym(";")) continue;
      c.expect_sym("]");
      break;
    }
    if (rows != cols) c.fail("matrix literal is not square");
    lit->rows = rows;
    lit->cols = cols;
    return lit;
  }
  if (t.kind == Tok::Id) {
    std::string name = c.next().s;
    if (!c.eat_sym("(")) return mk(Node::Kind::Ident, name);
    auto call = mk(Node::Kind::Call, name);
    if (!c.eat_sym(")")) {
      do call->kids.push_back(parse_expr(c));
      while (c.eat_sym(","));
      c.expect_sym(")");
    }
    return call;
  }
  c.fail("expected an expression near '" + t.s + "'");
}

NodePtr parse_power(Cursor& c) {
  NodePtr base = parse_atom(c);
  if (!c.eat_sym("^")) return base;
  NodePtr e = c.eat_sym("-") ? mk(Node::Kind::Neg, {}, {parse_atom(c)}) : parse_atom(c);
  return mk(Node::Kind::Pow, {}, {base, e});
}

NodePtr parse_unary(Cursor& c) {
  if (c.eat_sym("-")) return mk(Node::Kind::Neg, {}, {parse_unary(c)});
  return parse_power(c);
}

NodePtr parse_term(Cursor& c) {
  NodePtr first = parse_unary(c);
  if (!c.at_sym("*")) return first;
  auto mul = mk(Node::Kind::Mul, {}, {first});
  while (c.eat_sym("*")) mul->kids.push_back(parse_unary(c));
  return mul;
}

NodePtr parse_expr(Cursor& c) {
  NodePtr acc = parse_term(c);
  while (true) {
    if (c.eat_sym("+")) acc = mk(Node::Kind::Add, {}, {acc, parse_term(c)});
    else if (c.eat_sym("-")) acc = mk(Node::Kind::Sub, {}, {acc, parse_term(c)});
    else return acc;
  }
}

int parse_index_arg(Cursor& c) {
  c.expect_sym("(");
  long i = c.expect_int();
  c.expect_sym(")");
  return static_cast<int>(i);
}

ShapeIdeal parse_ideal(Cursor& c) {
  ShapeIdeal id;
  std::size_t from = c.pos();
  bool body_seen = false;
  auto parse_gen = [&]() {
    ShapeIdeal::Gen g;
    std::string name = c.expect_id();
    if (name == "U") g = {ShapeIdeal::Gen::Kind::U, parse_index_arg(c), nullptr};
    else if (name == "SU") g = {ShapeIdeal::Gen::Kind::SU, parse_index_arg(c), nullptr};
    else if (name == "O") g = {ShapeIdeal::Gen::Kind::O, 0, nullptr};
    else if (name == "g") {
      c.expect_sym("(");
      g = {ShapeIdeal::Gen::Kind::Poly, 0, parse_expr(c)};
      c.expect_sym(")");
    } else {
      c.fail("unknown ideal generator '" + name + "'");
    }
    id.body.push_back(g);
  };
  while (true) {
    if (body_seen) c.fail("the generator sum must be the last factor");
    if (c.eat_sym("(")) {
      do parse_gen();
      while (c.eat_sym("+"));
      c.expect_sym(")");
      body_seen = true;
    } else if (c.at_id("O")) {
      parse_gen();
      body_seen = true;
    } else if (c.at_id("sigma") || c.at_id("U") || c.at_id("SU")) {
      std::string name = c.expect_id();
      auto kind = name == "sigma" ? ShapeIdeal::Factor::Kind::Sigma
                  : name == "U"   ? ShapeIdeal::Factor::Kind::U
                                  : ShapeIdeal::Factor::Kind::SU;
      id.prefix.push_back({kind, parse_index_arg(c), nullptr});
    } else {
      id.prefix.push_back({ShapeIdeal::Factor::Kind::Integer, 0, parse_power(c)});
    }
    if (!c.eat_sym("*")) break;
  }
  if (c.at_id("bar")) {
    c.next();
    id.bar = true;
  }
  id.text = c.span(from, c.pos());
  return id;
}

WitnessSpec parse_witness(Cursor& c);

WitnessSpec parse_witness_atom(Cursor& c) {
  WitnessSpec w;
  if (c.eat_sym("(")) {
    w = parse_witness(c);
    c.expect_sym(")");
    return w;
  }
  std::string name = c.expect_id();
  if (name == "rows") {
    w.kind = WitnessSpec::Kind::Rows;
    if (c.eat_sym("(")) {
      w.args.push_back(parse_expr(c));
      c.expect_sym(")");
    }
  } else if (name == "pow") {
    w.kind = WitnessSpec::Kind::Pow;
    c.expect_sym("(");
    w.args.push_back(parse_expr(c));
    c.expect_sym(")");
  } else if (name == "conj") {
    w.kind = WitnessSpec::Kind::Conj;
    c.expect_sym("(");
    w.args.push_back(parse_expr(c));
    c.expect_sym(",");
    w.parts.push_back(parse_witness(c));
    c.expect_sym(")");
  } else if (name == "inv") {
    w.kind = WitnessSpec::Kind::Inv;
    c.expect_sym("(");
    w.parts.push_back(parse_witness(c));
    c.expect_sym(")");
  } else if (name == "sec6") {
    w.kind = WitnessSpec::Kind::Sec6;
    c.expect_sym("(");
    do w.args.push_back(parse_expr(c));
    while (c.eat_sym(","));
    c.expect_sym(")");
    if (w.args.size() != 6) c.fail("sec6 takes family, u, i, j, k, f");
  } else if (name == "assume") {
    w.kind = WitnessSpec::Kind::Assume;
    c.expect_sym("(");
    w.name = c.expect_id();
    c.expect_sym(")");
  } else if (name == "hm2") {
    w.kind = WitnessSpec::Kind::Hm2;
    c.expect_sym("(");
    w.args.push_back(parse_expr(c));
    c.expect_sym(")");
  } else {
    c.fail("unknown witness '" + name + "'");
  }
  return w;
}

WitnessSpec parse_witness(Cursor& c) {
  WitnessSpec first = parse_witness_atom(c);
  if (!c.at_sym(".")) return first;
  WitnessSpec seq;
  seq.kind = WitnessSpec::Kind::Seq;
  seq.parts.push_back(std::move(first));
  while (c.eat_sym(".")) seq.parts.push_back(parse_witness_atom(c));
  return seq;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// ---------------------------------------------------------------- evaluation

using Value = std::variant<Poly, Mat>;

struct Env {
  int n = 4, dim = 3, nv = 4;
  long m = 2;
  std::vector<std::string> names;
  std::vector<bool> bar_var;  // variable stands for an element of R_{n-1}
  std::map<std::string, Poly> vars;
  std::map<std::string, NodePtr> lets;
  std::map<std::string, Value> let_cache;
  std::vector<std::pair<std::string, Value>> locals;
  const std::vector<Hypothesis>* hyps = nullptr;
};

Value eval(const NodePtr& e, Env& env);
Value eval_inverse(const NodePtr& e, Env& env);
Mat comm_of(const NodePtr& a, const NodePtr& b, Env& env);

const Poly& as_poly(const Value& v, const char* what) {
  if (auto p = std::get_if<Poly>(&v)) return *p;
  throw ScriptError(std::string(what) + ": expected a polynomial, got a matrix");
}

const Mat& as_mat(const Value& v, const char* what) {
  if (auto p = std::get_if<Mat>(&v)) return *p;
  throw ScriptError(std::string(what) + ": expected a matrix, got a polynomial");
}

long as_int(const Value& v, const char* what) {
  const Poly& p = as_poly(v, what);
  if (p.is_zero()) return 0;
  if (p.size() != 1 || p.terms()[0].e != zero_exps()) throw ScriptError(std::string(what) + ": expected an integer");
  if (!p.terms()[0].c.fits_slong_p()) throw ScriptError(std::string(what) + ": integer too large");
  return p.terms()[0].c.get_si();
}

Mat scale(const Poly& s, const Mat& a) {
  return a.map([&](const Poly& x) { return s * x; });
}

Mat transpose(const Mat& a) {
  Mat t(a.dim(), a.nvars());
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) t(j, i) = a(i, j);
  return t;
}

Value add_values(const Value& a, const Value& b, int sign, Env& env) {
  Poly s(env.nv, sign);
  if (std::holds_alternative<Poly>(a) && std::holds_alternative<Poly>(b))
    return std::get<Poly>(a) + s * std::get<Poly>(b);
  auto as_m = [&](const Value& v) {
    if (auto p = std::get_if<Poly>(&v)) return scale(*p, Mat::identity(env.dim, env.nv));
    return std::get<Mat>(v);
  };
  Mat x = as_m(a), y = as_m(b);
  if (x.dim() != y.dim()) throw ScriptError("dimension mismatch in a sum");
  return sign > 0 ? x + y : x - y;
}

Value mul_values(const Value& a, const Value& b) {
  bool pa = std::holds_alternative<Poly>(a), pb = std::holds_alternative<Poly>(b);
  if (pa && pb) return std::get<Poly>(a) * std::get<Poly>(b);
  if (pa) return scale(std::get<Poly>(a), std::get<Mat>(b));
  if (pb) return scale(std::get<Poly>(b), std::get<Mat>(a));
  const Mat& x = std::get<Mat>(a);
  const Mat& y = std::get<Mat>(b);
  if (x.dim() != y.dim()) throw ScriptError("dimension mismatch in a product");
  return x * y;
}

int index_arg(const NodePtr& e, Env& env, int hi, const char* what) {
  long i = as_int(eval(e, env), what);
  if (i < 1 || i > hi) throw ScriptError(std::string(what) + ": index " + std::to_string(i) + " out of range");
  return static_cast<int>(i);
}

Value eval_call(const Node& e, Env& env) {
  const std::string& f = e.text;
  auto argc = [&](std::size_t k) {
    if (e.kids.size() != k) throw ScriptError(f + " takes " + std::to_string(k) + " arguments");
  };
  if (f == "E" || f == "e") {
    argc(f == "E" ? 3 : 2);
    int i = index_arg(e.kids[0], env, env.dim, f.c_str());
    int j = index_arg(e.kids[1], env, env.dim, f.c_str());
    if (f == "e") {
      Mat u(env.dim, env.nv);
      u(i, j) = Poly(env.nv, 1);
      return u;
    }
    if (i == j) throw ScriptError("E needs distinct indices");
    return Mat::elementary(env.dim, i, j, as_poly(eval(e.kids[2], env), "E"));
  }
  if (f == "comm") {
    argc(2);
    return comm_of(e.kids[0], e.kids[1], env);
  }
  if (f == "inv") {
    argc(1);
    return eval_inverse(e.kids[0], env);
  }
  if (f == "tr") {
    argc(1);
    return transpose(as_mat(eval(e.kids[0], env), "tr"));
  }
  if (f == "det") {
    argc(1);
    return as_mat(eval(e.kids[0], env), "det").det();
  }
  if (f == "sigma") {
    argc(1);
    return Poly::sigma(env.nv, index_arg(e.kids[0], env, env.n, "sigma"));
  }
  if (f == "x") {
    argc(1);
    return Poly::var(env.nv, index_arg(e.kids[0], env, env.n, "x"));
  }
  if (f == "divsigma") {
    argc(2);
    Poly p = as_poly(eval(e.kids[0], env), "divsigma");
    return lp_divide_exact(p, index_arg(e.kids[1], env, env.n, "divsigma"));
  }
  if (f == "diag") {
    if (static_cast<int>(e.kids.size()) != env.dim) throw ScriptError("diag needs one entry per row");
    Mat d(env.dim, env.nv);
    for (int i = 1; i <= env.dim; ++i) d(i, i) = as_poly(eval(e.kids[i - 1], env), "diag");
    return d;
  }
  if (f == "perm") {
    // P e_i = e_{p(i)}
    if (static_cast<int>(e.kids.size()) != env.dim) throw ScriptError("perm needs one image per index");
    Mat p(env.dim, env.nv);
    std::set<int> seen;
    for (int i = 1; i <= env.dim; ++i) {
      int t = index_arg(e.kids[i - 1], env, env.dim, "perm");
      if (!seen.insert(t).second) throw ScriptError("perm is not a permutation");
      p(t, i) = Poly(env.nv, 1);
    }
    return p;
  }
  if (f == "sum") {
    argc(4);
    if (e.kids[0]->kind != Node::Kind::Ident) throw ScriptError("sum needs a variable name");
    long lo = as_int(eval(e.kids[1], env), "sum"), hi = as_int(eval(e.kids[2], env), "sum");
    std::optional<Value> acc;
    for (long k = lo; k <= hi; ++k) {
      env.locals.emplace_back(e.kids[0]->text, Poly(env.nv, k));
      Value v = eval(e.kids[3], env);
      env.locals.pop_back();
      acc = acc ? add_values(*acc, v, 1, env) : v;
    }
    return acc ? *acc : Value(Poly(env.nv));
  }
  throw ScriptError("unknown function '" + f + "'");
}

Value eval(const NodePtr& ep, Env& env) {
  const Node& e = *ep;
  switch (e.kind) {
    case Node::Kind::Num: return Poly(env.nv, Int(e.text));
    case Node::Kind::Ident: {
      for (auto it = env.locals.rbegin(); it != env.locals.rend(); ++it)
        if (it->first == e.text) return it->second;
      if (auto it = env.vars.find(e.text); it != env.vars.end()) return it->second;
      if (e.text == "m") return Poly(env.nv, env.m);
      if (e.text == "I") return Mat::identity(env.dim, env.nv);
      if (auto it = env.let_cache.find(e.text); it != env.let_cache.end()) return it->second;
      if (auto it = env.lets.find(e.text); it != env.lets.end()) {
        Value v = eval(it->second, env);
        env.let_cache.emplace(e.text, v);
        return v;
      }
      throw ScriptError("unknown name '" + e.text + "'");
    }
    case Node::Kind::Add: return add_values(eval(e.kids[0], env), eval(e.kids[1], env), 1, env);
    case Node::Kind::Sub: return add_values(eval(e.kids[0], env), eval(e.kids[1], env), -1, env);
    case Node::Kind::Neg: return mul_values(Poly(env.nv, -1), eval(e.kids[0], env));
    case Node::Kind::Mul: {
      Value acc = eval(e.kids[0], env);
      for (std::size_t k = 1; k < e.kids.size(); ++k) acc = mul_values(acc, eval(e.kids[k], env));
      return acc;
    }
    case Node::Kind::Pow: {
      Value b = eval(e.kids[0], env);
      long k = as_int(eval(e.kids[1], env), "exponent");
      if (auto p = std::get_if<Poly>(&b)) return p->pow(k);
      return std::get<Mat>(b).pow(k);
    }
    case Node::Kind::MatLit: {
      if (e.rows != env.dim) throw ScriptError("dimension mismatch: literal is " + std::to_string(e.rows) + "x" +
                                               std::to_string(e.rows) + ", script dimension is " +
                                               std::to_string(env.dim));
      Mat a(e.rows, env.nv);
      for (int i = 1; i <= e.rows; ++i)
        for (int j = 1; j <= e.cols; ++j)
          a(i, j) = as_poly(eval(e.kids[(i - 1) * e.cols + (j - 1)], env), "matrix entry");
      return a;
    }
    case Node::Kind::Call: return eval_call(e, env);
  }
  throw ScriptError("bad expression");
}

// Inverts along the expression: products reverse, E(i,j,h) negates h,
// commutators swap. Only leaves go through the adjugate, whose intermediate
// products grow quickly on long words.
Value eval_inverse(const NodePtr& ep, Env& env) {
  const Node& e = *ep;
  switch (e.kind) {
    case Node::Kind::Mul: {
      Value acc = eval_inverse(e.kids.back(), env);
      for (std::size_t k = e.kids.size() - 1; k-- > 0;) acc = mul_values(acc, eval_inverse(e.kids[k], env));
      return acc;
    }
    case Node::Kind::Pow: {
      long k = as_int(eval(e.kids[1], env), "exponent");
      Value b = k >= 0 ? eval_inverse(e.kids[0], env) : eval(e.kids[0], env);
      if (k < 0) k = -k;
      if (auto p = std::get_if<Poly>(&b)) return p->pow(k);
      return std::get<Mat>(b).pow(k);
    }
    case Node::Kind::Call: {
      if (e.text == "inv" && e.kids.size() == 1) return eval(e.kids[0], env);
      if (e.text == "comm" && e.kids.size() == 2) return comm_of(e.kids[1], e.kids[0], env);
      if (e.text == "E" && e.kids.size() == 3) {
        Mat a = as_mat(eval(ep, env), "E");
        for (int i = 1; i <= a.dim(); ++i)
          for (int j = 1; j <= a.dim(); ++j)
            if (i != j) a(i, j) = -a(i, j);
        return a;
      }
      break;
    }
    case Node::Kind::Ident: {
      bool local = false;
      for (const auto& l : env.locals) local = local || l.first == e.text;
      auto it = env.lets.find(e.text);
      if (local || env.vars.count(e.text) || it == env.lets.end()) break;
      std::string key = "inv " + e.text;
      if (auto c = env.let_cache.find(key); c != env.let_cache.end()) return c->second;
      Value v = eval_inverse(it->second, env);
      env.let_cache.emplace(key, v);
      return v;
    }
    default: break;
  }
  Value v = eval(ep, env);
  if (auto p = std::get_if<Poly>(&v)) return unit_inverse(*p);
  return std::get<Mat>(v).inverse();
}

Mat comm_of(const NodePtr& a, const NodePtr& b, Env& env) {
  return as_mat(eval(a, env), "comm") * as_mat(eval(b, env), "comm") * as_mat(eval_inverse(a, env), "comm") *
         as_mat(eval_inverse(b, env), "comm");
}

// Fresh parameters are polynomial indeterminates; a negative power of one
// would mean the computation divided by a parameter.
void check_polynomial_in_params(const Value& v, const Env& env) {
  auto check = [&](const Poly& p) {
    for (const auto& t : p.terms())
      for (int k = env.n; k < env.nv; ++k)
        if (t.e[k] < 0) throw ScriptError("negative power of parameter " + env.names[k]);
  };
  if (auto p = std::get_if<Poly>(&v)) check(*p);
  else {
    const Mat& a = std::get<Mat>(v);
    for (int i = 1; i <= a.dim(); ++i)
      for (int j = 1; j <= a.dim(); ++j) check(a(i, j));
  }
}

// ---------------------------------------------------------------- ideals

Poly ideal_gen_poly(const ShapeIdeal::Gen& g, Env& env) {
  Poly one(env.nv, 1);
  switch (g.kind) {
    case ShapeIdeal::Gen::Kind::U: return Poly::var(env.nv, g.i).pow(env.m) - one;
    case ShapeIdeal::Gen::Kind::SU: return Poly::sigma(env.nv, g.i) * (Poly::var(env.nv, g.i).pow(env.m) - one);
    case ShapeIdeal::Gen::Kind::O: return Poly(env.nv, env.m);
    case ShapeIdeal::Gen::Kind::Poly: return as_poly(eval(g.poly, env), "ideal generator");
  }
  return one;
}

Poly prefix_poly(const ShapeIdeal& id, Env& env) {
  Poly p(env.nv, 1);
  for (const auto& f : id.prefix) {
    switch (f.kind) {
      case ShapeIdeal::Factor::Kind::Sigma: p = p * Poly::sigma(env.nv, f.i); break;
      case ShapeIdeal::Factor::Kind::U: p = p * (Poly::var(env.nv, f.i).pow(env.m) - Poly(env.nv, 1)); break;
      case ShapeIdeal::Factor::Kind::SU:
        p = p * Poly::sigma(env.nv, f.i) * (Poly::var(env.nv, f.i).pow(env.m) - Poly(env.nv, 1));
        break;
      case ShapeIdeal::Factor::Kind::Integer: p = p * as_poly(eval(f.value, env), "ideal factor"); break;
    }
  }
  return p;
}

void check_ideal_indices(const ShapeIdeal& id, int n, int line) {
  auto ok = [&](int i) { return i >= 1 && i <= n && !(id.bar && i == n); };
  for (const auto& f : id.prefix)
    if (f.kind != ShapeIdeal::Factor::Kind::Integer && !ok(f.i))
      script_fail(line, "ideal index " + std::to_string(f.i) + " out of range");
  for (const auto& g : id.body)
    if ((g.kind == ShapeIdeal::Gen::Kind::U || g.kind == ShapeIdeal::Gen::Kind::SU) && !ok(g.i))
      script_fail(line, "ideal index " + std::to_string(g.i) + " out of range");
}

bool member_in(const ShapeIdeal& id, const Poly& f, Env& env, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  Poly g = f;
  Poly one(env.nv, 1);
  for (const auto& fac : id.prefix) {
    switch (fac.kind) {
      case ShapeIdeal::Factor::Kind::Sigma: {
        auto q = try_divide_sigma(g, fac.i);
        if (!q) return fail("not divisible by sigma" + std::to_string(fac.i));
        g = *q;
        break;
      }
      case ShapeIdeal::Factor::Kind::SU:
      case ShapeIdeal::Factor::Kind::U: {
        if (fac.kind == ShapeIdeal::Factor::Kind::SU) {
          auto q = try_divide_sigma(g, fac.i);
          if (!q) return fail("not divisible by sigma" + std::to_string(fac.i));
          g = *q;
        }
        auto q = divide_monic(g, fac.i, Poly::var(env.nv, fac.i).pow(env.m) - one);
        if (!q) return fail("not divisible by x" + std::to_string(fac.i) + "^m - 1");
        g = *q;
        break;
      }
      case ShapeIdeal::Factor::Kind::Integer: {
        long k = as_int(eval(fac.value, env), "ideal factor");
        if (k == 0) return fail("zero ideal factor");
        std::vector<Term> ts = g.terms();
        for (auto& t : ts) {
          if (!mpz_divisible_ui_p(t.c.get_mpz_t(), static_cast<unsigned long>(std::labs(k))))
            return fail("coefficients not divisible by " + std::to_string(k));
          t.c /= k;
        }
        g = Poly::from_terms(env.nv, std::move(ts));
        break;
      }
    }
  }
  if (id.bar) {
    if (g.uses_var(env.n)) return fail("cofactor involves x" + std::to_string(env.n));
    for (int k = env.n; k < env.nv; ++k)
      if (!env.bar_var[k] && g.uses_var(k + 1)) return fail("cofactor involves " + env.names[k] + " over R_n");
  }
  if (id.body.empty()) return true;
  MonicIdeal mi;
  for (const auto& gen : id.body) {
    if (gen.kind == ShapeIdeal::Gen::Kind::O) {
      mi.modulus = gcd(mi.modulus, Int(env.m));
      continue;
    }
    Poly p = ideal_gen_poly(gen, env);
    int var = 0;
    for (int k = 1; k <= env.nv; ++k)
      if (p.uses_var(k)) {
        if (var) throw ScriptError("ideal generator " + p.str(env.names) + " is not univariate");
        var = k;
      }
    if (!var) {  // an integer generator joins the modulus
      if (p.is_zero()) continue;
      mi.modulus = gcd(mi.modulus, abs(p.terms().front().c));
      continue;
    }
    mi.gens.emplace_back(var, p);
  }
  if (!monic_decompose(g, mi)) return fail("cofactor outside the generated ideal");
  return true;
}

// ---------------------------------------------------------------- environment

Env make_env(const ChainScript& s, long m) {
  Env env;
  env.n = s.n;
  env.dim = s.dim;
  env.m = m;
  env.hyps = &s.hyps;
  // count fresh variables
  struct Need {
    const ParamDecl* p;
    int count;
  };
  std::vector<Need> need;
  int fresh = 0;
  for (const auto& p : s.params) {
    if (s.bindings.count(p.name)) continue;
    int c = 1;
    if (p.shape && !p.shape->body.empty()) c = static_cast<int>(p.shape->body.size());
    need.push_back({&p, c});
    fresh += c;
  }
  env.nv = s.n + fresh;
  if (env.nv > kMaxVars) throw ScriptError("script needs " + std::to_string(env.nv) + " variables, limit " +
                                           std::to_string(kMaxVars));
  env.names = default_names(s.n);
  env.bar_var.assign(env.nv, false);
  for (const auto& nd : need) {
    if (nd.count == 1 && !(nd.p->shape && !nd.p->shape->body.empty())) {
      env.names.push_back(nd.p->name);
    } else {
      for (int k = 1; k <= nd.count; ++k) env.names.push_back(nd.p->name + "_" + std::to_string(k));
    }
  }
  for (int k = 1; k <= s.n; ++k) env.vars[env.names[k - 1]] = Poly::var(env.nv, k);
  if (s.n == 1) env.vars["x"] = Poly::var(env.nv, 1);
  for (const auto& [name, val] : s.bindings) {
    if (val.nvars() > s.n) throw ScriptError("binding for " + name + " uses more than x1..xn");
    env.vars[name] = val.extend(env.nv);
  }
  int next = s.n + 1;
  for (const auto& nd : need) {
    const ParamDecl& p = *nd.p;
    bool bar = p.shape && p.shape->bar;
    for (int k = 0; k < nd.count; ++k) env.bar_var[next - 1 + k] = bar;
    if (!p.shape) {
      env.vars[p.name] = Poly::var(env.nv, next++);
      continue;
    }
    Poly pre = prefix_poly(*p.shape, env);
    Poly body(env.nv);
    if (p.shape->body.empty()) {
      body = Poly::var(env.nv, next++);
    } else {
      for (const auto& g : p.shape->body) body += ideal_gen_poly(g, env) * Poly::var(env.nv, next++);
    }
    env.vars[p.name] = pre * body;
  }
  for (const auto& [name, node] : s.lets) env.lets[name] = node;
  return env;
}

// ---------------------------------------------------------------- witnesses

Mat lift(const Mat& a, const Env& env) {
  if (a.dim() == env.n) return a;
  Mat b = a;
  if (b.dim() < env.n - 1) b = b.block_embed(env.n - 1);
  if (b.dim() != env.n - 1) throw ScriptError("cannot lift a " + std::to_string(a.dim()) + "x" +
                                              std::to_string(a.dim()) + " matrix at n = " + std::to_string(env.n));
  std::vector<std::vector<Poly>> rows;
  for (int r = 1; r < env.n; ++r) {
    std::vector<Poly> row;
    for (int c = 1; c < env.n; ++c) row.push_back(r == c ? b(r, c) - Poly(env.nv, 1) : b(r, c));
    row.emplace_back(env.nv);
    rows.push_back(std::move(row));
  }
  return complete_column(env.n, rows).mat();
}

bool in_ia(const Mat& a, const Env& env) {
  if (a.is_identity()) return true;
  try {
    Mat l = lift(a, env);
    return a.dim() != env.n || ia_check(l, env.n).ok;
  } catch (const RingError&) {
    return false;
  }
}

IAmWitness build_witness(const WitnessSpec& w, const std::optional<Mat>& target, Env& env) {
  switch (w.kind) {
    case WitnessSpec::Kind::Rows: {
      if (!w.args.empty()) return rows_witness(lift(as_mat(eval(w.args[0], env), "rows"), env), env.m);
      if (!target) throw ScriptError("rows without an argument needs a known target");
      return rows_witness(*target, env.m);
    }
    case WitnessSpec::Kind::Pow: {
      WitnessFactor f;
      f.kind = WitnessFactor::Kind::PowerM;
      f.base = lift(as_mat(eval(w.args[0], env), "pow"), env);
      return IAmWitness{{f}};
    }
    case WitnessSpec::Kind::Conj: {
      Mat c = lift(as_mat(eval(w.args[0], env), "conj"), env);
      std::optional<Mat> inner;
      if (target) inner = c * *target * c.inverse();
      return conjugate_witness(build_witness(w.parts[0], inner, env), c);
    }
    case WitnessSpec::Kind::Inv: {
      std::optional<Mat> inner;
      if (target) inner = target->inverse();
      return inverse_witness(build_witness(w.parts[0], inner, env));
    }
    case WitnessSpec::Kind::Seq: {
      IAmWitness out;
      for (const auto& p : w.parts) out = concat_witness(out, build_witness(p, std::nullopt, env));
      return out;
    }
    case WitnessSpec::Kind::Sec6: {
      Sec6Params p;
      p.family = static_cast<int>(as_int(eval(w.args[0], env), "sec6"));
      p.u = index_arg(w.args[1], env, env.n, "sec6");
      p.i = index_arg(w.args[2], env, env.n, "sec6");
      p.j = index_arg(w.args[3], env, env.n, "sec6");
      p.k = static_cast<int>(as_int(eval(w.args[4], env), "sec6"));
      p.f = as_poly(eval(w.args[5], env), "sec6");
      return sec6_generator(p, env.m, env.n).witness;
    }
    case WitnessSpec::Kind::Assume:
    case WitnessSpec::Kind::Hm2: throw ScriptError("witness " + w.str() + " cannot be combined");
  }
  throw ScriptError("bad witness");
}

bool is_index_slot(const std::string& s) { return s == "i" || s == "j" || s == "k" || s == "l"; }

// Searches the hypothesis family for an instance equal to v.
// Inverses count too: the hypothesis is about membership in a group.
std::optional<std::string> match_hypothesis(const Hypothesis& h, const Mat& v, Env& env) {
  std::optional<Mat> vinv;  // computed only when a direct match fails
  std::vector<int> val(h.slots.size());
  std::optional<std::string> found;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (found) return;
    if (k == h.slots.size()) {
      for (std::size_t q = 0; q < h.slots.size(); ++q) env.locals.emplace_back(h.slots[q], Poly(env.nv, val[q]));
      bool eq = false, eq_inv = false;
      try {
        Value hv = eval(h.body, env);
        eq = std::holds_alternative<Mat>(hv) && std::get<Mat>(hv) == v;
        if (!eq && std::holds_alternative<Mat>(hv)) {
          if (!vinv) vinv = v.inverse();
          eq_inv = std::get<Mat>(hv) == *vinv;
        }
      } catch (const RingError&) {
      }
      env.locals.resize(env.locals.size() - h.slots.size());
      if (eq || eq_inv) {
        std::string s = (eq_inv ? "inverse of " : "") + h.name;
        for (std::size_t q = 0; q < h.slots.size(); ++q)
          s += (q ? "," : "(") + h.slots[q] + "=" + std::to_string(val[q]);
        found = h.slots.empty() ? s : s + ")";
      }
      return;
    }
    if (is_index_slot(h.slots[k])) {
      for (int i = 1; i <= env.dim; ++i) {
        bool used = false;
        for (std::size_t q = 0; q < k; ++q) used = used || (is_index_slot(h.slots[q]) && val[q] == i);
        if (used) continue;
        val[k] = i;
        rec(k + 1);
      }
    } else {
      for (int s : {1, -1}) {
        val[k] = s;
        rec(k + 1);
      }
    }
  };
  rec(0);
  return found;
}

struct WitnessOutcome {
  bool ok = false;
  std::string detail;
};

WitnessOutcome check_membership(const WitnessSpec& w, const Mat& value, Env& env) {
  WitnessOutcome out;
  try {
    if (w.kind == WitnessSpec::Kind::Assume) {
      const Hypothesis* h = nullptr;
      for (const auto& q : *env.hyps)
        if (q.name == w.name) h = &q;
      if (!h) throw ScriptError("unknown hypothesis '" + w.name + "'");
      auto inst = match_hypothesis(*h, value, env);
      out.ok = inst.has_value();
      out.detail = inst ? "assumed " + *inst : "no instance of " + w.name + " matches";
      return out;
    }
    Mat target = lift(value, env);
    IAmWitness wit = build_witness(w, target, env);
    std::string d;
    out.ok = witness_verify(wit, target, env.m, env.n, &d);
    out.detail = out.ok ? w.str() + ": " + std::to_string(wit.factors.size()) + " factors verified" : w.str() + ": " + d;
  } catch (const RingError& e) {
    out.ok = false;
    out.detail = w.str() + ": " + e.what();
  }
  return out;
}

std::string clip(std::string s, std::size_t k = 160) {
  if (s.size() > k) s = s.substr(0, k) + "...";
  return s;
}

bool values_equal(const Value& a, const Value& b, int* r, int* c) {
  if (a.index() != b.index()) return false;
  if (auto p = std::get_if<Poly>(&a)) return *p == std::get<Poly>(b);
  auto [i, j] = first_difference(std::get<Mat>(a), std::get<Mat>(b));
  if (r) *r = i;
  if (c) *c = j;
  return i == 0;
}

std::string describe_difference(const Value& a, const Value& b, const Env& env, int r, int c) {
  if (a.index() != b.index()) return "a matrix is compared with a polynomial";
  if (auto p = std::get_if<Poly>(&a))
    return "differs: " + clip(p->str(env.names)) + " vs " + clip(std::get<Poly>(b).str(env.names));
  if (r < 0) return "dimension mismatch";
  return "entry (" + std::to_string(r) + "," + std::to_string(c) + ") differs: " +
         clip(std::get<Mat>(a)(r, c).str(env.names)) + " vs " + clip(std::get<Mat>(b)(r, c).str(env.names));
}

// Top level only: a parenthesized product is one factor.
void collect_factors(const NodePtr& e, std::vector<NodePtr>& out) {
  if (e->kind == Node::Kind::Mul) {
    for (const auto& k : e->kids) out.push_back(k);
  } else {
    out.push_back(e);
  }
}

}  // namespace

// ---------------------------------------------------------------- printing

std::string Node::str() const {
  auto wrap = [](const NodePtr& k, bool need) { return need ? "(" + k->str() + ")" : k->str(); };
  auto is_sum = [](const NodePtr& k) {
    return k->kind == Kind::Add || k->kind == Kind::Sub || k->kind == Kind::Neg;
  };
  switch (kind) {
    case Kind::Num:
    case Kind::Ident: return text;
    case Kind::Call: {
      std::string s = text + "(";
      for (std::size_t k = 0; k < kids.size(); ++k) s += (k ? ", " : "") + kids[k]->str();
      return s + ")";
    }
    case Kind::Add: return kids[0]->str() + " + " + kids[1]->str();
    case Kind::Sub: return kids[0]->str() + " - " + wrap(kids[1], kids[1]->kind == Kind::Add || kids[1]->kind == Kind::Sub);
    case Kind::Neg: return "-" + wrap(kids[0], kids[0]->kind == Kind::Add || kids[0]->kind == Kind::Sub);
    case Kind::Mul: {
      std::string s;
      for (std::size_t k = 0; k < kids.size(); ++k) s += (k ? "*" : "") + wrap(kids[k], is_sum(kids[k]));
      return s;
    }
    case Kind::Pow: {
      bool atom = kids[0]->kind == Kind::Num || kids[0]->kind == Kind::Ident || kids[0]->kind == Kind::Call ||
                  kids[0]->kind == Kind::MatLit;
      bool eatom = kids[1]->kind == Kind::Num || kids[1]->kind == Kind::Ident;
      return wrap(kids[0], !atom) + "^" + wrap(kids[1], !eatom);
    }
    case Kind::MatLit: {
      std::string s = "[";
      for (int i = 0; i < rows; ++i) {
        if (i) s += "; ";
        for (int j = 0; j < cols; ++j) s += (j ? ", " : "") + kids[i * cols + j]->str();
      }
      return s + "]";
    }
  }
  return "?";
}

std::string WitnessSpec::str() const {
  switch (kind) {
    case Kind::Rows: return args.empty() ? "rows" : "rows(" + args[0]->str() + ")";
    case Kind::Pow: return "pow(" + args[0]->str() + ")";
    case Kind::Conj: return "conj(" + args[0]->str() + ", " + parts[0].str() + ")";
    case Kind::Inv: return "inv(" + parts[0].str() + ")";
    case Kind::Seq: {
      std::string s;
      for (std::size_t k = 0; k < parts.size(); ++k) s += (k ? " . " : "") + parts[k].str();
      return s;
    }
    case Kind::Sec6: {
      std::string s = "sec6(";
      for (std::size_t k = 0; k < args.size(); ++k) s += (k ? ", " : "") + args[k]->str();
      return s + ")";
    }
    case Kind::Assume: return "assume(" + name + ")";
    case Kind::Hm2: return "hm2(" + args[0]->str() + ")";
  }
  return "?";
}

int ChainReport::first_failure() const {
  for (const auto& s : steps)
    if (!s.pass) return s.index;
  return -1;
}

// ---------------------------------------------------------------- script parsing

ChainScript parse_script(const std::string& text) {
  ChainScript s;
  std::istringstream in(text);
  std::string raw, stmt;
  int line = 0, stmt_line = 0, depth = 0;
  std::vector<std::pair<int, std::string>> stmts;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
    std::string t = trim(raw);
    if (t.empty() && depth == 0) continue;
    // a line opening with an operator or 'by' continues the previous statement
    bool cont = depth == 0 && !stmts.empty() &&
                (std::string("*+-.").find(t[0]) != std::string::npos || t.rfind("==", 0) == 0 ||
                 t.rfind("by ", 0) == 0);
    if (cont) {
      stmt = stmts.back().second;
      stmt_line = stmts.back().first;
      stmts.pop_back();
    } else if (depth == 0) {
      stmt_line = line;
    }
    stmt += (stmt.empty() ? "" : " ") + t;
    for (char c : raw) {
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
    }
    if (depth < 0) script_fail(line, "unbalanced brackets");
    if (depth == 0) {
      stmts.emplace_back(stmt_line, stmt);
      stmt.clear();
    }
  }
  if (depth != 0) script_fail(stmt_line, "unclosed bracket");

  bool dim_set = false;
  std::set<std::string> names;
  for (const auto& [ln, st] : stmts) {
    std::string word = st.substr(0, st.find(' '));
    std::string rest = trim(st.size() > word.size() ? st.substr(word.size()) : "");
    if (word == "script") {
      s.name = rest;
      continue;
    }
    if (word == "title") {
      s.title = rest;
      continue;
    }
    Cursor c(lex(st, ln), ln);
    if (word == "n" || word == "dim") {
      c.next();
      long v = c.expect_int();
      c.expect_done();
      if (v < 1 || v > kMaxVars) c.fail("bad " + word);
      (word == "n" ? s.n : s.dim) = static_cast<int>(v);
      if (word == "dim") dim_set = true;
    } else if (word == "param") {
      c.next();
      ParamDecl p;
      p.name = c.expect_id();
      if (c.eat_sym(":")) p.shape = parse_ideal(c);
      c.expect_done();
      if (!names.insert(p.name).second) c.fail("duplicate name " + p.name);
      s.params.push_back(std::move(p));
    } else if (word == "let") {
      c.next();
      std::string name = c.expect_id();
      c.expect_sym("=");
      NodePtr e = parse_expr(c);
      c.expect_done();
      if (!names.insert(name).second) c.fail("duplicate name " + name);
      s.lets.emplace_back(name, e);
    } else if (word == "hyp") {
      c.next();
      Hypothesis h;
      h.name = c.expect_id();
      if (c.eat_sym("(")) {
        do h.slots.push_back(c.expect_id());
        while (c.eat_sym(","));
        c.expect_sym(")");
      }
      c.expect_sym("=");
      h.body = parse_expr(c);
      c.expect_done();
      s.hyps.push_back(std::move(h));
    } else if (word == "start") {
      c.next();
      if (s.start) c.fail("second start");
      s.start = parse_expr(c);
      c.expect_done();
    } else if (c.at_sym("=") || c.at_sym("~")) {
      if (!s.start) c.fail("chain step before start");
      ChainStep step;
      step.kind = c.at_sym("=") ? ChainStep::Kind::Exact : ChainStep::Kind::Congruence;
      c.next();
      step.expr = parse_expr(c);
      step.line = ln;
      c.expect_done();
      s.steps.push_back(std::move(step));
    } else if (word == "drop") {
      c.next();
      if (s.steps.empty() || s.steps.back().kind != ChainStep::Kind::Congruence) c.fail("drop outside a congruence step");
      DropSpec d;
      d.line = ln;
      d.position = static_cast<int>(c.expect_int());
      d.factor = parse_expr(c);
      if (c.at_id("by")) {
        c.next();
        d.witness = parse_witness(c);
      } else {
        // recorded without a witness: fails at check time
        d.witness.kind = WitnessSpec::Kind::Assume;
        d.witness.name = "";
      }
      c.expect_done();
      s.steps.back().drops.push_back(std::move(d));
    } else if (word == "restart") {
      c.next();
      c.expect_done();
      if (!s.start) c.fail("restart before start");
      ChainStep step;
      step.kind = ChainStep::Kind::Restart;
      step.line = ln;
      s.steps.push_back(std::move(step));
    } else if (word == "member") {
      c.next();
      ChainStep step;
      if (!c.at_id("by")) step.expr = parse_expr(c);
      else if (!s.start) c.fail("member before start");
      if (!c.at_id("by")) c.fail("member needs 'by'");
      c.next();
      step.kind = ChainStep::Kind::Member;
      step.witness = parse_witness(c);
      step.line = ln;
      c.expect_done();
      s.steps.push_back(std::move(step));
    } else if (word == "check") {
      c.next();
      ChainStep step;
      step.line = ln;
      step.expr = parse_expr(c);
      if (c.eat_sym("==")) {
        step.kind = ChainStep::Kind::CheckEq;
        step.rhs = parse_expr(c);
      } else if (c.at_id("in")) {
        c.next();
        step.kind = ChainStep::Kind::CheckIn;
        step.ideal = parse_ideal(c);
      } else {
        c.fail("check needs '==' or 'in'");
      }
      c.expect_done();
      s.steps.push_back(std::move(step));
    } else {
      c.fail("unknown statement '" + word + "'");
    }
  }
  if (s.name.empty()) script_fail(0, "script has no name");
  if (!dim_set) s.dim = std::max(1, s.n - 1);
  if (!s.start && std::none_of(s.steps.begin(), s.steps.end(), [](const ChainStep& st) {
        return st.kind == ChainStep::Kind::CheckEq || st.kind == ChainStep::Kind::CheckIn;
      }))
    script_fail(0, "script " + s.name + " has nothing to check");
  for (const auto& p : s.params)
    if (p.shape) check_ideal_indices(*p.shape, s.n, 0);
  for (const auto& st : s.steps)
    if (st.ideal) check_ideal_indices(*st.ideal, s.n, st.line);
  return s;
}

// ---------------------------------------------------------------- checking

ChainReport chain_check(const ChainScript& s, long m) {
  if (m < 2) throw ScriptError("m must be at least 2");
  Env env = make_env(s, m);
  ChainReport rep;
  rep.name = s.name;
  rep.m = m;
  std::optional<Value> cur;
  bool congruence = false;
  if (s.start) {
    cur = eval(s.start, env);
    check_polynomial_in_params(*cur, env);
  }
  std::optional<Value> first = cur;
  int index = 0;
  for (const auto& st : s.steps) {
    StepReport sr;
    sr.index = ++index;
    sr.line = st.line;
    try {
      switch (st.kind) {
        case ChainStep::Kind::Exact: {
          sr.kind = "exact";
          Value v = eval(st.expr, env);
          check_polynomial_in_params(v, env);
          int r = 0, c = 0;
          sr.pass = values_equal(*cur, v, &r, &c);
          sr.row = r;
          sr.col = c;
          sr.detail = sr.pass ? "equal" : describe_difference(*cur, v, env, r, c);
          cur = v;
          break;
        }
        case ChainStep::Kind::Congruence: {
          sr.kind = "congruence";
          congruence = true;
          std::vector<NodePtr> fnodes;
          collect_factors(st.expr, fnodes);
          std::vector<Mat> fac;
          for (const auto& f : fnodes) fac.push_back(as_mat(eval(f, env), "congruence factor"));
          Mat reduced = fac[0];
          for (std::size_t k = 1; k < fac.size(); ++k) reduced = reduced * fac[k];
          check_polynomial_in_params(Value(reduced), env);
          bool drops_ok = true;
          std::vector<std::string> notes;
          std::vector<int> owner(fac.size(), -1);  // index into st.drops, -1 when kept
          for (std::size_t q = 0; q < st.drops.size(); ++q) {
            const DropSpec& d = st.drops[q];
            Mat dv = as_mat(eval(d.factor, env), "dropped factor");
            check_polynomial_in_params(Value(dv), env);
            if (d.position < 1 || d.position > static_cast<int>(fac.size()) + 1)
              throw ScriptError("drop position " + std::to_string(d.position) + " out of range");
            fac.insert(fac.begin() + (d.position - 1), dv);
            owner.insert(owner.begin() + (d.position - 1), static_cast<int>(q));
          }
          Mat full = fac[0];
          for (std::size_t k = 1; k < fac.size(); ++k) full = full * fac[k];
          int r = 0, c = 0;
          bool prod_ok = values_equal(*cur, Value(full), &r, &c);
          // A failed product localizes the step; witnesses are checked only
          // when the reinstated factors reproduce the previous value.
          if (!prod_ok) {
            drops_ok = false;
            if (!st.drops.empty()) notes.push_back("drop witnesses not checked");
          } else {
            // Drops are removed right to left, so each one is followed by kept
            // factors only. Normality of <IA^m> lets a factor go when that
            // suffix lies in IA; otherwise its conjugate by the suffix must.
            std::vector<Mat> targets(fac.size());
            {
              Mat suffix = Mat::identity(fac[0].dim(), env.nv);
              for (std::size_t k = fac.size(); k-- > 0;) {
                if (owner[k] < 0) {
                  suffix = fac[k] * suffix;
                } else if (in_ia(suffix, env)) {
                  targets[k] = fac[k];
                } else {
                  targets[k] = suffix.inverse() * fac[k] * suffix;
                }
              }
            }
            for (std::size_t q = 0; q < st.drops.size(); ++q) {
              std::size_t k = std::find(owner.begin(), owner.end(), static_cast<int>(q)) - owner.begin();
              const DropSpec& d = st.drops[q];
              WitnessOutcome w;
              if (d.witness.kind == WitnessSpec::Kind::Assume && d.witness.name.empty()) {
                w = {false, "dropped factor has no witness"};
              } else {
                w = check_membership(d.witness, targets[k], env);
                if (!(targets[k] == fac[k])) w.detail = "conjugated by the kept suffix; " + w.detail;
              }
              drops_ok = drops_ok && w.ok;
              sr.witnesses.push_back((w.ok ? "ok: " : "FAIL: ") + w.detail);
              if (!w.ok) notes.push_back("drop at line " + std::to_string(d.line) + " not witnessed (" + w.detail + ")");
            }
            if (st.drops.empty()) {
              drops_ok = false;
              notes.push_back("congruence step without dropped factors");
            }
          }
          sr.row = r;
          sr.col = c;
          sr.pass = prod_ok && drops_ok;
          if (!prod_ok) notes.insert(notes.begin(), "with dropped factors reinstated, " +
                                                        describe_difference(*cur, Value(full), env, r, c));
          if (sr.pass) {
            sr.detail = "equal with " + std::to_string(st.drops.size()) + " witnessed factor(s) reinstated";
          } else {
            for (std::size_t k = 0; k < notes.size(); ++k) sr.detail += (k ? "; " : "") + notes[k];
          }
          cur = Value(reduced);
          break;
        }
        case ChainStep::Kind::Member: {
          sr.kind = "member";
          Value target = st.expr ? eval(st.expr, env) : *cur;
          if (st.expr) check_polynomial_in_params(target, env);
          if (st.witness.kind == WitnessSpec::Kind::Hm2) {
            int i = index_arg(st.witness.args[0], env, env.n, "hm2");
            TmWitness t = hm2_in_tm_witness(i, m, env.n);
            Poly rec = t.recombine().extend(env.nv);
            const Poly& v = as_poly(target, "hm2");
            sr.pass = t.summands_ok() && rec == v;
            sr.detail = sr.pass ? "T_m witness recombines" : "T_m witness does not recombine to the current value";
            sr.witnesses.push_back(sr.detail);
          } else {
            WitnessOutcome w = check_membership(st.witness, as_mat(target, "member"), env);
            sr.pass = w.ok;
            sr.detail = w.detail;
            sr.witnesses.push_back((w.ok ? "ok: " : "FAIL: ") + w.detail);
          }
          break;
        }
        case ChainStep::Kind::CheckEq: {
          sr.kind = "check";
          Value a = eval(st.expr, env), b = eval(st.rhs, env);
          check_polynomial_in_params(a, env);
          check_polynomial_in_params(b, env);
          int r = 0, c = 0;
          sr.pass = values_equal(a, b, &r, &c);
          sr.row = r;
          sr.col = c;
          sr.detail = sr.pass ? "equal" : describe_difference(a, b, env, r, c);
          break;
        }
        case ChainStep::Kind::Restart: {
          sr.kind = "restart";
          sr.pass = true;
          sr.detail = "back to the start expression";
          cur = first;
          break;
        }
        case ChainStep::Kind::CheckIn: {
          sr.kind = "check";
          Value a = eval(st.expr, env);
          check_polynomial_in_params(a, env);
          std::string why;
          sr.pass = member_in(*st.ideal, as_poly(a, "membership"), env, &why);
          sr.detail = sr.pass ? "member of " + st.ideal->text : "not in " + st.ideal->text + ": " + why;
          break;
        }
      }
    } catch (const RingError& e) {
      sr.pass = false;
      sr.detail = std::string("error: ") + e.what();
      if (st.kind == ChainStep::Kind::Exact || st.kind == ChainStep::Kind::Congruence) {
        try {
          cur = eval(st.expr, env);
        } catch (const RingError&) {
        }
      }
    }
    rep.steps.push_back(std::move(sr));
  }
  bool all = std::all_of(rep.steps.begin(), rep.steps.end(), [](const StepReport& r) { return r.pass; });
  StepReport fin;
  fin.kind = "conclusion";
  fin.index = index + 1;
  fin.pass = all;
  if (first) {
    std::string rel = congruence ? "start is congruent to the last expression mod <IA^m>"
                                 : "start equals the last expression";
    fin.detail = all ? rel : "chain broken";
  } else {
    fin.detail = all ? "all checks hold" : "a check failed";
  }
  rep.steps.push_back(std::move(fin));
  rep.pass = all;
  return rep;
}

bool shape_member(const ShapeIdeal& ideal, const Poly& f, long m, int n, std::string* why) {
  Env env;
  env.n = n;
  env.m = m;
  env.nv = f.nvars();
  env.dim = std::max(1, n - 1);
  env.names = default_names(env.nv);
  env.bar_var.assign(env.nv, false);
  for (int k = 1; k <= n && k <= env.nv; ++k) env.vars[env.names[k - 1]] = Poly::var(env.nv, k);
  return member_in(ideal, f, env, why);
}

ChainScript universality_instantiate(const ChainScript& s, const std::map<std::string, Poly>& bindings, long m) {
  ChainScript out = s;
  for (const auto& [name, val] : bindings) {
    auto it = std::find_if(s.params.begin(), s.params.end(), [&](const ParamDecl& p) { return p.name == name; });
    if (it == s.params.end()) throw ScriptError("no parameter named " + name + " in " + s.name);
    if (val.nvars() > s.n) throw ScriptError("binding for " + name + " uses more than x1..xn");
    Poly v = val.extend(s.n);
    if (it->shape) {
      std::string why;
      if (!shape_member(*it->shape, v, m, s.n, &why))
        throw ScriptError("binding " + name + " = " + v.str() + " violates " + it->shape->text + ": " + why);
    }
    out.bindings[name] = v;
  }
  return out;
}

std::map<std::string, Poly> random_bindings(const ChainScript& s, long m, std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto small = [&](bool bar) {
    int nvar = bar ? s.n - 1 : s.n;
    std::vector<Term> ts;
    int k = pick(1, 2);
    for (int t = 0; t < k; ++t) {
      Term term{zero_exps(), Int(pick(1, 2) * (pick(0, 1) ? 1 : -1))};
      if (nvar > 0) {
        int v = pick(0, nvar - 1);
        term.e[v] = pick(-1, 1);
      }
      ts.push_back(term);
    }
    Poly p = Poly::from_terms(s.n, ts);
    return p.is_zero() ? Poly(s.n, 1) : p;
  };
  Env env;
  env.n = s.n;
  env.nv = s.n;
  env.m = m;
  env.dim = s.dim;
  env.names = default_names(s.n);
  env.bar_var.assign(s.n, false);
  for (int k = 1; k <= s.n; ++k) env.vars[env.names[k - 1]] = Poly::var(s.n, k);
  std::map<std::string, Poly> out;
  for (const auto& p : s.params) {
    if (!p.shape) {
      out[p.name] = small(false);
      continue;
    }
    Poly body(s.n);
    if (p.shape->body.empty()) body = small(p.shape->bar);
    for (const auto& g : p.shape->body)
      if (pick(0, 2)) body += ideal_gen_poly(g, env) * small(p.shape->bar);
    if (body.is_zero()) body = ideal_gen_poly(p.shape->body[0], env);
    out[p.name] = prefix_poly(*p.shape, env) * body;
  }
  return out;
}

// ---------------------------------------------------------------- mutations

namespace {

NodePtr clone(const NodePtr& e) {
  auto c = std::make_shared<Node>(*e);
  for (auto& k : c->kids) k = clone(k);
  return c;
}

struct Site {
  NodePtr* slot;      // node to replace
  int operand = -1;   // DropFactor: operand of a product
  std::string what;
};

// Walks a tree collecting mutation sites; integer-valued arguments are skipped.
void collect_sites(NodePtr* slot, MutationKind kind, int n, std::vector<Site>& out) {
  Node& e = **slot;
  switch (kind) {
    case MutationKind::SignFlip:
      if (e.kind == Node::Kind::Num || e.kind == Node::Kind::Ident || e.kind == Node::Kind::MatLit ||
          e.kind == Node::Kind::Neg || e.kind == Node::Kind::Sub || e.kind == Node::Kind::Add ||
          (e.kind == Node::Kind::Call && (e.text == "E" || e.text == "sigma")))
        if (!(e.kind == Node::Kind::Num && e.text == "0")) out.push_back({slot, -1, e.str()});
      break;
    case MutationKind::IndexSwap:
      if (e.kind == Node::Kind::Call && (e.text == "E" || e.text == "e") && e.kids.size() >= 2 &&
          e.kids[0]->str() != e.kids[1]->str())
        out.push_back({slot, -1, e.str()});
      if (e.kind == Node::Kind::Call && e.text == "sigma" && n > 1) out.push_back({slot, -1, e.str()});
      if (e.kind == Node::Kind::Ident && e.text.size() > 1 && e.text[0] == 'x' && n > 1 &&
          std::all_of(e.text.begin() + 1, e.text.end(), ::isdigit))
        out.push_back({slot, -1, e.str()});
      if (e.kind == Node::Kind::MatLit && e.rows > 1) out.push_back({slot, -1, e.str()});
      break;
    case MutationKind::DropFactor:
      if (e.kind == Node::Kind::Mul)
        for (int k = 0; k < static_cast<int>(e.kids.size()); ++k) out.push_back({slot, k, e.kids[k]->str()});
      break;
  }
  // recurse, skipping index and exponent positions
  auto skip = [&](std::size_t k) {
    if (e.kind == Node::Kind::Pow && k == 1) return true;
    if (e.kind == Node::Kind::Call) {
      if ((e.text == "E" || e.text == "e") && k < 2) return true;
      if (e.text == "sigma" || e.text == "x" || e.text == "perm") return true;
      if (e.text == "divsigma" && k == 1) return true;
      if (e.text == "sum" && k < 3) return true;
    }
    return false;
  };
  for (std::size_t k = 0; k < e.kids.size(); ++k)
    if (!skip(k)) collect_sites(&e.kids[k], kind, n, out);
}

std::string apply_mutation(const Site& s, MutationKind kind, int n, std::mt19937_64& rng) {
  Node& e = **s.slot;
  switch (kind) {
    case MutationKind::SignFlip:
      if (e.kind == Node::Kind::Neg) {
        *s.slot = e.kids[0];
        return "removed the sign of -" + (*s.slot)->str();
      }
      if (e.kind == Node::Kind::Sub) {
        e.kind = Node::Kind::Add;
        return "changed '-' to '+' in " + s.what;
      }
      if (e.kind == Node::Kind::Add) {
        e.kind = Node::Kind::Sub;
        return "changed '+' to '-' in " + s.what;
      }
      *s.slot = mk(Node::Kind::Neg, {}, {*s.slot});
      return "negated " + s.what;
    case MutationKind::IndexSwap: {
      if (e.kind == Node::Kind::Call && (e.text == "E" || e.text == "e")) {
        std::swap(e.kids[0], e.kids[1]);
        return "swapped the indices of " + s.what;
      }
      if (e.kind == Node::Kind::MatLit) {
        int r1 = std::uniform_int_distribution<int>(0, e.rows - 1)(rng);
        int r2 = (r1 + 1 + std::uniform_int_distribution<int>(0, e.rows - 2)(rng)) % e.rows;
        for (int j = 0; j < e.cols; ++j) std::swap(e.kids[r1 * e.cols + j], e.kids[r2 * e.cols + j]);
        return "swapped rows " + std::to_string(r1 + 1) + " and " + std::to_string(r2 + 1) + " of " + s.what;
      }
      if (e.kind == Node::Kind::Call) {  // sigma(i)
        long i = std::stol(e.kids[0]->str());
        e.kids[0] = mk(Node::Kind::Num, std::to_string(i % n + 1));
        return "changed " + s.what + " to " + e.str();
      }
      long i = std::stol(e.text.substr(1));
      e.text = "x" + std::to_string(i % n + 1);
      return "changed " + s.what + " to " + e.text;
    }
    case MutationKind::DropFactor:
      e.kids.erase(e.kids.begin() + s.operand);
      if (e.kids.size() == 1) *s.slot = e.kids[0];
      return "dropped factor " + s.what;
  }
  return {};
}

}  // namespace

std::optional<std::pair<ChainScript, Mutation>> mutate(const ChainScript& s, MutationKind kind, std::uint64_t seed,
                                                       long m) {
  // roots: (report step expected to fail, accessor into a script copy)
  struct Root {
    int step;
    std::function<NodePtr*(ChainScript&)> get;
    const ShapeIdeal* ideal = nullptr;  // membership checks: the mutation must change membership
  };
  std::vector<Root> roots;
  int first_chain = 0;
  for (std::size_t k = 0; k < s.steps.size() && !first_chain; ++k) {
    auto kd = s.steps[k].kind;
    if (kd == ChainStep::Kind::Exact || kd == ChainStep::Kind::Congruence ||
        (kd == ChainStep::Kind::Member && !s.steps[k].expr))
      first_chain = static_cast<int>(k) + 1;
  }
  if (s.start && first_chain) roots.push_back({first_chain, [](ChainScript& c) { return &c.start; }});
  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    const auto& st = s.steps[k];
    int idx = static_cast<int>(k) + 1;
    const ShapeIdeal* ideal = st.kind == ChainStep::Kind::CheckIn && st.ideal ? &*st.ideal : nullptr;
    if (st.expr) roots.push_back({idx, [k](ChainScript& c) { return &c.steps[k].expr; }, ideal});
    if (st.rhs) roots.push_back({idx, [k](ChainScript& c) { return &c.steps[k].rhs; }});
    for (std::size_t d = 0; d < st.drops.size(); ++d)
      roots.push_back({idx, [k, d](ChainScript& c) { return &c.steps[k].drops[d].factor; }});
  }
  struct Cand {
    std::size_t root;
    std::size_t site;
  };
  std::vector<Cand> cands;
  {
    ChainScript probe = s;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      NodePtr* slot = roots[r].get(probe);
      *slot = clone(*slot);
      std::vector<Site> sites;
      collect_sites(slot, kind, s.n, sites);
      for (std::size_t q = 0; q < sites.size(); ++q) cands.push_back({r, q});
    }
  }
  std::mt19937_64 rng(seed);
  std::shuffle(cands.begin(), cands.end(), rng);
  Env env = make_env(s, m);
  for (const auto& cd : cands) {
    ChainScript out = s;
    NodePtr* slot = roots[cd.root].get(out);
    NodePtr original = *slot;
    *slot = clone(*slot);
    std::vector<Site> sites;
    collect_sites(slot, kind, s.n, sites);
    std::string what = apply_mutation(sites[cd.site], kind, s.n, rng);
    bool changed = true;
    try {
      Value a = eval(original, env);
      Value b = eval(*slot, env);
      changed = !values_equal(a, b, nullptr, nullptr);
      if (changed && roots[cd.root].ideal)
        changed = member_in(*roots[cd.root].ideal, as_poly(a, "membership"), env, nullptr) !=
                  member_in(*roots[cd.root].ideal, as_poly(b, "membership"), env, nullptr);
    } catch (const RingError&) {
      changed = true;  // the mutated expression no longer evaluates; the step reports an error
    }
    if (!changed) continue;
    std::string where = cd.root == 0 && s.start ? "start" : "step " + std::to_string(roots[cd.root].step);
    Mutation mu{kind, roots[cd.root].step, where + ": " + what};
    return std::make_pair(std::move(out), std::move(mu));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- suite

std::vector<ChainScript> builtin_suite() {
  std::vector<ChainScript> out;
  for (const auto& e : builtin_suite_entries()) out.push_back(parse_script(e.text));
  return out;
}

const SuiteEntry* find_suite_entry(const std::string& name) {
  for (const auto& e : builtin_suite_entries())
    if (e.name == name) return &e;
  return nullptr;
}

namespace {
ChainReport safe_check(const ChainScript& s, long m) {
  try {
    return chain_check(s, m);
  } catch (const std::exception& e) {
    ChainReport r;
    r.name = s.name;
    r.m = m;
    StepReport st;
    st.kind = "error";
    st.index = 1;
    st.detail = e.what();
    r.steps.push_back(st);
    return r;
  }
}
}  // namespace

std::vector<ChainReport> run_suite(const std::vector<ChainScript>& scripts, long m) {
  std::vector<ChainReport> out(scripts.size());
  long count = static_cast<long>(scripts.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) out[k] = safe_check(scripts[k], m);
  return out;
}

std::vector<ChainReport> run_suite_serial(const std::vector<ChainScript>& scripts, long m) {
  std::vector<ChainReport> out;
  for (const auto& s : scripts) out.push_back(safe_check(s, m));
  return out;
}

}  // namespace metab
