#pragma once
// Chain scripts: displayed matrix computations re-checked as exact identities
// over Z[x1..xn, parameters], with congruence steps justified by witnessed
// dropped factors.
//
// Script text, one statement per line ('#' starts a comment; a statement
// continues while brackets are open):
//
//   script NAME            title TEXT         n 4         dim 3
//   param f : sigma(4)*(SU(1)+SU(2)+SU(3)+U(4)+O)      shaped parameter
//   param g                                             free parameter
//   let A = E(1,2,a1)*E(2,3,a2)                         abbreviation
//   hyp H(i,j,s) = E(j,i,s*f1)*E(i,j,h)*E(j,i,-s*f1)    assumed family
//   hyp C = inv(A)*X*A                                  cited single element
//   start EXPR
//   = EXPR                 exact step
//   ~ EXPR                 congruence step, followed by its drops:
//   drop POS EXPR by WITNESS   POS counts top-level factors; (a*b) is one
//   restart                later steps relate to the start expression again
//   member [EXPR] by WITNESS   EXPR (default: the current value) lies in <IA^m>
// Lines opening with an operator, "==" or "by" continue the previous statement.
//   check EXPR == EXPR     side identity
//   check EXPR in IDEAL    side membership
//
// Expressions: integers, m, x1..xn, parameters, lets, [a, b; c, d], + - * ^,
// I, E(i,j,h), e(i,j), comm(a,b) = a b a^-1 b^-1, inv(a), tr(a), det(a),
// sigma(i), sum(k, lo, hi, expr).
// Witnesses: rows, rows(M), pow(M), conj(C, W), inv(W), W . W,
// sec6(family, u, i, j, k, f), assume(H), hm2(i).
// Ideals: a product of prefix factors sigma(i), U(i), SU(i), integers, then an
// optional sum (U(i) + SU(i) + O + g(poly)); 'bar' forbids x_n.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "metab/elem.hpp"

namespace metab {

struct ScriptError : RingError {
  using RingError::RingError;
};

struct Node;
using NodePtr = std::shared_ptr<Node>;

struct Node {
  enum class Kind { Num, Ident, Call, Add, Sub, Mul, Neg, Pow, MatLit };
  Kind kind = Kind::Num;
  std::string text;            // Num digits, Ident / Call name
  std::vector<NodePtr> kids;   // operands, call args, literal entries row-major
  int rows = 0, cols = 0;      // MatLit
  std::string str() const;
};

// prefix * (body) with body a MonicIdeal over the ring, or the whole ring.
struct ShapeIdeal {
  struct Factor {
    enum class Kind { Sigma, U, SU, Integer } kind;
    int i = 0;
    NodePtr value;  // Integer
  };
  struct Gen {
    enum class Kind { U, SU, O, Poly } kind;
    int i = 0;
    NodePtr poly;  // Poly
  };
  std::vector<Factor> prefix;
  std::vector<Gen> body;  // empty: whole ring
  bool bar = false;
  std::string text;
};

struct ParamDecl {
  std::string name;
  std::optional<ShapeIdeal> shape;
};

struct WitnessSpec {
  enum class Kind { Rows, Pow, Conj, Inv, Seq, Sec6, Assume, Hm2 };
  Kind kind = Kind::Rows;
  std::vector<NodePtr> args;  // Rows (optional), Pow, Conj (C), Sec6 (six)
  std::vector<WitnessSpec> parts;
  std::string name;  // Assume
  std::string str() const;
};

struct Hypothesis {
  std::string name;
  std::vector<std::string> slots;  // slots named i, j range over indices, others over +-1
  NodePtr body;
};

struct DropSpec {
  int position = 1;  // the reinstated factor becomes factor number 'position'
  NodePtr factor;
  WitnessSpec witness;
  int line = 0;
};

struct ChainStep {
  enum class Kind { Exact, Congruence, Member, CheckEq, CheckIn, Restart };
  Kind kind = Kind::Exact;
  NodePtr expr;  // new value; CheckEq/CheckIn left side
  NodePtr rhs;   // CheckEq
  std::optional<ShapeIdeal> ideal;  // CheckIn
  std::vector<DropSpec> drops;      // Congruence
  WitnessSpec witness;              // Member
  int line = 0;
};

struct ChainScript {
  std::string name, title;
  int n = 4;
  int dim = 3;
  std::vector<ParamDecl> params;
  std::vector<std::pair<std::string, NodePtr>> lets;
  std::vector<Hypothesis> hyps;
  NodePtr start;
  std::vector<ChainStep> steps;
  // concrete values over x1..xn, set by universality_instantiate
  std::map<std::string, Poly> bindings;
};

ChainScript parse_script(const std::string& text);

struct StepReport {
  std::string kind;  // exact, congruence, member, check, restart, conclusion
  int index = 0;     // 1-based step number; the conclusion comes last
  int line = 0;
  bool pass = false;
  std::string detail;
  int row = 0, col = 0;  // first differing entry, when any
  std::vector<std::string> witnesses;
};

struct ChainReport {
  std::string name;
  long m = 2;
  bool pass = false;
  std::vector<StepReport> steps;
  int first_failure() const;  // step index, -1 when passing
};

ChainReport chain_check(const ChainScript& s, long m = 2);

// Binds parameters to concrete values over x1..xn; throws ScriptError when a
// name is unknown or a value violates the parameter's declared ideal.
ChainScript universality_instantiate(const ChainScript& s, const std::map<std::string, Poly>& bindings,
                                     long m = 2);
// Random constraint-respecting bindings for every parameter.
std::map<std::string, Poly> random_bindings(const ChainScript& s, long m, std::mt19937_64& rng);

bool shape_member(const ShapeIdeal& ideal, const Poly& f, long m, int n, std::string* why = nullptr);

// Single-token mutations for negative controls.
enum class MutationKind { SignFlip, IndexSwap, DropFactor };
struct Mutation {
  MutationKind kind;
  int step = 0;  // index of the step report expected to fail first
  std::string description;
};
// Returns a mutated copy whose mutated expression evaluates differently from
// the original (for membership checks: whose membership differs); nullopt
// when no such mutation of this kind exists.
std::optional<std::pair<ChainScript, Mutation>> mutate(const ChainScript& s, MutationKind kind, std::uint64_t seed,
                                                       long m = 2);

struct SuiteEntry {
  std::string name;
  std::string display;  // which displayed computation the script encodes
  std::string note;     // reconstruction remarks, empty when verbatim
  std::string text;
};
const std::vector<SuiteEntry>& builtin_suite_entries();
std::vector<ChainScript> builtin_suite();
const SuiteEntry* find_suite_entry(const std::string& name);

// Runs scripts concurrently; reports come back in input order.
std::vector<ChainReport> run_suite(const std::vector<ChainScript>& scripts, long m = 2);
std::vector<ChainReport> run_suite_serial(const std::vector<ChainScript>& scripts, long m = 2);

}  // namespace metab
