#pragma once
// Exact arithmetic in Z[x1^+-1, ..., xk^+-1] and its finite quotients.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace metab {

using Int = mpz_class;

// Hard cap on variables; chain scripts adjoin parameters after x1..xn.
constexpr int kMaxVars = 20;
using Exps = std::array<int32_t, kMaxVars>;

inline Exps zero_exps() {
  Exps e{};
  return e;
}

struct RingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotDivisible : RingError {
  using RingError::RingError;
};

struct Term {
  Exps e;
  Int c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars);
  Poly(int nvars, long c);
  Poly(int nvars, const Int& c);

  static Poly monomial(int nvars, const Exps& e, const Int& c = 1);
  static Poly var(int nvars, int i);    // x_i, 1-based
  static Poly sigma(int nvars, int i);  // x_i - 1
  // Builds from unsorted terms, merging duplicates.
  static Poly from_terms(int nvars, std::vector<Term> terms);

  int nvars() const { return nv_; }
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  std::size_t size() const { return t_.size(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Int& k, const Poly& a);
  Poly operator-() const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Negative exponents allowed only for monomials.
  Poly pow(long k) const;
  Poly shift(const Exps& e) const;  // multiply by x^e

  // Sets the listed variables (1-based) to 1.
  Poly specialize(const std::vector<int>& vars_to_one) const;
  Int eval_at_ones() const;
  // Replaces variable i by g; g must be a unit if i appears with negative exponent.
  Poly substitute(int i, const Poly& g) const;
  // Re-embeds into a ring with more variables.
  Poly extend(int nvars) const;
  bool uses_var(int i) const;
  int max_abs_exponent() const;

  std::string str() const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  void check(const Poly& o) const;
  int nv_ = 0;
  std::vector<Term> t_;  // strictly increasing exponent vectors, nonzero c
};

Poly lp_arith(const Poly& a, const Poly& b, char kind);
Poly lp_specialize(const Poly& f, const std::vector<int>& vars_to_one);

// Exact quotient by sigma_i; throws NotDivisible when f(x_i=1) != 0.
Poly lp_divide_exact(const Poly& f, int i);
std::optional<Poly> try_divide_sigma(const Poly& f, int i);

struct UnitInfo {
  int sign;
  Exps e;
};
std::optional<UnitInfo> unit_check(const Poly& f);
// Inverse of a unit (+-monomial); throws otherwise.
Poly unit_inverse(const Poly& f);

// Element of Z_m[Z_m^k].
class ModPoly {
 public:
  ModPoly() = default;
  ModPoly(int nvars, long m);
  static ModPoly constant(int nvars, long m, long c);
  static ModPoly from_poly(const Poly& f, long m);

  int nvars() const { return nv_; }
  long modulus() const { return m_; }
  const std::vector<std::pair<Exps, long>>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
  ModPoly operator-() const;
  bool operator==(const ModPoly& o) const { return nv_ == o.nv_ && m_ == o.m_ && t_ == o.t_; }
  bool operator<(const ModPoly& o) const { return t_ < o.t_; }
  ModPoly shift(const Exps& e) const;
  std::string str() const;

 private:
  static ModPoly build(int nv, long m, std::vector<std::pair<Exps, long>> raw);
  int nv_ = 0;
  long m_ = 2;
  std::vector<std::pair<Exps, long>> t_;
};

ModPoly lp_reduce_mod_Hm(const Poly& f, long m);

enum class IdealKind {
  Augmentation,
  SigmaPrincipal,  // sigma_i R
  H,               // H_m
  J,               // (x_i^m - 1) S_i + m S_i, f univariate in x_i
  SigmaTimesH,     // sigma_i H_m
  SigmaJ,          // sigma_i J_{i,m}
  U,               // (x_i^m - 1) R
  O,               // m R
  O2,              // m^2 R
};

struct IdealRef {
  IdealKind kind;
  int i = 0;
  long m = 0;
  static IdealRef augmentation() { return {IdealKind::Augmentation, 0, 0}; }
  static IdealRef sigma(int i) { return {IdealKind::SigmaPrincipal, i, 0}; }
  static IdealRef h(long m) { return {IdealKind::H, 0, m}; }
  static IdealRef j(int i, long m) { return {IdealKind::J, i, m}; }
  static IdealRef sigma_h(int i, long m) { return {IdealKind::SigmaTimesH, i, m}; }
  static IdealRef sigma_j(int i, long m) { return {IdealKind::SigmaJ, i, m}; }
  static IdealRef u(int i, long m) { return {IdealKind::U, i, m}; }
  static IdealRef o(long m) { return {IdealKind::O, 0, m}; }
  static IdealRef o2(long m) { return {IdealKind::O2, 0, m}; }
  std::string str() const;
};

bool ideal_member(const Poly& f, const IdealRef& ideal);
// f = sigma_i^k * g with g in the ideal.
bool in_sigma_power_times(const Poly& f, int i, int k, const IdealRef& ideal);
bool only_uses_vars(const Poly& f, const std::vector<int>& vars);

// Element of T_m = sum sigma_r^2 U_{r,m} + sum sigma_r O_m + O_m^2.
struct TmWitness {
  int n = 0;
  long m = 2;
  std::vector<Poly> a;  // sigma_r^2 (x_r^m - 1) a_r
  std::vector<Poly> b;  // sigma_r m b_r
  Poly c;               // m^2 c
  Poly recombine() const;
  std::vector<Poly> summands() const;
  bool summands_ok() const;
};

TmWitness hm2_in_tm_witness(int i, long m, int n);

// Ideal (g_1, ..., g_k, modulus) where each g is univariate and monic in its
// own variable with constant term +-1, so x is a unit modulo g. Membership
// is decided by division: the ideal of Z[x^+-1]/(g's) is free over Z.
struct MonicIdeal {
  std::vector<std::pair<int, Poly>> gens;  // (variable, generator)
  Int modulus = 0;                         // 0 means no integer generator
};

// f = sum q_k g_k + modulus * r
struct MonicDecomposition {
  std::vector<Poly> q;
  Poly r;
};
std::optional<MonicDecomposition> monic_decompose(const Poly& f, const MonicIdeal& ideal);
// Exact quotient by a monic univariate g in variable i; nullopt when g does not divide f.
std::optional<Poly> divide_monic(const Poly& f, int i, const Poly& g);

// Text form: "x1^2*x2^-1 - 3". Names default to x1..xk.
Poly parse_poly(const std::string& s, int nvars);
Poly parse_poly(const std::string& s, const std::vector<std::string>& names);
std::vector<std::string> default_names(int nvars);

}  // namespace metab
