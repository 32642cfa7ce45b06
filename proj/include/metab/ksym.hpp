#pragma once
// Steinberg words and symbols, their images under phi_d and lifts, and the
// finite rings used to exhibit them.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "metab/matrix.hpp"

namespace metab {

// Z, S = Z[x^+-1], Z_m, Z_m[Z_m^k] (S/J_m when k = 1), Z[y]/(p^2, y^(p^l)).
// Elements are Polys in the ring's variables, kept in canonical reduced form.
class QuotRing {
 public:
  enum class Kind { Z, S, Zmod, GroupRingMod, SBar };

  static QuotRing integers();
  static QuotRing laurent();
  static QuotRing zmod(long m);
  static QuotRing group_ring(long m, int k);
  static QuotRing sbar(long p, int l);

  Kind kind() const { return kind_; }
  int nvars() const { return nv_; }
  long modulus() const { return m_; }
  bool finite() const { return kind_ != Kind::Z && kind_ != Kind::S; }
  std::string name() const;

  Poly reduce(const Poly& f) const;
  Mat reduce(const Mat& a) const;
  Poly one() const { return Poly(nv_, 1); }
  Poly from_int(long c) const { return reduce(Poly(nv_, c)); }
  Poly mul(const Poly& a, const Poly& b) const { return reduce(a * b); }
  bool is_unit(const Poly& a) const;
  Poly inverse(const Poly& a) const;  // throws on non-units
  std::vector<Poly> elements() const;  // finite rings only
  long cardinality() const;
  std::vector<Poly> units() const;
  std::string str(const Poly& a) const;
  // Canonical form with coefficients moved into (-m/2, m/2].
  Poly symmetric(const Poly& a) const;

 private:
  Kind kind_ = Kind::Z;
  int nv_ = 1;
  long m_ = 0;  // coefficient modulus (p^2 for SBar)
  long p_ = 0;
  long trunc_ = 0;  // SBar: y^trunc = 0
};

struct StToken {
  int i, j;
  Poly r;
  bool inv = false;
};

using SteinbergWord = std::vector<StToken>;

SteinbergWord st_inverse(const SteinbergWord& w);
SteinbergWord st_w(const QuotRing& R, const Poly& u, int i, int j);
SteinbergWord st_h(const QuotRing& R, const Poly& u, int i, int j);
// {u,v}_{i,j} = h(uv) h(u)^-1 h(v)^-1
SteinbergWord st_symbol_word(const QuotRing& R, const Poly& u, const Poly& v, int i, int j);

// phi_d: x_ij(r) -> I + r E_ij, reduced in R.
Mat st_eval(const SteinbergWord& w, int d, const QuotRing& R);

using Section = std::function<Poly(const Poly&)>;

// Evaluates a word over R/H by lifting each residue into R. The default
// section takes symmetric coefficients, so 1 and -1 lift to themselves.
// Throws when a token is not canonical or its lift does not reduce back.
Mat st_lift_eval(const SteinbergWord& w, const QuotRing& quotient, const QuotRing& lifted, int d,
                 const Section& lift = {});

struct LiftCheck {
  bool block_form = false;     // (A 0; 0 I_{d-2})
  bool congruent = false;      // A - I entries in H
  bool det_one = false;
  bool ok() const { return block_form && congruent && det_one; }
};
LiftCheck check_lift(const Mat& lifted, const QuotRing& quotient);

// [I + (x^{km}-1)E11, I + r E1j] = I + r(x^{km}-1)E1j and the E_{i1} variant,
// over Z[x^+-1, r], plus the commuting generator forms.
bool dm_normality_identities(int d, long m, long k, int j, std::string* why = nullptr);

struct DmSplit {
  long k;
  Mat d_factor;  // I + (x^{km} - 1) E11
  Mat sl_part;   // d_factor^-1 A, determinant 1
};
DmSplit det_dm_split(const Mat& a, long m);

// Dense Z[y]/(p^2, y^(p^l)).
class SBarRing {
 public:
  SBarRing(long p, int l, long ceiling = 64);
  long p() const { return p_; }
  int l() const { return l_; }
  long size() const { return n_; }

  using Elem = std::vector<long>;
  Elem one() const;
  Elem y_plus_one() const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, long k) const;
  bool is_one(const Elem& a) const { return a == one(); }
  // (y+1)^(p^(l+1)) == 1
  bool verify_unit_identity() const;
  // x -> y+1, x^-1 -> (y+1)^(p^(l+1) - 1)
  Elem s_to_sbar(const Poly& f) const;
  std::string str(const Elem& a) const;

 private:
  long p_;
  int l_;
  long n_;    // p^l
  long mod_;  // p^2
};

bool is_prime(long p);

}  // namespace metab
