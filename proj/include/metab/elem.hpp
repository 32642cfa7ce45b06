#pragma once
// Witness-carrying elementary matrices, the three families of row matrices in
// <IA^m>, and the decomposition into Forms 1-4.

#include <optional>
#include <string>
#include <vector>

#include "metab/ia.hpp"
#include "metab/matrix.hpp"

namespace metab {

struct WitnessError : RingError {
  using RingError::RingError;
};

// G^-1 (I + h E_{i,j}) G
struct ElemToken {
  Mat conj;  // G
  int i = 1, j = 2;
  Poly h;
  ElemToken inverse() const { return {conj, i, j, -h}; }
};

Mat elem_eval(const std::vector<ElemToken>& word, int d);

// (I - f E_{i,j}) (I + h E_{j,i}) (I + f E_{i,j})
struct SuslinGenerator {
  Poly f, h;
  int i = 1, j = 2;
  int d = 3;
  std::optional<TmWitness> h_witness;
  SuslinGenerator inverse() const;
};

Mat suslin_eval(const SuslinGenerator& g);

// ---------------------------------------------------------------- <IA^m>

struct Sec6Params {
  int family = 1;
  int u = 1;
  int i = 2, j = 3;
  int k = 0;  // family 2 only
  Poly f;     // coefficient; its variable count fixes the ambient ring
};

struct WitnessFactor {
  enum class Kind { PowerM, Template };
  Kind kind = Kind::PowerM;
  Mat base;           // PowerM: value is base^m
  Sec6Params params;  // Template
  Mat conj;           // Template: value is conj^-1 T conj
};

struct IAmWitness {
  std::vector<WitnessFactor> factors;
};

// I + f (sigma_i e_j - sigma_j e_i) placed in row u.
Mat row_matrix(int n, int u, int i, int j, const Poly& f);

struct Sec6Result {
  IAMatrix matrix;
  IAmWitness witness;
};

Sec6Result sec6_generator(const Sec6Params& p, long m, int n);
Mat sec6_matrix(const Sec6Params& p, long m, int n);

// Multiplies out the certified factors and compares with the claim.
// Throws WitnessError when a factor fails its own certification.
bool witness_verify(const IAmWitness& w, const Mat& claimed, long m, int n, std::string* detail = nullptr);
Mat witness_value(const IAmWitness& w, long m, int n);

// Witness for I + (row u = v), where v is a relation among the sigma's with
// v_u = 0: v is split into pairs sigma_i e_j - sigma_j e_i, and each pair
// coefficient into the three family ideals of row u. Throws WitnessError
// when a coefficient lies outside (m, x_k^m - 1 (k != u), sigma_u(x_u^m - 1)).
IAmWitness row_witness(int n, int u, const std::vector<Poly>& v, long m);
// Product over the nonzero rows of A - I, top to bottom.
IAmWitness rows_witness(const Mat& a, long m);
// C^-1 W C
IAmWitness conjugate_witness(const IAmWitness& w, const Mat& c);
IAmWitness inverse_witness(const IAmWitness& w);
IAmWitness concat_witness(const IAmWitness& a, const IAmWitness& b);

// A^-1 (I + sigma_n m h' E_ij) A == (A^-1 (I + sigma_n h' E_ij) A)^m
bool form1_power_identity_check(const Mat& a, const Poly& hp, int i, int j, long m, int n);

// ---------------------------------------------------------------- Forms 1-4

enum class FormRole {
  SigmaN_O,          // Form 1: sigma_n O_m
  SigmaN2_Un,        // Form 2: sigma_n^2 U_{n,m}
  SigmaN_SigmaR2_Ur, // Form 2: sigma_n sigma_r^2 U_{r,m}
  Obar2,             // Form 3: Obar_m^2
  SigmaR2_Urbar,     // Form 4: sigma_r^2 Ubar_{r,m}
  SigmaR_Obar,       // Form 4: sigma_r Obar_m
};

struct FormFactor {
  int form = 1;  // 1..4
  FormRole role = FormRole::SigmaN_O;
  int r = 0;     // index carried by the role, when any
  Mat conj;      // A
  int i = 1, j = 2;
  Poly h, f;     // f only for Forms 3 and 4
  Mat conj_inv;  // cached A^-1; computed from A when empty
  Mat value() const;
  bool ideal_ok(long m, int n, std::string* why = nullptr) const;
  std::string role_name() const;
};

struct Decomposition {
  std::vector<FormFactor> factors;
  Mat residual;  // product of the GL_{n-1}(R_{n-1}) pieces; must be I
};

// Throws WitnessError on a mismatching witness, a missing T_m witness, or
// residual factors that do not cancel.
Decomposition decompose_form(const Mat& b, const std::vector<SuslinGenerator>& witness, long m, int n);
Mat product_of(const std::vector<FormFactor>& fs, int d, int nvars);

// Random element of GL_{n-1}(R_n, sigma_n R_n) cap E_{n-1}(R_n, T_m) with its
// Suslin witness: generators followed by the inverses of their x_n = 1 images.
std::vector<SuslinGenerator> random_tm_witness(int n, long m, std::uint64_t seed, int gens = 2);

}  // namespace metab
