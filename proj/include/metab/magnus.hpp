#pragma once
// Free metabelian group via the Magnus embedding: g = (x^v, sum c_i t_i; 0, 1).

#include <string>
#include <utility>
#include <vector>

#include "metab/ring.hpp"

namespace metab {

struct MagnusElement {
  int n = 0;
  Exps v{};
  std::vector<Poly> c;  // Fox coordinates, length n

  static MagnusElement identity(int n);
  bool constraint_ok() const;  // x^v - 1 = sum c_i sigma_i
  bool operator==(const MagnusElement& o) const { return n == o.n && v == o.v && c == o.c; }
  std::string str() const;
};

struct MagnusDimensionError : RingError {
  using RingError::RingError;
};

MagnusElement mg_generator(int i, int n);
MagnusElement mg_mul(const MagnusElement& a, const MagnusElement& b);
MagnusElement mg_inv(const MagnusElement& a);

// (generator index, +1 or -1)
using GroupWord = std::vector<std::pair<int, int>>;
GroupWord parse_word(const std::string& s);
MagnusElement mg_eval(const GroupWord& w, int n);

struct PsiElement {
  int n = 0;
  long m = 2;
  Exps v{};
  std::vector<ModPoly> c;

  static PsiElement identity(int n, long m);
  bool constraint_ok() const;
  bool operator==(const PsiElement& o) const { return m == o.m && v == o.v && c == o.c; }
  bool operator<(const PsiElement& o) const;
  std::string str() const;
};

PsiElement mg_project_psi(const MagnusElement& a, long m);
PsiElement psi_mul(const PsiElement& a, const PsiElement& b);

struct CeilingExceeded : RingError {
  using RingError::RingError;
};

// Brute force over all (v, c); throws CeilingExceeded when the candidate
// count m^n * m^(n m^n) is above the ceiling.
std::vector<PsiElement> psi_enumerate(int n, long m, double ceiling = 1 << 22);
double psi_candidate_count(int n, long m);
// Every pairwise product lands back in the (sorted) set.
bool psi_closed(const std::vector<PsiElement>& set);
bool psi_closed_parallel(const std::vector<PsiElement>& set);

}  // namespace metab
