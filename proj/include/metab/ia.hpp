#pragma once
// IA(Phi_n) as matrices A over R_n with A sigma = sigma.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metab/magnus.hpp"
#include "metab/matrix.hpp"

namespace metab {

struct NotIA : RingError {
  using RingError::RingError;
};

struct IAReport {
  bool ok = true;
  std::string reason;  // first violated invariant
  int row = 0, col = 0;
};

class IAMatrix {
 public:
  IAMatrix() = default;
  // Validates all invariants; throws NotIA.
  explicit IAMatrix(Mat m);
  // Skips validation; for factories that build valid matrices by construction.
  static IAMatrix trusted(Mat m);
  static IAMatrix identity(int n);

  int n() const { return m_.dim(); }
  const Mat& mat() const { return m_; }
  bool operator==(const IAMatrix& o) const { return m_ == o.m_; }

 private:
  Mat m_;
};

// Checks on the first n variables (extra parameter variables allowed).
IAReport ia_check(const Mat& m, int n);
IAMatrix ia_validate(const Mat& m);

IAMatrix ia_mul(const IAMatrix& a, const IAMatrix& b);
IAMatrix ia_inv(const IAMatrix& a);

// E_{r,s,t} = I + sigma_t E_{r,s} - sigma_s E_{r,t}
IAMatrix ia_generator_E(int r, int s, int t, int n);

// c -> c M
MagnusElement ia_apply(const IAMatrix& a, const MagnusElement& w);

// Specializes x_j -> 1 for j != i and deletes row/column i.
Mat ia_rho(int i, const IAMatrix& a);
Mat rho_of(int i, const Mat& m);

IAMatrix igl_embed(int i, const Mat& b);
Mat igl_project(int i, const IAMatrix& a);

// Rows of length n with column i ignored; fills a_{k,i}.
IAMatrix complete_column(int i, const std::vector<std::vector<Poly>>& rows);
std::vector<Poly> complete_row(int i, std::vector<Poly> row);

bool ig_member(const IAMatrix& a, long m);

struct RhoIgReport {
  int samples = 0;
  int passed = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;
  bool ok() const { return passed == samples; }
};

// Random elements of IG_{m^2}: products of conjugated (E_{r,s,t})^{m^2}.
IAMatrix random_ig_sample(int n, long m, std::uint64_t seed);
bool rho_ig_check(int i, long m, const IAMatrix& a, std::string* why = nullptr);
RhoIgReport rho_ig_probe(int i, long m, int n, int samples, std::uint64_t seed);
RhoIgReport rho_ig_probe_serial(int i, long m, int n, int samples, std::uint64_t seed);

}  // namespace metab
