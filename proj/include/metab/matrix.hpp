#pragma once
// Square matrices over Laurent polynomial rings.

#include <functional>
#include <string>
#include <vector>

#include "metab/ring.hpp"

namespace metab {

class Mat {
 public:
  Mat() = default;
  Mat(int d, int nvars);  // zero matrix
  static Mat identity(int d, int nvars);
  // I + h E_{i,j}, 1-based
  static Mat elementary(int d, int i, int j, const Poly& h);
  static Mat from_rows(std::vector<std::vector<Poly>> rows);

  int dim() const { return d_; }
  int nvars() const { return nv_; }
  Poly& operator()(int i, int j) { return a_[(i - 1) * d_ + (j - 1)]; }
  const Poly& operator()(int i, int j) const { return a_[(i - 1) * d_ + (j - 1)]; }

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  bool operator==(const Mat& o) const { return d_ == o.d_ && nv_ == o.nv_ && a_ == o.a_; }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  bool is_identity() const;
  Poly det() const;
  Mat adjugate() const;
  // Exact inverse; the determinant must be a unit.
  Mat inverse() const;
  Mat pow(long k) const;
  Mat map(const std::function<Poly(const Poly&)>& f) const;
  Mat extend(int nvars) const;
  // Deletes row and column i.
  Mat minor_matrix(int i) const;
  // (A 0; 0 I)
  Mat block_embed(int d) const;

  std::string str() const;
  std::string str(const std::vector<std::string>& names) const;

 private:
  int d_ = 0, nv_ = 0;
  std::vector<Poly> a_;
};

Mat commutator(const Mat& a, const Mat& b);  // a b a^-1 b^-1
Mat conjugate(const Mat& g, const Mat& x);   // g^-1 x g

// "1, x1-1; 0, 1": rows split by ';', entries by ','.
Mat parse_matrix(const std::string& s, const std::vector<std::string>& names);
Mat parse_matrix(const std::string& s, int nvars);

// First differing entry (1-based) or {0,0} when equal.
std::pair<int, int> first_difference(const Mat& a, const Mat& b);

}  // namespace metab
