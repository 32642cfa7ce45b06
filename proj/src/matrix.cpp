#include "metab/matrix.hpp"

#include <functional>
#include <sstream>

namespace metab {

Mat::Mat(int d, int nvars) : d_(d), nv_(nvars), a_(static_cast<std::size_t>(d) * d, Poly(nvars)) {
  if (d < 1) throw RingError("matrix dimension must be positive");
}

Mat Mat::identity(int d, int nvars) {
  Mat m(d, nvars);
  for (int i = 1; i <= d; ++i) m(i, i) = Poly(nvars, 1);
  return m;
}

Mat Mat::elementary(int d, int i, int j, const Poly& h) {
  if (i < 1 || j < 1 || i > d || j > d) throw RingError("elementary index out of range");
  Mat m = identity(d, h.nvars());
  m(i, j) += h;
  return m;
}

Mat Mat::from_rows(std::vector<std::vector<Poly>> rows) {
  int d = static_cast<int>(rows.size());
  if (d == 0) throw RingError("empty matrix");
  Mat m(d, rows[0][0].nvars());
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != d) throw RingError("matrix is not square");
    for (int j = 0; j < d; ++j) {
      if (rows[i][j].nvars() != m.nv_) throw RingError("variable-count mismatch");
      m.a_[i * d + j] = std::move(rows[i][j]);
    }
  }
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.d_ != b.d_) throw RingError("dimension mismatch");
  int d = a.d_;
  Mat c(d, a.nv_);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const Poly& x = a.a_[i * d + k];
      if (x.is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        const Poly& y = b.a_[k * d + j];
        if (y.is_zero()) continue;
        c.a_[i * d + j] += x * y;
      }
    }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.d_ != b.d_) throw RingError("dimension mismatch");
  Mat c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] += b.a_[k];
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.d_ != b.d_) throw RingError("dimension mismatch");
  Mat c = a;
  for (std::size_t k = 0; k < c.a_.size(); ++k) c.a_[k] -= b.a_[k];
  return c;
}

bool Mat::is_identity() const { return *this == identity(d_, nv_); }

namespace {

// Determinant of the submatrix on the given rows and column mask, by
// expansion along the first row with memoized column subsets.
Poly minor_det(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  int k = static_cast<int>(rows.size());
  int nv = m.nvars();
  if (k == 0) return Poly(nv, 1);
  // dp[mask] = det of rows[k - popcount(mask) ..] x cols in mask
  std::vector<Poly> dp(1u << k, Poly(nv));
  dp[0] = Poly(nv, 1);
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    int pc = __builtin_popcount(mask);
    int r = rows[k - pc];
    Poly acc(nv);
    int sign_pos = 0;
    for (int c = 0; c < k; ++c) {
      if (!(mask & (1u << c))) continue;
      const Poly& e = m(r, cols[c]);
      if (!e.is_zero()) {
        const Poly& sub = dp[mask & ~(1u << c)];
        if (!sub.is_zero()) {
          if (sign_pos % 2 == 0) acc += e * sub;
          else acc -= e * sub;
        }
      }
      ++sign_pos;
    }
    dp[mask] = std::move(acc);
  }
  return dp[(1u << k) - 1];
}

}  // namespace

Poly Mat::det() const {
  std::vector<int> idx;
  for (int i = 1; i <= d_; ++i) idx.push_back(i);
  return minor_det(*this, idx, idx);
}

Mat Mat::adjugate() const {
  Mat adj(d_, nv_);
  if (d_ == 1) {
    adj(1, 1) = Poly(nv_, 1);
    return adj;
  }
  for (int i = 1; i <= d_; ++i)
    for (int j = 1; j <= d_; ++j) {
      std::vector<int> rows, cols;
      for (int k = 1; k <= d_; ++k) {
        if (k != j) rows.push_back(k);
        if (k != i) cols.push_back(k);
      }
      Poly c = minor_det(*this, rows, cols);
      adj(i, j) = ((i + j) % 2 == 0) ? c : -c;
    }
  return adj;
}

Mat Mat::inverse() const {
  Mat adj = adjugate();
  Poly dt(nv_);  // first row of A times first column of adj(A)
  for (int j = 1; j <= d_; ++j) dt += (*this)(1, j) * adj(j, 1);
  Poly di = unit_inverse(dt);  // throws on non-unit determinant
  for (auto& e : adj.a_) e = e * di;
  return adj;
}

Mat Mat::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Mat result = identity(d_, nv_), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Mat Mat::map(const std::function<Poly(const Poly&)>& f) const {
  Mat out = *this;
  for (auto& e : out.a_) e = f(e);
  if (!out.a_.empty()) out.nv_ = out.a_[0].nvars();
  return out;
}

Mat Mat::extend(int nvars) const {
  return map([nvars](const Poly& p) { return p.extend(nvars); });
}

Mat Mat::minor_matrix(int i) const {
  Mat out(d_ - 1, nv_);
  int r = 1;
  for (int a = 1; a <= d_; ++a) {
    if (a == i) continue;
    int c = 1;
    for (int b = 1; b <= d_; ++b) {
      if (b == i) continue;
      out(r, c++) = (*this)(a, b);
    }
    ++r;
  }
  return out;
}

Mat Mat::block_embed(int d) const {
  if (d < d_) throw RingError("block embedding into a smaller dimension");
  Mat out = identity(d, nv_);
  for (int i = 1; i <= d_; ++i)
    for (int j = 1; j <= d_; ++j) out(i, j) = (*this)(i, j);
  return out;
}

std::string Mat::str() const { return str(default_names(nv_)); }

std::string Mat::str(const std::vector<std::string>& names) const {
  std::ostringstream os;
  for (int i = 1; i <= d_; ++i) {
    if (i > 1) os << "; ";
    for (int j = 1; j <= d_; ++j) os << (j > 1 ? ", " : "") << (*this)(i, j).str(names);
  }
  return os.str();
}

Mat commutator(const Mat& a, const Mat& b) { return a * b * a.inverse() * b.inverse(); }

Mat conjugate(const Mat& g, const Mat& x) { return g.inverse() * x * g; }

Mat parse_matrix(const std::string& s, const std::vector<std::string>& names) {
  std::vector<std::vector<Poly>> rows;
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, ';')) {
    std::vector<Poly> r;
    std::stringstream es(row);
    std::string ent;
    while (std::getline(es, ent, ',')) r.push_back(parse_poly(ent, names));
    rows.push_back(std::move(r));
  }
  return Mat::from_rows(std::move(rows));
}

Mat parse_matrix(const std::string& s, int nvars) { return parse_matrix(s, default_names(nvars)); }

std::pair<int, int> first_difference(const Mat& a, const Mat& b) {
  if (a.dim() != b.dim()) return {-1, -1};
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j)
      if (a(i, j) != b(i, j)) return {i, j};
  return {0, 0};
}

}  // namespace metab
