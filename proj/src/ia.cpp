#include "metab/ia.hpp"

#include <random>

namespace metab {

namespace {

std::vector<int> all_but(int n, int keep) {
  std::vector<int> v;
  for (int j = 1; j <= n; ++j)
    if (j != keep) v.push_back(j);
  return v;
}

std::string pos_str(int r, int c) { return "(" + std::to_string(r) + "," + std::to_string(c) + ")"; }

}  // namespace

IAReport ia_check(const Mat& m, int n) {
  IAReport rep;
  int nv = m.nvars();
  if (m.dim() != n || n < 2) return {false, "matrix must be n x n with n >= 2", 0, 0};
  for (int k = 1; k <= n; ++k) {
    Poly s(nv);
    for (int j = 1; j <= n; ++j) {
      Poly a = m(k, j);
      if (j == k) a -= Poly(nv, 1);
      s += a * Poly::sigma(nv, j);
    }
    if (!s.is_zero())
      return {false, "row " + std::to_string(k) + " of (A - I) sigma is " + s.str() + ", not 0", k, 0};
  }
  for (int l = 1; l <= n; ++l) {
    auto others = all_but(n, l);
    for (int k = 1; k <= n; ++k) {
      Poly a = m(k, l);
      if (k == l) a -= Poly(nv, 1);
      if (!a.specialize(others).is_zero())
        return {false, "entry " + pos_str(k, l) + " of A - I is outside the column augmentation ideal", k, l};
    }
  }
  Poly d = m.det();
  auto u = unit_check(d);
  if (!u || u->sign != 1) return {false, "determinant " + d.str() + " is not a positive monomial", 0, 0};
  for (int k = n; k < nv; ++k)
    if (u->e[k] != 0) return {false, "determinant involves parameter variables", 0, 0};
  return rep;
}

IAMatrix::IAMatrix(Mat m) : m_(std::move(m)) {
  IAReport r = ia_check(m_, m_.dim());
  if (!r.ok) throw NotIA(r.reason);
}

IAMatrix IAMatrix::trusted(Mat m) {
  IAMatrix a;
  a.m_ = std::move(m);
  return a;
}

IAMatrix IAMatrix::identity(int n) { return trusted(Mat::identity(n, n)); }

IAMatrix ia_validate(const Mat& m) { return IAMatrix(m); }

IAMatrix ia_mul(const IAMatrix& a, const IAMatrix& b) {
  if (a.n() != b.n()) throw RingError("dimension mismatch");
  return IAMatrix::trusted(a.mat() * b.mat());
}

IAMatrix ia_inv(const IAMatrix& a) { return IAMatrix::trusted(a.mat().inverse()); }

IAMatrix ia_generator_E(int r, int s, int t, int n) {
  if (s == t) throw RingError("E_{r,s,t} needs s != t");
  for (int x : {r, s, t})
    if (x < 1 || x > n) throw RingError("E_{r,s,t} index out of range");
  // r = t puts 2 - x_s on the diagonal: the determinant is not a unit
  if (r == t) throw NotIA("E_{r,s,t} with r = t is not invertible");
  Mat m = Mat::identity(n, n);
  m(r, s) += Poly::sigma(n, t);
  m(r, t) -= Poly::sigma(n, s);
  return IAMatrix::trusted(std::move(m));
}

MagnusElement ia_apply(const IAMatrix& a, const MagnusElement& w) {
  int n = a.n();
  if (w.n != n) throw RingError("dimension mismatch");
  MagnusElement r = w;
  for (int j = 1; j <= n; ++j) {
    Poly s(n);
    for (int i = 1; i <= n; ++i) {
      const Poly& e = a.mat()(i, j);
      if (!e.is_zero() && !w.c[i - 1].is_zero()) s += w.c[i - 1] * e;
    }
    r.c[j - 1] = std::move(s);
  }
  return r;
}

Mat rho_of(int i, const Mat& m) {
  int n = m.dim();
  if (i < 1 || i > n) throw RingError("index out of range");
  auto others = all_but(n, i);
  return m.map([&](const Poly& p) { return p.specialize(others); }).minor_matrix(i);
}

Mat ia_rho(int i, const IAMatrix& a) { return rho_of(i, a.mat()); }

IAMatrix igl_embed(int i, const Mat& b) {
  int n = b.dim() + 1;
  int nv = b.nvars();
  if (i < 1 || i > n) throw RingError("index out of range");
  auto idx = all_but(n, i);  // B's row/col k corresponds to idx[k-1]
  Mat out = Mat::identity(n, nv);
  for (int r = 1; r < n; ++r) {
    Poly col(nv);
    for (int c = 1; c < n; ++c) {
      Poly e = b(r, c);
      out(idx[r - 1], idx[c - 1]) = e;
      if (r == c) e -= Poly(nv, 1);
      auto q = try_divide_sigma(e, i);
      if (!q) throw NotDivisible("entry (" + std::to_string(r) + "," + std::to_string(c) + ") of B - I is not divisible by sigma" + std::to_string(i));
      col -= *q * Poly::sigma(nv, idx[c - 1]);
    }
    out(idx[r - 1], i) = col;
  }
  return IAMatrix::trusted(std::move(out));
}

Mat igl_project(int i, const IAMatrix& a) {
  int n = a.n();
  for (int j = 1; j <= n; ++j) {
    Poly e = a.mat()(i, j);
    if (i == j) e -= Poly(e.nvars(), 1);
    if (!e.is_zero()) throw RingError("row " + std::to_string(i) + " of A - I is nonzero");
  }
  return a.mat().minor_matrix(i);
}

std::vector<Poly> complete_row(int i, std::vector<Poly> row) {
  int n = static_cast<int>(row.size());
  int nv = row[0].nvars();
  Poly s(nv);
  for (int l = 1; l <= n; ++l)
    if (l != i) s += row[l - 1] * Poly::sigma(nv, l);
  row[i - 1] = -lp_divide_exact(s, i);
  return row;
}

IAMatrix complete_column(int i, const std::vector<std::vector<Poly>>& rows) {
  std::vector<std::vector<Poly>> full = rows;
  int n = static_cast<int>(rows.empty() ? 0 : rows[0].size());
  if (n < 2) throw RingError("rows must have length n >= 2");
  int nv = rows[0][0].nvars();
  if (static_cast<int>(full.size()) == n - 1) full.insert(full.begin() + (i - 1), std::vector<Poly>(n, Poly(nv)));
  if (static_cast<int>(full.size()) != n) throw RingError("expected n or n-1 rows");
  Mat m = Mat::identity(n, nv);
  for (int k = 1; k <= n; ++k) {
    auto r = complete_row(i, full[k - 1]);
    for (int l = 1; l <= n; ++l) m(k, l) += r[l - 1];
  }
  return IAMatrix(std::move(m));
}

bool ig_member(const IAMatrix& a, long m) {
  int n = a.n();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Poly e = a.mat()(i, j);
      if (i == j) e -= Poly(e.nvars(), 1);
      if (!lp_reduce_mod_Hm(e, m).is_zero()) return false;
    }
  return true;
}

IAMatrix random_ig_sample(int n, long m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto random_E = [&]() {
    int r = pick(1, n), s = pick(1, n), t = pick(1, n - 1);
    if (t >= s) ++t;
    if (r == t) r = s;
    return ia_generator_E(r, s, t, n);
  };
  // E_{r,r,t}^k has diagonal x_t^k and is not congruent to I, so the
  // powered generators use r outside {s, t}.
  auto random_nilpotent_E = [&]() {
    for (;;) {
      int r = pick(1, n), s = pick(1, n), t = pick(1, n);
      if (r != s && r != t && s != t) return ia_generator_E(r, s, t, n);
    }
  };
  IAMatrix acc = IAMatrix::identity(n);
  int factors = pick(1, 3);
  for (int f = 0; f < factors; ++f) {
    IAMatrix p = IAMatrix::trusted(random_nilpotent_E().mat().pow(m * m));
    if (pick(0, 1)) p = ia_inv(p);
    int clen = pick(0, 2);
    IAMatrix g = IAMatrix::identity(n);
    for (int k = 0; k < clen; ++k) {
      IAMatrix e = random_E();
      g = ia_mul(g, pick(0, 1) ? e : ia_inv(e));
    }
    acc = ia_mul(acc, ia_mul(ia_inv(g), ia_mul(p, g)));
  }
  return acc;
}

bool rho_ig_check(int i, long m, const IAMatrix& a, std::string* why) {
  if (!ig_member(a, m * m)) {
    if (why) *why = "sample is not in IG_{m^2}";
    return false;
  }
  Mat r = ia_rho(i, a);
  for (int p = 1; p <= r.dim(); ++p)
    for (int q = 1; q <= r.dim(); ++q) {
      Poly e = r(p, q);
      if (p == q) e -= Poly(e.nvars(), 1);
      if (!ideal_member(e, IdealRef::sigma_j(i, m))) {
        if (why) *why = "entry (" + std::to_string(p) + "," + std::to_string(q) + ") = " + e.str() + " not in sigma_i J_{i,m}";
        return false;
      }
    }
  return true;
}

namespace {

std::uint64_t sample_seed(std::uint64_t seed, int k) {
  std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(k)};
  std::uint32_t out[2];
  ss.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

void record(RhoIgReport& rep, int k, bool ok, const std::string& why) {
  if (ok) ++rep.passed;
  else rep.failures.push_back("sample " + std::to_string(k) + ": " + why);
}

}  // namespace

RhoIgReport rho_ig_probe_serial(int i, long m, int n, int samples, std::uint64_t seed) {
  RhoIgReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (int k = 0; k < samples; ++k) {
    std::string why;
    bool ok = rho_ig_check(i, m, random_ig_sample(n, m, sample_seed(seed, k)), &why);
    record(rep, k, ok, why);
  }
  return rep;
}

RhoIgReport rho_ig_probe(int i, long m, int n, int samples, std::uint64_t seed) {
  std::vector<char> ok(samples, 0);
  std::vector<std::string> why(samples);
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < samples; ++k)
    ok[k] = rho_ig_check(i, m, random_ig_sample(n, m, sample_seed(seed, k)), &why[k]);
  RhoIgReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (int k = 0; k < samples; ++k) record(rep, k, ok[k], why[k]);
  return rep;
}

}  // namespace metab
