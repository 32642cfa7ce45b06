#pragma once
// Independent oracles: evaluation of polynomials and matrices at random points
// modulo the prime 2^61 - 1, and small random generators for tests.

#include <cstdint>
#include <random>
#include <vector>

#include "metab/matrix.hpp"

namespace oracle {

using u64 = std::uint64_t;
constexpr u64 kP = (u64{1} << 61) - 1;

inline u64 mul(u64 a, u64 b) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % kP); }
inline u64 add(u64 a, u64 b) { return (a + b) % kP; }
inline u64 sub(u64 a, u64 b) { return (a + kP - b) % kP; }

inline u64 pow(u64 a, u64 e) {
  u64 r = 1;
  for (; e; e >>= 1, a = mul(a, a))
    if (e & 1) r = mul(r, a);
  return r;
}

inline u64 inv(u64 a) { return pow(a, kP - 2); }

inline u64 reduce(const metab::Int& c) {
  mpz_class r = c % mpz_class(std::to_string(kP));
  if (r < 0) r += mpz_class(std::to_string(kP));
  return std::stoull(r.get_str());
}

using Point = std::vector<u64>;

inline Point random_point(int nvars, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> d(2, kP - 2);
  Point p(nvars);
  for (auto& x : p) x = d(rng);
  return p;
}

inline u64 eval(const metab::Poly& f, const Point& pt) {
  u64 s = 0;
  for (const auto& t : f.terms()) {
    u64 v = reduce(t.c);
    for (int i = 0; i < f.nvars(); ++i) {
      int e = t.e[i];
      if (e > 0) v = mul(v, pow(pt[i], static_cast<u64>(e)));
      if (e < 0) v = mul(v, pow(inv(pt[i]), static_cast<u64>(-e)));
    }
    s = add(s, v);
  }
  return s;
}

using Dense = std::vector<std::vector<u64>>;

inline Dense eval(const metab::Mat& a, const Point& pt) {
  Dense d(a.dim(), std::vector<u64>(a.dim()));
  for (int i = 1; i <= a.dim(); ++i)
    for (int j = 1; j <= a.dim(); ++j) d[i - 1][j - 1] = eval(a(i, j), pt);
  return d;
}

inline Dense mul(const Dense& a, const Dense& b) {
  std::size_t n = a.size();
  Dense c(n, std::vector<u64>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = add(c[i][j], mul(a[i][k], b[k][j]));
  return c;
}

// Gaussian elimination over F_p.
inline u64 det(Dense a) {
  std::size_t n = a.size();
  u64 d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = sub(0, d);
    }
    d = mul(d, a[c][c]);
    u64 iv = inv(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      u64 f = mul(a[r][c], iv);
      for (std::size_t k = c; k < n; ++k) a[r][k] = sub(a[r][k], mul(f, a[c][k]));
    }
  }
  return d;
}

// Random Laurent polynomial: up to max_terms terms, exponents in [-e, e],
// coefficients in [-c, c].
inline metab::Poly random_poly(int nvars, std::mt19937_64& rng, int max_terms = 4, int e = 2, int c = 3) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<metab::Term> ts;
  int k = pick(0, max_terms);
  for (int t = 0; t < k; ++t) {
    metab::Exps x = metab::zero_exps();
    for (int v = 0; v < nvars; ++v) x[v] = pick(-e, e);
    ts.push_back({x, metab::Int(pick(-c, c))});
  }
  return metab::Poly::from_terms(nvars, ts);
}

// Z_2[Z_2^2] as 4-bit masks over the monomials x1^a x2^b, bit 2a + b.
inline int gr_mul_x(int c, int var) {
  int out = 0;
  for (int bit = 0; bit < 4; ++bit)
    if (c >> bit & 1) out |= 1 << (var == 1 ? bit ^ 2 : bit ^ 1);
  return out;
}

// count of (v, c1, c2) with x^v - 1 = c1 sigma1 + c2 sigma2 over Z_2
inline int brute_psi_2_2() {
  int count = 0;
  for (int v = 0; v < 4; ++v)
    for (int c1 = 0; c1 < 16; ++c1)
      for (int c2 = 0; c2 < 16; ++c2) {
        int lhs = (1 << v) ^ 1;  // x^v - 1 = x^v + 1 mod 2
        int rhs = gr_mul_x(c1, 1) ^ c1 ^ gr_mul_x(c2, 2) ^ c2;
        count += lhs == rhs;
      }
  return count;
}

}  // namespace oracle
