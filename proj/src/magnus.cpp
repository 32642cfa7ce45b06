#include "metab/magnus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace metab {

MagnusElement MagnusElement::identity(int n) {
  MagnusElement e;
  e.n = n;
  e.c.assign(n, Poly(n));
  return e;
}

bool MagnusElement::constraint_ok() const {
  Poly lhs = Poly::monomial(n, v) - Poly(n, 1);
  Poly rhs(n);
  for (int i = 1; i <= n; ++i) rhs += c[i - 1] * Poly::sigma(n, i);
  return lhs == rhs;
}

std::string MagnusElement::str() const {
  std::ostringstream os;
  os << "v=(";
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << v[i];
  os << ") c=(";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << c[i].str();
  os << ")";
  return os.str();
}

MagnusElement mg_generator(int i, int n) {
  if (n < 1 || n > kMaxVars) throw MagnusDimensionError("rank out of range");
  if (i < 1 || i > n) throw MagnusDimensionError("generator index out of range");
  MagnusElement g = MagnusElement::identity(n);
  g.v[i - 1] = 1;
  g.c[i - 1] = Poly(n, 1);
  return g;
}

MagnusElement mg_mul(const MagnusElement& a, const MagnusElement& b) {
  if (a.n != b.n) throw MagnusDimensionError("rank mismatch");
  MagnusElement r;
  r.n = a.n;
  for (int k = 0; k < kMaxVars; ++k) r.v[k] = a.v[k] + b.v[k];
  r.c.reserve(a.n);
  for (int i = 0; i < a.n; ++i) r.c.push_back(a.c[i] + b.c[i].shift(a.v));
#ifndef NDEBUG
  if (!r.constraint_ok()) throw RingError("Magnus constraint violated after multiplication");
#endif
  return r;
}

MagnusElement mg_inv(const MagnusElement& a) {
  MagnusElement r;
  r.n = a.n;
  for (int k = 0; k < kMaxVars; ++k) r.v[k] = -a.v[k];
  for (int i = 0; i < a.n; ++i) r.c.push_back(-a.c[i].shift(r.v));
#ifndef NDEBUG
  if (!r.constraint_ok()) throw RingError("Magnus constraint violated after inversion");
#endif
  return r;
}

GroupWord parse_word(const std::string& s) {
  GroupWord w;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2 || tok[0] != 'g') throw RingError("bad word token '" + tok + "'");
    std::size_t p = 1;
    while (p < tok.size() && std::isdigit(static_cast<unsigned char>(tok[p]))) ++p;
    if (p == 1) throw RingError("bad word token '" + tok + "'");
    int idx = std::stoi(tok.substr(1, p - 1));
    int ex = 1;
    std::string rest = tok.substr(p);
    if (rest == "^-1") ex = -1;
    else if (!rest.empty() && rest != "^1") throw RingError("bad word token '" + tok + "'");
    w.emplace_back(idx, ex);
  }
  return w;
}

MagnusElement mg_eval(const GroupWord& w, int n) {
  MagnusElement acc = MagnusElement::identity(n);
  for (auto [i, e] : w) {
    MagnusElement g = mg_generator(i, n);
    acc = mg_mul(acc, e > 0 ? g : mg_inv(g));
  }
  return acc;
}

// ---------------------------------------------------------------- Psi_m

namespace {
Exps reduce_exps(Exps v, int n, long m) {
  for (int k = 0; k < n; ++k) {
    long r = v[k] % m;
    v[k] = static_cast<int32_t>(r < 0 ? r + m : r);
  }
  return v;
}
}  // namespace

PsiElement PsiElement::identity(int n, long m) {
  PsiElement e;
  e.n = n;
  e.m = m;
  e.c.assign(n, ModPoly(n, m));
  return e;
}

bool PsiElement::constraint_ok() const {
  ModPoly lhs = ModPoly::constant(n, m, 1).shift(v) - ModPoly::constant(n, m, 1);
  ModPoly rhs(n, m);
  for (int i = 1; i <= n; ++i) rhs = rhs + c[i - 1] * ModPoly::from_poly(Poly::sigma(n, i), m);
  return lhs == rhs;
}

bool PsiElement::operator<(const PsiElement& o) const {
  if (v != o.v) return v < o.v;
  return c < o.c;
}

std::string PsiElement::str() const {
  std::ostringstream os;
  os << "v=(";
  for (int i = 0; i < n; ++i) os << (i ? "," : "") << v[i];
  os << ") c=(";
  for (int i = 0; i < n; ++i) os << (i ? ", " : "") << c[i].str();
  os << ")";
  return os.str();
}

PsiElement mg_project_psi(const MagnusElement& a, long m) {
  if (m < 2) throw RingError("modulus must be at least 2");
  PsiElement p;
  p.n = a.n;
  p.m = m;
  p.v = reduce_exps(a.v, a.n, m);
  for (const auto& ci : a.c) p.c.push_back(lp_reduce_mod_Hm(ci, m));
  return p;
}

PsiElement psi_mul(const PsiElement& a, const PsiElement& b) {
  if (a.n != b.n || a.m != b.m) throw MagnusDimensionError("rank or modulus mismatch");
  PsiElement r;
  r.n = a.n;
  r.m = a.m;
  Exps s{};
  for (int k = 0; k < kMaxVars; ++k) s[k] = a.v[k] + b.v[k];
  r.v = reduce_exps(s, a.n, a.m);
  for (int i = 0; i < a.n; ++i) r.c.push_back(a.c[i] + b.c[i].shift(a.v));
  return r;
}

double psi_candidate_count(int n, long m) {
  double group = std::pow(static_cast<double>(m), n);
  return group * std::pow(static_cast<double>(m), n * group);
}

std::vector<PsiElement> psi_enumerate(int n, long m, double ceiling) {
  if (n < 1 || m < 2) throw RingError("psi_enumerate needs n >= 1 and m >= 2");
  double count = psi_candidate_count(n, m);
  if (count > ceiling)
    throw CeilingExceeded("enumeration of Psi_" + std::to_string(m) + " at n=" + std::to_string(n) +
                          " needs about 10^" + std::to_string(static_cast<long>(std::log10(count))) +
                          " candidates, above the ceiling");
  // Monomials of Z_m^n in a fixed order.
  std::vector<Exps> monos;
  long gsize = 1;
  for (int k = 0; k < n; ++k) gsize *= m;
  for (long idx = 0; idx < gsize; ++idx) {
    Exps e{};
    long r = idx;
    for (int k = 0; k < n; ++k) {
      e[k] = static_cast<int32_t>(r % m);
      r /= m;
    }
    monos.push_back(e);
  }
  // All elements of Z_m[Z_m^n].
  std::vector<ModPoly> ring;
  long rsize = 1;
  for (long k = 0; k < gsize; ++k) rsize *= m;
  for (long idx = 0; idx < rsize; ++idx) {
    ModPoly p(n, m);
    long r = idx;
    for (long k = 0; k < gsize; ++k) {
      long c = r % m;
      r /= m;
      if (c) p = p + ModPoly::constant(n, m, c).shift(monos[k]);
    }
    ring.push_back(p);
  }
  std::vector<PsiElement> out;
  std::vector<long> digits(n, 0);
  for (const auto& v : monos) {
    std::fill(digits.begin(), digits.end(), 0);
    for (;;) {
      PsiElement e;
      e.n = n;
      e.m = m;
      e.v = v;
      for (int i = 0; i < n; ++i) e.c.push_back(ring[digits[i]]);
      if (e.constraint_ok()) out.push_back(std::move(e));
      int k = 0;
      while (k < n && ++digits[k] == rsize) digits[k++] = 0;
      if (k == n) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool psi_closed(const std::vector<PsiElement>& set) {
  for (const auto& a : set)
    for (const auto& b : set)
      if (!std::binary_search(set.begin(), set.end(), psi_mul(a, b))) return false;
  return true;
}

bool psi_closed_parallel(const std::vector<PsiElement>& set) {
  long n = static_cast<long>(set.size());
  bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (long i = 0; i < n; ++i)
    for (const auto& b : set)
      if (!std::binary_search(set.begin(), set.end(), psi_mul(set[i], b))) ok = false;
  return ok;
}

}  // namespace metab
