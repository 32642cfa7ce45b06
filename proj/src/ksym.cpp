#include "metab/ksym.hpp"

#include <sstream>

namespace metab {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

QuotRing QuotRing::integers() { return QuotRing{}; }

QuotRing QuotRing::laurent() {
  QuotRing r;
  r.kind_ = Kind::S;
  return r;
}

QuotRing QuotRing::zmod(long m) {
  if (m < 2) throw RingError("modulus must be at least 2");
  QuotRing r;
  r.kind_ = Kind::Zmod;
  r.m_ = m;
  return r;
}

QuotRing QuotRing::group_ring(long m, int k) {
  if (m < 2 || k < 1 || k > 4) throw RingError("group ring parameters out of range");
  QuotRing r;
  r.kind_ = Kind::GroupRingMod;
  r.m_ = m;
  r.nv_ = k;
  return r;
}

QuotRing QuotRing::sbar(long p, int l) {
  if (!is_prime(p) || l < 1) throw RingError("sbar needs a prime p and l >= 1");
  long n = 1;
  for (int k = 0; k < l; ++k) n *= p;
  if (n > 64) throw RingError("p^l above the dense ceiling 64");
  QuotRing r;
  r.kind_ = Kind::SBar;
  r.p_ = p;
  r.m_ = p * p;
  r.trunc_ = n;
  return r;
}

std::string QuotRing::name() const {
  switch (kind_) {
    case Kind::Z: return "Z";
    case Kind::S: return "Z[x^+-1]";
    case Kind::Zmod: return "Z_" + std::to_string(m_);
    case Kind::GroupRingMod:
      return "Z_" + std::to_string(m_) + "[Z_" + std::to_string(m_) + "^" + std::to_string(nv_) + "]";
    case Kind::SBar: return "Z[y]/(" + std::to_string(m_) + ", y^" + std::to_string(trunc_) + ")";
  }
  return "?";
}

Poly QuotRing::reduce(const Poly& f) const {
  if (f.nvars() != nv_) throw RingError("element belongs to a different ring");
  switch (kind_) {
    case Kind::Z:
      if (f.max_abs_exponent() != 0) throw RingError("integer ring element has a variable");
      return f;
    case Kind::S: return f;
    case Kind::Zmod:
      if (f.max_abs_exponent() != 0) throw RingError("Z_m element has a variable");
      [[fallthrough]];
    case Kind::GroupRingMod: {
      ModPoly r = lp_reduce_mod_Hm(f, m_);
      std::vector<Term> t;
      for (const auto& [e, c] : r.terms()) t.push_back({e, Int(c)});
      return Poly::from_terms(nv_, std::move(t));
    }
    case Kind::SBar: {
      std::vector<Term> t;
      Int mm = m_;
      for (const auto& term : f.terms()) {
        if (term.e[0] < 0) throw RingError("negative power of y");
        if (term.e[0] >= trunc_) continue;
        Int c = term.c % mm;
        if (c < 0) c += mm;
        t.push_back({term.e, c});
      }
      return Poly::from_terms(nv_, std::move(t));
    }
  }
  return f;
}

Poly QuotRing::symmetric(const Poly& a) const {
  if (!finite()) return a;
  Poly r = reduce(a);
  std::vector<Term> t;
  for (const auto& term : r.terms()) t.push_back({term.e, 2 * term.c > m_ ? term.c - m_ : term.c});
  return Poly::from_terms(nv_, std::move(t));
}

Mat QuotRing::reduce(const Mat& a) const {
  return a.map([this](const Poly& p) { return reduce(p); });
}

std::vector<Poly> QuotRing::elements() const {
  if (!finite()) throw RingError("ring is infinite");
  // basis monomials and coefficient range
  std::vector<Exps> basis;
  long cm = m_;
  if (kind_ == Kind::Zmod) {
    basis.push_back(zero_exps());
  } else if (kind_ == Kind::GroupRingMod) {
    long g = 1;
    for (int k = 0; k < nv_; ++k) g *= m_;
    for (long idx = 0; idx < g; ++idx) {
      Exps e = zero_exps();
      long r = idx;
      for (int k = 0; k < nv_; ++k) {
        e[k] = static_cast<int32_t>(r % m_);
        r /= m_;
      }
      basis.push_back(e);
    }
  } else {
    for (long k = 0; k < trunc_; ++k) {
      Exps e = zero_exps();
      e[0] = static_cast<int32_t>(k);
      basis.push_back(e);
    }
  }
  double total = 1;
  for (std::size_t k = 0; k < basis.size(); ++k) total *= cm;
  if (total > 1e6) throw RingError("ring too large to enumerate");
  std::vector<Poly> out;
  std::vector<long> dig(basis.size(), 0);
  for (;;) {
    std::vector<Term> t;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (dig[k]) t.push_back({basis[k], Int(dig[k])});
    out.push_back(Poly::from_terms(nv_, std::move(t)));
    std::size_t k = 0;
    while (k < dig.size() && ++dig[k] == cm) dig[k++] = 0;
    if (k == dig.size()) break;
  }
  return out;
}

long QuotRing::cardinality() const {
  if (!finite()) throw RingError("ring is infinite");
  long basis = 1;
  if (kind_ == Kind::GroupRingMod)
    for (int k = 0; k < nv_; ++k) basis *= m_;
  else if (kind_ == Kind::SBar)
    basis = trunc_;
  long c = 1;
  for (long k = 0; k < basis; ++k) {
    c *= m_;
    if (c > (1L << 40)) return c;
  }
  return c;
}

bool QuotRing::is_unit(const Poly& a) const {
  if (!finite()) return unit_check(a).has_value();
  try {
    inverse(a);
    return true;
  } catch (const RingError&) {
    return false;
  }
}

Poly QuotRing::inverse(const Poly& a) const {
  if (!finite()) return unit_inverse(a);
  Poly x = reduce(a);
  // a unit's multiplicative order is at most the ring's cardinality
  long bound = cardinality();
  Poly prev = one(), p = x;
  for (long k = 0; k <= bound && !p.is_zero(); ++k) {
    if (p.is_one()) return prev;
    prev = p;
    p = mul(p, x);
  }
  throw RingError(str(a) + " is not a unit in " + name());
}

std::vector<Poly> QuotRing::units() const {
  std::vector<Poly> out;
  for (auto& e : elements())
    if (is_unit(e)) out.push_back(e);
  return out;
}

std::string QuotRing::str(const Poly& a) const {
  if (kind_ == Kind::SBar) return a.str({"y"});
  if (kind_ == Kind::S || nv_ == 1) return a.str({"x"});
  return a.str();
}

// ---------------------------------------------------------------- words

SteinbergWord st_inverse(const SteinbergWord& w) {
  SteinbergWord out(w.rbegin(), w.rend());
  for (auto& t : out) t.inv = !t.inv;
  return out;
}

SteinbergWord st_w(const QuotRing& R, const Poly& u, int i, int j) {
  Poly ui = R.inverse(u);
  Poly a = R.reduce(u), b = R.reduce(-ui);
  return {{i, j, a, false}, {j, i, b, false}, {i, j, a, false}};
}

SteinbergWord st_h(const QuotRing& R, const Poly& u, int i, int j) {
  SteinbergWord w = st_w(R, u, i, j);
  SteinbergWord m1 = st_w(R, R.from_int(-1), i, j);
  w.insert(w.end(), m1.begin(), m1.end());
  return w;
}

SteinbergWord st_symbol_word(const QuotRing& R, const Poly& u, const Poly& v, int i, int j) {
  if (i == j) throw RingError("symbol needs i != j");
  if (!R.is_unit(u) || !R.is_unit(v)) throw RingError("symbol arguments must be units of " + R.name());
  SteinbergWord out = st_h(R, R.mul(u, v), i, j);
  SteinbergWord hu = st_inverse(st_h(R, u, i, j));
  SteinbergWord hv = st_inverse(st_h(R, v, i, j));
  out.insert(out.end(), hu.begin(), hu.end());
  out.insert(out.end(), hv.begin(), hv.end());
  return out;
}

Mat st_eval(const SteinbergWord& w, int d, const QuotRing& R) {
  Mat acc = Mat::identity(d, R.nvars());
  for (const auto& t : w) {
    if (t.i < 1 || t.j < 1 || t.i > d || t.j > d || t.i == t.j) throw RingError("token index out of range");
    acc = R.reduce(acc * Mat::elementary(d, t.i, t.j, t.inv ? -t.r : t.r));
  }
  return acc;
}

Mat st_lift_eval(const SteinbergWord& w, const QuotRing& quotient, const QuotRing& lifted, int d,
                 const Section& lift) {
  Mat acc = Mat::identity(d, lifted.nvars());
  for (const auto& t : w) {
    if (t.i < 1 || t.j < 1 || t.i > d || t.j > d || t.i == t.j) throw RingError("token index out of range");
    if (quotient.reduce(t.r) != t.r) throw RingError("token is not a canonical residue");
    Poly r = lift ? lift(t.r) : quotient.symmetric(t.r);
    if (r.nvars() != lifted.nvars()) throw RingError("lift ring mismatch");
    if (quotient.reduce(r) != t.r) throw RingError("lift inconsistency");
    acc = acc * Mat::elementary(d, t.i, t.j, t.inv ? -r : r);
  }
  return acc;
}

LiftCheck check_lift(const Mat& a, const QuotRing& quotient) {
  LiftCheck c;
  int d = a.dim();
  c.block_form = true;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      if (i <= 2 && j <= 2) continue;
      Poly want(a.nvars(), i == j ? 1 : 0);
      if (a(i, j) != want) c.block_form = false;
    }
  c.congruent = quotient.reduce(a).is_identity();
  c.det_one = a.det().is_one();
  return c;
}

// ---------------------------------------------------------------- D_m

bool dm_normality_identities(int d, long m, long k, int j, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (d < 3 || j < 2 || j > d) return fail("need d >= 3 and 2 <= j <= d");
  // Z[x^+-1, r]
  const int nv = 2;
  Poly x = Poly::var(nv, 1), r = Poly::var(nv, 2), one(nv, 1);
  Poly xkm = x.pow(k * m);
  Mat dm = Mat::elementary(d, 1, 1, xkm - one);
  Mat top = Mat::elementary(d, 1, j, r);
  if (commutator(dm, top) != Mat::elementary(d, 1, j, r * (xkm - one)))
    return fail("E_{1,j} commutator identity fails");
  Mat left = Mat::elementary(d, j, 1, r);
  if (commutator(dm, left) != Mat::elementary(d, j, 1, r * (x.pow(-k * m) - one)))
    return fail("E_{i,1} commutator identity fails");
  // generator forms 1 and 2 commute with D_m
  for (int sgn : {1, -1}) {
    Mat g = Mat::elementary(d, 1, 1, Int(sgn) * x - one);
    if (!commutator(dm, g).is_identity()) return fail("D_m does not commute with a diagonal unit");
  }
  for (int a = 2; a <= d; ++a)
    for (int b = 2; b <= d; ++b)
      if (a != b && !commutator(dm, Mat::elementary(d, a, b, r)).is_identity())
        return fail("D_m does not commute with E_{i,j}, i,j >= 2");
  return true;
}

DmSplit det_dm_split(const Mat& a, long m) {
  if (m <= 2) throw RingError("det splitting needs m > 2");
  if (a.nvars() != 1) throw RingError("matrix must be over Z[x^+-1]");
  int d = a.dim();
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      Poly e = a(i, j);
      if (i == j) e -= Poly(1, 1);
      if (!ideal_member(e, IdealRef::j(1, m))) throw RingError("matrix is not congruent to I mod J_m");
    }
  Poly dt = a.det();
  auto u = unit_check(dt);
  if (!u || u->sign != 1 || u->e[0] % m != 0) throw RingError("determinant " + dt.str({"x"}) + " is not x^(k m)");
  long k = u->e[0] / m;
  Poly x = Poly::var(1, 1), one(1, 1);
  Mat df = Mat::elementary(d, 1, 1, x.pow(k * m) - one);
  Mat df_inv = Mat::elementary(d, 1, 1, x.pow(-k * m) - one);
  Mat sl = df_inv * a;
  if (!sl.det().is_one()) throw RingError("SL part does not have determinant 1");
  return {k, df, sl};
}

// ---------------------------------------------------------------- SBar

SBarRing::SBarRing(long p, int l, long ceiling) : p_(p), l_(l) {
  if (!is_prime(p)) throw RingError("p is not prime");
  if (l < 1) throw RingError("l must be positive");
  n_ = 1;
  for (int k = 0; k < l; ++k) {
    n_ *= p;
    if (n_ > ceiling) throw RingError("p^l above the size ceiling");
  }
  mod_ = p * p;
}

SBarRing::Elem SBarRing::one() const {
  Elem e(n_, 0);
  e[0] = 1 % mod_;
  return e;
}

SBarRing::Elem SBarRing::y_plus_one() const {
  Elem e = one();
  if (n_ > 1) e[1] = 1;
  return e;
}

SBarRing::Elem SBarRing::mul(const Elem& a, const Elem& b) const {
  Elem c(n_, 0);
  for (long i = 0; i < n_; ++i) {
    if (!a[i]) continue;
    for (long j = 0; i + j < n_; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % mod_;
  }
  return c;
}

SBarRing::Elem SBarRing::add(const Elem& a, const Elem& b) const {
  Elem c(n_);
  for (long i = 0; i < n_; ++i) c[i] = (a[i] + b[i]) % mod_;
  return c;
}

SBarRing::Elem SBarRing::pow(Elem a, long k) const {
  Elem r = one();
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    k >>= 1;
    if (k) a = mul(a, a);
  }
  return r;
}

bool SBarRing::verify_unit_identity() const { return is_one(pow(y_plus_one(), n_ * p_)); }

SBarRing::Elem SBarRing::s_to_sbar(const Poly& f) const {
  if (f.nvars() != 1) throw RingError("expected an element of Z[x^+-1]");
  Elem y1 = y_plus_one();
  Elem y1_inv = pow(y1, n_ * p_ - 1);
  Elem out(n_, 0);
  for (const auto& t : f.terms()) {
    int e = t.e[0];
    Elem mono = e >= 0 ? pow(y1, e) : pow(y1_inv, -e);
    Int c = t.c % Int(mod_);
    long cl = c.get_si();
    if (cl < 0) cl += mod_;
    for (long i = 0; i < n_; ++i) out[i] = (out[i] + cl * mono[i]) % mod_;
  }
  return out;
}

std::string SBarRing::str(const Elem& a) const {
  std::vector<Term> t;
  for (long i = 0; i < n_; ++i)
    if (a[i]) {
      Exps e = zero_exps();
      e[0] = static_cast<int32_t>(i);
      t.push_back({e, Int(a[i])});
    }
  return Poly::from_terms(1, std::move(t)).str({"y"});
}

}  // namespace metab
