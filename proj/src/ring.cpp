#include "metab/ring.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>

namespace metab {

namespace {

void add_exps(Exps& out, const Exps& a, const Exps& b) {
  for (int k = 0; k < kMaxVars; ++k) out[k] = a[k] + b[k];
}

// Exponent vectors packed into one 128-bit key, w bits per variable with
// x_1 most significant, so key order is lexicographic exponent order.
struct Packing {
  int nv = 0, w = 0;
  unsigned __int128 bias = 0;

  unsigned __int128 key(const Exps& e) const {
    unsigned __int128 k = 0;
    for (int v = 0; v < nv; ++v) k = (k << w) | static_cast<std::uint64_t>(e[v] + (std::int64_t{1} << (w - 1)));
    return k;
  }
  Exps unpack(unsigned __int128 k) const {
    Exps e = zero_exps();
    const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
    for (int v = nv - 1; v >= 0; --v, k >>= w)
      e[v] = static_cast<std::int32_t>(static_cast<std::int64_t>(static_cast<std::uint64_t>(k) & mask) -
                                       (std::int64_t{1} << (w - 1)));
    return e;
  }
};

// A packing for products of a and b, when every exponent of the product fits.
std::optional<Packing> product_packing(int nv, const std::vector<Term>& a, const std::vector<Term>& b) {
  if (nv == 0) return std::nullopt;
  std::int64_t need = 0;
  for (int v = 0; v < nv; ++v) {
    std::int64_t lo[2] = {0, 0}, hi[2] = {0, 0};
    const std::vector<Term>* src[2] = {&a, &b};
    for (int s = 0; s < 2; ++s)
      for (const auto& t : *src[s]) {
        lo[s] = std::min<std::int64_t>(lo[s], t.e[v]);
        hi[s] = std::max<std::int64_t>(hi[s], t.e[v]);
      }
    need = std::max({need, -(lo[0] + lo[1]), hi[0] + hi[1] + 1});
  }
  int w = 2;
  while ((std::int64_t{1} << (w - 1)) < need) ++w;
  if (w * nv > 128 || w > 62) return std::nullopt;
  Packing p{nv, w, 0};
  for (int v = 0; v < nv; ++v) p.bias = (p.bias << w) | (std::uint64_t{1} << (w - 1));
  return p;
}

void require_vars(int nvars) {
  if (nvars < 0 || nvars > kMaxVars) throw RingError("variable count out of range");
}

}  // namespace

Poly::Poly(int nvars) : nv_(nvars) { require_vars(nvars); }

Poly::Poly(int nvars, long c) : Poly(nvars, Int(c)) {}

Poly::Poly(int nvars, const Int& c) : nv_(nvars) {
  require_vars(nvars);
  if (c != 0) t_.push_back({zero_exps(), c});
}

Poly Poly::monomial(int nvars, const Exps& e, const Int& c) {
  Poly p(nvars);
  for (int k = nvars; k < kMaxVars; ++k)
    if (e[k] != 0) throw RingError("exponent outside variable range");
  if (c != 0) p.t_.push_back({e, c});
  return p;
}

Poly Poly::var(int nvars, int i) {
  if (i < 1 || i > nvars) throw RingError("variable index out of range");
  Exps e = zero_exps();
  e[i - 1] = 1;
  return monomial(nvars, e);
}

Poly Poly::sigma(int nvars, int i) { return var(nvars, i) - Poly(nvars, 1); }

Poly Poly::from_terms(int nvars, std::vector<Term> terms) {
  Poly p(nvars);
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().e == t.e) {
      p.t_.back().c += t.c;
      if (p.t_.back().c == 0) p.t_.pop_back();
    } else if (t.c != 0) {
      p.t_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_one() const { return t_.size() == 1 && t_[0].c == 1 && t_[0].e == zero_exps(); }

void Poly::check(const Poly& o) const {
  if (nv_ != o.nv_) throw RingError("variable-count mismatch");
}

Poly& Poly::operator+=(const Poly& o) {
  check(o);
  std::vector<Term> out;
  out.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && t_[i].e < o.t_[j].e)) {
      out.push_back(std::move(t_[i++]));
    } else if (i == t_.size() || o.t_[j].e < t_[i].e) {
      out.push_back(o.t_[j++]);
    } else {
      Int c = t_[i].c + o.t_[j].c;
      if (c != 0) out.push_back({t_[i].e, std::move(c)});
      ++i;
      ++j;
    }
  }
  t_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

// Dense accumulation over the exponent box of the product, for products
// whose box is not much larger than the number of term products and whose
// coefficient sums provably fit in 64 bits.
namespace {

std::optional<std::vector<Term>> product_dense(int nv, const std::vector<Term>& x, const std::vector<Term>& y) {
  const std::size_t work = x.size() * y.size();
  if (nv == 0 || work < 4096) return std::nullopt;
  std::size_t bx = 0, by = 0;
  for (const auto& t : x) bx = std::max(bx, mpz_sizeinbase(t.c.get_mpz_t(), 2));
  for (const auto& t : y) by = std::max(by, mpz_sizeinbase(t.c.get_mpz_t(), 2));
  std::size_t bn = 0;
  while ((std::size_t{1} << bn) < std::min(x.size(), y.size())) ++bn;
  if (bx + by + bn > 62) return std::nullopt;
  std::array<std::int64_t, kMaxVars> lo{}, span{};
  std::uint64_t box = 1;
  for (int v = 0; v < nv; ++v) {
    std::int64_t l[2] = {INT32_MAX, INT32_MAX}, h[2] = {INT32_MIN, INT32_MIN};
    for (const auto& t : x) l[0] = std::min<std::int64_t>(l[0], t.e[v]), h[0] = std::max<std::int64_t>(h[0], t.e[v]);
    for (const auto& t : y) l[1] = std::min<std::int64_t>(l[1], t.e[v]), h[1] = std::max<std::int64_t>(h[1], t.e[v]);
    lo[v] = l[0] + l[1];
    span[v] = h[0] + h[1] - lo[v] + 1;
    box *= static_cast<std::uint64_t>(span[v]);
    if (box > (std::uint64_t{1} << 23) || box > 4 * work) return std::nullopt;
  }
  // x_1 has the largest stride, so a linear scan visits exponents in order
  std::array<std::uint64_t, kMaxVars> stride{};
  std::uint64_t st = 1;
  for (int v = nv - 1; v >= 0; --v) {
    stride[v] = st;
    st *= static_cast<std::uint64_t>(span[v]);
  }
  auto index = [&](const Exps& e, bool shift) {
    std::uint64_t k = 0;
    for (int v = 0; v < nv; ++v) k += static_cast<std::uint64_t>(e[v] - (shift ? lo[v] : 0)) * stride[v];
    return k;
  };
  std::vector<std::uint64_t> ix(x.size());
  std::vector<std::int64_t> cx(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) ix[k] = index(x[k].e, true), cx[k] = x[k].c.get_si();
  std::vector<std::int64_t> acc(box, 0);
  for (const auto& t : y) {
    std::uint64_t iy = index(t.e, false);
    std::int64_t c = t.c.get_si();
    for (std::size_t k = 0; k < x.size(); ++k) acc[ix[k] + iy] += cx[k] * c;
  }
  std::vector<Term> out;
  for (std::uint64_t k = 0; k < box; ++k) {
    if (acc[k] == 0) continue;
    Exps e = zero_exps();
    std::uint64_t r = k;
    for (int v = 0; v < nv; ++v) {
      e[v] = static_cast<std::int32_t>(lo[v] + static_cast<std::int64_t>(r / stride[v]));
      r %= stride[v];
    }
    out.push_back({e, Int(static_cast<long>(acc[k]))});
  }
  return out;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  a.check(b);
  if (a.t_.empty() || b.t_.empty()) return Poly(a.nv_);
  if (b.t_.size() == 1 && b.t_[0].e == zero_exps()) return b.t_[0].c * a;
  if (a.t_.size() == 1 && a.t_[0].e == zero_exps()) return a.t_[0].c * b;
  const auto& x = a.t_.size() >= b.t_.size() ? a.t_ : b.t_;
  const auto& y = a.t_.size() >= b.t_.size() ? b.t_ : a.t_;
  if (auto d = product_dense(a.nv_, x, y)) {
    Poly p(a.nv_);
    p.t_ = std::move(*d);
    return p;
  }
  if (auto pk = product_packing(a.nv_, x, y)) {
    std::vector<unsigned __int128> kx(x.size()), ky(y.size());
    for (std::size_t k = 0; k < x.size(); ++k) kx[k] = pk->key(x[k].e);
    for (std::size_t k = 0; k < y.size(); ++k) ky[k] = pk->key(y[k].e) - pk->bias;
    struct PHead {
      unsigned __int128 key;
      std::uint32_t row, col;
    };
    auto later = [](const PHead& p, const PHead& q) { return q.key < p.key; };
    std::vector<PHead> heap;
    heap.reserve(y.size());
    for (std::uint32_t r = 0; r < y.size(); ++r) heap.push_back({kx[0] + ky[r], r, 0});
    std::make_heap(heap.begin(), heap.end(), later);
    // small coefficients: accumulate in 128-bit integers, no GMP traffic
    auto fits40 = [](const std::vector<Term>& ts) {
      for (const auto& t : ts)
        if (mpz_sizeinbase(t.c.get_mpz_t(), 2) > 40) return false;
      return true;
    };
    if (fits40(x) && fits40(y)) {
      std::vector<std::int64_t> cx(x.size()), cy(y.size());
      for (std::size_t k = 0; k < x.size(); ++k) cx[k] = x[k].c.get_si();
      for (std::size_t k = 0; k < y.size(); ++k) cy[k] = y[k].c.get_si();
      std::vector<std::pair<unsigned __int128, __int128>> small;
      while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), later);
        PHead& h = heap.back();
        __int128 c = static_cast<__int128>(cx[h.col]) * cy[h.row];
        if (!small.empty() && small.back().first == h.key) {
          small.back().second += c;
        } else {
          if (!small.empty() && small.back().second == 0) small.pop_back();
          small.emplace_back(h.key, c);
        }
        if (++h.col < x.size()) {
          h.key = kx[h.col] + ky[h.row];
          std::push_heap(heap.begin(), heap.end(), later);
        } else {
          heap.pop_back();
        }
      }
      Poly p(a.nv_);
      p.t_.reserve(small.size());
      for (const auto& [k, v] : small) {
        if (v == 0) continue;
        Int c;
        if (v >= INT64_MIN && v <= INT64_MAX) {
          c = static_cast<long>(v);
        } else {
          unsigned __int128 mag = v < 0 ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
          Int hi = static_cast<unsigned long>(mag >> 64), lo = static_cast<unsigned long>(mag);
          c = (hi << 64) + lo;
          if (v < 0) c = -c;
        }
        p.t_.push_back({pk->unpack(k), std::move(c)});
      }
      return p;
    }
    std::vector<std::pair<unsigned __int128, Int>> acc;
    Int c;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end(), later);
      PHead& h = heap.back();
      mpz_mul(c.get_mpz_t(), x[h.col].c.get_mpz_t(), y[h.row].c.get_mpz_t());
      if (!acc.empty() && acc.back().first == h.key) {
        acc.back().second += c;
      } else {
        if (!acc.empty() && acc.back().second == 0) acc.pop_back();
        acc.emplace_back(h.key, c);
      }
      if (++h.col < x.size()) {
        h.key = kx[h.col] + ky[h.row];
        std::push_heap(heap.begin(), heap.end(), later);
      } else {
        heap.pop_back();
      }
    }
    Poly p(a.nv_);
    p.t_.reserve(acc.size());
    for (auto& [k, v] : acc)
      if (v != 0) p.t_.push_back({pk->unpack(k), std::move(v)});
    return p;
  }
  // x shifted by each term of y is sorted; merge the rows with a heap
  struct Head {
    Exps e;
    std::size_t row, col;
  };
  auto later = [](const Head& p, const Head& q) { return q.e < p.e; };
  std::vector<Head> heap;
  heap.reserve(y.size());
  for (std::size_t r = 0; r < y.size(); ++r) {
    Head h{{}, r, 0};
    add_exps(h.e, x[0].e, y[r].e);
    heap.push_back(h);
  }
  std::make_heap(heap.begin(), heap.end(), later);
  Poly p(a.nv_);
  Int c;
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), later);
    Head& h = heap.back();
    mpz_mul(c.get_mpz_t(), x[h.col].c.get_mpz_t(), y[h.row].c.get_mpz_t());
    if (!p.t_.empty() && p.t_.back().e == h.e) {
      p.t_.back().c += c;
    } else {
      if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
      p.t_.push_back({h.e, c});
    }
    if (++h.col < x.size()) {
      add_exps(h.e, x[h.col].e, y[h.row].e);
      std::push_heap(heap.begin(), heap.end(), later);
    } else {
      heap.pop_back();
    }
  }
  if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
  return p;
}

Poly operator*(const Int& k, const Poly& a) {
  Poly p(a.nv_);
  if (k == 0) return p;
  p.t_ = a.t_;
  for (auto& t : p.t_) t.c *= k;
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.t_) t.c = -t.c;
  return p;
}

bool Poly::operator==(const Poly& o) const {
  if (nv_ != o.nv_ || t_.size() != o.t_.size()) return false;
  for (std::size_t k = 0; k < t_.size(); ++k)
    if (t_[k].e != o.t_[k].e || t_[k].c != o.t_[k].c) return false;
  return true;
}

Poly Poly::pow(long k) const {
  if (k < 0) return unit_inverse(*this).pow(-k);
  Poly result(nv_, 1), base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::shift(const Exps& e) const {
  Poly p = *this;
  for (auto& t : p.t_) add_exps(t.e, t.e, e);
  return p;
}

Poly Poly::specialize(const std::vector<int>& vars_to_one) const {
  std::vector<Term> raw = t_;
  for (int i : vars_to_one) {
    if (i < 1 || i > nv_) throw RingError("variable index out of range");
    for (auto& t : raw) t.e[i - 1] = 0;
  }
  return from_terms(nv_, std::move(raw));
}

Int Poly::eval_at_ones() const {
  Int s = 0;
  for (const auto& t : t_) s += t.c;
  return s;
}

Poly Poly::substitute(int i, const Poly& g) const {
  check(g);
  if (i < 1 || i > nv_) throw RingError("variable index out of range");
  int lo = 0, hi = 0;
  for (const auto& t : t_) {
    lo = std::min(lo, t.e[i - 1]);
    hi = std::max(hi, t.e[i - 1]);
  }
  std::vector<Poly> pos{Poly(nv_, 1)}, neg{Poly(nv_, 1)};
  for (int k = 1; k <= hi; ++k) pos.push_back(pos.back() * g);
  if (lo < 0) {
    Poly gi = unit_inverse(g);
    for (int k = 1; k <= -lo; ++k) neg.push_back(neg.back() * gi);
  }
  Poly out(nv_);
  for (const auto& t : t_) {
    Exps e = t.e;
    int d = e[i - 1];
    e[i - 1] = 0;
    Poly mono = monomial(nv_, e, t.c);
    out += mono * (d >= 0 ? pos[d] : neg[-d]);
  }
  return out;
}

Poly Poly::extend(int nvars) const {
  if (nvars < nv_) throw RingError("cannot shrink variable count");
  require_vars(nvars);
  Poly p = *this;
  p.nv_ = nvars;
  return p;
}

bool Poly::uses_var(int i) const {
  for (const auto& t : t_)
    if (t.e[i - 1] != 0) return true;
  return false;
}

int Poly::max_abs_exponent() const {
  int r = 0;
  for (const auto& t : t_)
    for (int k = 0; k < nv_; ++k) r = std::max(r, std::abs(t.e[k]));
  return r;
}

std::vector<std::string> default_names(int nvars) {
  std::vector<std::string> v;
  for (int k = 1; k <= nvars; ++k) v.push_back("x" + std::to_string(k));
  return v;
}

std::string Poly::str() const { return str(default_names(nv_)); }

std::string Poly::str(const std::vector<std::string>& names) const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest exponent vector first
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    Int c = it->c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (int k = 0; k < nv_; ++k) {
      if (it->e[k] == 0) continue;
      std::string f = names.at(k);
      if (it->e[k] != 1) f += "^" + std::to_string(it->e[k]);
      factors.push_back(f);
    }
    if (factors.empty()) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << "*";
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
  }
  return os.str();
}

Poly lp_arith(const Poly& a, const Poly& b, char kind) {
  switch (kind) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
  }
  throw RingError("unknown arithmetic kind");
}

Poly lp_specialize(const Poly& f, const std::vector<int>& vars_to_one) { return f.specialize(vars_to_one); }

std::optional<Poly> try_divide_sigma(const Poly& f, int i) {
  int n = f.nvars();
  if (i < 1 || i > n) throw RingError("variable index out of range");
  if (!f.specialize({i}).is_zero()) return std::nullopt;
  // Group by the other exponents; each slice is a Laurent polynomial in x_i
  // vanishing at 1, divided by synthetic division from the top degree.
  std::vector<Term> terms = f.terms();
  std::stable_sort(terms.begin(), terms.end(), [i](const Term& a, const Term& b) {
    Exps ka = a.e, kb = b.e;
    ka[i - 1] = kb[i - 1] = 0;
    if (ka != kb) return ka < kb;
    return a.e[i - 1] < b.e[i - 1];
  });
  std::vector<Term> out;
  std::size_t s = 0;
  while (s < terms.size()) {
    Exps key = terms[s].e;
    key[i - 1] = 0;
    std::size_t e = s;
    while (e < terms.size()) {
      Exps k2 = terms[e].e;
      k2[i - 1] = 0;
      if (k2 != key) break;
      ++e;
    }
    // slice terms s..e-1 in increasing x_i degree
    // f = (x-1) q  =>  q_{d-1} = sum_{j >= d} f_j  (coefficients of the slice)
    int lo = terms[s].e[i - 1], hi = terms[e - 1].e[i - 1];
    Int acc = 0;
    std::size_t p = e;
    for (int d = hi; d > lo; --d) {
      while (p > s && terms[p - 1].e[i - 1] >= d) {
        --p;
        acc += terms[p].c;
      }
      if (acc != 0) {
        Exps qe = key;
        qe[i - 1] = d - 1;
        out.push_back({qe, acc});
      }
    }
    s = e;
  }
  return Poly::from_terms(n, std::move(out));
}

Poly lp_divide_exact(const Poly& f, int i) {
  auto q = try_divide_sigma(f, i);
  if (!q) throw NotDivisible("polynomial does not vanish at x" + std::to_string(i) + " = 1");
  return *q;
}

std::optional<UnitInfo> unit_check(const Poly& f) {
  if (f.size() != 1) return std::nullopt;
  const auto& t = f.terms()[0];
  if (t.c == 1) return UnitInfo{1, t.e};
  if (t.c == -1) return UnitInfo{-1, t.e};
  return std::nullopt;
}

Poly unit_inverse(const Poly& f) {
  auto u = unit_check(f);
  if (!u) throw RingError("not a unit: " + f.str());
  Exps e = u->e;
  for (auto& x : e) x = -x;
  return Poly::monomial(f.nvars(), e, u->sign);
}

// ---------------------------------------------------------------- ModPoly

namespace {
long mod_norm(long c, long m) {
  c %= m;
  return c < 0 ? c + m : c;
}
}  // namespace

ModPoly::ModPoly(int nvars, long m) : nv_(nvars), m_(m) {
  if (m < 2) throw RingError("modulus must be at least 2");
}

ModPoly ModPoly::build(int nv, long m, std::vector<std::pair<Exps, long>> raw) {
  ModPoly p(nv, m);
  for (auto& [e, c] : raw) {
    for (int k = 0; k < nv; ++k) e[k] = static_cast<int32_t>(mod_norm(e[k], m));
    c = mod_norm(c, m);
  }
  std::sort(raw.begin(), raw.end());
  for (auto& [e, c] : raw) {
    if (!p.t_.empty() && p.t_.back().first == e) {
      p.t_.back().second = (p.t_.back().second + c) % m;
      if (p.t_.back().second == 0) p.t_.pop_back();
    } else if (c != 0) {
      p.t_.emplace_back(e, c);
    }
  }
  return p;
}

ModPoly ModPoly::constant(int nvars, long m, long c) {
  return build(nvars, m, {{zero_exps(), c}});
}

ModPoly ModPoly::from_poly(const Poly& f, long m) {
  std::vector<std::pair<Exps, long>> raw;
  Int mm = m;
  for (const auto& t : f.terms()) {
    Int r = t.c % mm;
    raw.emplace_back(t.e, r.get_si());
  }
  return build(f.nvars(), m, std::move(raw));
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
  if (a.nv_ != b.nv_ || a.m_ != b.m_) throw RingError("ring mismatch");
  auto raw = a.t_;
  raw.insert(raw.end(), b.t_.begin(), b.t_.end());
  return ModPoly::build(a.nv_, a.m_, std::move(raw));
}

ModPoly ModPoly::operator-() const {
  auto raw = t_;
  for (auto& [e, c] : raw) c = m_ - c;
  return build(nv_, m_, std::move(raw));
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) { return a + (-b); }

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
  if (a.nv_ != b.nv_ || a.m_ != b.m_) throw RingError("ring mismatch");
  std::vector<std::pair<Exps, long>> raw;
  raw.reserve(a.t_.size() * b.t_.size());
  for (const auto& [ea, ca] : a.t_)
    for (const auto& [eb, cb] : b.t_) {
      Exps e;
      add_exps(e, ea, eb);
      raw.emplace_back(e, (ca * cb) % a.m_);
    }
  return ModPoly::build(a.nv_, a.m_, std::move(raw));
}

ModPoly ModPoly::shift(const Exps& e) const {
  auto raw = t_;
  for (auto& [x, c] : raw) add_exps(x, x, e);
  return build(nv_, m_, std::move(raw));
}

std::string ModPoly::str() const {
  Poly p(nv_);
  std::vector<Term> raw;
  for (const auto& [e, c] : t_) raw.push_back({e, Int(c)});
  return Poly::from_terms(nv_, raw).str() + " (mod " + std::to_string(m_) + ")";
}

ModPoly lp_reduce_mod_Hm(const Poly& f, long m) { return ModPoly::from_poly(f, m); }

// ---------------------------------------------------------------- ideals

std::string IdealRef::str() const {
  std::string is = std::to_string(i), ms = std::to_string(m);
  switch (kind) {
    case IdealKind::Augmentation: return "augmentation";
    case IdealKind::SigmaPrincipal: return "sigma" + is + "*R";
    case IdealKind::H: return "H_" + ms;
    case IdealKind::J: return "J_{" + is + "," + ms + "}";
    case IdealKind::SigmaTimesH: return "sigma" + is + "*H_" + ms;
    case IdealKind::SigmaJ: return "sigma" + is + "*J_{" + is + "," + ms + "}";
    case IdealKind::U: return "(x" + is + "^" + ms + "-1)R";
    case IdealKind::O: return ms + "R";
    case IdealKind::O2: return ms + "^2R";
  }
  return "?";
}

bool only_uses_vars(const Poly& f, const std::vector<int>& vars) {
  for (int k = 1; k <= f.nvars(); ++k)
    if (std::find(vars.begin(), vars.end(), k) == vars.end() && f.uses_var(k)) return false;
  return true;
}

namespace {

void check_index(const Poly& f, int i) {
  if (i < 1 || i > f.nvars()) throw RingError("malformed ideal reference: index out of range");
}

void check_modulus(long m) {
  if (m < 2) throw RingError("malformed ideal reference: modulus below 2");
}

bool all_coeffs_divisible(const Poly& f, const Int& d) {
  for (const auto& t : f.terms())
    if (!mpz_divisible_p(t.c.get_mpz_t(), d.get_mpz_t())) return false;
  return true;
}

// R/(x_i^m - 1) has the monomials with x_i-degree in [0, m) as a Z-basis.
bool in_u_ideal(const Poly& f, int i, long m) {
  std::vector<Term> raw = f.terms();
  for (auto& t : raw) t.e[i - 1] = static_cast<int32_t>(mod_norm(t.e[i - 1], m));
  return Poly::from_terms(f.nvars(), std::move(raw)).is_zero();
}

}  // namespace

bool ideal_member(const Poly& f, const IdealRef& I) {
  switch (I.kind) {
    case IdealKind::Augmentation:
      return f.eval_at_ones() == 0;
    case IdealKind::SigmaPrincipal:
      check_index(f, I.i);
      return f.specialize({I.i}).is_zero();
    case IdealKind::H:
      check_modulus(I.m);
      return lp_reduce_mod_Hm(f, I.m).is_zero();
    case IdealKind::J:
      check_index(f, I.i);
      check_modulus(I.m);
      return only_uses_vars(f, {I.i}) && lp_reduce_mod_Hm(f, I.m).is_zero();
    case IdealKind::SigmaTimesH: {
      check_index(f, I.i);
      check_modulus(I.m);
      auto q = try_divide_sigma(f, I.i);
      return q && lp_reduce_mod_Hm(*q, I.m).is_zero();
    }
    case IdealKind::SigmaJ: {
      check_index(f, I.i);
      check_modulus(I.m);
      if (!only_uses_vars(f, {I.i})) return false;
      auto q = try_divide_sigma(f, I.i);
      return q && lp_reduce_mod_Hm(*q, I.m).is_zero();
    }
    case IdealKind::U:
      check_index(f, I.i);
      check_modulus(I.m);
      return in_u_ideal(f, I.i, I.m);
    case IdealKind::O:
      check_modulus(I.m);
      return all_coeffs_divisible(f, Int(I.m));
    case IdealKind::O2:
      check_modulus(I.m);
      return all_coeffs_divisible(f, Int(I.m) * I.m);
  }
  throw RingError("malformed ideal reference");
}

bool in_sigma_power_times(const Poly& f, int i, int k, const IdealRef& ideal) {
  Poly g = f;
  for (int s = 0; s < k; ++s) {
    auto q = try_divide_sigma(g, i);
    if (!q) return false;
    g = std::move(*q);
  }
  return ideal_member(g, ideal);
}

// ---------------------------------------------------------------- T_m

Poly TmWitness::recombine() const {
  Poly s(c.nvars());
  for (const auto& p : summands()) s += p;
  return s;
}

std::vector<Poly> TmWitness::summands() const {
  int nv = c.nvars();
  std::vector<Poly> out;
  Int mm = m;
  for (int r = 1; r <= n; ++r) {
    Poly sg = Poly::sigma(nv, r);
    Poly u = Poly::var(nv, r).pow(m) - Poly(nv, 1);
    out.push_back(sg * sg * u * a[r - 1]);
    out.push_back(mm * (sg * b[r - 1]));
  }
  out.push_back((mm * mm) * c);
  return out;
}

bool TmWitness::summands_ok() const {
  auto s = summands();
  for (int r = 1; r <= n; ++r) {
    const Poly& ua = s[2 * (r - 1)];
    const Poly& ob = s[2 * (r - 1) + 1];
    if (!in_sigma_power_times(ua, r, 2, IdealRef::u(r, m))) return false;
    if (!in_sigma_power_times(ob, r, 1, IdealRef::o(m))) return false;
  }
  return ideal_member(s.back(), IdealRef::o2(m));
}

TmWitness hm2_in_tm_witness(int i, long m, int n) {
  if (m < 2) throw RingError("modulus must be at least 2");
  if (i < 1 || i > n) throw RingError("variable index out of range");
  Poly x = Poly::var(n, i), one(n, 1);
  Poly xm = x.pow(m);
  // x^{m^2} - 1 = (x - 1) * P * Q with P = sum x^j, Q = sum x^{jm}, j < m
  Poly P(n), Q(n);
  for (long j = 0; j < m; ++j) {
    P += x.pow(j);
    Q += xm.pow(j);
  }
  Poly mc(n, m);
  Poly q = lp_divide_exact(P - mc, i);  // P = sigma q + m
  // Q = (x^m - 1) q' + m: divide in the variable z = x^m
  Poly qq(n);
  for (long j = 1; j < m; ++j)
    for (long k = 0; k < j; ++k) qq += xm.pow(k);
  TmWitness w;
  w.n = n;
  w.m = m;
  w.a.assign(n, Poly(n));
  w.b.assign(n, Poly(n));
  w.c = Poly(n);
  w.a[i - 1] = q * qq;
  // sigma^2 m q + sigma m (x^m - 1) q' + sigma m^2
  w.b[i - 1] = Poly::sigma(n, i) * q + (xm - one) * qq + mc;
  return w;
}

// ---------------------------------------------------------------- monic ideals

namespace {

// Degree and unit-constant check for a generator univariate in variable i.
int monic_degree(const Poly& g, int i) {
  int deg = -1;
  bool lead_one = false, const_unit = false;
  for (const auto& t : g.terms()) {
    for (int k = 0; k < g.nvars(); ++k)
      if (k != i - 1 && t.e[k] != 0) throw RingError("generator must be univariate in x" + std::to_string(i));
    int d = t.e[i - 1];
    if (d < 0) throw RingError("generator must be a polynomial");
    if (d > deg) {
      deg = d;
      lead_one = t.c == 1;
    }
    if (d == 0) const_unit = t.c == 1 || t.c == -1;
  }
  if (deg < 1 || !lead_one || !const_unit)
    throw RingError("generator must be monic of positive degree with constant term +-1");
  return deg;
}

// Reduces f (no negative powers of x_i) modulo g, accumulating the quotient.
void reduce_by(Poly& f, Poly& q, int i, const Poly& g, int deg) {
  int nv = f.nvars();
  for (;;) {
    std::vector<Term> lead;
    int top = -1;
    for (const auto& t : f.terms()) top = std::max(top, t.e[i - 1]);
    if (top < deg) return;
    for (const auto& t : f.terms())
      if (t.e[i - 1] == top) {
        Term s = t;
        s.e[i - 1] -= deg;
        lead.push_back(std::move(s));
      }
    Poly c = Poly::from_terms(nv, std::move(lead));
    q += c;
    f -= c * g;
  }
}

}  // namespace

std::optional<MonicDecomposition> monic_decompose(const Poly& f, const MonicIdeal& ideal) {
  int nv = f.nvars();
  std::vector<int> degs;
  std::vector<bool> seen(nv + 1, false);
  for (const auto& [i, g] : ideal.gens) {
    if (i < 1 || i > nv || g.nvars() != nv) throw RingError("generator variable out of range");
    if (seen[i]) throw RingError("two generators in the same variable");
    seen[i] = true;
    degs.push_back(monic_degree(g, i));
  }
  // clear negative powers of the generator variables; x is a unit mod g
  Exps shift = zero_exps();
  for (const auto& [i, g] : ideal.gens)
    for (const auto& t : f.terms()) shift[i - 1] = std::max(shift[i - 1], -t.e[i - 1]);
  Exps back = zero_exps();
  for (int k = 0; k < nv; ++k) back[k] = -shift[k];
  Poly rem = f.shift(shift);
  MonicDecomposition out;
  for (std::size_t k = 0; k < ideal.gens.size(); ++k) {
    Poly q(nv);
    reduce_by(rem, q, ideal.gens[k].first, ideal.gens[k].second, degs[k]);
    out.q.push_back(q.shift(back));
  }
  if (ideal.modulus == 0) {
    if (!rem.is_zero()) return std::nullopt;
    out.r = Poly(nv);
    return out;
  }
  std::vector<Term> r;
  for (const auto& t : rem.terms()) {
    if (!mpz_divisible_p(t.c.get_mpz_t(), ideal.modulus.get_mpz_t())) return std::nullopt;
    r.push_back({t.e, t.c / ideal.modulus});
  }
  out.r = Poly::from_terms(nv, std::move(r)).shift(back);
  return out;
}

std::optional<Poly> divide_monic(const Poly& f, int i, const Poly& g) {
  auto d = monic_decompose(f, MonicIdeal{{{i, g}}, 0});
  if (!d) return std::nullopt;
  return d->q[0];
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
  const std::string& s;
  const std::vector<std::string>& names;
  std::size_t pos = 0;
  int nv;

  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw RingError("parse error at position " + std::to_string(pos) + ": " + what + " in '" + s + "'");
  }
  bool eat(char ch) {
    ws();
    if (pos < s.size() && s[pos] == ch) {
      ++pos;
      return true;
    }
    return false;
  }
  long integer() {
    ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    ws();
    std::size_t st = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (st == pos) fail("expected integer");
    long v = std::stol(s.substr(st, pos - st));
    return neg ? -v : v;
  }
  Poly expr() {
    ws();
    Poly acc(nv);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Poly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+')) acc += term();
      else if (eat('-')) acc -= term();
      else break;
    }
    return acc;
  }
  Poly term() {
    Poly acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }
  Poly power() {
    Poly b = primary();
    if (eat('^')) return b.pow(integer());
    return b;
  }
  Poly primary() {
    ws();
    if (pos >= s.size()) fail("unexpected end");
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (eat('-')) return -power();
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      std::size_t st = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return Poly(nv, Int(s.substr(st, pos - st)));
    }
    std::size_t st = pos;
    while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (st == pos) fail("unexpected character");
    std::string id = s.substr(st, pos - st);
    for (int k = 0; k < nv; ++k)
      if (names[k] == id) return Poly::var(nv, k + 1);
    fail("unknown variable '" + id + "'");
  }
};

}  // namespace

Poly parse_poly(const std::string& s, const std::vector<std::string>& names) {
  Parser p{s, names, 0, static_cast<int>(names.size())};
  Poly r = p.expr();
  p.ws();
  if (p.pos != s.size()) p.fail("trailing input");
  return r;
}

Poly parse_poly(const std::string& s, int nvars) { return parse_poly(s, default_names(nvars)); }

}  // namespace metab
