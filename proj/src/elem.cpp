#include "metab/elem.hpp"

#include <random>
#include <tuple>

namespace metab {

Mat elem_eval(const std::vector<ElemToken>& word, int d) {
  if (word.empty()) throw RingError("empty word has no ring; use the identity");
  int nv = word[0].h.nvars();
  Mat acc = Mat::identity(d, nv);
  for (const auto& t : word) {
    if (t.conj.dim() != d) throw RingError("conjugator dimension mismatch");
    if (t.i == t.j) throw RingError("elementary token needs i != j");
    Mat g_inv = t.conj.inverse();  // throws on a non-unit determinant
    acc = acc * g_inv * Mat::elementary(d, t.i, t.j, t.h) * t.conj;
  }
  return acc;
}

SuslinGenerator SuslinGenerator::inverse() const {
  SuslinGenerator g = *this;
  g.h = -h;
  if (h_witness) {
    TmWitness w = *h_witness;
    for (auto& a : w.a) a = -a;
    for (auto& b : w.b) b = -b;
    w.c = -w.c;
    g.h_witness = w;
  }
  return g;
}

Mat suslin_eval(const SuslinGenerator& g) {
  if (g.i == g.j) throw RingError("Suslin generator needs i != j");
  return Mat::elementary(g.d, g.i, g.j, -g.f) * Mat::elementary(g.d, g.j, g.i, g.h) *
         Mat::elementary(g.d, g.i, g.j, g.f);
}

// ---------------------------------------------------------------- <IA^m>

Mat row_matrix(int n, int u, int i, int j, const Poly& f) {
  int nv = f.nvars();
  Mat a = Mat::identity(n, nv);
  a(u, j) += f * Poly::sigma(nv, i);
  a(u, i) -= f * Poly::sigma(nv, j);
  return a;
}

namespace {

void check_params(const Sec6Params& p, int n) {
  auto in_range = [n](int x) { return x >= 1 && x <= n; };
  if (n < 4) throw WitnessError("the row families need n >= 4");
  if (p.f.nvars() < n) throw WitnessError("coefficient ring has fewer than n variables");
  if (!in_range(p.u) || !in_range(p.i) || !in_range(p.j)) throw WitnessError("index out of range");
  if (p.i == p.j || p.i == p.u || p.j == p.u) throw WitnessError("need i != j and i, j != u");
  if (p.family == 2) {
    if (!in_range(p.k) || p.k == p.u) throw WitnessError("family 2 needs k != u");
  } else if (p.family != 1 && p.family != 3) {
    throw WitnessError("family must be 1, 2 or 3");
  }
}

// E_{u,u,k}: row u = x_k at (u,u), -sigma_u at (u,k)
Mat diagonal_generator(int n, int nv, int u, int k) {
  Mat b = Mat::identity(n, nv);
  b(u, u) += Poly::sigma(nv, k);
  b(u, k) -= Poly::sigma(nv, u);
  return b;
}

int free_index(int n, int u, int i, int j) {
  for (int w = 1; w <= n; ++w)
    if (w != u && w != i && w != j) return w;
  throw WitnessError("no free index");
}

}  // namespace

Mat sec6_matrix(const Sec6Params& p, long m, int n) {
  check_params(p, n);
  int nv = p.f.nvars();
  Poly coeff(nv);
  switch (p.family) {
    case 1: coeff = Int(m) * p.f; break;
    case 2: coeff = (Poly::var(nv, p.k).pow(m) - Poly(nv, 1)) * p.f; break;
    case 3: coeff = Poly::sigma(nv, p.u) * (Poly::var(nv, p.u).pow(m) - Poly(nv, 1)) * p.f; break;
  }
  return row_matrix(n, p.u, p.i, p.j, coeff);
}

Sec6Result sec6_generator(const Sec6Params& p, long m, int n) {
  Mat value = sec6_matrix(p, m, n);
  int nv = p.f.nvars();
  IAmWitness w;
  if (p.family == 1) {
    // (row f(...))^m
    w.factors.push_back({WitnessFactor::Kind::PowerM, row_matrix(n, p.u, p.i, p.j, p.f), {}, {}});
  } else if (p.family == 2) {
    // [A^-1, B^m] = (A^-1 B A)^m (B^-1)^m
    Mat a = row_matrix(n, p.u, p.i, p.j, p.f);
    Mat b = diagonal_generator(n, nv, p.u, p.k);
    Mat a_inv = row_matrix(n, p.u, p.i, p.j, -p.f);
    w.factors.push_back({WitnessFactor::Kind::PowerM, a_inv * b * a, {}, {}});
    w.factors.push_back({WitnessFactor::Kind::PowerM, b.inverse(), {}, {}});
  } else {
    // [X, D] = (X D X^-1) D^-1 with D the family-2 matrix in a free row w
    int fw = free_index(n, p.u, p.i, p.j);
    Mat x = diagonal_generator(n, nv, p.u, fw);
    Sec6Params d{2, fw, p.i, p.j, p.u, -p.f};
    Sec6Params d_inv{2, fw, p.i, p.j, p.u, p.f};
    WitnessFactor t1{WitnessFactor::Kind::Template, {}, d, x.inverse()};
    WitnessFactor t2{WitnessFactor::Kind::Template, {}, d_inv, Mat::identity(n, nv)};
    w.factors.push_back(t1);
    w.factors.push_back(t2);
  }
  IAReport rep = ia_check(value, n);
  if (!rep.ok) throw WitnessError("row family matrix failed validation: " + rep.reason);
  return {IAMatrix::trusted(value), w};
}

namespace {

Mat factor_value(const WitnessFactor& f, long m, int n, int depth) {
  if (depth > 4) throw WitnessError("template nesting too deep");
  if (f.kind == WitnessFactor::Kind::PowerM) {
    IAReport rep = ia_check(f.base, n);
    if (!rep.ok) throw WitnessError("power base is not IA: " + rep.reason);
    return f.base.pow(m);
  }
  IAReport rep = ia_check(f.conj, n);
  if (!rep.ok) throw WitnessError("template conjugator is not IA: " + rep.reason);
  Sec6Result t = sec6_generator(f.params, m, n);
  Mat inner = Mat::identity(n, t.matrix.mat().nvars());
  for (const auto& g : t.witness.factors) inner = inner * factor_value(g, m, n, depth + 1);
  if (inner != t.matrix.mat()) throw WitnessError("template witness does not reproduce its matrix");
  return f.conj.inverse() * t.matrix.mat() * f.conj;
}

}  // namespace

Mat witness_value(const IAmWitness& w, long m, int n) {
  if (w.factors.empty()) return Mat::identity(n, n);  // the empty product
  Mat acc;
  bool first = true;
  for (const auto& f : w.factors) {
    Mat v = factor_value(f, m, n, 0);
    acc = first ? v : acc * v;
    first = false;
  }
  return acc;
}

bool witness_verify(const IAmWitness& w, const Mat& claimed, long m, int n, std::string* detail) {
  Mat v = witness_value(w, m, n);
  if (v.nvars() != claimed.nvars()) v = v.extend(claimed.nvars());
  auto [r, c] = first_difference(v, claimed);
  if (r == 0) return true;
  if (detail) *detail = "witness product differs from the claim at (" + std::to_string(r) + "," + std::to_string(c) + ")";
  return false;
}

namespace {

// Splits v into Koszul pairs: v = sum over (i, j) of c_ij (sigma_i e_j - sigma_j e_i).
std::vector<std::tuple<int, int, Poly>> koszul_pairs(int n, int u, std::vector<Poly> v) {
  int nv = v[0].nvars();
  std::vector<std::tuple<int, int, Poly>> out;
  for (int p = n; p >= 1; --p) {
    if (p == u || v[p - 1].is_zero()) continue;
    // v_p lies in (sigma_l : l < p, l != u) once all higher entries vanish
    Poly rest = v[p - 1];
    for (int l = 1; l < p; ++l) {
      if (l == u) continue;
      Poly low = rest.specialize({l});
      Poly diff = rest - low;
      if (!diff.is_zero()) {
        Poly q = lp_divide_exact(diff, l);
        out.emplace_back(l, p, q);
        v[l - 1] += q * Poly::sigma(nv, p);  // the pair puts -q*sigma_p there
      }
      rest = low;
    }
    if (!rest.is_zero()) throw WitnessError("row " + std::to_string(u) + " is not a relation among the sigma's");
    v[p - 1] = Poly(nv);
  }
  return out;
}

}  // namespace

IAmWitness row_witness(int n, int u, const std::vector<Poly>& v, long m) {
  if (static_cast<int>(v.size()) != n) throw WitnessError("row length must be n");
  if (!v[u - 1].is_zero()) throw WitnessError("diagonal entry of row " + std::to_string(u) + " must be 1");
  int nv = v[0].nvars();
  Poly one(nv, 1);
  MonicIdeal fam;
  std::vector<int> kinds;  // k for family 2, -u for family 3
  for (int k = 1; k <= n; ++k) {
    Poly xm = Poly::var(nv, k).pow(m) - one;
    if (k == u) fam.gens.emplace_back(k, Poly::sigma(nv, k) * xm);
    else fam.gens.emplace_back(k, xm);
    kinds.push_back(k == u ? -k : k);
  }
  fam.modulus = m;
  IAmWitness w;
  for (auto& [i, j, c] : koszul_pairs(n, u, v)) {
    auto d = monic_decompose(c, fam);
    if (!d)
      throw WitnessError("coefficient of pair (" + std::to_string(i) + "," + std::to_string(j) + ") in row " +
                         std::to_string(u) + " is outside the family ideal");
    auto add = [&](int family, int k, const Poly& f) {
      if (f.is_zero()) return;
      WitnessFactor t;
      t.kind = WitnessFactor::Kind::Template;
      t.params = Sec6Params{family, u, i, j, k, f};
      t.conj = Mat::identity(n, nv);
      w.factors.push_back(std::move(t));
    };
    for (std::size_t g = 0; g < kinds.size(); ++g) {
      if (kinds[g] < 0) add(3, 0, d->q[g]);
      else add(2, kinds[g], d->q[g]);
    }
    add(1, 0, d->r);
  }
  return w;
}

IAmWitness rows_witness(const Mat& a, long m) {
  int n = a.dim();
  IAmWitness w;
  for (int u = 1; u <= n; ++u) {
    std::vector<Poly> v;
    bool zero = true;
    for (int j = 1; j <= n; ++j) {
      Poly e = a(u, j);
      if (j == u) e -= Poly(e.nvars(), 1);
      zero = zero && e.is_zero();
      v.push_back(std::move(e));
    }
    if (!zero) w = concat_witness(w, row_witness(n, u, v, m));
  }
  return w;
}

IAmWitness conjugate_witness(const IAmWitness& w, const Mat& c) {
  IAmWitness out = w;
  Mat ci = c.inverse();
  for (auto& f : out.factors) {
    if (f.kind == WitnessFactor::Kind::PowerM) f.base = ci * f.base * c;
    else f.conj = f.conj * c;
  }
  return out;
}

IAmWitness inverse_witness(const IAmWitness& w) {
  IAmWitness out;
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    WitnessFactor f = *it;
    if (f.kind == WitnessFactor::Kind::PowerM) f.base = f.base.inverse();
    else f.params.f = -f.params.f;  // the row families are additive in f
    out.factors.push_back(std::move(f));
  }
  return out;
}

IAmWitness concat_witness(const IAmWitness& a, const IAmWitness& b) {
  IAmWitness out = a;
  out.factors.insert(out.factors.end(), b.factors.begin(), b.factors.end());
  return out;
}

bool form1_power_identity_check(const Mat& a, const Poly& hp, int i, int j, long m, int n) {
  int d = a.dim();
  int nv = a.nvars();
  if (i == j) throw RingError("need i != j");
  Mat a_inv = a.inverse();
  Poly sn = Poly::sigma(nv, n);
  Mat lhs = a_inv * Mat::elementary(d, i, j, Int(m) * (sn * hp)) * a;
  Mat rhs = (a_inv * Mat::elementary(d, i, j, sn * hp) * a).pow(m);
  return lhs == rhs;
}

// ---------------------------------------------------------------- Forms 1-4

Mat FormFactor::value() const {
  int d = conj.dim();
  Mat inner;
  if (form <= 2) {
    inner = Mat::elementary(d, i, j, h);
  } else {
    inner = Mat::elementary(d, i, j, h) * Mat::elementary(d, j, i, f) * Mat::elementary(d, i, j, -h) *
            Mat::elementary(d, j, i, -f);
  }
  const Mat& ai = conj_inv.dim() ? conj_inv : conj.inverse();
  return ai * inner * conj;
}

std::string FormFactor::role_name() const {
  std::string rs = std::to_string(r);
  switch (role) {
    case FormRole::SigmaN_O: return "sigma_n*O_m";
    case FormRole::SigmaN2_Un: return "sigma_n^2*U_n";
    case FormRole::SigmaN_SigmaR2_Ur: return "sigma_n*sigma_" + rs + "^2*U_" + rs;
    case FormRole::Obar2: return "Obar_m^2";
    case FormRole::SigmaR2_Urbar: return "sigma_" + rs + "^2*Ubar_" + rs;
    case FormRole::SigmaR_Obar: return "sigma_" + rs + "*Obar_m";
  }
  return "?";
}

bool FormFactor::ideal_ok(long m, int n, std::string* why) const {
  auto fail = [&](const std::string& s) {
    if (why) *why = "form " + std::to_string(form) + " (" + role_name() + "): " + s;
    return false;
  };
  if (i == j) return fail("i == j");
  if (!unit_check(conj.det())) return fail("conjugator is not invertible");
  std::vector<int> lower;
  for (int k = 1; k < n; ++k) lower.push_back(k);
  bool h_ok = false;
  switch (role) {
    case FormRole::SigmaN_O:
      h_ok = form == 1 && in_sigma_power_times(h, n, 1, IdealRef::o(m));
      break;
    case FormRole::SigmaN2_Un:
      h_ok = form == 2 && in_sigma_power_times(h, n, 2, IdealRef::u(n, m));
      break;
    case FormRole::SigmaN_SigmaR2_Ur: {
      auto q = try_divide_sigma(h, n);
      h_ok = form == 2 && r >= 1 && r < n && q && in_sigma_power_times(*q, r, 2, IdealRef::u(r, m));
      break;
    }
    case FormRole::Obar2:
      h_ok = form == 3 && only_uses_vars(h, lower) && ideal_member(h, IdealRef::o2(m));
      break;
    case FormRole::SigmaR2_Urbar:
      h_ok = form == 4 && r >= 1 && r < n && only_uses_vars(h, lower) &&
             in_sigma_power_times(h, r, 2, IdealRef::u(r, m));
      break;
    case FormRole::SigmaR_Obar:
      h_ok = form == 4 && r >= 1 && r < n && only_uses_vars(h, lower) &&
             in_sigma_power_times(h, r, 1, IdealRef::o(m));
      break;
  }
  if (!h_ok) return fail("h = " + h.str() + " is outside its declared ideal");
  if (form >= 3 && !ideal_member(f, IdealRef::sigma(n))) return fail("f is not in sigma_n R_n");
  return true;
}

namespace {

struct Piece {
  Poly value;
  FormRole role;
  int r;
  bool lower;  // lies in R_{n-1}: handled through Forms 3 and 4
};

// Splits every T_m summand as sigma_n (...) + (x_n = 1 part).
std::vector<Piece> split_pieces(const TmWitness& w, int n) {
  int nv = w.c.nvars();
  Int m = w.m;
  Poly sn = Poly::sigma(nv, n);
  std::vector<Piece> out;
  auto add = [&](Poly v, FormRole role, int r, bool lower) {
    if (!v.is_zero()) out.push_back({std::move(v), role, r, lower});
  };
  auto split = [&](const Poly& g) {
    Poly low = g.specialize({n});
    return std::make_pair(lp_divide_exact(g - low, n), low);
  };
  for (int r = 1; r <= n; ++r) {
    Poly sr = Poly::sigma(nv, r);
    Poly ur = Poly::var(nv, r).pow(w.m) - Poly(nv, 1);
    if (r == n) {
      add(sn * sn * ur * w.a[r - 1], FormRole::SigmaN2_Un, n, false);
      add(m * (sn * w.b[r - 1]), FormRole::SigmaN_O, 0, false);
      continue;
    }
    auto [a1, a2] = split(w.a[r - 1]);
    add(sn * sr * sr * ur * a1, FormRole::SigmaN_SigmaR2_Ur, r, false);
    add(sr * sr * ur * a2, FormRole::SigmaR2_Urbar, r, true);
    auto [b1, b2] = split(w.b[r - 1]);
    add(m * (sn * sr * b1), FormRole::SigmaN_O, 0, false);
    add(m * (sr * b2), FormRole::SigmaR_Obar, r, true);
  }
  auto [c1, c2] = split(w.c);
  add((m * m) * (sn * c1), FormRole::SigmaN_O, 0, false);
  add((m * m) * c2, FormRole::Obar2, 0, true);
  return out;
}

int form_of(FormRole role) {
  switch (role) {
    case FormRole::SigmaN_O: return 1;
    case FormRole::SigmaN2_Un:
    case FormRole::SigmaN_SigmaR2_Ur: return 2;
    case FormRole::Obar2: return 3;
    default: return 4;
  }
}

// Either a form factor or a GL_{n-1}(R_{n-1}) residual, in product order.
struct Item {
  bool residual;
  Mat mat, mat_inv;  // residual matrix
  FormFactor form;  // otherwise
};

}  // namespace

Mat product_of(const std::vector<FormFactor>& fs, int d, int nvars) {
  Mat acc = Mat::identity(d, nvars);
  // acc * A^-1 * inner * A, applied left to right: the partial products stay
  // near the running prefix instead of materializing each conjugate
  for (const auto& f : fs) {
    const Mat& ai = f.conj_inv.dim() ? f.conj_inv : f.conj.inverse();
    acc = acc * ai;
    if (f.form <= 2) {
      acc = acc * Mat::elementary(d, f.i, f.j, f.h);
    } else {
      acc = acc * Mat::elementary(d, f.i, f.j, f.h) * Mat::elementary(d, f.j, f.i, f.f) *
            Mat::elementary(d, f.i, f.j, -f.h) * Mat::elementary(d, f.j, f.i, -f.f);
    }
    acc = acc * f.conj;
  }
  return acc;
}

Decomposition decompose_form(const Mat& b, const std::vector<SuslinGenerator>& witness, long m, int n) {
  int d = b.dim();
  int nv = b.nvars();
  if (d != n - 1) throw WitnessError("B must be (n-1) x (n-1)");
  for (int p = 1; p <= d; ++p)
    for (int q = 1; q <= d; ++q) {
      Poly e = b(p, q);
      if (p == q) e -= Poly(nv, 1);
      if (!ideal_member(e, IdealRef::sigma(n))) throw WitnessError("B is not congruent to I mod sigma_n");
    }
  Mat prod = Mat::identity(d, nv);
  for (const auto& g : witness) prod = prod * suslin_eval(g);
  if (prod != b) throw WitnessError("witness product does not equal B");

  Poly sn = Poly::sigma(nv, n);
  std::vector<Item> items;
  for (const auto& g : witness) {
    if (!g.h_witness) throw WitnessError("generator h lacks a T_m witness");
    const TmWitness& tw = *g.h_witness;
    if (tw.m != m || tw.recombine() != g.h) throw WitnessError("T_m witness does not recombine to h");
    Mat a = Mat::elementary(d, g.i, g.j, g.f);  // conjugator: A^-1 = I - f E_ij
    Mat a_inv = Mat::elementary(d, g.i, g.j, -g.f);
    Poly f2 = g.f.specialize({n});
    Poly f1 = lp_divide_exact(g.f - f2, n);
    for (auto& pc : split_pieces(tw, n)) {
      if (!pc.lower) {
        FormFactor ff{form_of(pc.role), pc.role, pc.r, a, g.j, g.i, pc.value, Poly(nv), a_inv};
        items.push_back({false, {}, {}, ff});
        continue;
      }
      // (I - f2 E_ij)(I + k E_ji) [(I - k E_ji), (I - sigma_n f1 E_ij)] (I + f2 E_ij)
      const Poly& k = pc.value;
      items.push_back({true, Mat::elementary(d, g.i, g.j, -f2) * Mat::elementary(d, g.j, g.i, k),
                       Mat::elementary(d, g.j, g.i, -k) * Mat::elementary(d, g.i, g.j, f2), {}});
      if (!f1.is_zero()) {
        FormFactor ff{form_of(pc.role), pc.role, pc.r, Mat::identity(d, nv), g.j, g.i, -k, -(sn * f1), Mat::identity(d, nv)};
        items.push_back({false, {}, {}, ff});
      }
      items.push_back({true, Mat::elementary(d, g.i, g.j, f2), Mat::elementary(d, g.i, g.j, -f2), {}});
    }
  }
  // B = A1 D1 A2 D2 ... ; conjugate each D by the running residual product P:
  // P D P^-1 = (A P^-1)^-1 X (A P^-1).
  Decomposition out;
  Mat running = Mat::identity(d, nv), running_inv = Mat::identity(d, nv);
  for (auto& it : items) {
    if (it.residual) {
      running = running * it.mat;
      running_inv = it.mat_inv * running_inv;
      continue;
    }
    FormFactor ff = it.form;
    ff.conj = ff.conj * running_inv;
    ff.conj_inv = running * ff.conj_inv;
    out.factors.push_back(std::move(ff));
  }
  out.residual = running;
  if (!running.is_identity()) throw WitnessError("residual GL_{n-1}(R_{n-1}) factors do not cancel");
  return out;
}

std::vector<SuslinGenerator> random_tm_witness(int n, long m, std::uint64_t seed, int gens) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto small_poly = [&](int max_terms) {
    Poly p(n);
    int terms = pick(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Exps e = zero_exps();
      for (int v = 0; v < n; ++v)
        if (pick(0, 2) == 0) e[v] = pick(-1, 1);
      p += Poly::monomial(n, e, pick(-2, 2));
    }
    return p;
  };
  int d = n - 1;
  std::vector<SuslinGenerator> first;
  for (int g = 0; g < gens; ++g) {
    TmWitness w;
    w.n = n;
    w.m = m;
    for (int r = 0; r < n; ++r) {
      w.a.push_back(small_poly(1));
      w.b.push_back(small_poly(1));
    }
    w.c = small_poly(1);
    SuslinGenerator s;
    s.d = d;
    s.i = pick(1, d);
    do s.j = pick(1, d); while (s.j == s.i);
    s.f = small_poly(2);
    s.h = w.recombine();
    s.h_witness = w;
    first.push_back(std::move(s));
  }
  // Append the inverses of the x_n = 1 images in reverse order so that the
  // product is congruent to I modulo sigma_n.
  std::vector<SuslinGenerator> out = first;
  for (auto it = first.rbegin(); it != first.rend(); ++it) {
    SuslinGenerator s = *it;
    s.f = s.f.specialize({n});
    TmWitness w = *s.h_witness;
    for (auto& a : w.a) a = a.specialize({n});
    for (auto& b : w.b) b = b.specialize({n});
    w.c = w.c.specialize({n});
    // sigma_n specializes to 0, so the r = n summands drop out
    w.a[n - 1] = Poly(n);
    w.b[n - 1] = Poly(n);
    s.h = w.recombine();
    s.h_witness = w;
    out.push_back(s.inverse());
  }
  return out;
}

}  // namespace metab
