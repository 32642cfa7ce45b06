#include <doctest.h>

#include <random>

#include "metab/ring.hpp"
#include "oracle.hpp"

using namespace metab;

namespace {

Poly P(const std::string& s, int n = 4) { return parse_poly(s, n); }
Poly sig(int i, int n = 4) { return Poly::sigma(n, i); }

}  // namespace

TEST_CASE("lp_arith examples") {
  CHECK(lp_arith(sig(1), P("x1 + 1"), '*') == P("x1^2 - 1"));
  CHECK(lp_arith(lp_arith(sig(1), sig(2), '+'), sig(1), '-') == sig(2));
  CHECK(lp_arith(sig(1), sig(2), '*').terms().size() == lp_arith(sig(2), sig(1), '*').terms().size());
  CHECK(lp_arith(sig(1), sig(2), '*') == lp_arith(sig(2), sig(1), '*'));
  CHECK_THROWS_AS(lp_arith(sig(1, 2), sig(1, 3), '+'), RingError);
}

TEST_CASE("canonical form has no zero terms and sorted exponents") {
  Poly f = P("x1 - x1 + 3*x2^-1 - 3*x2^-1");
  CHECK(f.is_zero());
  Poly g = P("x2 + x1^2*x2^-1 - 3 + x1");
  for (std::size_t k = 1; k < g.terms().size(); ++k) CHECK(g.terms()[k - 1].e < g.terms()[k].e);
  for (const auto& t : g.terms()) CHECK(t.c != 0);
}

TEST_CASE("text format round trip") {
  Poly f = P("x1^2*x2^-1 - 3");
  CHECK(parse_poly(f.str(), 4) == f);
  CHECK(P("x1^2 * x2^-1 + -3") == f);
  CHECK_THROWS_AS(P("x9"), RingError);
  CHECK_THROWS_AS(P("x1 +"), RingError);
}

TEST_CASE("lp_specialize examples") {
  CHECK(lp_specialize(sig(2), {2}).is_zero());
  CHECK(lp_specialize(P("x1*x2 - 1"), {1}) == sig(2));
  // a row identity 0 = sum a_j sigma_j specialized at all j != l leaves a_l sigma_l
  Poly a1 = P("x2 + x3"), a2 = P("-x1*x3 - x3^2 + x2 - x1"), a3 = P("x1 - x2");
  Poly row = a1 * sig(1) + a2 * sig(2) + a3 * sig(3);
  Poly l1 = lp_specialize(row, {2, 3, 4});
  CHECK(l1 == lp_specialize(a1, {2, 3, 4}) * sig(1));
}

TEST_CASE("lp_reduce_mod_Hm examples") {
  CHECK(lp_reduce_mod_Hm(P("x1^3"), 2) == ModPoly::from_poly(P("x1"), 2));
  CHECK(lp_reduce_mod_Hm(P("2*x1 + 3"), 2) == ModPoly::constant(4, 2, 1));
  CHECK(lp_reduce_mod_Hm(P("x1^2 - 1"), 2).is_zero());
  CHECK(lp_reduce_mod_Hm(P("x1^-1"), 3) == ModPoly::from_poly(P("x1^2"), 3));
}

TEST_CASE("lp_divide_exact examples") {
  CHECK(lp_divide_exact(P("x1^2 - 1"), 1) == P("x1 + 1"));
  CHECK(lp_divide_exact(sig(4) * sig(1), 4) == sig(1));
  CHECK_THROWS_AS(lp_divide_exact(P("x2"), 1), NotDivisible);
  CHECK(lp_divide_exact(P("x1^-2 - 1"), 1) == P("-x1^-1 - x1^-2"));
}

TEST_CASE("ideal_member examples") {
  CHECK(ideal_member(sig(1) * sig(2), IdealRef::sigma(1)));
  CHECK(ideal_member(P("x1^2 - 1"), IdealRef::h(2)));
  CHECK_FALSE(ideal_member(sig(1), IdealRef::h(2)));
  CHECK(ideal_member(sig(1) + sig(3), IdealRef::augmentation()));
  CHECK_FALSE(ideal_member(P("x1"), IdealRef::augmentation()));
  CHECK(ideal_member(sig(2) * P("x2^2 - 1"), IdealRef::sigma_h(2, 2)));
  CHECK_FALSE(ideal_member(sig(2) * sig(2), IdealRef::sigma_h(2, 2)));
  CHECK(ideal_member(P("4*x4 - 4"), IdealRef::sigma_j(4, 2)));
  CHECK_FALSE(ideal_member(P("x1*x4 - x1"), IdealRef::sigma_j(4, 2)));  // not univariate
  CHECK(ideal_member(P("x3^3 - 1") * P("x1"), IdealRef::u(3, 3)));
  CHECK(ideal_member(P("6*x1 + 3"), IdealRef::o(3)));
  CHECK_FALSE(ideal_member(P("6*x1 + 3"), IdealRef::o2(3)));
}

TEST_CASE("H_m membership agrees with a constructive oracle") {
  // members are built as sum (x_i^m - 1) g_i + m g_0; adding a monomial leaves H_m
  std::mt19937_64 rng(20);
  for (long m : {2L, 3L, 4L})
    for (int t = 0; t < 60; ++t) {
      int n = 3;
      Poly f = Int(m) * oracle::random_poly(n, rng, 3);
      for (int i = 1; i <= n; ++i) f += (Poly::var(n, i).pow(m) - Poly(n, 1)) * oracle::random_poly(n, rng, 2);
      CHECK(ideal_member(f, IdealRef::h(m)));
      Exps e = zero_exps();
      e[t % n] = static_cast<int>(t % 5) - 2;
      CHECK_FALSE(ideal_member(f + Poly::monomial(n, e), IdealRef::h(m)));
    }
}

TEST_CASE("sigma_i division inverts multiplication") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    int i = 1 + t % 4;
    Poly q = oracle::random_poly(4, rng);
    Poly f = sig(i) * q;
    CHECK(lp_divide_exact(f, i) == q);
    auto d = try_divide_sigma(f + Poly(4, 1), i);
    CHECK_FALSE(d.has_value());
  }
}

TEST_CASE("unit_check examples") {
  auto u = unit_check(P("-x1*x2^-3"));
  REQUIRE(u);
  CHECK(u->sign == -1);
  CHECK(u->e[0] == 1);
  CHECK(u->e[1] == -3);
  CHECK(u->e[2] == 0);
  CHECK_FALSE(unit_check(P("x1 + 1")));
  auto one = unit_check(P("1"));
  REQUIRE(one);
  CHECK(one->sign == 1);
  CHECK(one->e == zero_exps());
  CHECK_FALSE(unit_check(P("2*x1")));
  CHECK(unit_inverse(P("-x1*x2^-3")) == P("-x1^-1*x2^3"));
}

namespace {

// sigma_r^2 (x_r^m - 1) a_r + sigma_r m b_r + m^2 c, assembled here without
// TmWitness::summands.
Poly tm_value(const TmWitness& w) {
  int nv = w.c.nvars();
  Poly s = Int(w.m * w.m) * w.c;
  for (int r = 1; r <= w.n; ++r) {
    Poly sg = Poly::sigma(nv, r);
    Poly u = Poly::var(nv, r).pow(w.m) - Poly(nv, 1);
    s += sg * sg * u * w.a[r - 1];
    s += Int(w.m) * sg * w.b[r - 1];
  }
  return s;
}

}  // namespace

TEST_CASE("hm2_in_tm_witness recombines to x_i^{m^2} - 1") {
  for (long m : {2L, 3L, 4L})
    for (int i = 1; i <= 4; ++i) {
      TmWitness w = hm2_in_tm_witness(i, m, 4);
      Poly want = Poly::var(4, i).pow(m * m) - Poly(4, 1);
      CHECK(tm_value(w) == want);
      CHECK(w.recombine() == want);
      CHECK(w.summands_ok());
      CHECK(lp_reduce_mod_Hm(want, m * m).is_zero());
    }
  // the m = 2 witness: a_1 = 1 (sigma^2 (x^2 - 1)) and b_1 = sigma + (x^2 - 1) + 2
  TmWitness w = hm2_in_tm_witness(1, 2, 4);
  CHECK(w.a[0] == P("1"));
  CHECK(w.b[0] == P("x1^2 + x1 - 2") + P("2"));
  CHECK(w.c.is_zero());
  CHECK_THROWS_AS(hm2_in_tm_witness(5, 2, 4), RingError);
}

TEST_CASE("monic ideal decomposition") {
  MonicIdeal I;
  I.gens.push_back({1, P("x1^2 - 1", 2)});
  I.modulus = 3;
  Poly f = P("x1^2 - 1", 2) * P("x2 + 5", 2) + P("3*x2^-1", 2);
  auto d = monic_decompose(f, I);
  REQUIRE(d);
  CHECK(d->q[0] * P("x1^2 - 1", 2) + Int(3) * d->r == f);
  CHECK_FALSE(monic_decompose(f + P("x1", 2), I));
}

TEST_CASE("multiplication agrees with evaluation for small and wide exponents") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 6;
    Poly f = oracle::random_poly(n, rng, 6, 3, 5), g = oracle::random_poly(n, rng, 6, 3, 5);
    if (t % 3 == 0) {
      // exponents too wide for packed keys
      Exps e = zero_exps();
      e[0] = 1 << 29;
      f += Poly::monomial(n, e, Int(7));
      e[0] = -(1 << 29);
      g += Poly::monomial(n, e, Int(-2));
    }
    Poly h = f * g;
    for (std::size_t k = 1; k < h.terms().size(); ++k) CHECK(h.terms()[k - 1].e < h.terms()[k].e);
    for (const auto& term : h.terms()) CHECK(term.c != 0);
    oracle::Point pt = oracle::random_point(n, rng);
    CHECK(oracle::eval(h, pt) == oracle::mul(oracle::eval(f, pt), oracle::eval(g, pt)));
    CHECK(h == g * f);
    CHECK((f + g) * (f - g) == f * f - g * g);
  }
}

TEST_CASE("large products in a small exponent box") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    int n = 2 + t % 3;
    // dense exponent boxes, with wide coefficients every fourth case
    Poly f = oracle::random_poly(n, rng, 150, 3, 1000), g = oracle::random_poly(n, rng, 150, 3, 1000);
    if (t % 4 == 0) f *= Poly(n, Int(1) << 40);
    Poly h = f * g;
    for (std::size_t k = 1; k < h.terms().size(); ++k) CHECK(h.terms()[k - 1].e < h.terms()[k].e);
    for (const auto& term : h.terms()) CHECK(term.c != 0);
    oracle::Point pt = oracle::random_point(n, rng);
    CHECK(oracle::eval(h, pt) == oracle::mul(oracle::eval(f, pt), oracle::eval(g, pt)));
    CHECK(h == g * f);
    CHECK(h - f * g == Poly(n));
  }
}
