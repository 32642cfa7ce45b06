#include <doctest.h>

#include <array>
#include <random>

#include "metab/ksym.hpp"
#include "oracle.hpp"

using namespace metab;

namespace {

std::vector<QuotRing> test_rings() {
  return {QuotRing::zmod(5), QuotRing::zmod(4), QuotRing::group_ring(2, 1), QuotRing::sbar(2, 1)};
}

// h(u) = w(u) w(-1) with w(u) = x12(u) x21(-u^-1) x12(u), multiplied out as
// 2x2 integer matrices with symmetric residues mod p
using M2 = std::array<long, 4>;

M2 m2mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

long sym(long c, long p) {
  c = ((c % p) + p) % p;
  return 2 * c > p ? c - p : c;
}

M2 w2(long u, long p) {
  long ui = 1;
  while (sym(u * ui, p) != 1) ++ui;
  long a = sym(u, p), b = sym(-ui, p);
  M2 x{1, a, 0, 1}, y{1, 0, b, 1};
  return m2mul(m2mul(x, y), x);
}

M2 m2inv(const M2& a) { return {a[3], -a[1], -a[2], a[0]}; }  // det 1

M2 h2(long u, long p) { return m2mul(w2(u, p), w2(-1, p)); }

Mat lifted_symbol_z(long u, long v, long p) {
  M2 a = m2mul(m2mul(h2(u * v, p), m2inv(h2(u, p))), m2inv(h2(v, p)));
  Mat out = Mat::identity(3, 1);
  for (int k = 0; k < 4; ++k) out(1 + k / 2, 1 + k % 2) = Poly(1, a[k]);
  return out;
}

}  // namespace

TEST_CASE("quotient rings") {
  CHECK(QuotRing::zmod(5).cardinality() == 5);
  CHECK(QuotRing::zmod(5).units().size() == 4);
  CHECK(QuotRing::zmod(4).units().size() == 2);
  // Z_2[Z_2]: 1 + x is nilpotent, the units are 1 and x
  QuotRing g = QuotRing::group_ring(2, 1);
  CHECK(g.cardinality() == 4);
  CHECK(g.units().size() == 2);
  // Z[y]/(4, y^2): a + b y is a unit iff a is odd
  CHECK(QuotRing::sbar(2, 1).units().size() == 8);
  CHECK_THROWS_AS(QuotRing::zmod(4).inverse(Poly(1, 2)), RingError);
}

TEST_CASE("Steinberg symbol words") {
  QuotRing z5 = QuotRing::zmod(5);
  SteinbergWord w = st_symbol_word(z5, Poly(1, 2), Poly(1, 3), 1, 2);
  CHECK(w.size() == 18);
  CHECK(st_eval(w, 3, z5).is_identity());
  CHECK(st_eval(st_symbol_word(z5, Poly(1, 1), Poly(1, 1), 1, 2), 3, z5).is_identity());
  CHECK_THROWS_AS(st_symbol_word(QuotRing::zmod(4), Poly(1, 2), Poly(1, 1), 1, 2), RingError);
  CHECK_THROWS_AS(st_eval(w, 1, z5), RingError);
}

TEST_CASE("phi of symbols is I for all unit pairs") {
  for (const QuotRing& R : test_rings()) {
    auto us = R.units();
    for (int d : {3, 4})
      for (const auto& u : us)
        for (const auto& v : us)
          for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{3, 1}}) {
            CHECK_MESSAGE(st_eval(st_symbol_word(R, u, v, i, j), d, R).is_identity(),
                          R.name() << " {" << R.str(u) << "," << R.str(v) << "} d=" << d);
          }
  }
}

TEST_CASE("w_{1,2}(u) over a field") {
  QuotRing z7 = QuotRing::zmod(7);
  for (long u = 1; u < 7; ++u) {
    Mat a = st_eval(st_w(z7, Poly(1, u), 1, 2), 2, z7);
    long ui = 1;
    while (u * ui % 7 != 1) ++ui;
    CHECK(a == Mat::from_rows({{Poly(1, 0), Poly(1, u)}, {z7.from_int(-ui), Poly(1, 0)}}));
  }
}

TEST_CASE("Steinberg relations under phi") {
  std::mt19937_64 rng(61);
  std::vector<QuotRing> rings{QuotRing::zmod(7), QuotRing::zmod(9), QuotRing::group_ring(3, 1), QuotRing::sbar(3, 1)};
  for (int t = 0; t < 100; ++t) {
    const QuotRing& R = rings[t % rings.size()];
    auto el = R.elements();
    Poly a = el[rng() % el.size()], b = el[rng() % el.size()];
    int d = 3 + t % 2;
    // x_ij(a) x_ij(b) = x_ij(a + b)
    CHECK(st_eval({{1, 2, a}, {1, 2, b}}, d, R) == st_eval({{1, 2, R.reduce(a + b)}}, d, R));
    // [x_12(a), x_23(b)] = x_13(ab)
    SteinbergWord c{{1, 2, a}, {2, 3, b}, {1, 2, a, true}, {2, 3, b, true}};
    CHECK(st_eval(c, d, R) == st_eval({{1, 3, R.mul(a, b)}}, d, R));
    // [x_12(a), x_31(b)]... commuting pairs: [x_12(a), x_13(b)] = 1
    SteinbergWord e{{1, 2, a}, {1, 3, b}, {1, 2, a, true}, {1, 3, b, true}};
    CHECK(st_eval(e, d, R).is_identity());
  }
}

TEST_CASE("lifted symbols") {
  QuotRing z5 = QuotRing::zmod(5), z = QuotRing::integers();
  SteinbergWord one = st_symbol_word(z5, Poly(1, 1), Poly(1, 1), 1, 2);
  CHECK(st_lift_eval(one, z5, z, 3).is_identity());
  for (int d : {3, 4})
    for (const auto& u : z5.units())
      for (const auto& v : z5.units()) {
        Mat a = st_lift_eval(st_symbol_word(z5, u, v, 1, 2), z5, z, d);
        LiftCheck c = check_lift(a, z5);
        CHECK(c.ok());
      }
  Mat a23 = st_lift_eval(st_symbol_word(z5, Poly(1, 2), Poly(1, 3), 1, 2), z5, z, 3);
  CHECK(a23 == lifted_symbol_z(2, 3, 5));
  CHECK(a23 == parse_matrix("-29, -70, 0; -70, -169, 0; 0, 0, 1", 1));
  // a non-symmetric section still lands in SL_3(Z, 5Z)
  Section high = [](const Poly& r) { return r + Poly(1, 5); };
  CHECK(check_lift(st_lift_eval(st_symbol_word(z5, Poly(1, 2), Poly(1, 3), 1, 2), z5, z, 3, high), z5).ok());
  Section broken = [](const Poly& r) { return r + Poly(1, 1); };
  CHECK_THROWS_AS(st_lift_eval(one, z5, z, 3, broken), RingError);

  QuotRing sj2 = QuotRing::group_ring(2, 1), s = QuotRing::laurent();
  Poly x = Poly::var(1, 1);
  for (int d : {3, 4}) {
    Mat b = st_lift_eval(st_symbol_word(sj2, x, x, 1, 2), sj2, s, d);
    LiftCheck c = check_lift(b, sj2);
    CHECK(c.block_form);
    CHECK(c.congruent);
    CHECK(c.det_one);
  }
  SteinbergWord bad{{1, 2, Poly(1, 7)}};
  CHECK_THROWS_AS(st_lift_eval(bad, z5, z, 3), RingError);
}

TEST_CASE("D_m normality identities") {
  for (int d : {3, 4})
    for (long m : {2L, 3L})
      for (long k : {1L, 2L, -1L})
        for (int j = 2; j <= d; ++j) {
          std::string why;
          CHECK_MESSAGE(dm_normality_identities(d, m, k, j, &why), why);
        }
  CHECK_FALSE(dm_normality_identities(2, 2, 1, 2));
}

TEST_CASE("det_dm_split") {
  Poly x = Poly::var(1, 1), one(1, 1);
  Mat a = Mat::elementary(3, 1, 1, x.pow(3) - one);
  DmSplit s = det_dm_split(a, 3);
  CHECK(s.k == 1);
  CHECK(s.sl_part.is_identity());
  DmSplit t = det_dm_split(Mat::identity(3, 1), 3);
  CHECK(t.k == 0);
  CHECK(t.sl_part.is_identity());
  Mat neg = Mat::identity(3, 1);
  neg(1, 1) = -x.pow(3);
  CHECK_THROWS_AS(det_dm_split(neg, 3), RingError);
  // D-factor times SL part is A
  Mat b = Mat::elementary(3, 1, 1, x.pow(-6) - one) * Mat::elementary(3, 2, 1, Int(3) * (x - one)) *
          Mat::elementary(3, 1, 3, x.pow(3) - one);
  DmSplit u = det_dm_split(b, 3);
  CHECK(u.k == -2);
  CHECK(u.d_factor * u.sl_part == b);
  CHECK(u.sl_part.det().is_one());
  CHECK_THROWS_AS(det_dm_split(b, 2), RingError);
}

namespace {

// (y+1)^N in Z[y]/(p^2, y^L) by the binomial theorem
std::vector<long> binomial_power(long p, long L, long N) {
  std::vector<long> c(L, 0);
  mpz_class b;
  for (long k = 0; k < L && k <= N; ++k) {
    mpz_bin_uiui(b.get_mpz_t(), N, k);
    mpz_class r = b % (p * p);
    c[k] = r.get_si();
  }
  return c;
}

}  // namespace

TEST_CASE("SBar unit identity") {
  for (auto [p, l] : {std::pair{2L, 1}, std::pair{2L, 2}, std::pair{3L, 1}, std::pair{5L, 1}}) {
    SBarRing r(p, l);
    CHECK(r.verify_unit_identity());
    long L = r.size(), N = 1;
    for (int k = 0; k <= l; ++k) N *= p;
    auto want = binomial_power(p, L, N);
    CHECK(r.pow(r.y_plus_one(), N) == want);
    CHECK(want == r.one());
    // one exponent lower is not the identity
    CHECK_FALSE(r.is_one(r.pow(r.y_plus_one(), N / p / p)));
  }
  SBarRing r(2, 1);
  Poly x = Poly::var(1, 1);
  CHECK(r.is_one(r.s_to_sbar(x * x.pow(-1))));
  CHECK(r.s_to_sbar(x.pow(-1)) == r.pow(r.y_plus_one(), 3));
  CHECK_THROWS_AS(SBarRing(4, 1), RingError);
  CHECK_THROWS_AS(SBarRing(2, 7), RingError);
  std::mt19937_64 rng(62);
  SBarRing r3(3, 1);
  for (int t = 0; t < 100; ++t) {
    Poly f = oracle::random_poly(1, rng, 3, 4), g = oracle::random_poly(1, rng, 3, 4);
    CHECK(r3.s_to_sbar(f * g) == r3.mul(r3.s_to_sbar(f), r3.s_to_sbar(g)));
    CHECK(r3.s_to_sbar(f + g) == r3.add(r3.s_to_sbar(f), r3.s_to_sbar(g)));
  }
}
