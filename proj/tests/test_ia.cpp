#include <doctest.h>

#include <random>

#include "metab/ia.hpp"
#include "oracle.hpp"

using namespace metab;

namespace {

Poly P(const std::string& s, int n = 4) { return parse_poly(s, n); }
Mat M(const std::string& s, int n = 4) { return parse_matrix(s, n); }
Poly sig(int i, int n = 4) { return Poly::sigma(n, i); }

Mat E(int r, int s, int t, int n = 4) { return ia_generator_E(r, s, t, n).mat(); }

IAMatrix random_E_word(int n, int len, std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  IAMatrix acc = IAMatrix::identity(n);
  for (int k = 0; k < len; ++k) {
    int r, s, t;
    do {
      r = pick(1, n), s = pick(1, n), t = pick(1, n);
    } while (s == t || r == t);
    IAMatrix e = ia_generator_E(r, s, t, n);
    acc = ia_mul(acc, pick(0, 1) ? e : ia_inv(e));
  }
  return acc;
}

}  // namespace

TEST_CASE("ia_validate examples") {
  Mat e = Mat::identity(4, 4);
  e(1, 2) += sig(3);
  e(1, 3) -= sig(2);
  CHECK(ia_check(e, 4).ok);
  Mat bad = Mat::identity(4, 4);
  bad(1, 2) += sig(1);
  IAReport r = ia_check(bad, 4);
  CHECK_FALSE(r.ok);
  CHECK(r.row == 1);
  CHECK_THROWS_AS(ia_validate(bad), NotIA);
  Mat neg = Mat::identity(4, 4);
  neg(1, 1) = P("-1");
  CHECK_FALSE(ia_check(neg, 4).ok);
  // constraint holds but the determinant 2 - x2 is not a unit
  Mat nonunit = Mat::identity(4, 4);
  nonunit(3, 2) += sig(3);
  nonunit(3, 3) -= sig(2);
  CHECK_FALSE(ia_check(nonunit, 4).ok);
}

TEST_CASE("ia_generator_E") {
  CHECK(E(1, 2, 3) == M("1, x3 - 1, -x2 + 1, 0; 0, 1, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1"));
  Mat want = Mat::identity(4, 4);
  want(1, 1) += sig(4);
  want(1, 4) -= sig(1);
  CHECK(E(1, 1, 4) == want);
  CHECK(ia_check(want, 4).ok);
  CHECK_THROWS_AS(ia_generator_E(1, 2, 2, 4), RingError);
  CHECK_THROWS_AS(ia_generator_E(1, 2, 5, 4), RingError);
  CHECK_THROWS_AS(ia_generator_E(2, 3, 2, 4), RingError);
}

TEST_CASE("ia_mul and ia_inv") {
  IAMatrix e = ia_generator_E(1, 2, 3, 4);
  CHECK(ia_mul(e, ia_inv(e)) == IAMatrix::identity(4));
  Mat sq = Mat::identity(4, 4);
  sq(1, 2) += Int(2) * sig(3);
  sq(1, 3) -= Int(2) * sig(2);
  CHECK(ia_mul(e, e).mat() == sq);
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    IAMatrix a = random_E_word(4, 4, rng), b = random_E_word(4, 4, rng);
    CHECK(ia_inv(ia_mul(a, b)) == ia_mul(ia_inv(b), ia_inv(a)));
    CHECK(ia_check(ia_mul(a, b).mat(), 4).ok);
  }
}

TEST_CASE("ia_apply") {
  MagnusElement w = ia_apply(ia_generator_E(1, 2, 3, 4), mg_generator(1, 4));
  Exps e1 = zero_exps();
  e1[0] = 1;
  CHECK(w.v == e1);
  CHECK(w.c == std::vector<Poly>{P("1"), sig(3), -sig(2), P("0")});
  CHECK(w.constraint_ok());
  MagnusElement g = mg_eval(parse_word("g1 g3^-1 g2"), 4);
  CHECK(ia_apply(IAMatrix::identity(4), g) == g);
}

TEST_CASE("ia_apply is a homomorphism and a group action") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    int n = 3 + t % 2;
    IAMatrix a = random_E_word(n, 3, rng), b = random_E_word(n, 3, rng);
    GroupWord u, v;
    for (int k = 0; k < 4; ++k) {
      u.push_back({1 + static_cast<int>(rng() % n), rng() % 2 ? 1 : -1});
      v.push_back({1 + static_cast<int>(rng() % n), rng() % 2 ? 1 : -1});
    }
    MagnusElement mu = mg_eval(u, n), mv = mg_eval(v, n);
    CHECK(ia_apply(a, mg_mul(mu, mv)) == mg_mul(ia_apply(a, mu), ia_apply(a, mv)));
    // c(w) -> c(w) M_a -> c(w) M_a M_b
    CHECK(ia_apply(b, ia_apply(a, mu)) == ia_apply(ia_mul(a, b), mu));
  }
}

TEST_CASE("det of E-words is 1") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 100; ++t) {
    IAMatrix a = random_E_word(4, 1 + t % 10, rng);
    Poly d = a.mat().det();
    auto u = unit_check(d);
    REQUIRE(u);
    CHECK(u->sign == 1);
    oracle::Point pt = oracle::random_point(4, rng);
    CHECK(oracle::det(oracle::eval(a.mat(), pt)) == oracle::eval(d, pt));
  }
}

TEST_CASE("ia_rho") {
  CHECK(ia_rho(4, ia_generator_E(1, 2, 4, 4)) == M("1, x4 - 1, 0; 0, 1, 0; 0, 0, 1"));
  CHECK(ia_rho(4, ia_generator_E(1, 2, 3, 4)).is_identity());
  CHECK(ia_rho(2, IAMatrix::identity(4)).is_identity());
  std::mt19937_64 rng(44);
  for (int t = 0; t < 30; ++t) {
    IAMatrix a = random_E_word(4, 3, rng), b = random_E_word(4, 3, rng);
    int i = 1 + t % 4;
    CHECK(ia_rho(i, ia_mul(a, b)) == ia_rho(i, a) * ia_rho(i, b));
  }
}

TEST_CASE("igl_embed and igl_project") {
  Mat b = Mat::identity(3, 4);
  b(1, 2) += sig(4);
  Mat want = Mat::identity(4, 4);
  want(1, 2) += sig(4);
  want(1, 4) -= sig(2);
  CHECK(igl_embed(4, b).mat() == want);
  CHECK(igl_embed(4, Mat::identity(3, 4)) == IAMatrix::identity(4));
  Mat notdiv = Mat::identity(3, 4);
  notdiv(1, 2) += sig(1);
  CHECK_THROWS_AS(igl_embed(4, notdiv), RingError);

  CHECK(igl_project(4, ia_generator_E(1, 2, 3, 4)) == M("1, x3 - 1, -x2 + 1; 0, 1, 0; 0, 0, 1"));
  CHECK(igl_project(4, IAMatrix::identity(4)).is_identity());
  CHECK_THROWS_AS(igl_project(4, ia_generator_E(4, 1, 2, 4)), RingError);
}

TEST_CASE("rho_i splits igl_embed") {
  // random elements of GL_3(R_4, sigma_4 R_4) built from elementary factors
  std::mt19937_64 rng(45);
  for (int t = 0; t < 100; ++t) {
    int i = 1 + t % 4;
    Mat b = Mat::identity(3, 4);
    for (int k = 0; k < 3; ++k) {
      int p = 1 + static_cast<int>(rng() % 3), q;
      do q = 1 + static_cast<int>(rng() % 3); while (q == p);
      Poly h = sig(i) * oracle::random_poly(4, rng, 2, 1, 2);
      b = b * Mat::elementary(3, p, q, h);
    }
    IAMatrix a = igl_embed(i, b);
    CHECK(igl_project(i, a) == b);
    // on S_i-matrices rho_i inverts the embedding
    std::vector<int> others;
    for (int j = 1; j <= 4; ++j)
      if (j != i) others.push_back(j);
    Mat bs = b.map([&](const Poly& f) { return f.specialize(others); });
    CHECK(ia_rho(i, igl_embed(i, bs)) == bs);
  }
}

TEST_CASE("complete_column") {
  auto row = complete_row(4, {sig(4), P("0"), P("0"), P("0")});
  CHECK(row[3] == -sig(1));
  auto zero = complete_row(4, {P("0"), P("0"), P("0"), P("0")});
  CHECK(zero[3].is_zero());
  CHECK_THROWS_AS(complete_row(4, {sig(1), P("0"), P("0"), P("0")}), NotDivisible);
  // dropping and restoring column i of A - I for IGL' matrices
  std::mt19937_64 rng(46);
  for (int t = 0; t < 20; ++t) {
    IAMatrix a = igl_embed(4, Mat::identity(3, 4) * Mat::elementary(3, 1, 2, sig(4) * oracle::random_poly(4, rng, 2, 1)));
    std::vector<std::vector<Poly>> rows;
    for (int r = 1; r <= 4; ++r) {
      std::vector<Poly> row;
      for (int c = 1; c <= 4; ++c) row.push_back(c == 4 ? P("0") : a.mat()(r, c) - P(r == c ? "1" : "0"));
      rows.push_back(row);
    }
    CHECK(complete_column(4, rows) == a);
  }
}

TEST_CASE("ig_member") {
  IAMatrix e = ia_generator_E(1, 2, 3, 4);
  CHECK(ig_member(ia_mul(e, e), 2));
  CHECK_FALSE(ig_member(e, 2));
  CHECK(ig_member(IAMatrix::identity(4), 5));
  std::mt19937_64 rng(47);
  for (int t = 0; t < 20; ++t) {
    IAMatrix a = random_ig_sample(4, 2, rng()), b = random_ig_sample(4, 2, rng());
    CHECK(ig_member(a, 4));
    CHECK(ig_member(ia_mul(a, b), 4));
    CHECK(ig_member(ia_inv(a), 4));
  }
}

TEST_CASE("rho_ig probe") {
  IAMatrix p = IAMatrix::trusted(E(1, 2, 4).pow(4));
  CHECK(rho_ig_check(4, 2, p));
  CHECK(rho_ig_check(4, 2, IAMatrix::identity(4)));
  std::string why;
  CHECK_FALSE(rho_ig_check(4, 2, ia_generator_E(1, 2, 4, 4), &why));
  CHECK(why.find("IG") != std::string::npos);
  for (long m : {2L, 3L}) {
    RhoIgReport par = rho_ig_probe(4, m, 4, 100, 7);
    RhoIgReport ser = rho_ig_probe_serial(4, m, 4, 100, 7);
    CHECK(par.ok());
    CHECK(par.passed == ser.passed);
    CHECK(par.failures == ser.failures);
  }
}
