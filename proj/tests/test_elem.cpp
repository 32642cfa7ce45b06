#include <doctest.h>

#include <random>

#include "metab/elem.hpp"
#include "metab/witness_io.hpp"
#include "oracle.hpp"

using namespace metab;

namespace {

Poly P(const std::string& s, int n = 4) { return parse_poly(s, n); }
Mat M(const std::string& s, int n = 4) { return parse_matrix(s, n); }
Poly sig(int i, int n = 4) { return Poly::sigma(n, i); }

}  // namespace

TEST_CASE("elem_eval") {
  Mat g = Mat::identity(3, 4);
  CHECK(elem_eval({{g, 1, 2, sig(1)}}, 3) == Mat::elementary(3, 1, 2, sig(1)));
  ElemToken t{M("1, x2, 0; 0, 1, 0; 0, 0, 1"), 2, 3, sig(1) * P("x3 + 2")};
  CHECK(elem_eval({t, t.inverse()}, 3).is_identity());
  ElemToken a{Mat::identity(4, 4), 1, 2, sig(3)}, b{Mat::identity(4, 4), 3, 4, P("x1 - x2")};
  CHECK(elem_eval({a, b}, 4) == elem_eval({b, a}, 4));
  ElemToken bad{M("2, 0, 0; 0, 1, 0; 0, 0, 1"), 1, 2, sig(1)};
  CHECK_THROWS_AS(elem_eval({bad}, 3), RingError);
}

TEST_CASE("suslin_eval") {
  // fresh f = x5, h = x6 over Z[x1..x4, f, h]
  const int nv = 6;
  Poly f = Poly::var(nv, 5), h = Poly::var(nv, 6), one(nv, 1);
  CHECK(suslin_eval({Poly(nv), h, 1, 2, 3, {}}) == Mat::elementary(3, 2, 1, h));
  CHECK(suslin_eval({f, Poly(nv), 1, 2, 3, {}}).is_identity());
  Mat s = suslin_eval({f, h, 1, 2, 3, {}});
  Mat want = Mat::identity(3, nv);
  want(1, 1) = one - h * f;
  want(1, 2) = -(h * f * f);
  want(2, 1) = h;
  want(2, 2) = one + h * f;
  CHECK(s == want);
  // three-factor product at random points
  std::mt19937_64 rng(51);
  for (int t = 0; t < 20; ++t) {
    SuslinGenerator g{oracle::random_poly(4, rng), oracle::random_poly(4, rng), 1 + t % 3, 1 + (t + 1) % 3, 3, {}};
    oracle::Point pt = oracle::random_point(4, rng);
    auto lhs = oracle::eval(suslin_eval(g), pt);
    auto rhs = oracle::mul(oracle::mul(oracle::eval(Mat::elementary(3, g.i, g.j, -g.f), pt),
                                       oracle::eval(Mat::elementary(3, g.j, g.i, g.h), pt)),
                           oracle::eval(Mat::elementary(3, g.i, g.j, g.f), pt));
    CHECK(lhs == rhs);
    CHECK((suslin_eval(g) * suslin_eval(g.inverse())).is_identity());
  }
}

TEST_CASE("sec6_generator family 1") {
  Sec6Result r = sec6_generator({1, 1, 3, 2, 0, P("1")}, 2, 4);
  // m f (sigma_i e_j - sigma_j e_i) in row 1 with (i, j) = (3, 2)
  Mat want = Mat::identity(4, 4);
  want(1, 2) += Int(2) * sig(3);
  want(1, 3) -= Int(2) * sig(2);
  CHECK(r.matrix.mat() == want);
  REQUIRE(r.witness.factors.size() == 1);
  CHECK(r.witness.factors[0].kind == WitnessFactor::Kind::PowerM);
  CHECK(r.witness.factors[0].base == ia_generator_E(1, 2, 3, 4).mat());
  CHECK(witness_verify(r.witness, want, 2, 4));
}

TEST_CASE("sec6_generator family 2") {
  Sec6Result r = sec6_generator({2, 1, 2, 3, 4, P("1")}, 2, 4);
  Poly u4 = P("x4^2 - 1");
  Mat want = Mat::identity(4, 4);
  want(1, 3) += u4 * sig(2);
  want(1, 2) -= u4 * sig(3);
  CHECK(r.matrix.mat() == want);
  CHECK(r.witness.factors.size() == 2);
  CHECK(witness_verify(r.witness, want, 2, 4));
}

TEST_CASE("sec6_generator family 3") {
  Sec6Result r = sec6_generator({3, 1, 2, 3, 0, P("1")}, 2, 4);
  Poly s1u = sig(1) * P("x1^2 - 1");
  Mat want = Mat::identity(4, 4);
  want(1, 2) -= sig(3) * s1u;
  want(1, 3) += sig(2) * s1u;
  CHECK(r.matrix.mat() == want);
  CHECK(witness_verify(r.witness, want, 2, 4));
}

TEST_CASE("sec6 outputs validate and differ from I only in row u") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 40; ++t) {
    int n = 4 + t % 2, fam = 1 + t % 3, u = 1 + t % n;
    int i = 1 + (u % n), j = 1 + (i % n);
    if (j == u) j = 1 + (j % n);
    int k = fam == 2 ? 1 + ((j + t) % n) : 0;
    if (fam == 2 && (k == u)) k = 1 + (k % n);
    long m = 2 + t % 2;
    Sec6Params p{fam, u, i, j, k, oracle::random_poly(n, rng, 2, 1, 2)};
    Sec6Result r = sec6_generator(p, m, n);
    CHECK(ia_check(r.matrix.mat(), n).ok);
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b)
        if (a != u) CHECK(r.matrix.mat()(a, b) == Poly(n, a == b ? 1 : 0));
    CHECK(witness_verify(r.witness, r.matrix.mat(), m, n));
    // witness JSON round trip re-verifies
    IAmWitness back = witness_from_json(witness_to_json(r.witness, m, n));
    CHECK(witness_value(back, m, n) == r.matrix.mat());
  }
}

TEST_CASE("witness_verify") {
  Mat e = ia_generator_E(1, 2, 3, 4).mat();
  IAmWitness w{{{WitnessFactor::Kind::PowerM, e, {}, {}}}};
  CHECK(witness_verify(w, e * e, 2, 4));
  CHECK_FALSE(witness_verify(w, e, 2, 4));
  IAmWitness notia{{{WitnessFactor::Kind::PowerM, M("1, x1 - 1, 0, 0; 0, 1, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1"), {}, {}}}};
  CHECK_THROWS_AS(witness_verify(notia, Mat::identity(4, 4), 2, 4), WitnessError);
  // conjugates, inverses and concatenations
  Mat c = ia_generator_E(2, 3, 1, 4).mat();
  IAmWitness cw = conjugate_witness(w, c);
  CHECK(witness_value(cw, 2, 4) == c.inverse() * e * e * c);
  CHECK(witness_value(inverse_witness(w), 2, 4) == (e * e).inverse());
  CHECK(witness_value(concat_witness(w, cw), 2, 4) == e * e * c.inverse() * e * e * c);
  IAmWitness rw = rows_witness(e * e * ia_generator_E(1, 2, 4, 4).mat().pow(2), 2);
  CHECK(witness_value(rw, 2, 4) == e * e * ia_generator_E(1, 2, 4, 4).mat().pow(2));
  CHECK_THROWS_AS(rows_witness(e, 2), WitnessError);
  // the empty product witnesses I, e.g. a dropped factor that degenerates to I
  IAmWitness none = rows_witness(Mat::identity(4, 6), 2);
  CHECK(none.factors.empty());
  CHECK(witness_verify(none, Mat::identity(4, 6), 2, 4));
  CHECK_FALSE(witness_verify(none, e, 2, 4));
}

TEST_CASE("form1_power_identity_check") {
  CHECK(form1_power_identity_check(Mat::identity(3, 4), P("1"), 1, 2, 2, 4));
  Mat a = Mat::elementary(3, 2, 3, Poly::var(5, 5));  // fresh g = x5
  CHECK(form1_power_identity_check(a, Poly(5, 1), 1, 2, 2, 4));
  CHECK(form1_power_identity_check(Mat::identity(3, 4), sig(1), 1, 2, 3, 4));
  CHECK_THROWS_AS(form1_power_identity_check(Mat::identity(3, 4), P("1"), 1, 1, 2, 4), RingError);
}

namespace {

TmWitness zero_tm(int n, long m) {
  TmWitness w;
  w.n = n;
  w.m = m;
  w.a.assign(n, Poly(n));
  w.b.assign(n, Poly(n));
  w.c = Poly(n);
  return w;
}

}  // namespace

TEST_CASE("decompose_form single generators") {
  const int n = 4;
  const long m = 2;
  // h = sigma_n m h' with f = 0: one Form 1 factor with A = I
  TmWitness w = zero_tm(n, m);
  w.b[n - 1] = P("x1 + x2^-1");
  SuslinGenerator g{Poly(n), w.recombine(), 1, 2, n - 1, w};
  Decomposition d = decompose_form(suslin_eval(g), {g}, m, n);
  REQUIRE(d.factors.size() == 1);
  CHECK(d.factors[0].form == 1);
  CHECK(d.factors[0].conj.is_identity());
  CHECK(d.factors[0].ideal_ok(m, n));
  CHECK(product_of(d.factors, n - 1, n) == suslin_eval(g));

  // h = sigma_1^2 (x_1^m - 1) with f = sigma_n, followed by the inverse of its
  // x_n = 1 image so that the product is congruent to I mod sigma_n
  TmWitness w2 = zero_tm(n, m), w2neg = zero_tm(n, m);
  w2.a[0] = P("1");
  w2neg.a[0] = P("-1");
  std::vector<SuslinGenerator> gs{{sig(n), w2.recombine(), 2, 3, n - 1, w2},
                                  {Poly(n), w2neg.recombine(), 2, 3, n - 1, w2neg}};
  Mat b = suslin_eval(gs[0]) * suslin_eval(gs[1]);
  Decomposition d2 = decompose_form(b, gs, m, n);
  CHECK(product_of(d2.factors, n - 1, n) == b);
  bool has24 = false;
  for (const auto& ff : d2.factors) {
    CHECK(ff.ideal_ok(m, n));
    has24 |= ff.form == 2 || ff.form == 4;
  }
  CHECK(has24);
}

TEST_CASE("decompose_form rejects bad witnesses") {
  auto gs = random_tm_witness(5, 2, 3);
  Mat b = Mat::identity(4, 5);
  for (const auto& g : gs) b = b * suslin_eval(g);
  CHECK_NOTHROW(decompose_form(b, gs, 2, 5));
  auto wrong = gs;
  wrong[0].h += Poly(5, 1);
  CHECK_THROWS_AS(decompose_form(b, wrong, 2, 5), WitnessError);
  auto missing = gs;
  missing[0].h_witness.reset();
  CHECK_THROWS_AS(decompose_form(b, missing, 2, 5), WitnessError);
  CHECK_THROWS_AS(decompose_form(b * Mat::elementary(4, 1, 2, Poly(5, 1)), gs, 2, 5), WitnessError);
}

TEST_CASE("decompose_form round trips on random witnesses") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto gs = random_tm_witness(5, 2, seed);
    Mat b = Mat::identity(4, 5);
    for (const auto& g : gs) b = b * suslin_eval(g);
    Decomposition d = decompose_form(b, gs, 2, 5);
    CHECK(product_of(d.factors, 4, 5) == b);
    CHECK(d.residual.is_identity());
    for (const auto& ff : d.factors) {
      std::string why;
      CHECK_MESSAGE(ff.ideal_ok(2, 5, &why), why);
    }
    // input document round trip
    FactorInput in{5, 2, b, gs};
    FactorInput back = factor_input_from_json(factor_input_to_json(in));
    CHECK(back.matrix == b);
    REQUIRE(back.generators.size() == gs.size());
    for (std::size_t k = 0; k < gs.size(); ++k) CHECK(back.generators[k].h_witness->recombine() == gs[k].h);
  }
}
