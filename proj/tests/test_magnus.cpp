#include <doctest.h>

#include <random>
#include <set>

#include "metab/magnus.hpp"
#include "oracle.hpp"

using namespace metab;

namespace {

Poly P(const std::string& s, int n) { return parse_poly(s, n); }

Exps ev(std::initializer_list<int> xs) {
  Exps e = zero_exps();
  int k = 0;
  for (int x : xs) e[k++] = x;
  return e;
}

GroupWord random_word(int n, int len, std::mt19937_64& rng) {
  GroupWord w;
  for (int k = 0; k < len; ++k)
    w.push_back({std::uniform_int_distribution<int>(1, n)(rng), std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
  return w;
}

}  // namespace

TEST_CASE("mg_generator") {
  MagnusElement g = mg_generator(1, 2);
  CHECK(g.v == ev({1, 0}));
  CHECK(g.c == std::vector<Poly>{P("1", 2), P("0", 2)});
  CHECK(g.constraint_ok());
  CHECK_THROWS_AS(mg_generator(3, 2), RingError);
}

TEST_CASE("mg_mul and mg_inv") {
  MagnusElement ab = mg_mul(mg_generator(1, 2), mg_generator(2, 2));
  CHECK(ab.v == ev({1, 1}));
  CHECK(ab.c == std::vector<Poly>{P("1", 2), P("x1", 2)});
  CHECK(mg_mul(mg_generator(1, 2), mg_inv(mg_generator(1, 2))) == MagnusElement::identity(2));
  MagnusElement i1 = mg_inv(mg_generator(1, 2));
  CHECK(i1.v == ev({-1, 0}));
  CHECK(i1.c == std::vector<Poly>{P("-x1^-1", 2), P("0", 2)});
  CHECK(i1.constraint_ok());
  CHECK_THROWS_AS(mg_mul(mg_generator(1, 2), mg_generator(1, 3)), RingError);
}

TEST_CASE("mg_eval") {
  MagnusElement c = mg_eval(parse_word("g1 g2 g1^-1 g2^-1"), 2);
  CHECK(c.v == ev({0, 0}));
  CHECK(c.c == std::vector<Poly>{P("1 - x2", 2), P("x1 - 1", 2)});
  CHECK(mg_eval({}, 3) == MagnusElement::identity(3));
  CHECK(mg_eval(parse_word("g1 g1^-1 g2"), 2) == mg_generator(2, 2));
  CHECK_THROWS_AS(mg_eval(parse_word("g3"), 2), RingError);
  CHECK_THROWS_AS(parse_word("g1 h2"), RingError);
}

TEST_CASE("Magnus group laws on random words") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + t % 3;
    auto a = mg_eval(random_word(n, 6, rng), n), b = mg_eval(random_word(n, 6, rng), n),
         c = mg_eval(random_word(n, 6, rng), n);
    CHECK(mg_mul(mg_mul(a, b), c) == mg_mul(a, mg_mul(b, c)));
    CHECK(mg_mul(a, mg_inv(a)) == MagnusElement::identity(n));
    CHECK(mg_mul(mg_inv(a), a) == MagnusElement::identity(n));
    CHECK(mg_mul(a, b).constraint_ok());
    GroupWord u = random_word(n, 5, rng), v = random_word(n, 5, rng), uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    CHECK(mg_eval(uv, n) == mg_mul(mg_eval(u, n), mg_eval(v, n)));
  }
}

TEST_CASE("mg_project_psi") {
  CHECK(mg_project_psi(MagnusElement::identity(2), 2) == PsiElement::identity(2, 2));
  PsiElement sq = mg_project_psi(mg_eval(parse_word("g1 g1"), 2), 2);
  CHECK(sq.v == ev({0, 0}));
  CHECK(sq.c[0] == ModPoly::from_poly(P("1 + x1", 2), 2));
  CHECK(sq.c[1].is_zero());
  std::mt19937_64 rng(32);
  for (int t = 0; t < 100; ++t) {
    long m = 2 + t % 3;
    auto a = mg_eval(random_word(3, 5, rng), 3), b = mg_eval(random_word(3, 5, rng), 3);
    CHECK(mg_project_psi(mg_mul(a, b), m) == psi_mul(mg_project_psi(a, m), mg_project_psi(b, m)));
    CHECK(mg_project_psi(a, m).constraint_ok());
  }
}

TEST_CASE("psi_enumerate against brute force") {
  auto one = psi_enumerate(1, 2);
  CHECK(one.size() == 4);  // c in {0, 1+x} for v = 0 and {1, x} for v = 1
  auto two = psi_enumerate(2, 2);
  CHECK(two.size() == static_cast<std::size_t>(oracle::brute_psi_2_2()));
  CHECK(two.size() == 128);
  CHECK(psi_closed(two));
  CHECK(psi_closed_parallel(two));
  CHECK(std::find(two.begin(), two.end(), PsiElement::identity(2, 2)) != two.end());
  std::set<std::string> distinct;
  for (const auto& e : two) distinct.insert(e.str());
  CHECK(distinct.size() == two.size());
  CHECK(psi_enumerate(2, 2) == two);  // stable across runs
  CHECK_THROWS_AS(psi_enumerate(4, 3), CeilingExceeded);
  CHECK_THROWS_AS(psi_enumerate(2, 3, 1000), CeilingExceeded);
}

TEST_CASE("the image of Phi_2 in Psi_2 is the enumerated set") {
  auto all = psi_enumerate(2, 2);
  std::set<std::string> want;
  for (const auto& e : all) want.insert(e.str());
  std::set<std::string> seen;
  std::mt19937_64 rng(33);
  for (int t = 0; t < 4000 && seen.size() < want.size(); ++t)
    seen.insert(mg_project_psi(mg_eval(random_word(2, 1 + t % 12, rng), 2), 2).str());
  for (const auto& s : seen) CHECK(want.count(s) == 1);
  CHECK(seen.size() == want.size());
}
