// One PASS/FAIL line per acceptance criterion; exit status 1 when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "metab/elem.hpp"
#include "metab/ksym.hpp"
#include "metab/magnus.hpp"
#include "metab/verify.hpp"
#include "oracle.hpp"

using namespace metab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

GroupWord random_word(int n, int len, std::mt19937_64& rng) {
  GroupWord w;
  for (int k = 0; k < len; ++k)
    w.push_back({std::uniform_int_distribution<int>(1, n)(rng), std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
  return w;
}

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

Outcome identity_suite() {
  auto t0 = Clock::now();
  auto suite = builtin_suite();
  Outcome o;
  int passed = 0;
  for (const auto& r : run_suite(suite, 2)) passed += r.pass;
  std::vector<ChainScript> concrete;
  std::mt19937_64 rng(101);
  for (const auto& s : suite)
    for (int t = 0; t < 50; ++t) concrete.push_back(universality_instantiate(s, random_bindings(s, 2, rng), 2));
  int cpassed = 0;
  for (const auto& r : run_suite(concrete, 2)) cpassed += r.pass;
  double secs = seconds_since(t0);
  o.pass = suite.size() >= 20 && passed == static_cast<int>(suite.size()) &&
           cpassed == static_cast<int>(concrete.size()) && secs < 300;
  std::ostringstream d;
  d << passed << "/" << suite.size() << " scripts, " << cpassed << "/" << concrete.size() << " bindings, " << secs
    << " s";
  o.detail = d.str();
  return o;
}

Outcome mutation_controls() {
  Outcome o;
  int total = 0, localized = 0, short_chains = 0;
  for (const auto& s : builtin_suite()) {
    int made = 0;
    for (MutationKind kind : {MutationKind::SignFlip, MutationKind::IndexSwap, MutationKind::DropFactor})
      for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        auto mu = mutate(s, kind, seed);
        if (!mu) continue;
        ++made;
        ++total;
        ChainReport r = chain_check(mu->first);
        localized += !r.pass && r.first_failure() == mu->second.step;
      }
    short_chains += made < 3;
  }
  o.pass = total > 0 && localized == total && short_chains == 0;
  o.detail = std::to_string(localized) + "/" + std::to_string(total) + " mutations fail at the mutated step";
  return o;
}

Outcome law_suite() {
  std::mt19937_64 rng(103);
  int fails = 0, count = 0;
  auto check = [&](bool ok) {
    ++count;
    fails += !ok;
  };
  for (int t = 0; t < 100; ++t) {
    int n = 2 + t % 3;
    Poly a = oracle::random_poly(n, rng), b = oracle::random_poly(n, rng), c = oracle::random_poly(n, rng);
    check((a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a && (a + b) - b == a);
    long m = 2 + t % 3;
    check(lp_reduce_mod_Hm(a * b, m) == lp_reduce_mod_Hm(a, m) * lp_reduce_mod_Hm(b, m) &&
          lp_reduce_mod_Hm(a + b, m) == lp_reduce_mod_Hm(a, m) + lp_reduce_mod_Hm(b, m));
    auto u = mg_eval(random_word(n, 6, rng), n), v = mg_eval(random_word(n, 6, rng), n),
         w = mg_eval(random_word(n, 6, rng), n);
    check(mg_mul(mg_mul(u, v), w) == mg_mul(u, mg_mul(v, w)) && mg_mul(u, mg_inv(u)) == MagnusElement::identity(n));
    int k = 3 + t % 2;
    IAMatrix x = random_E_word(k, 3, rng), y = random_E_word(k, 3, rng);
    auto g = mg_eval(random_word(k, 4, rng), k), h = mg_eval(random_word(k, 4, rng), k);
    check(ia_apply(x, mg_mul(g, h)) == mg_mul(ia_apply(x, g), ia_apply(x, h)) &&
          ia_apply(y, ia_apply(x, g)) == ia_apply(ia_mul(x, y), g));
    int i = 1 + t % 4;
    Mat bm = Mat::identity(3, 4);
    for (int q = 0; q < 3; ++q) {
      int p = 1 + static_cast<int>(rng() % 3), r;
      do r = 1 + static_cast<int>(rng() % 3); while (r == p);
      bm = bm * Mat::elementary(3, p, r, Poly::sigma(4, i) * oracle::random_poly(4, rng, 2, 1, 2));
    }
    check(igl_project(i, igl_embed(i, bm)) == bm);
  }
  return {fails == 0, std::to_string(count - fails) + "/" + std::to_string(count) + " instances over 5 laws"};
}

Outcome finite_probes() {
  Outcome o;
  std::ostringstream d;
  for (long m : {2L, 3L}) {
    RhoIgReport r = rho_ig_probe(4, m, 4, 100, 104);
    o.pass = o.pass && r.ok() && r.samples == 100;
    d << "rho-ig m=" << m << " " << r.passed << "/" << r.samples << "; ";
  }
  auto a = psi_enumerate(2, 2), b = psi_enumerate(2, 2);
  int brute = oracle::brute_psi_2_2();
  o.pass = o.pass && a.size() == static_cast<std::size_t>(brute) && a == b && psi_closed(a);
  d << "psi(2,2) " << a.size() << " elements, brute force " << brute;
  o.detail = d.str();
  return o;
}

Outcome witness_round_trips() {
  int ok = 0, factors = 0, bad_factors = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto gs = random_tm_witness(5, 2, seed);
    Mat b = Mat::identity(4, 5);
    for (const auto& g : gs) b = b * suslin_eval(g);
    Decomposition d = decompose_form(b, gs, 2, 5);
    ok += product_of(d.factors, 4, 5) == b && d.residual.is_identity();
    for (const auto& f : d.factors) {
      ++factors;
      bad_factors += !f.ideal_ok(2, 5);
    }
  }
  std::mt19937_64 rng(105);
  int sec6_ok = 0, sec6_total = 0;
  for (int t = 0; t < 60; ++t) {
    int n = 4 + t % 2, fam = 1 + t % 3, u = 1 + t % n;
    int i = 1 + (u % n), j = 1 + (i % n);
    if (j == u) j = 1 + (j % n);
    int k = fam == 2 ? 1 + ((j + t) % n) : 0;
    if (fam == 2 && k == u) k = 1 + (k % n);
    long m = 2 + t % 2;
    Sec6Result r = sec6_generator({fam, u, i, j, k, oracle::random_poly(n, rng, 2, 1, 2)}, m, n);
    ++sec6_total;
    sec6_ok += witness_verify(r.witness, r.matrix.mat(), m, n);
  }
  std::ostringstream d;
  d << ok << "/20 decompositions, " << factors - bad_factors << "/" << factors << " factors in their ideals, "
    << sec6_ok << "/" << sec6_total << " sec6 witnesses";
  return {ok == 20 && bad_factors == 0 && sec6_ok == sec6_total, d.str()};
}

Outcome k_theory() {
  int fails = 0, count = 0;
  for (const QuotRing& R : {QuotRing::zmod(5), QuotRing::group_ring(2, 1)})
    for (int d : {3, 4})
      for (const auto& u : R.units())
        for (const auto& v : R.units()) {
          ++count;
          fails += !st_eval(st_symbol_word(R, u, v, 1, 2), d, R).is_identity();
        }
  std::vector<std::pair<QuotRing, QuotRing>> lifts{{QuotRing::zmod(5), QuotRing::integers()},
                                                   {QuotRing::group_ring(2, 1), QuotRing::laurent()}};
  for (const auto& [R, L] : lifts)
    for (int d : {3, 4})
      for (const auto& u : R.units())
        for (const auto& v : R.units()) {
          ++count;
          fails += !check_lift(st_lift_eval(st_symbol_word(R, u, v, 1, 2), R, L, d), R).ok();
        }
  for (int d : {3, 4})
    for (long m : {2L, 3L})
      for (long k : {1L, 2L, -1L})
        for (int j = 2; j <= d; ++j) {
          ++count;
          fails += !dm_normality_identities(d, m, k, j);
        }
  for (auto [p, l] : {std::pair{2L, 1}, std::pair{2L, 2}, std::pair{3L, 1}}) {
    ++count;
    fails += !SBarRing(p, l).verify_unit_identity();
  }
  return {fails == 0, std::to_string(count - fails) + "/" + std::to_string(count) + " checks"};
}

Outcome determinant_invariant() {
  std::mt19937_64 rng(107);
  int ok = 0;
  for (int t = 0; t < 1000; ++t) {
    IAMatrix a = random_E_word(4, 1 + static_cast<int>(rng() % 30), rng);
    Poly d = a.mat().det();
    auto u = unit_check(d);
    oracle::Point pt = oracle::random_point(4, rng);
    ok += u && u->sign == 1 && oracle::det(oracle::eval(a.mat(), pt)) == oracle::eval(d, pt);
  }
  return {ok == 1000, std::to_string(ok) + "/1000 E-words have det +x^s"};
}

// sigma_r^2 (x_r^m - 1) a_r + sigma_r m b_r + m^2 c
Poly tm_value(const TmWitness& w) {
  int nv = w.c.nvars();
  Poly s = Int(w.m * w.m) * w.c;
  for (int r = 1; r <= w.n; ++r) {
    Poly sg = Poly::sigma(nv, r);
    s += sg * sg * (Poly::var(nv, r).pow(w.m) - Poly(nv, 1)) * w.a[r - 1];
    s += Int(w.m) * sg * w.b[r - 1];
  }
  return s;
}

Outcome hm2_witnesses() {
  int ok = 0;
  for (long m : {2L, 3L, 4L})
    for (int i = 1; i <= 4; ++i) {
      TmWitness w = hm2_in_tm_witness(i, m, 4);
      Poly want = Poly::var(4, i).pow(m * m) - Poly(4, 1);
      ok += tm_value(w) == want && w.recombine() == want && w.summands_ok();
    }
  return {ok == 12, std::to_string(ok) + "/12 witnesses recombine"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"identity suite with universality", identity_suite},
      {"mutation controls", mutation_controls},
      {"algebraic law suite", law_suite},
      {"finite-level probes", finite_probes},
      {"witness round trips", witness_round_trips},
      {"K-theory checks", k_theory},
      {"determinant invariant", determinant_invariant},
      {"H_(m^2) in T_m witnesses", hm2_witnesses},
  };
  bool all = true;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("criterion %zu: %s  %s (%s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
