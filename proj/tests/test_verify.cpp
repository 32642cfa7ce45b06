#include <doctest.h>

#include <random>

#include "metab/verify.hpp"

using namespace metab;

namespace {

Poly P(const std::string& s, int n = 4) { return parse_poly(s, n); }

ChainScript builtin(const std::string& name) {
  const SuiteEntry* e = find_suite_entry(name);
  REQUIRE(e != nullptr);
  return parse_script(e->text);
}

const char* kSmall = R"(script small
title a two-step chain
n 4
dim 3
param f
param g
start E(1, 2, f) * E(1, 2, g)
= E(1, 2, f + g)
= [1, f + g, 0; 0, 1, 0; 0, 0, 1]
)";

}  // namespace

TEST_CASE("suite inventory") {
  auto suite = builtin_suite();
  CHECK(suite.size() >= 20);
  for (const char* name : {"comp1", "comp2", "comp3", "comp4", "cor-comp1", "cor-comp6", "sec6-form2", "sec6-form3",
                           "suslin-bachmuth", "lemma-sum", "prop-stage", "prop-stage-units", "lemma-sum-1",
                           "form1-power", "h-in-tm", "form4-lemma", "cor-equivalence", "induction-base",
                           "induction-step", "pf-comp-commutators", "sl-det-reduction"})
    CHECK_MESSAGE(find_suite_entry(name) != nullptr, name);
  for (const auto& e : builtin_suite_entries()) {
    CHECK_FALSE(e.display.empty());
    CHECK(parse_script(e.text).name == e.name);
  }
  CHECK(find_suite_entry("nope") == nullptr);
}

TEST_CASE("every builtin script passes at m = 2 and m = 3") {
  auto suite = builtin_suite();
  for (long m : {2L, 3L}) {
    auto par = run_suite(suite, m);
    auto ser = run_suite_serial(suite, m);
    REQUIRE(par.size() == suite.size());
    for (std::size_t k = 0; k < suite.size(); ++k) {
      CHECK_MESSAGE(par[k].pass, suite[k].name << " m=" << m);
      CHECK(par[k].name == suite[k].name);
      CHECK(par[k].pass == ser[k].pass);
      REQUIRE(par[k].steps.size() == ser[k].steps.size());
      for (std::size_t q = 0; q < par[k].steps.size(); ++q) CHECK(par[k].steps[q].detail == ser[k].steps[q].detail);
    }
  }
}

TEST_CASE("a hand-written chain") {
  ChainScript s = parse_script(kSmall);
  CHECK(s.params.size() == 2);
  ChainReport r = chain_check(s);
  CHECK(r.pass);
  CHECK(r.first_failure() == -1);
  std::string bad = kSmall;
  bad.replace(bad.find("= E(1, 2, f + g)"), 16, "= E(1, 2, f - g)");
  ChainReport rb = chain_check(parse_script(bad));
  CHECK_FALSE(rb.pass);
  CHECK(rb.first_failure() == 1);
  CHECK(rb.steps[0].row == 1);
  CHECK(rb.steps[0].col == 2);
}

TEST_CASE("malformed scripts") {
  CHECK_THROWS_AS(parse_script("script x\nstart E(1, 2, 1\n"), ScriptError);
  CHECK_THROWS_AS(parse_script("script x\nfrobnicate\n"), ScriptError);
  CHECK_THROWS_AS(parse_script("script x\nstart I\ndrop 1 I by rows\n"), ScriptError);
  CHECK_THROWS_AS(parse_script("script x\nparam f : sigma(\nstart I\n"), ScriptError);
  // dimension mismatch is reported by the failing step, not thrown
  ChainReport r = chain_check(parse_script("script x\nn 4\ndim 3\nstart I\n= [1, 0; 0, 1]\n"));
  CHECK_FALSE(r.pass);
}

TEST_CASE("universality_instantiate examples") {
  ChainScript comp1 = builtin("comp1");
  ChainScript c = universality_instantiate(comp1, {{"f", Poly::sigma(4, 4) * P("x1")}, {"g", Poly::sigma(4, 2)}});
  CHECK(chain_check(c).pass);

  ChainScript ls1 = builtin("lemma-sum-1");
  std::map<std::string, Poly> b{{"h1", P("1")}, {"h2", P("x1")}, {"f", Poly::sigma(4, 4)},
                                {"a1", P("x2")}, {"a2", P("x3 - 1")}, {"a3", P("2")}};
  CHECK(chain_check(universality_instantiate(ls1, b, 2), 2).pass);

  // f must lie in sigma_4 R_4
  b["f"] = Poly::sigma(4, 1);
  CHECK_THROWS_AS(universality_instantiate(ls1, b, 2), ScriptError);
  CHECK_THROWS_AS(universality_instantiate(comp1, {{"zz", P("1")}}), ScriptError);
  CHECK_THROWS_AS(universality_instantiate(builtin("cor-comp1"), {{"f", P("x1 - 1")}, {"g", P("1")}}), ScriptError);
}

TEST_CASE("random constraint-respecting bindings pass") {
  std::mt19937_64 rng(71);
  for (const auto& s : builtin_suite()) {
    for (int t = 0; t < 3; ++t) {
      auto b = random_bindings(s, 2, rng);
      for (const auto& p : s.params) {
        REQUIRE(b.count(p.name) == 1);
        if (p.shape) {
          std::string why;
          CHECK_MESSAGE(shape_member(*p.shape, b[p.name], 2, s.n, &why), s.name << " " << p.name << ": " << why);
        }
      }
      ChainReport r = chain_check(universality_instantiate(s, b, 2), 2);
      CHECK_MESSAGE(r.pass, s.name << " binding " << t << " fails at step " << r.first_failure());
    }
  }
}

TEST_CASE("mutations fail at the mutated step") {
  for (const auto& s : builtin_suite()) {
    int made = 0;
    for (MutationKind kind : {MutationKind::SignFlip, MutationKind::IndexSwap, MutationKind::DropFactor}) {
      for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        auto mu = mutate(s, kind, seed);
        if (!mu) continue;
        ++made;
        ChainReport r = chain_check(mu->first);
        CHECK_MESSAGE(!r.pass, s.name << ": " << mu->second.description);
        CHECK_MESSAGE(r.first_failure() == mu->second.step, s.name << ": " << mu->second.description);
      }
    }
    CHECK_MESSAGE(made >= 3, s.name);
  }
}

TEST_CASE("every drop and member witness is necessary") {
  for (const auto& s : builtin_suite()) {
    for (std::size_t k = 0; k < s.steps.size(); ++k) {
      const ChainStep& st = s.steps[k];
      int idx = static_cast<int>(k) + 1;
      for (std::size_t d = 0; d < st.drops.size(); ++d) {
        ChainScript cut = s;
        cut.steps[k].drops.erase(cut.steps[k].drops.begin() + static_cast<long>(d));
        ChainReport r = chain_check(cut);
        CHECK_MESSAGE(r.first_failure() == idx, s.name << " step " << idx << " drop " << d + 1);
      }
      if (st.kind == ChainStep::Kind::Member && st.witness.kind != WitnessSpec::Kind::Assume) {
        // a witness for I in place of the real one
        ChainScript wrong = s;
        auto ident = std::make_shared<Node>();
        ident->kind = Node::Kind::Ident;
        ident->text = "I";
        wrong.steps[k].witness = WitnessSpec{WitnessSpec::Kind::Pow, {ident}, {}, {}};
        ChainReport r = chain_check(wrong);
        CHECK_MESSAGE(r.first_failure() == idx, s.name << " member step " << idx);
      }
    }
  }
}
