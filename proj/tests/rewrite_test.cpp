#include <gtest/gtest.h>

#include "difflam/rewrite.hpp"
#include "difflam/syntax.hpp"
#include "difflam/taylor.hpp"
#include "gen.hpp"
#include "helpers.hpp"

using namespace difflam;
using th::D;
using th::R;

namespace {

bool has_eta_redex(const diff::Term& t) {
  switch (t->kind()) {
    case diff::Kind::Bound:
    case diff::Kind::Free:
      return false;
    case diff::Kind::Abs: {
      auto& b = t->head();
      if (b->kind() == diff::Kind::App && b->arg().distinct() == 1 && b->arg().total() == 1 &&
          b->arg()[0].first->kind() == diff::Kind::Bound && b->arg()[0].first->index() == 0 && b->head()->loose() == 0)
        return true;
      return has_eta_redex(b);
    }
    case diff::Kind::App:
      if (has_eta_redex(t->head())) return true;
      for (auto& [a, n] : t->arg())
        if (has_eta_redex(a)) return true;
      return false;
    case diff::Kind::Lin:
      if (has_eta_redex(t->head())) return true;
      for (auto& a : t->args())
        if (has_eta_redex(a)) return true;
      return false;
  }
  return false;
}

bool has_eta_redex(const diff::Sum& s) {
  for (auto& [t, n] : s)
    if (has_eta_redex(t)) return true;
  return false;
}

}  // namespace

TEST(Step, Beta) {
  EXPECT_EQ(*diff::step(D("(\\x.x) (t + u)")), D("t + u"));
  EXPECT_FALSE(diff::step(D("x (\\y.y)")).has_value());
  EXPECT_EQ(*diff::step(D("Omega")), D("Omega"));
}

TEST(Step, BetaD) {
  EXPECT_EQ(*diff::step(D("D(\\x.x x; y)")), D("\\x.y x + \\x.D(x; y) x"));
  EXPECT_EQ(*diff::step(D("D(\\x.z; y)")), D("0"));
}

TEST(Normalize, WorkedExamples) {
  auto a = diff::normalize(D("D(Delta; y) z"));
  EXPECT_FALSE(a.exhausted);
  EXPECT_EQ(a.term, D("y z + D(z; y) z"));
  auto b = diff::normalize(D("D(Delta; x, y) (0)"));
  EXPECT_EQ(b.term, D("D(x; y) (0) + D(y; x) (0)"));
  auto c = diff::normalize(D("D(Delta; x, y, z)"));
  EXPECT_EQ(c.term, D("\\r.(D(x; y, z) + D(y; x, z) + D(z; x, y) + D(r; x, y, z)) r"));
  auto o = diff::normalize(D("Omega"), 100);
  EXPECT_TRUE(o.exhausted);
  EXPECT_EQ(o.steps, 100u);
}

TEST(Normalize, Eta) {
  auto n = diff::normalize(D("\\x.f x"), 10, true);
  EXPECT_EQ(n.term, D("f"));
  EXPECT_EQ(diff::normalize(D("\\x.x x"), 10, true).term, D("\\x.x x"));
  EXPECT_EQ(diff::eta_contract(D("\\x.(\\y.g y) x")), D("g"));
}

TEST(TheoryEq, Examples) {
  EXPECT_EQ(diff::theory_eq(D("D(Delta; z)"), D("z + \\x.D(x; z) x"), 200, true), Verdict::Equal);
  EXPECT_EQ(diff::theory_eq(D("D(Delta; z)"), D("z + \\x.D(x; z) x"), 200, false), Verdict::NotEqual);
  EXPECT_EQ(diff::theory_eq(D("x"), D("y")), Verdict::NotEqual);
  EXPECT_EQ(diff::theory_eq(D("Omega"), D("0"), 50), Verdict::Unknown);
  EXPECT_EQ(diff::theory_eq(D("x + x"), D("x")), Verdict::NotEqual);
  EXPECT_EQ(diff::theory_eq(D("x + x"), D("x"), 10, false, true), Verdict::Equal);
}

TEST(TheoryEq, PureCorpusAgreesWithBeta) {
  th::prelude();
  Prelude p = th::prelude();
  p.push_back({"K", "\\a b.a"});
  p.push_back({"S", "\\a b c.a c (b c)"});
  p.push_back({"two", "\\f v.f (f v)"});
  p.push_back({"succ", "\\n f v.f (n f v)"});
  p.push_back({"three", "\\f v.f (f (f v))"});
  struct Case {
    const char* a;
    const char* b;
    Verdict v;
  } cases[] = {
      {"(\\x.x) y", "y", Verdict::Equal},
      {"K a b", "a", Verdict::Equal},
      {"K a b", "b", Verdict::NotEqual},
      {"S K K z", "z", Verdict::Equal},
      {"succ two", "three", Verdict::Equal},
      {"two two f v", "f (f (f (f v)))", Verdict::Equal},
      {"(\\x.x x) (\\y.y)", "\\z.z", Verdict::Equal},
      {"\\x.x", "\\x y.x", Verdict::NotEqual},
  };
  for (auto& c : cases)
    EXPECT_EQ(diff::theory_eq(parse_diff(c.a, p), parse_diff(c.b, p), 500), c.v) << c.a << " = " << c.b;
}

TEST(Fixpoint, OneUnfolding) {
  Prelude p = th::prelude();
  p.push_back({"Theta", "\\w.(x + y) (w w)"});
  auto y = parse_diff("Y (x + y)", p);
  auto theta2 = parse_diff("Theta Theta", p);
  EXPECT_EQ(*diff::step(y), theta2);
  auto unfolded = diff::normalize(y, 10, false, Strategy::Head);
  EXPECT_FALSE(unfolded.exhausted);
  EXPECT_EQ(unfolded.term, parse_diff("x (Theta Theta) + y (Theta Theta)", p));
}

TEST(Resource, WorkedExamples) {
  EXPECT_TRUE(res::normalize(R("(\\x.x[x])[I]")).term.empty());
  // Equal to I once 1 + 1 = 1; counted, each split of the bag gives one I.
  EXPECT_EQ(res::normalize(R("(\\x.x[x])[I, I]")).term, R("I").scaled(2));
  EXPECT_EQ(res::theory_eq(R("(\\x.x[x])[I, I]"), R("I"), 100, false, true), Verdict::Equal);
  EXPECT_TRUE(res::normalize(R("(\\x.x[x])[I, I, I]")).term.empty());
  EXPECT_EQ(res::normalize(R("(\\x.x[x])[m, n]")).term, R("m[n] + n[m]"));
  EXPECT_EQ(res::theory_eq(R("(\\x z.y[y][z!])[]"), R("y[y]"), 100, true), Verdict::Equal);
  EXPECT_EQ(res::theory_eq(R("(\\x z.y[y][z!])[]"), R("y[y]"), 100, false), Verdict::NotEqual);
}

TEST(Resource, MultiplicityTwo) {
  Prelude p = th::prelude();
  p.push_back({"N", "\\y.y[y!]"});
  auto m = parse_res("(\\x.x[x, x])[N!]", p);
  auto one = res::step(m);
  ASSERT_TRUE(one);
  EXPECT_EQ(*one, parse_res("N[N, N]", p));
  auto two = res::step(*one);
  ASSERT_TRUE(two);
  auto expect = parse_res("N[N]", p);
  EXPECT_EQ(two->count(expect[0].first), 2u);
  EXPECT_EQ(two->total(), 2u);
  EXPECT_TRUE(res::normalize(m).term.empty());
}

TEST(Resource, GiantStepEdgeCases) {
  // No banged resource: the variable left over becomes 0.
  EXPECT_TRUE(res::normalize(R("(\\x.x)[]")).term.empty());
  // No linear resource: plain classic substitution of the banged sum.
  EXPECT_EQ(res::normalize(R("(\\x.z[x!])[a!, b!]")).term, R("z[a!, b!]"));
  EXPECT_EQ(res::normalize(R("(\\x.x[x!])[a, b!]")).term, R("a[b!] + b[a, b!]"));
}

TEST(Taylor, Expansion) {
  diff::TaylorBudget b;
  b.degree = 1;
  EXPECT_EQ(diff::taylor(D("x"), b).term, D("x"));
  EXPECT_EQ(diff::taylor(D("\\x.x"), b).term, D("\\x.x"));
  EXPECT_EQ(diff::taylor(D("x y"), b).term, D("x (0) + D(x; y) (0)"));
  b.degree = 2;
  EXPECT_EQ(diff::taylor(D("x (y + z)"), b).term,
            D("x (0) + D(x; y) (0) + D(x; z) (0) + D(x; y, y) (0) + D(x; y, z) (0) + D(x; z, z) (0)"));
  EXPECT_FALSE(diff::taylor(D("x y"), b).clipped);
  b.size_cap = 3;
  EXPECT_TRUE(diff::taylor(D("x (y + z)"), b).clipped);
}

TEST(Taylor, NormalForms) {
  EXPECT_EQ(diff::taylor_nf(D("x")).term, D("x"));
  EXPECT_EQ(diff::taylor_nf(D("D(\\x.x; y) (0)")).term, D("y"));
  EXPECT_TRUE(diff::taylor_nf(D("(\\x.x) (0)")).term.empty());
  EXPECT_EQ(diff::taylor_nf(D("\\z.((\\x.x) (0) + D(\\x.x; z) (0))")).term, D("\\z.z"));
}

TEST(Taylor, Equality) {
  diff::TaylorBudget b;
  for (std::size_t k = 1; k <= 4; ++k) {
    b.degree = k;
    EXPECT_EQ(diff::taylor_eq(D("\\x.(\\y.y) x"), D("\\x.x"), b), Verdict::Equal) << k;
  }
  EXPECT_EQ(diff::taylor_eq(D("x y"), D("x y")), Verdict::Equal);
  EXPECT_EQ(diff::taylor_eq(D("x"), D("y")), Verdict::NotEqual);
  // Both sides lose summands to the degree bound, and not the same ones.
  EXPECT_EQ(diff::taylor_eq(D("(\\x.x x) y"), D("y y")), Verdict::Unknown);
  EXPECT_EQ(diff::taylor_eq(D("(\\x.x) (0)"), D("0")), Verdict::Equal);
  EXPECT_EQ(diff::taylor_eq(D("x (0)"), D("y (0)")), Verdict::NotEqual);
  EXPECT_TRUE(diff::taylor(D("x y"), {2, 400}).truncated);
  EXPECT_FALSE(diff::taylor(D("x (0)"), {2, 400}).truncated);
}

TEST(Properties, StepsPreserveWellFormedness) {
  gen::Rng rng(31);
  gen::Shape sh;
  for (int i = 0; i < 400; ++i) {
    sh.size = 2 + gen::pick(rng, 10);
    auto s = gen::diff_sum(rng, sh);
    for (auto st : {Strategy::LeftmostOutermost, Strategy::LeftmostInnermost, Strategy::Head}) {
      auto t = diff::step(s, st);
      if (!t) continue;
      std::string why;
      EXPECT_TRUE(diff::well_formed(*t, &why)) << why;
    }
    sh.size = 2 + gen::pick(rng, 8);
    auto m = gen::res_sum(rng, sh);
    if (auto r = res::step(m)) {
      std::string why;
      EXPECT_TRUE(res::well_formed(*r, &why)) << why;
    }
  }
}

TEST(Properties, StrategiesAgreeOnNormalForms) {
  gen::Rng rng(32);
  gen::Shape sh;
  int compared = 0;
  for (int i = 0; i < 300; ++i) {
    sh.size = 2 + gen::pick(rng, 9);
    auto s = gen::diff_sum(rng, sh);
    auto a = diff::normalize(s, 300, false, Strategy::LeftmostOutermost);
    auto b = diff::normalize(s, 300, false, Strategy::LeftmostInnermost);
    if (a.exhausted || b.exhausted) continue;
    EXPECT_EQ(a.term, b.term) << print(s);
    ++compared;
    sh.size = 2 + gen::pick(rng, 8);
    auto m = gen::res_sum(rng, sh);
    auto c = res::normalize(m, 300, false, Strategy::LeftmostOutermost);
    auto d = res::normalize(m, 300, false, Strategy::LeftmostInnermost);
    if (!c.exhausted && !d.exhausted) { EXPECT_EQ(c.term, d.term) << print(m); }
  }
  EXPECT_GT(compared, 200);
}

TEST(Properties, EtaNormalFormsHaveNoEtaRedex) {
  gen::Rng rng(33);
  gen::Shape sh;
  for (int i = 0; i < 300; ++i) {
    sh.size = 2 + gen::pick(rng, 9);
    auto n = diff::normalize(gen::diff_sum(rng, sh), 300, true);
    if (!n.exhausted) { EXPECT_FALSE(has_eta_redex(n.term)) << print(n.term); }
  }
}

TEST(Properties, TaylorIsMonotone) {
  gen::Rng rng(34);
  gen::Shape sh;
  for (int i = 0; i < 200; ++i) {
    sh.size = 2 + gen::pick(rng, 7);
    auto s = gen::diff_sum(rng, sh);
    diff::TaylorBudget lo{1 + gen::pick(rng, 2), 40};
    diff::TaylorBudget hi{lo.degree + 1, 60};
    auto a = diff::taylor(s, lo).term;
    auto b = diff::taylor(s, hi).term;
    for (auto& [t, n] : a) EXPECT_EQ(b.count(t), 1u) << print(s);
  }
}

TEST(Properties, TaylorNormalFormsHaveNoRedex) {
  gen::Rng rng(35);
  gen::Shape sh;
  for (int i = 0; i < 200; ++i) {
    sh.size = 2 + gen::pick(rng, 6);
    auto t = diff::taylor(gen::diff_sum(rng, sh), {2, 80}).term;
    auto n = diff::taylor_nf(t, 2000);
    if (!n.exhausted) { EXPECT_FALSE(diff::has_redex(n.term)) << print(t); }
  }
}
