#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "difflam/subst.hpp"
#include "difflam/syntax.hpp"
#include "gen.hpp"
#include "helpers.hpp"

using namespace difflam;
using th::D;
using th::R;

namespace {
const Sym x = intern("x");
const Sym y = intern("y");
}  // namespace

TEST(DSubst, WorkedExamples) {
  EXPECT_TRUE(diff::dsubst(D("Delta"), x, D("I")).empty());
  EXPECT_EQ(diff::dsubst(D("x"), x, D("I")), D("I"));
  auto once = diff::dsubst(D("x x"), x, D("I"));
  EXPECT_EQ(once, D("I x + D(x; I) x"));
  EXPECT_EQ(diff::dsubst(once, x, D("Delta")), D("D(I; Delta) x + D(Delta; I) x + D(x; I, Delta) x"));
}

TEST(DSubst, Multi) {
  EXPECT_EQ(diff::dsubst_multi(D("x x"), {}, {}), D("x x"));
  EXPECT_EQ(diff::dsubst_multi(D("x x"), {x, x}, {D("I"), D("Delta")}),
            D("D(I; Delta) x + D(Delta; I) x + D(x; I, Delta) x"));
  EXPECT_THROW(diff::dsubst_multi(D("x x"), {x}, {D("x")}), PreconditionViolation);
}

TEST(DSubst, ApplicationClauseHasTwoAddends) {
  // d(sU)/dx.T = (ds/dx.T)U + (D s.(dU/dx.T))U
  EXPECT_EQ(diff::dsubst(D("x (x + z)"), x, D("t")), D("t (x + z) + D(x; t) (x + z)"));
  EXPECT_EQ(diff::dsubst(D("f x"), x, D("t")), D("D(f; t) x"));
  EXPECT_EQ(diff::dsubst(D("D(x; x)"), x, D("t")), D("D(t; x) + D(x; t)"));
  EXPECT_EQ(diff::dsubst(D("\\z.x z"), x, D("z")), D("\\w.z w"));
}

TEST(Subst, WorkedExamples) {
  EXPECT_EQ(diff::subst(D("x"), x, D("t + u")), D("t + u"));
  EXPECT_EQ(diff::subst(D("D(x; x) x"), x, D("I")), D("D(I; I) I"));
  // The binder must not capture the substituted y.
  auto s = diff::subst(D("\\y.x"), x, D("y"));
  EXPECT_TRUE(diff::alpha_eq(s, D("\\w.y")));
  EXPECT_FALSE(diff::alpha_eq(s, D("\\y.y")));
  // Sums in the substituted position split through the linear nodes only.
  EXPECT_EQ(diff::subst(D("D(x; z)"), x, D("a + b")), D("D(a; z) + D(b; z)"));
  EXPECT_EQ(diff::subst(D("z x"), x, D("a + b")), D("z (a + b)"));
}

TEST(ResourceSubst, LinearExamples) {
  EXPECT_EQ(res::lsubst(R("x"), x, R("m")), R("m"));
  EXPECT_TRUE(res::lsubst(R("y"), x, R("m")).empty());
  EXPECT_EQ(res::lsubst(R("x[x]"), x, R("m + n")), R("m[x] + n[x] + x[m] + x[n]"));
  EXPECT_EQ(res::lsubst(R("x[x!]"), x, R("m + n")), R("m[x!] + n[x!] + x[m, x!] + x[n, x!]"));
}

TEST(ResourceSubst, ClassicExamples) {
  EXPECT_EQ(res::rsubst(R("x"), x, R("m")), R("m"));
  EXPECT_EQ(res::rsubst(R("x[x!]"), x, R("m + n")), R("m[m!, n!] + n[m!, n!]"));
  EXPECT_EQ(res::rsubst(R("\\y.y"), x, R("m")), R("\\y.y"));
  EXPECT_TRUE(res::alpha_eq(res::rsubst(R("\\y.x[y]"), x, R("y")), R("\\w.y[w]")));
}

TEST(Properties, SchwarzLemma) {
  gen::Rng rng(21);
  gen::Shape sh;
  sh.names = {"x", "y", "z"};
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    sh.size = 1 + gen::pick(rng, 7);
    auto s = gen::diff_sum(rng, sh);
    auto t = gen::diff_sum(rng, sh);
    gen::Shape su = sh;
    su.names = {"y", "z"};
    su.size = 1 + gen::pick(rng, 5);
    auto u = gen::diff_sum(rng, su);
    auto lhs = diff::dsubst(diff::dsubst(s, x, t), y, u);
    auto rhs = diff::dsubst(diff::dsubst(s, y, u), x, t) + diff::dsubst(s, x, diff::dsubst(t, y, u));
    ASSERT_EQ(lhs, rhs) << print(s) << " | " << print(t) << " | " << print(u);
    if (!diff::occurs_free(y, t)) { EXPECT_EQ(lhs, diff::dsubst(diff::dsubst(s, y, u), x, t)); }
    ++checked;
  }
  EXPECT_EQ(checked, 400);
}

TEST(Properties, AbsentVariableGivesZero) {
  gen::Rng rng(22);
  gen::Shape sh;
  sh.names = {"y", "z"};
  for (int i = 0; i < 300; ++i) {
    sh.size = 1 + gen::pick(rng, 9);
    auto s = gen::diff_sum(rng, sh);
    EXPECT_TRUE(diff::dsubst(s, x, D("t")).empty());
    EXPECT_EQ(diff::subst(s, y, D("y")), s);
  }
}

TEST(Properties, MultiIsPermutationInvariant) {
  gen::Rng rng(23);
  gen::Shape sh;
  sh.names = {"x", "y", "z"};
  gen::Shape st;
  st.names = {"a", "b"};
  std::vector<Sym> vars = {x, y, intern("z")};
  for (int i = 0; i < 300; ++i) {
    sh.size = 2 + gen::pick(rng, 7);
    auto s = gen::diff_sum(rng, sh);
    std::size_t n = 1 + gen::pick(rng, 3);
    std::vector<Sym> xs;
    std::vector<diff::Sum> ts;
    for (std::size_t j = 0; j < n; ++j) {
      xs.push_back(vars[gen::pick(rng, vars.size())]);
      st.size = 1 + gen::pick(rng, 3);
      ts.push_back(gen::diff_sum(rng, st));
    }
    auto ref = diff::dsubst_multi(s, xs, ts);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Sym> xs2;
    std::vector<diff::Sum> ts2;
    for (auto p : perm) {
      xs2.push_back(xs[p]);
      ts2.push_back(ts[p]);
    }
    EXPECT_EQ(diff::dsubst_multi(s, xs2, ts2), ref);
  }
}

TEST(Properties, LinearSubstitutionIsBilinear) {
  gen::Rng rng(24);
  gen::Shape sh;
  for (int i = 0; i < 200; ++i) {
    sh.size = 1 + gen::pick(rng, 7);
    auto a = gen::res_sum(rng, sh);
    auto b = gen::res_sum(rng, sh);
    sh.size = 1 + gen::pick(rng, 3);
    auto n = gen::res_sum(rng, sh);
    auto m = gen::res_sum(rng, sh);
    EXPECT_EQ(res::lsubst(a + b, x, n), res::lsubst(a, x, n) + res::lsubst(b, x, n));
    EXPECT_EQ(res::lsubst(a, x, n + m), res::lsubst(a, x, n) + res::lsubst(a, x, m));
  }
}
