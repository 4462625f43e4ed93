#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "difflam/dmodel.hpp"
#include "difflam/subst.hpp"
#include "difflam/syntax.hpp"
#include "gen.hpp"
#include "helpers.hpp"

using namespace difflam;
using namespace difflam::dmodel;
using th::D;

namespace {

const Sym x = intern("x");
const Sym y = intern("y");
const Sym z = intern("z");

DElem star() { return DElem::star(); }

std::set<std::string> keys(const Interpretation& in) {
  std::set<std::string> out;
  for (auto& e : in.entries) out.insert(to_string(e));
  return out;
}

// Entries over (x) or (x, y) as a relation out of D or D&D.
mrel::Rel as_rel(const Interpretation& in, std::size_t max_size) {
  auto d = mrel::reflexive();
  std::size_t n = in.entries.empty() ? 1 : in.entries[0].ctx.size();
  std::vector<mrel::Pair> pairs;
  for (auto& e : in.entries) {
    if (e.size() > max_size) continue;
    std::vector<mrel::Elem> m;
    for (std::size_t p = 0; p < e.ctx.size(); ++p)
      for (auto el : e.ctx[p]) m.push_back(n == 1 ? encode(el) : mrel::Elem::tag(static_cast<int>(p + 1), encode(el)));
    pairs.push_back({mrel::ms(std::move(m)), encode(e.val)});
  }
  return mrel::Rel(n == 1 ? d : mrel::with(d, d), d, std::move(pairs));
}

mrel::Rel restrict(const mrel::Rel& r, std::size_t max_size) {
  std::vector<mrel::Pair> keep;
  for (auto& [m, v] : r.pairs()) {
    std::size_t n = size(DElem::from_id(v.atom_id()));
    for (auto& e : m) n += size(DElem::from_id((e.kind() == mrel::Elem::Kind::Tag ? e.inner() : e).atom_id()));
    if (n <= max_size) keep.push_back({m, v});
  }
  return mrel::Rel(r.src(), r.tgt(), std::move(keep));
}

}  // namespace

TEST(Elements, ConsAndUncons) {
  EXPECT_TRUE(cons({}, star()).is_star());
  auto e = cons({star()}, star());
  EXPECT_EQ(size(e), 3u);
  EXPECT_EQ(sequence(e), (std::vector<DMultiset>{{star()}}));
  EXPECT_EQ(to_string(e), "[[[]]]");
  EXPECT_EQ(to_string(star()), "[]");
  auto [m, s] = uncons(star());
  EXPECT_TRUE(m.empty());
  EXPECT_TRUE(s.is_star());
  // []::e is not * and has one more position.
  auto f = cons({}, e);
  EXPECT_EQ(size(f), 4u);
  EXPECT_EQ(to_string(f), "[[],[[]]]");
}

TEST(Elements, RoundTrip) {
  auto all = enumerate_delems(9);
  gen::Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    auto e = all[gen::pick(rng, all.size())];
    auto [m, s] = uncons(e);
    EXPECT_EQ(cons(m, s), e);
    EXPECT_EQ(from_sequence(sequence(e)), e);
  }
}

TEST(Elements, Enumeration) {
  auto all = enumerate_delems(9);
  ASSERT_FALSE(all.empty());
  EXPECT_TRUE(all[0].is_star());
  // Counts per size from the generating function of the size recurrence.
  const std::size_t expect[] = {0, 1, 0, 1, 2, 5, 12, 30, 77, 200};
  std::vector<std::size_t> got(10, 0);
  for (auto e : all) ++got[size(e)];
  for (std::size_t k = 1; k <= 9; ++k) EXPECT_EQ(got[k], expect[k]) << k;
  std::set<std::uint32_t> ids;
  for (auto e : all) ids.insert(e.id());
  EXPECT_EQ(ids.size(), all.size());
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(order(all[i - 1], all[i]), 0);
  EXPECT_EQ(enumerate_delems(8).size(), 128u);
}

TEST(Elements, SecondLevelHandCount) {
  // Sequences of multisets over {*} with at most two members, size <= 6:
  // *, four with one member, six with two.
  std::size_t n = 0;
  for (auto e : enumerate_delems(6)) {
    bool level2 = true;
    std::size_t members = 0;
    for (auto& m : sequence(e))
      for (auto el : m) {
        level2 = level2 && el.is_star();
        ++members;
      }
    if (level2 && members <= 2) ++n;
  }
  EXPECT_EQ(n, 11u);
}

TEST(Morphisms, LambdaAndApplication) {
  auto all = enumerate_delems(7);
  std::vector<std::pair<DMultiset, DElem>> sample;
  for (auto e : all) sample.push_back(uncons(e));
  auto lam = lambda_rel(sample);
  auto app = app_rel(all);
  EXPECT_TRUE(mrel::is_linear(lam));
  EXPECT_TRUE(mrel::is_linear(app));
  EXPECT_EQ(lam.size(), all.size());
  std::vector<mrel::Elem> enc;
  for (auto e : all) enc.push_back(encode(e));
  auto d = mrel::reflexive();
  EXPECT_EQ(mrel::compose(lam, app), mrel::identity(d, enc));
  std::vector<mrel::Elem> arrows;
  for (auto& p : app.pairs()) arrows.push_back(p.second);
  EXPECT_EQ(mrel::compose(app, lam), mrel::identity(mrel::arrow(d, d), arrows));
}

TEST(Interpret, Variable) {
  auto in = interpret(D("x"), {x}, {2, 2});
  ASSERT_EQ(in.entries.size(), 1u);
  EXPECT_EQ(to_string(in.entries[0]), "{\"ctx\":[[[]]],\"val\":[]}");
  // ([s], s) for every s of size <= 4: *, [*]::*, and the two of size 4.
  EXPECT_EQ(interpret(D("x"), {x}, {8, 8}).entries.size(), 4u);
  EXPECT_EQ(interpret(D("x"), {x, y}, {8, 8}).entries[0].ctx.size(), 2u);
}

TEST(Interpret, Omega) {
  auto in = interpret(D("Omega"), {}, {8, 16});
  EXPECT_TRUE(in.entries.empty());
  EXPECT_FALSE(in.exact);
  EXPECT_FALSE(in.clipped);
}

TEST(Interpret, Identity) {
  const std::size_t b = 9;
  auto in = interpret(D("\\x.x"), {}, {b, b});
  std::set<std::string> expect;
  for (auto s : enumerate_delems(b)) {
    auto v = cons({s}, s);
    if (size(v) <= b) expect.insert(to_string(Entry{{}, v}));
  }
  EXPECT_EQ(keys(in), expect);
  EXPECT_TRUE(expect.count(to_string(Entry{{}, cons({star()}, star())})));
  EXPECT_TRUE(in.exact);
}

TEST(Interpret, Errors) {
  EXPECT_THROW(interpret(D("x y"), {x}), InadequateVariables);
  EXPECT_THROW(interpret(D("x"), {x, x}), InadequateVariables);
  auto in = interpret(D("Omega"), {}, {6, 6}, true, 30);
  EXPECT_TRUE(in.exhausted);
  EXPECT_TRUE(interpret(D("x"), {x}, {8, 4}).clipped);
}

TEST(InterpEq, Examples) {
  EXPECT_EQ(interp_eq(D("(\\x.x) y"), D("y"), {y}, {6, 6}), Verdict::Equal);
  EXPECT_EQ(interp_eq(D("(\\x.x) y"), D("y"), {y}, {8, 16}), Verdict::Equal);
  EXPECT_EQ(interp_eq(D("\\x.s x"), D("s"), {intern("s")}, {8, 8}), Verdict::Equal);
  EXPECT_EQ(interp_eq(D("x"), D("y"), {x, y}, {6, 6}), Verdict::NotEqual);
  EXPECT_EQ(interp_eq(D("x + x"), D("x"), {x}, {6, 6}), Verdict::Equal);
  EXPECT_EQ(interp_eq(D("x + y"), D("x"), {x, y}, {6, 6}), Verdict::NotEqual);
  EXPECT_EQ(interp_eq(D("0"), D("Omega"), {}, {6, 6}), Verdict::Equal);
}

TEST(Interpret, Monotone) {
  for (const char* t : {"x", "x y", "\\z.z x", "D(x; y)", "x (y + x)", "(\\z.z z) x", "D(x; y, y) (0)"}) {
    auto s = D(t);
    for (std::size_t b = 3; b <= 6; ++b) {
      auto small = keys(interpret(s, {x, y}, {b, b}));
      auto wider = keys(interpret(s, {x, y}, {b, b + 2}));
      auto bigger = keys(interpret(s, {x, y}, {b + 1, b + 2}));
      for (auto& k : small) {
        EXPECT_TRUE(wider.count(k)) << t << " " << k;
        EXPECT_TRUE(bigger.count(k)) << t << " " << k;
      }
    }
  }
}

TEST(Interpret, Weakening) {
  for (const char* t : {"x", "x x", "\\y.x y", "D(x; x)", "x (0)"}) {
    auto s = D(t);
    auto a = interpret(s, {x}, {7, 7});
    auto b = interpret(s, {x, z}, {7, 7});
    std::set<std::string> expect;
    for (auto e : a.entries) {
      e.ctx.push_back({});
      expect.insert(to_string(e));
    }
    EXPECT_EQ(keys(b), expect) << t;
  }
}

TEST(Interpret, StabilizesOnNormalForms) {
  for (const char* t : {"x", "x x", "\\y.y x", "x (\\y.y)", "D(x; x) (y)", "\\z.D(z; x) z", "x (x + y)"}) {
    auto s = D(t);
    EXPECT_EQ(keys(interpret(s, {x, y}, {6, 6})), keys(interpret(s, {x, y}, {6, 12}))) << t;
  }
}

TEST(Interpret, ClassicSubstitutionTheorem) {
  // [s{T/y}]_x = [s]_(x,y) o <Id, [T]_x>
  const std::size_t b = 6, wide = 12;
  std::vector<mrel::Elem> sample;
  for (auto e : enumerate_delems(wide)) sample.push_back(encode(e));
  auto d = mrel::reflexive();
  struct Case {
    const char* s;
    const char* t;
  } cases[] = {{"y x", "x"}, {"x y", "\\z.z"}, {"y y", "x"}, {"\\z.y z", "x x"}, {"x (y + x)", "x"}};
  for (auto& c : cases) {
    auto s = D(c.s), t = D(c.t);
    auto sf = as_rel(interpret(s, {x, y}, {wide, wide}), wide);
    auto tf = as_rel(interpret(t, {x}, {wide, wide}), wide);
    auto composed = mrel::compose(sf, mrel::pairing(mrel::identity(d, sample), tf));
    auto direct = as_rel(interpret(diff::subst(s, y, t), {x}, {b, b}), b);
    EXPECT_EQ(restrict(composed, b), direct) << c.s << " {" << c.t << "/y}";
  }
}

TEST(Interpret, DifferentialSubstitutionTheorem) {
  // [dS/dy.T]_(x,y) = [S]_(x,y) * [T]_x
  const std::size_t b = 6, wide = 12;
  struct Case {
    const char* s;
    const char* t;
  } cases[] = {{"x y", "x"}, {"y y", "x"}, {"\\z.y z", "x"}, {"D(y; x)", "x x"}, {"x (y + x)", "x"}};
  for (auto& c : cases) {
    auto s = D(c.s), t = D(c.t);
    auto sf = as_rel(interpret(s, {x, y}, {wide, wide}), wide);
    auto tf = as_rel(interpret(t, {x}, {wide, wide}), wide);
    auto starred = mrel::star(sf, tf);
    auto direct = as_rel(interpret(diff::dsubst(s, y, t), {x, y}, {b, b}), b);
    EXPECT_EQ(restrict(starred, b), direct) << "d(" << c.s << ")/dy." << c.t;
  }
}
