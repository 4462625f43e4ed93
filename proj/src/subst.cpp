#include "difflam/subst.hpp"

#include <algorithm>

namespace difflam {
namespace diff {
namespace {

Sum abs_each(Sym hint, const Sum& body) {
  SumBuilder<Term> b;
  for (auto& [t, n] : body) b.add(abs_raw(hint, t), n);
  return b.build();
}

std::vector<Sum> singles(const std::vector<Term>& ts) {
  std::vector<Sum> out;
  out.reserve(ts.size());
  for (auto& t : ts) out.push_back(single(t));
  return out;
}

}  // namespace

Sum subst(const Term& s, Sym x, const Sum& t) {
  if (!occurs_free(x, s)) return single(s);
  switch (s->kind()) {
    case Kind::Bound:
      return single(s);
    case Kind::Free:
      return t;
    case Kind::Abs:
      return abs_each(s->sym(), subst(s->head(), x, t));
    case Kind::App:
      return mk_app(subst(s->head(), x, t), subst(s->arg(), x, t));
    case Kind::Lin: {
      std::vector<Sum> args;
      for (auto& a : s->args()) args.push_back(subst(a, x, t));
      return mk_dapp_multi(subst(s->head(), x, t), args);
    }
  }
  return single(s);
}

Sum subst(const Sum& s, Sym x, const Sum& t) {
  SumBuilder<Term> b;
  for (auto& [u, n] : s) b.add(subst(u, x, t), n);
  return b.build();
}

Sum dsubst(const Term& s, Sym x, const Sum& t) {
  if (!occurs_free(x, s)) return {};
  switch (s->kind()) {
    case Kind::Bound:
      return {};
    case Kind::Free:
      return t;
    case Kind::Abs:
      return abs_each(s->sym(), dsubst(s->head(), x, t));
    case Kind::App: {
      // d(sU)/dx.T = (ds/dx.T)U + (D s.(dU/dx.T))U
      const Sum& u = s->arg();
      Sum out = mk_app(dsubst(s->head(), x, t), u);
      out += mk_app(mk_dapp(single(s->head()), dsubst(u, x, t)), u);
      return out;
    }
    case Kind::Lin: {
      // d(D^n s.(u1..un))/dx.T = D^n(ds/dx.T).(u) + sum_i D^n s.(u1..dui/dx.T..un)
      std::vector<Sum> args = singles(s->args());
      Sum out = mk_dapp_multi(dsubst(s->head(), x, t), args);
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (!occurs_free(x, s->args()[i])) continue;
        std::vector<Sum> a = args;
        a[i] = dsubst(s->args()[i], x, t);
        out += mk_dapp_multi(single(s->head()), a);
      }
      return out;
    }
  }
  return {};
}

Sum dsubst(const Sum& s, Sym x, const Sum& t) {
  SumBuilder<Term> b;
  for (auto& [u, n] : s) b.add(dsubst(u, x, t), n);
  return b.build();
}

Sum dsubst_multi(const Sum& s, const std::vector<Sym>& xs, const std::vector<Sum>& ts) {
  if (xs.size() != ts.size()) throw PreconditionViolation("dsubst_multi: variable and argument counts differ");
  for (Sym x : xs)
    for (auto& t : ts)
      if (occurs_free(x, t))
        throw PreconditionViolation("dsubst_multi: " + sym_name(x) + " occurs free in an argument");
  Sum acc = s;
  for (std::size_t i = 0; i < xs.size(); ++i) acc = dsubst(acc, xs[i], ts[i]);
  return acc;
}

Sum instantiate(const Term& body, const Sum& t) {
  Sym y = fresh_sym();
  return subst(open(body, y), y, t);
}

}  // namespace diff

namespace res {
namespace {

Sum abs_each(Sym hint, const Sum& body) {
  SumBuilder<Term> b;
  for (auto& [t, n] : body) b.add(abs_raw(hint, t), n);
  return b.build();
}

Bag bag_minus_one(const Bag& p, const Resource& r) {
  std::vector<Bag::Item> items;
  for (auto& it : p) {
    if (order(it.first, r) == 0) {
      if (it.second > 1) items.emplace_back(it.first, it.second - 1);
    } else {
      items.push_back(it);
    }
  }
  return Bag::from_items(std::move(items));
}

}  // namespace

Sum lsubst(const Term& a, Sym x, const Sum& n) {
  if (!occurs_free(x, a)) return {};
  switch (a->kind()) {
    case Kind::Bound:
      return {};
    case Kind::Free:
      return n;
    case Kind::Abs:
      return abs_each(a->sym(), lsubst(a->head(), x, n));
    case Kind::App: {
      // (M P)<N/x> = M<N/x> P + M (P<N/x>)
      Sum out = mk_app(lsubst(a->head(), x, n), BagSum(a->bag(), 1));
      out += mk_app(single(a->head()), lsubst(a->bag(), x, n));
      return out;
    }
  }
  return {};
}

Sum lsubst(const Sum& a, Sym x, const Sum& n) {
  SumBuilder<Term> b;
  for (auto& [t, k] : a) b.add(lsubst(t, x, n), k);
  return b.build();
}

BagSum lsubst(const Bag& p, Sym x, const Sum& n) {
  // (P + R)<N/x> = P<N/x> + R  +  P + R<N/x>, one addend per occurrence;
  // [M]<N/x> = [M<N/x>] and [M!]<N/x> = [M<N/x>, M!].
  SumBuilder<Bag> b;
  for (auto& [r, c] : p) {
    if (!occurs_free(x, r.term)) continue;
    Sum m = lsubst(r.term, x, n);
    Bag rest = r.banged ? p : bag_minus_one(p, r);
    for (auto& [mt, k] : m) b.add(rest + Bag(Resource{mt, false}, 1), c * k);
  }
  return b.build();
}

Sum rsubst(const Term& a, Sym x, const Sum& n) {
  if (!occurs_free(x, a)) return single(a);
  switch (a->kind()) {
    case Kind::Bound:
      return single(a);
    case Kind::Free:
      return n;
    case Kind::Abs:
      return abs_each(a->sym(), rsubst(a->head(), x, n));
    case Kind::App:
      return mk_app(rsubst(a->head(), x, n), rsubst(a->bag(), x, n));
  }
  return single(a);
}

Sum rsubst(const Sum& a, Sym x, const Sum& n) {
  SumBuilder<Term> b;
  for (auto& [t, k] : a) b.add(rsubst(t, x, n), k);
  return b.build();
}

BagSum rsubst(const Bag& p, Sym x, const Sum& n) {
  BagSum acc(empty_bag(), 1);
  for (auto& [r, c] : p) {
    Sum m = rsubst(r.term, x, n);
    for (std::uint64_t k = 0; k < c; ++k) acc = mk_bag_cons(m, r.banged, acc);
  }
  return acc;
}

}  // namespace res
}  // namespace difflam
