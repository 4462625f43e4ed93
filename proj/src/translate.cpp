#include "difflam/translate.hpp"

namespace difflam {

diff::Sum to_diff(const res::Term& m) {
  switch (m->kind()) {
    case res::Kind::Bound:
      return diff::single(diff::bound(m->index()));
    case res::Kind::Free:
      return diff::single(diff::var(m->sym()));
    case res::Kind::Abs: {
      Sym x = fresh_sym();
      return diff::mk_abs(x, to_diff(res::open(m->head(), x)), m->sym());
    }
    case res::Kind::App: {
      std::vector<diff::Sum> linear;
      diff::Sum banged;
      for (auto& [r, n] : m->bag()) {
        diff::Sum t = to_diff(r.term);
        if (r.banged)
          banged += t.scaled(n);
        else
          for (std::uint64_t i = 0; i < n; ++i) linear.push_back(t);
      }
      return diff::mk_app(diff::mk_dapp_multi(to_diff(m->head()), linear), banged);
    }
  }
  return {};
}

diff::Sum to_diff(const res::Sum& m) {
  diff::Sum out;
  for (auto& [t, n] : m) out += to_diff(t).scaled(n);
  return out;
}

res::Sum to_res(const diff::Term& s) {
  switch (s->kind()) {
    case diff::Kind::Bound:
      return res::single(res::bound(s->index()));
    case diff::Kind::Free:
      return res::single(res::var(s->sym()));
    case diff::Kind::Abs: {
      Sym x = fresh_sym();
      return res::mk_abs(x, to_res(diff::open(s->head(), x)), s->sym());
    }
    case diff::Kind::App:
      return res::mk_app(to_res(s->head()), res::BagSum(res::bag_banged(to_res(s->arg()))));
    case diff::Kind::Lin: {
      // Abstractions are opened on the way down, so s and t1..tk have no
      // loose indices to shift under the new binder.
      static const Sym hint = intern("y");
      Sym y = fresh_sym();
      res::BagSum bag(res::bag_banged(res::single(res::var(y))));
      for (auto& t : s->args()) bag = res::mk_bag_cons(to_res(t), false, bag);
      return res::mk_abs(y, res::mk_app(to_res(s->head()), bag), hint);
    }
  }
  return {};
}

res::Sum to_res(const diff::Sum& s) {
  res::Sum out;
  for (auto& [t, n] : s) out += to_res(t).scaled(n);
  return out;
}

Verdict roundtrip_dr(const diff::Sum& s, std::size_t fuel) {
  diff::Sum back = to_diff(to_res(s));
  if (diff::is_pure(s) && !diff::alpha_eq(back, s)) return Verdict::NotEqual;
  return diff::theory_eq(back, s, fuel, true);
}

Verdict roundtrip_rd(const res::Sum& m, std::size_t fuel) {
  return res::theory_eq(to_res(to_diff(m)), m, fuel);
}

}  // namespace difflam
