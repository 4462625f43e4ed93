#include "difflam/rewrite.hpp"

#include "difflam/subst.hpp"

namespace difflam {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

namespace diff {
namespace {

std::vector<Sum> singles(const std::vector<Term>& ts, std::size_t from = 0) {
  std::vector<Sum> out;
  for (std::size_t i = from; i < ts.size(); ++i) out.push_back(single(ts[i]));
  return out;
}

Sum contract(const Term& t) {
  const Term& lam = t->head();
  if (t->kind() == Kind::App) return instantiate(lam->head(), t->arg());
  // D^n(\x.s).(t1..tn) = D^(n-1)(\x. ds/dx.t1).(t2..tn)
  Sym y = fresh_sym();
  Sum body = dsubst(open(lam->head(), y), y, single(t->args()[0]));
  return mk_dapp_multi(mk_abs(y, body, lam->sym()), singles(t->args(), 1));
}

std::optional<Sum> step_term(const Term& t, Strategy st) {
  if (!t->has_redex()) return std::nullopt;
  if (st != Strategy::LeftmostInnermost && t->is_redex()) return contract(t);
  switch (t->kind()) {
    case Kind::Bound:
    case Kind::Free:
      break;
    case Kind::Abs: {
      Sym y = fresh_sym();
      if (auto r = step_term(open(t->head(), y), st)) return mk_abs(y, *r, t->sym());
      break;
    }
    case Kind::App: {
      if (auto r = step_term(t->head(), st)) return mk_app(*r, t->arg());
      if (st == Strategy::Head) break;
      for (auto& [u, c] : t->arg()) {
        if (auto r = step_term(u, st)) return single(app(t->head(), t->arg().without(u) + r->scaled(c)));
      }
      break;
    }
    case Kind::Lin: {
      std::vector<Sum> args = singles(t->args());
      if (auto r = step_term(t->head(), st)) return mk_dapp_multi(*r, args);
      if (st == Strategy::Head) break;
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (auto r = step_term(t->args()[i], st)) {
          args[i] = *r;
          return mk_dapp_multi(single(t->head()), args);
        }
      }
      break;
    }
  }
  if (st == Strategy::LeftmostInnermost && t->is_redex()) return contract(t);
  return std::nullopt;
}

Sum eta_term(const Term& t) {
  switch (t->kind()) {
    case Kind::Bound:
    case Kind::Free:
      return single(t);
    case Kind::Abs: {
      Sym y = fresh_sym();
      Sum body = eta_term(open(t->head(), y));
      SumBuilder<Term> b;
      for (auto& [u, n] : body) {
        const Sum& a = u->kind() == Kind::App ? u->arg() : Sum();
        bool redex = u->kind() == Kind::App && a.distinct() == 1 && a[0].second == 1 &&
                     a[0].first->kind() == Kind::Free && a[0].first->sym() == y && !occurs_free(y, u->head());
        b.add(redex ? u->head() : abs_raw(t->sym(), close(u, y)), n);
      }
      return b.build();
    }
    case Kind::App: {
      SumBuilder<Term> arg;
      for (auto& [u, n] : t->arg()) arg.add(eta_term(u), n);
      return mk_app(eta_term(t->head()), arg.build());
    }
    case Kind::Lin: {
      std::vector<Sum> args;
      for (auto& a : t->args()) args.push_back(eta_term(a));
      return mk_dapp_multi(eta_term(t->head()), args);
    }
  }
  return single(t);
}

}  // namespace

std::optional<Sum> step(const Sum& s, Strategy st) {
  for (auto& [t, c] : s) {
    if (!t->has_redex()) continue;
    if (auto r = step_term(t, st)) return s.without(t) + r->scaled(c);
  }
  return std::nullopt;
}

Sum eta_contract(const Sum& s) {
  SumBuilder<Term> b;
  for (auto& [t, n] : s) b.add(eta_term(t), n);
  return b.build();
}

Normalized<Sum> normalize(const Sum& s, std::size_t fuel, bool eta, Strategy st) {
  Normalized<Sum> out{s, false, 0};
  while (true) {
    while (true) {
      if (size(out.term) > kSizeGuard) {
        out.exhausted = true;
        return out;
      }
      if (!has_redex(out.term)) break;
      if (out.steps >= fuel) {
        out.exhausted = true;
        return out;
      }
      auto r = step(out.term, st);
      if (!r) break;
      out.term = std::move(*r);
      ++out.steps;
    }
    if (!eta) return out;
    Sum e = eta_contract(out.term);
    if (e == out.term) return out;
    out.term = std::move(e);
  }
}

Verdict theory_eq(const Sum& a, const Sum& b, std::size_t fuel, bool eta, bool idempotent) {
  auto na = normalize(a, fuel, eta);
  auto nb = normalize(b, fuel, eta);
  if (na.exhausted || nb.exhausted) return Verdict::Unknown;
  return canonicalize(na.term, idempotent) == canonicalize(nb.term, idempotent) ? Verdict::Equal
                                                                                 : Verdict::NotEqual;
}

}  // namespace diff

namespace res {
namespace {

Sum contract(const Term& t) {
  // (\x.M)[L1..Lk, N1!..Nn!] = M<L1/x>...<Lk/x>{N1+...+Nn/x}
  Sym y = fresh_sym();
  Sum acc = single(open(t->head()->head(), y));
  SumBuilder<Term> banged;
  for (auto& [r, c] : t->bag()) {
    if (r.banged) {
      banged.add(r.term, c);
      continue;
    }
    for (std::uint64_t k = 0; k < c; ++k) acc = lsubst(acc, y, single(r.term));
  }
  return rsubst(acc, y, banged.build());
}

std::optional<Sum> step_term(const Term& t, Strategy st) {
  if (!t->has_redex()) return std::nullopt;
  if (st != Strategy::LeftmostInnermost && t->is_redex()) return contract(t);
  switch (t->kind()) {
    case Kind::Bound:
    case Kind::Free:
      break;
    case Kind::Abs: {
      Sym y = fresh_sym();
      if (auto r = step_term(open(t->head(), y), st)) return mk_abs(y, *r, t->sym());
      break;
    }
    case Kind::App: {
      if (auto r = step_term(t->head(), st)) return mk_app(*r, BagSum(t->bag(), 1));
      if (st == Strategy::Head) break;
      for (auto& [res, c] : t->bag()) {
        auto r = step_term(res.term, st);
        if (!r) continue;
        std::vector<Bag::Item> rest;
        for (auto& it : t->bag())
          if (order(it.first, res) != 0) rest.push_back(it);
        BagSum acc(Bag::from_items(std::move(rest)), 1);
        for (std::uint64_t k = 0; k < c; ++k) acc = mk_bag_cons(*r, res.banged, acc);
        return mk_app(single(t->head()), acc);
      }
      break;
    }
  }
  if (st == Strategy::LeftmostInnermost && t->is_redex()) return contract(t);
  return std::nullopt;
}

BagSum eta_bag(const Bag& p);

Sum eta_term(const Term& t) {
  switch (t->kind()) {
    case Kind::Bound:
    case Kind::Free:
      return single(t);
    case Kind::Abs: {
      Sym y = fresh_sym();
      Sum body = eta_term(open(t->head(), y));
      SumBuilder<Term> b;
      for (auto& [u, n] : body) {
        bool redex = false;
        if (u->kind() == Kind::App && u->bag().distinct() == 1 && u->bag()[0].second == 1) {
          const Resource& r = u->bag()[0].first;
          redex = r.banged && r.term->kind() == Kind::Free && r.term->sym() == y && !occurs_free(y, u->head());
        }
        b.add(redex ? u->head() : abs_raw(t->sym(), close(u, y)), n);
      }
      return b.build();
    }
    case Kind::App:
      return mk_app(eta_term(t->head()), eta_bag(t->bag()));
  }
  return single(t);
}

BagSum eta_bag(const Bag& p) {
  BagSum acc(empty_bag(), 1);
  for (auto& [r, c] : p) {
    Sum m = eta_term(r.term);
    for (std::uint64_t k = 0; k < c; ++k) acc = mk_bag_cons(m, r.banged, acc);
  }
  return acc;
}

}  // namespace

std::optional<Sum> step(const Sum& s, Strategy st) {
  for (auto& [t, c] : s) {
    if (!t->has_redex()) continue;
    if (auto r = step_term(t, st)) return s.without(t) + r->scaled(c);
  }
  return std::nullopt;
}

Sum eta_contract(const Sum& s) {
  SumBuilder<Term> b;
  for (auto& [t, n] : s) b.add(eta_term(t), n);
  return b.build();
}

Normalized<Sum> normalize(const Sum& s, std::size_t fuel, bool eta, Strategy st) {
  Normalized<Sum> out{s, false, 0};
  while (true) {
    while (true) {
      if (size(out.term) > kSizeGuard) {
        out.exhausted = true;
        return out;
      }
      if (!has_redex(out.term)) break;
      if (out.steps >= fuel) {
        out.exhausted = true;
        return out;
      }
      auto r = step(out.term, st);
      if (!r) break;
      out.term = std::move(*r);
      ++out.steps;
    }
    if (!eta) return out;
    Sum e = eta_contract(out.term);
    if (e == out.term) return out;
    out.term = std::move(e);
  }
}

Verdict theory_eq(const Sum& a, const Sum& b, std::size_t fuel, bool eta, bool idempotent) {
  auto na = normalize(a, fuel, eta);
  auto nb = normalize(b, fuel, eta);
  if (na.exhausted || nb.exhausted) return Verdict::Unknown;
  return canonicalize(na.term, idempotent) == canonicalize(nb.term, idempotent) ? Verdict::Equal
                                                                                 : Verdict::NotEqual;
}

}  // namespace res
}  // namespace difflam
