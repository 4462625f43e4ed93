#include "difflam/taylor.hpp"

#include "difflam/subst.hpp"

namespace difflam::diff {
namespace {

struct Expander {
  const TaylorBudget& b;
  bool clipped = false;
  bool truncated = false;

  Sum capped(const Sum& s) {
    SumBuilder<Term> out;
    for (auto& [t, n] : s) {
      if (t->size() > b.size_cap) {
        clipped = true;
        continue;
      }
      out.add(t, 1);
    }
    return out.build();
  }

  Sum term(const Term& t) {
    switch (t->kind()) {
      case Kind::Bound:
      case Kind::Free:
        return single(t);
      case Kind::Abs: {
        SumBuilder<Term> out;
        for (auto& [u, n] : term(t->head())) out.add(abs_raw(t->sym(), u), 1);
        return capped(out.build());
      }
      case Kind::Lin: {
        std::vector<Sum> args;
        for (auto& a : t->args()) args.push_back(term(a));
        return capped(mk_dapp_multi(term(t->head()), args).idempotent());
      }
      case Kind::App: {
        Sum arg = sum(t->arg());
        Sum acc = term(t->head());
        SumBuilder<Term> out;
        for (std::size_t k = 0;; ++k) {
          out.add(mk_app(acc, Sum()), 1);
          if (acc.empty()) break;
          if (k == b.degree) {
            truncated = !arg.empty();
            break;
          }
          acc = capped(mk_dapp(acc, arg).idempotent());
        }
        return capped(out.build().idempotent());
      }
    }
    return single(t);
  }

  Sum sum(const Sum& s) {
    SumBuilder<Term> out;
    for (auto& [t, n] : s) out.add(term(t), 1);
    return out.build().idempotent();
  }
};

struct OutOfFuel {};

struct NF {
  std::size_t fuel;
  std::size_t steps = 0;

  void tick() {
    if (steps >= fuel) throw OutOfFuel{};
    ++steps;
  }

  Sum sum(const Sum& s) {
    SumBuilder<Term> out;
    for (auto& [t, n] : s) out.add(term(t), n);
    return out.build();
  }

  Sum term(const Term& t) {
    switch (t->kind()) {
      case Kind::Bound:
      case Kind::Free:
        return single(t);
      case Kind::Abs: {
        Sym y = fresh_sym();
        return mk_abs(y, term(open(t->head(), y)), t->sym());
      }
      case Kind::Lin: {
        Sum head = term(t->head());
        std::vector<Sum> args;
        for (auto& a : t->args()) args.push_back(term(a));
        SumBuilder<Term> out;
        for (auto& [h, n] : head) {
          if (h->kind() != Kind::Abs) {
            out.add(mk_dapp_multi(single(h), args), n);
            continue;
          }
          // D^n(\x.s).(t1..tn) becomes \x. d^n s/dx..dx.(t1..tn)
          tick();
          Sym x = fresh_sym();
          Sum body = single(open(h->head(), x));
          for (auto& a : args) body = dsubst(body, x, a);
          out.add(sum(mk_abs(x, body, h->sym())), n);
        }
        return out.build();
      }
      case Kind::App: {
        Sum head = term(t->head());
        Sum arg = sum(t->arg());
        SumBuilder<Term> out;
        for (auto& [h, n] : head) {
          if (h->kind() != Kind::Abs) {
            out.add(app(h, arg), n);
            continue;
          }
          tick();
          out.add(sum(instantiate(h->head(), arg)), n);
        }
        return out.build();
      }
    }
    return single(t);
  }
};

}  // namespace

TaylorResult taylor(const Sum& s, const TaylorBudget& b) {
  Expander e{b};
  Sum out = e.sum(s);
  return {out, e.clipped, e.truncated};
}

Normalized<Sum> taylor_nf(const Sum& s, std::size_t fuel) {
  NF nf{fuel};
  try {
    Sum out = nf.sum(s);
    return {out, false, nf.steps};
  } catch (const OutOfFuel&) {
    return {s, true, nf.steps};
  }
}

Verdict taylor_eq(const Sum& a, const Sum& b, const TaylorBudget& budget, std::size_t fuel) {
  auto ta = taylor(a, budget);
  auto tb = taylor(b, budget);
  auto na = taylor_nf(ta.term, fuel);
  auto nb = taylor_nf(tb.term, fuel);
  if (na.exhausted || nb.exhausted) return Verdict::Unknown;
  if (na.term.idempotent() == nb.term.idempotent()) return Verdict::Equal;
  return ta.clipped || tb.clipped || ta.truncated || tb.truncated ? Verdict::Unknown : Verdict::NotEqual;
}

}  // namespace difflam::diff
