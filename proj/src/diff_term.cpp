#include "difflam/diff_term.hpp"

#include <algorithm>
#include <functional>

namespace difflam::diff {
namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void merge_fv(std::vector<Sym>& into, const std::vector<Sym>& from) {
  if (from.empty()) return;
  if (into.empty()) {
    into = from;
    return;
  }
  std::vector<Sym> out;
  out.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

int kind_rank(Kind k) { return static_cast<int>(k); }

template <class F>
Sum map_sum(const Sum& s, F&& f) {
  SumBuilder<Term> b;
  for (auto& [t, n] : s) b.add(f(t), n);
  return b.build();
}

Term open_at(const Term& t, std::uint32_t depth, Sym x) {
  if (t->loose() <= depth) return t;
  switch (t->kind()) {
    case Kind::Bound:
      if (t->index() == depth) return var(x);
      return bound(t->index() - 1);
    case Kind::Free:
      return t;
    case Kind::Abs:
      return abs_raw(t->sym(), open_at(t->head(), depth + 1, x));
    case Kind::App:
      return app(open_at(t->head(), depth, x),
                 map_sum(t->arg(), [&](const Term& u) { return open_at(u, depth, x); }));
    case Kind::Lin: {
      std::vector<Term> args;
      for (auto& a : t->args()) args.push_back(open_at(a, depth, x));
      return lin(open_at(t->head(), depth, x), std::move(args));
    }
  }
  return t;
}

Term close_at(const Term& t, std::uint32_t depth, Sym x) {
  if (t->loose() <= depth && !occurs_free(x, t)) return t;
  switch (t->kind()) {
    case Kind::Bound:
      return t->index() >= depth ? bound(t->index() + 1) : t;
    case Kind::Free:
      return t->sym() == x ? bound(depth) : t;
    case Kind::Abs:
      return abs_raw(t->sym(), close_at(t->head(), depth + 1, x));
    case Kind::App:
      return app(close_at(t->head(), depth, x),
                 map_sum(t->arg(), [&](const Term& u) { return close_at(u, depth, x); }));
    case Kind::Lin: {
      std::vector<Term> args;
      for (auto& a : t->args()) args.push_back(close_at(a, depth, x));
      return lin(close_at(t->head(), depth, x), std::move(args));
    }
  }
  return t;
}

bool pure_term(const Term& t) {
  switch (t->kind()) {
    case Kind::Bound:
    case Kind::Free:
      return true;
    case Kind::Abs:
      return pure_term(t->head());
    case Kind::App:
      return pure_term(t->head()) && t->arg().distinct() == 1 && t->arg()[0].second == 1 &&
             pure_term(t->arg()[0].first);
    case Kind::Lin:
      return false;
  }
  return false;
}

bool wf_sum(const Sum& s, std::string* why);

bool wf_term(const Term& t, std::string* why) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  switch (t->kind()) {
    case Kind::Bound:
    case Kind::Free:
      return true;
    case Kind::Abs:
      return wf_term(t->head(), why);
    case Kind::App:
      return wf_term(t->head(), why) && wf_sum(t->arg(), why);
    case Kind::Lin:
      if (t->args().empty()) return fail("linear application without arguments");
      if (t->head()->kind() == Kind::Lin) return fail("nested linear application not flattened");
      for (std::size_t i = 1; i < t->args().size(); ++i)
        if (order(t->args()[i - 1], t->args()[i]) > 0) return fail("linear arguments not sorted");
      if (!wf_term(t->head(), why)) return false;
      for (auto& a : t->args())
        if (!wf_term(a, why)) return false;
      return true;
  }
  return true;
}

bool wf_sum(const Sum& s, std::string* why) {
  for (std::size_t i = 0; i < s.distinct(); ++i) {
    if (s[i].second == 0) {
      if (why) *why = "zero multiplicity";
      return false;
    }
    if (i > 0 && order(s[i - 1].first, s[i].first) >= 0) {
      if (why) *why = "sum not sorted or not merged";
      return false;
    }
    if (!wf_term(s[i].first, why)) return false;
  }
  return true;
}

}  // namespace

void Node::finish() {
  std::size_t h = std::hash<int>()(kind_rank(kind_));
  switch (kind_) {
    case Kind::Bound:
      size_ = 1;
      loose_ = index_ + 1;
      h = mix(h, index_);
      break;
    case Kind::Free:
      size_ = 1;
      fv_ = {sym_};
      h = mix(h, sym_);
      break;
    case Kind::Abs:
      size_ = 1 + head_->size_;
      loose_ = head_->loose_ > 0 ? head_->loose_ - 1 : 0;
      fv_ = head_->fv_;
      has_redex_ = head_->has_redex_;
      h = mix(h, head_->hash_);
      break;
    case Kind::App:
      size_ = 1 + head_->size_;
      loose_ = head_->loose_;
      fv_ = head_->fv_;
      has_redex_ = head_->kind_ == Kind::Abs || head_->has_redex_;
      h = mix(h, head_->hash_);
      for (auto& [u, n] : arg_) {
        size_ += n * u->size_;
        loose_ = std::max(loose_, u->loose_);
        merge_fv(fv_, u->fv_);
        has_redex_ = has_redex_ || u->has_redex_;
        h = mix(mix(h, u->hash_), n);
      }
      h = mix(h, arg_.distinct());
      break;
    case Kind::Lin:
      size_ = 1 + head_->size_;
      loose_ = head_->loose_;
      fv_ = head_->fv_;
      has_redex_ = head_->kind_ == Kind::Abs || head_->has_redex_;
      h = mix(h, head_->hash_);
      for (auto& a : args_) {
        size_ += a->size_;
        loose_ = std::max(loose_, a->loose_);
        merge_fv(fv_, a->fv_);
        has_redex_ = has_redex_ || a->has_redex_;
        h = mix(h, a->hash_);
      }
      break;
  }
  hash_ = h;
}

Term Node::make_bound(std::uint32_t i) {
  auto n = std::make_shared<Node>();
  n->kind_ = Kind::Bound;
  n->index_ = i;
  n->finish();
  return n;
}

Term Node::make_free(Sym x) {
  auto n = std::make_shared<Node>();
  n->kind_ = Kind::Free;
  n->sym_ = x;
  n->finish();
  return n;
}

Term Node::make_abs(Sym hint, Term body) {
  auto n = std::make_shared<Node>();
  n->kind_ = Kind::Abs;
  n->sym_ = hint;
  n->head_ = std::move(body);
  n->finish();
  return n;
}

Term Node::make_app(Term f, Sum u) {
  auto n = std::make_shared<Node>();
  n->kind_ = Kind::App;
  n->head_ = std::move(f);
  n->arg_ = std::move(u);
  n->finish();
  return n;
}

Term Node::make_lin(Term f, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind_ = Kind::Lin;
  n->head_ = std::move(f);
  n->args_ = std::move(args);
  n->finish();
  return n;
}

int order(const Term& a, const Term& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind()) return kind_rank(a->kind()) < kind_rank(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case Kind::Bound:
      if (a->index() == b->index()) return 0;
      return a->index() < b->index() ? -1 : 1;
    case Kind::Free:
      return sym_order(a->sym(), b->sym());
    case Kind::Abs:
      return order(a->head(), b->head());
    case Kind::App: {
      int c = order(a->head(), b->head());
      if (c) return c;
      return order(a->arg(), b->arg());
    }
    case Kind::Lin: {
      int c = order(a->head(), b->head());
      if (c) return c;
      if (a->args().size() != b->args().size()) return a->args().size() < b->args().size() ? -1 : 1;
      for (std::size_t i = 0; i < a->args().size(); ++i) {
        c = order(a->args()[i], b->args()[i]);
        if (c) return c;
      }
      return 0;
    }
  }
  return 0;
}

bool same(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (a->hash() != b->hash() || a->size() != b->size()) return false;
  return order(a, b) == 0;
}

Term bound(std::uint32_t i) { return Node::make_bound(i); }
Term var(Sym x) { return Node::make_free(x); }
Term var(const std::string& name) { return Node::make_free(intern(name)); }
Term abs_raw(Sym hint, Term body) { return Node::make_abs(hint, std::move(body)); }
Term app(Term f, Sum u) { return Node::make_app(std::move(f), std::move(u)); }

Term lin(Term f, std::vector<Term> args) {
  if (f->kind() == Kind::Lin) {
    args.insert(args.end(), f->args().begin(), f->args().end());
    f = f->head();
  }
  std::sort(args.begin(), args.end(), [](const Term& a, const Term& b) { return order(a, b) < 0; });
  return Node::make_lin(std::move(f), std::move(args));
}

Sum single(Term t) { return Sum(std::move(t), 1); }

Sum mk_abs(Sym x, const Sum& s) { return mk_abs(x, s, x); }

Sum mk_abs(Sym x, const Sum& s, Sym hint) {
  return map_sum(s, [&](const Term& t) { return abs_raw(hint, close_at(t, 0, x)); });
}

Sum mk_app(const Sum& s, const Sum& t) {
  return map_sum(s, [&](const Term& f) { return app(f, t); });
}

Sum mk_dapp(const Sum& s, const Sum& t) {
  SumBuilder<Term> b;
  for (auto& [f, n] : s)
    for (auto& [u, m] : t) b.add(lin(f, {u}), n * m);
  return b.build();
}

Sum mk_dapp_multi(const Sum& s, const std::vector<Sum>& ts) {
  Sum acc = s;
  for (auto& t : ts) acc = mk_dapp(acc, t);
  return acc;
}

Term open(const Term& body, Sym x) { return open_at(body, 0, x); }
Term close(const Term& t, Sym x) { return close_at(t, 0, x); }
Sum close(const Sum& s, Sym x) {
  return map_sum(s, [&](const Term& t) { return close_at(t, 0, x); });
}

bool occurs_free(Sym x, const Term& t) {
  return std::binary_search(t->free_vars().begin(), t->free_vars().end(), x);
}

bool occurs_free(Sym x, const Sum& s) {
  for (auto& [t, n] : s)
    if (occurs_free(x, t)) return true;
  return false;
}

std::vector<Sym> free_vars(const Term& t) { return t->free_vars(); }

std::vector<Sym> free_vars(const Sum& s) {
  std::vector<Sym> out;
  for (auto& [t, n] : s) merge_fv(out, t->free_vars());
  return out;
}

std::vector<std::string> free_var_names(const Sum& s) {
  std::vector<std::string> out;
  for (Sym x : free_vars(s)) out.push_back(sym_name(x));
  std::sort(out.begin(), out.end());
  return out;
}

bool alpha_eq(const Term& a, const Term& b) { return same(a, b); }
bool alpha_eq(const Sum& a, const Sum& b) { return a == b; }

Sum canonicalize(const Sum& s, bool idempotent) {
  // Constructors keep sums canonical; rebuilding guards against hand-made
  // item vectors.
  Sum c = Sum::from_items(s.items());
  return idempotent ? c.idempotent() : c;
}

std::size_t size(const Sum& s) {
  std::size_t n = 0;
  for (auto& [t, k] : s) n += k * t->size();
  return n;
}

bool has_redex(const Sum& s) {
  for (auto& [t, n] : s)
    if (t->has_redex()) return true;
  return false;
}

bool is_pure(const Sum& s) {
  return s.distinct() == 1 && s[0].second == 1 && pure_term(s[0].first);
}

bool well_formed(const Sum& s, std::string* why) {
  if (!wf_sum(s, why)) return false;
  for (auto& [t, n] : s)
    if (t->loose() != 0) {
      if (why) *why = "dangling bound index";
      return false;
    }
  return true;
}

}  // namespace difflam::diff
