#include "difflam/res_term.hpp"

#include <algorithm>
#include <functional>

namespace difflam::res {
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
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into = std::move(out);
}

template <class F>
Bag map_bag(const Bag& b, F&& f) {
  SumBuilder<Resource> out;
  for (auto& [r, n] : b) out.add(Resource{f(r.term), r.banged}, n);
  return out.build();
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
                 map_bag(t->bag(), [&](const Term& u) { return open_at(u, depth, x); }));
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
                 map_bag(t->bag(), [&](const Term& u) { return close_at(u, depth, x); }));
  }
  return t;
}

bool wf_term(const Term& t, std::string* why);

bool wf_bag(const Bag& b, std::string* why) {
  for (std::size_t i = 0; i < b.distinct(); ++i) {
    if (b[i].second == 0 || (i > 0 && order(b[i - 1].first, b[i].first) >= 0)) {
      if (why) *why = "bag not canonical";
      return false;
    }
    if (!wf_term(b[i].first.term, why)) return false;
  }
  return true;
}

bool wf_term(const Term& t, std::string* why) {
  switch (t->kind()) {
    case Kind::Bound:
    case Kind::Free:
      return true;
    case Kind::Abs:
      return wf_term(t->head(), why);
    case Kind::App:
      return wf_term(t->head(), why) && wf_bag(t->bag(), why);
  }
  return true;
}

}  // namespace

void Node::finish() {
  std::size_t h = std::hash<int>()(static_cast<int>(kind_) + 17);
  switch (kind_) {
    case Kind::Bound:
      loose_ = index_ + 1;
      h = mix(h, index_);
      break;
    case Kind::Free:
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
      for (auto& [r, n] : bag_) {
        size_ += n * (r.term->size_ + (r.banged ? 1 : 0));
        loose_ = std::max(loose_, r.term->loose_);
        merge_fv(fv_, r.term->fv_);
        has_redex_ = has_redex_ || r.term->has_redex_;
        h = mix(mix(mix(h, r.term->hash_), r.banged), n);
      }
      h = mix(h, bag_.distinct());
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

Term Node::make_app(Term f, Bag b) {
  auto n = std::make_shared<Node>();
  n->kind_ = Kind::App;
  n->head_ = std::move(f);
  n->bag_ = std::move(b);
  n->finish();
  return n;
}

int order(const Term& a, const Term& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind() != b->kind()) return static_cast<int>(a->kind()) < static_cast<int>(b->kind()) ? -1 : 1;
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
      return order(a->bag(), b->bag());
    }
  }
  return 0;
}

int order(const Resource& a, const Resource& b) {
  if (a.banged != b.banged) return a.banged ? 1 : -1;
  return order(a.term, b.term);
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
Term app(Term f, Bag b) { return Node::make_app(std::move(f), std::move(b)); }

Sum single(Term t) { return Sum(std::move(t), 1); }
Bag empty_bag() { return Bag(); }

Sum mk_abs(Sym x, const Sum& s) { return mk_abs(x, s, x); }

Sum mk_abs(Sym x, const Sum& s, Sym hint) {
  SumBuilder<Term> b;
  for (auto& [t, n] : s) b.add(abs_raw(hint, close_at(t, 0, x)), n);
  return b.build();
}

Sum mk_app(const Sum& s, const BagSum& p) {
  SumBuilder<Term> b;
  for (auto& [f, n] : s)
    for (auto& [bag, m] : p) b.add(app(f, bag), n * m);
  return b.build();
}

BagSum bag_linear(const Sum& m) {
  SumBuilder<Bag> b;
  for (auto& [t, n] : m) b.add(Bag(Resource{t, false}, 1), n);
  return b.build();
}

Bag bag_banged(const Sum& m) {
  SumBuilder<Resource> b;
  for (auto& [t, n] : m) b.add(Resource{t, true}, n);
  return b.build();
}

BagSum bag_union(const BagSum& p, const BagSum& q) {
  SumBuilder<Bag> b;
  for (auto& [x, n] : p)
    for (auto& [y, m] : q) b.add(x + y, n * m);
  return b.build();
}

BagSum bag_union(const BagSum& p, const Bag& q) { return bag_union(p, BagSum(q, 1)); }

BagSum mk_bag_cons(const Sum& r, bool banged, const BagSum& p) {
  if (banged) return bag_union(p, bag_banged(r));
  return bag_union(bag_linear(r), p);
}

Term open(const Term& body, Sym x) { return open_at(body, 0, x); }
Term close(const Term& t, Sym x) { return close_at(t, 0, x); }

bool occurs_free(Sym x, const Term& t) {
  return std::binary_search(t->free_vars().begin(), t->free_vars().end(), x);
}

bool occurs_free(Sym x, const Sum& s) {
  for (auto& [t, n] : s)
    if (occurs_free(x, t)) return true;
  return false;
}

std::vector<Sym> free_vars(const Sum& s) {
  std::vector<Sym> out;
  for (auto& [t, n] : s) merge_fv(out, t->free_vars());
  return out;
}

std::vector<Sym> free_vars(const Bag& b) {
  std::vector<Sym> out;
  for (auto& [r, n] : b) merge_fv(out, r.term->free_vars());
  return out;
}

std::vector<std::string> free_var_names(const Sum& s) {
  std::vector<std::string> out;
  for (Sym x : free_vars(s)) out.push_back(sym_name(x));
  std::sort(out.begin(), out.end());
  return out;
}

bool alpha_eq(const Sum& a, const Sum& b) { return a == b; }

Sum canonicalize(const Sum& s, bool idempotent) {
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

bool well_formed(const Sum& s, std::string* why) {
  for (std::size_t i = 0; i < s.distinct(); ++i) {
    if (s[i].second == 0 || (i > 0 && order(s[i - 1].first, s[i].first) >= 0)) {
      if (why) *why = "sum not canonical";
      return false;
    }
    if (s[i].first->loose() != 0) {
      if (why) *why = "dangling bound index";
      return false;
    }
    if (!wf_term(s[i].first, why)) return false;
  }
  return true;
}

}  // namespace difflam::res
