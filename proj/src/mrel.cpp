#include "difflam/mrel.hpp"

#include <algorithm>
#include <map>

namespace difflam::mrel {

struct Elem::Rep {
  Kind kind;
  std::uint32_t id;  // atom id or side
  Elem inner;
  Multiset ms;
};

Elem Elem::atom(std::uint32_t i) {
  Elem e;
  e.p_ = std::make_shared<Rep>(Rep{Kind::Atom, i, Elem(), {}});
  return e;
}

Elem Elem::tag(int side, Elem x) {
  if (side != 1 && side != 2) throw std::invalid_argument("tag side must be 1 or 2");
  Elem e;
  e.p_ = std::make_shared<Rep>(Rep{Kind::Tag, static_cast<std::uint32_t>(side), std::move(x), {}});
  return e;
}

Elem Elem::arrow(Multiset m, Elem x) {
  std::sort(m.begin(), m.end());
  Elem e;
  e.p_ = std::make_shared<Rep>(Rep{Kind::Arrow, 0, std::move(x), std::move(m)});
  return e;
}

Elem::Kind Elem::kind() const { return p_->kind; }
std::uint32_t Elem::atom_id() const { return p_->id; }
int Elem::side() const { return static_cast<int>(p_->id); }
const Elem& Elem::inner() const { return p_->inner; }
const Multiset& Elem::ms() const { return p_->ms; }

int order(const Elem& a, const Elem& b) {
  if (a.p_ == b.p_) return 0;
  if (a.p_->kind != b.p_->kind) return a.p_->kind < b.p_->kind ? -1 : 1;
  switch (a.p_->kind) {
    case Elem::Kind::Atom:
      return a.p_->id == b.p_->id ? 0 : (a.p_->id < b.p_->id ? -1 : 1);
    case Elem::Kind::Tag:
      if (a.p_->id != b.p_->id) return a.p_->id < b.p_->id ? -1 : 1;
      return order(a.p_->inner, b.p_->inner);
    case Elem::Kind::Arrow:
      if (int c = order(a.p_->ms, b.p_->ms)) return c;
      return order(a.p_->inner, b.p_->inner);
  }
  return 0;
}

int order(const Multiset& a, const Multiset& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = order(a[i], b[i])) return c;
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

Multiset ms(std::vector<Elem> items) {
  std::sort(items.begin(), items.end());
  return items;
}

Multiset ms_union(const Multiset& a, const Multiset& b) {
  Multiset out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Multiset tag_all(int side, const Multiset& m) {
  Multiset out;
  out.reserve(m.size());
  for (auto& e : m) out.push_back(Elem::tag(side, e));
  return out;  // tagging is monotone, so still sorted
}

std::pair<Multiset, Multiset> split(const Multiset& m) {
  std::pair<Multiset, Multiset> out;
  for (auto& e : m) {
    if (e.kind() != Elem::Kind::Tag) throw TypeMismatch("split: untagged element " + to_string(e));
    (e.side() == 1 ? out.first : out.second).push_back(e.inner());
  }
  return out;
}

Multiset join(const Multiset& a, const Multiset& b) { return ms_union(tag_all(1, a), tag_all(2, b)); }

std::string to_string(const Elem& e) {
  switch (e.kind()) {
    case Elem::Kind::Atom:
      return "a" + std::to_string(e.atom_id());
    case Elem::Kind::Tag:
      return std::to_string(e.side()) + "." + to_string(e.inner());
    case Elem::Kind::Arrow:
      return "<" + to_string(e.ms()) + "," + to_string(e.inner()) + ">";
  }
  return "?";
}

std::string to_string(const Multiset& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += to_string(m[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------- universes

U atoms(std::uint32_t n) {
  auto u = std::make_shared<Universe>();
  u->kind = Universe::Kind::Atoms;
  u->n = n;
  return u;
}

U with(U a, U b) {
  auto u = std::make_shared<Universe>();
  u->kind = Universe::Kind::With;
  u->a = std::move(a);
  u->b = std::move(b);
  return u;
}

U arrow(U a, U b) {
  auto u = std::make_shared<Universe>();
  u->kind = Universe::Kind::Arrow;
  u->a = std::move(a);
  u->b = std::move(b);
  return u;
}

U terminal() {
  static const U t = std::make_shared<Universe>();
  return t;
}

U reflexive() {
  static const U r = [] {
    auto u = std::make_shared<Universe>();
    u->kind = Universe::Kind::Reflexive;
    return u;
  }();
  return r;
}

bool same(const U& a, const U& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Universe::Kind::Atoms:
      return a->n == b->n;
    case Universe::Kind::With:
    case Universe::Kind::Arrow:
      return same(a->a, b->a) && same(a->b, b->b);
    default:
      return true;
  }
}

bool finite(const U& u) {
  switch (u->kind) {
    case Universe::Kind::Atoms:
    case Universe::Kind::Terminal:
      return true;
    case Universe::Kind::With:
      return finite(u->a) && finite(u->b);
    default:
      return false;
  }
}

bool contains(const U& u, const Elem& e) {
  switch (u->kind) {
    case Universe::Kind::Atoms:
      return e.kind() == Elem::Kind::Atom && e.atom_id() < u->n;
    case Universe::Kind::Terminal:
      return false;
    case Universe::Kind::Reflexive:
      return e.kind() == Elem::Kind::Atom;
    case Universe::Kind::With:
      return e.kind() == Elem::Kind::Tag && contains(e.side() == 1 ? u->a : u->b, e.inner());
    case Universe::Kind::Arrow:
      if (e.kind() != Elem::Kind::Arrow || !contains(u->b, e.inner())) return false;
      return std::all_of(e.ms().begin(), e.ms().end(), [&](const Elem& x) { return contains(u->a, x); });
  }
  return false;
}

std::vector<Elem> elements(const U& u) {
  std::vector<Elem> out;
  switch (u->kind) {
    case Universe::Kind::Atoms:
      for (std::uint32_t i = 0; i < u->n; ++i) out.push_back(Elem::atom(i));
      return out;
    case Universe::Kind::Terminal:
      return out;
    case Universe::Kind::With:
      for (auto& e : elements(u->a)) out.push_back(Elem::tag(1, e));
      for (auto& e : elements(u->b)) out.push_back(Elem::tag(2, e));
      return out;
    default:
      throw TypeMismatch("elements: infinite universe " + to_string(u));
  }
}

std::string to_string(const U& u) {
  switch (u->kind) {
    case Universe::Kind::Atoms:
      return "A" + std::to_string(u->n);
    case Universe::Kind::Terminal:
      return "1";
    case Universe::Kind::Reflexive:
      return "D";
    case Universe::Kind::With:
      return "(" + to_string(u->a) + "&" + to_string(u->b) + ")";
    case Universe::Kind::Arrow:
      return "[" + to_string(u->a) + "=>" + to_string(u->b) + "]";
  }
  return "?";
}

// ---------------------------------------------------------------- relations

namespace {

bool pair_less(const Pair& a, const Pair& b) {
  if (int c = order(a.first, b.first)) return c < 0;
  return order(a.second, b.second) < 0;
}

void normalize_pairs(std::vector<Pair>& ps) {
  std::sort(ps.begin(), ps.end(), pair_less);
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
}

void expect_same(const U& a, const U& b, const char* what) {
  if (!same(a, b)) throw TypeMismatch(std::string(what) + ": " + to_string(a) + " vs " + to_string(b));
}

const U& component(const U& u, int side, const char* what) {
  if (u->kind != Universe::Kind::With) throw TypeMismatch(std::string(what) + ": not a product " + to_string(u));
  return side == 1 ? u->a : u->b;
}

}  // namespace

Rel::Rel(U src, U tgt, std::vector<Pair> pairs) : src_(std::move(src)), tgt_(std::move(tgt)), pairs_(std::move(pairs)) {
  normalize_pairs(pairs_);
}

bool Rel::contains(const Pair& p) const { return std::binary_search(pairs_.begin(), pairs_.end(), p, pair_less); }

std::string to_string(const Rel& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.pairs().size(); ++i) {
    if (i) s += ", ";
    s += "(" + to_string(r.pairs()[i].first) + "," + to_string(r.pairs()[i].second) + ")";
  }
  return s + "} : " + to_string(r.src()) + " -> " + to_string(r.tgt());
}

Rel identity(const U& u) { return identity(u, elements(u)); }

Rel identity(const U& u, const std::vector<Elem>& sample) {
  std::vector<Pair> ps;
  for (auto& e : sample) ps.emplace_back(Multiset{e}, e);
  return Rel(u, u, std::move(ps));
}

Rel zero(const U& src, const U& tgt) { return Rel(src, tgt); }

Rel unite(const Rel& f, const Rel& g) {
  expect_same(f.src(), g.src(), "unite source");
  expect_same(f.tgt(), g.tgt(), "unite target");
  std::vector<Pair> ps = f.pairs();
  ps.insert(ps.end(), g.pairs().begin(), g.pairs().end());
  return Rel(f.src(), f.tgt(), std::move(ps));
}

Rel compose(const Rel& t, const Rel& s) {
  expect_same(t.src(), s.tgt(), "compose");
  std::map<Elem, std::vector<const Multiset*>> by_target;
  for (auto& [m, b] : s.pairs()) by_target[b].push_back(&m);
  std::vector<Pair> out;
  for (auto& [m, c] : t.pairs()) {
    // one s-pair per occurrence; equal occurrences pick nondecreasing indices
    std::vector<const std::vector<const Multiset*>*> opts;
    bool ok = true;
    for (auto& b : m) {
      auto it = by_target.find(b);
      if (it == by_target.end()) {
        ok = false;
        break;
      }
      opts.push_back(&it->second);
    }
    if (!ok) continue;
    std::vector<std::size_t> pick(m.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, const Multiset& acc) -> void {
      if (i == m.size()) {
        out.emplace_back(acc, c);
        return;
      }
      std::size_t from = (i > 0 && m[i] == m[i - 1]) ? pick[i - 1] : 0;
      for (std::size_t j = from; j < opts[i]->size(); ++j) {
        pick[i] = j;
        self(self, i + 1, ms_union(acc, *(*opts[i])[j]));
      }
    };
    rec(rec, 0, Multiset{});
  }
  return Rel(s.src(), t.tgt(), std::move(out));
}

Rel proj(const U& a, const U& b, int side) {
  U prod = with(a, b);
  std::vector<Pair> ps;
  for (auto& e : elements(side == 1 ? a : b)) ps.emplace_back(Multiset{Elem::tag(side, e)}, e);
  return Rel(prod, side == 1 ? a : b, std::move(ps));
}

Rel after_proj(const Rel& f, int side, const U& other) {
  std::vector<Pair> ps;
  for (auto& [m, b] : f.pairs()) ps.emplace_back(tag_all(side, m), b);
  return Rel(side == 1 ? with(f.src(), other) : with(other, f.src()), f.tgt(), std::move(ps));
}

Rel pairing(const Rel& f, const Rel& g) {
  expect_same(f.src(), g.src(), "pairing");
  std::vector<Pair> ps;
  for (auto& [m, a] : f.pairs()) ps.emplace_back(m, Elem::tag(1, a));
  for (auto& [m, b] : g.pairs()) ps.emplace_back(m, Elem::tag(2, b));
  return Rel(f.src(), with(f.tgt(), g.tgt()), std::move(ps));
}

Rel product_map(const Rel& f, const Rel& g) {
  std::vector<Pair> ps;
  for (auto& [m, a] : f.pairs()) ps.emplace_back(tag_all(1, m), Elem::tag(1, a));
  for (auto& [m, b] : g.pairs()) ps.emplace_back(tag_all(2, m), Elem::tag(2, b));
  return Rel(with(f.src(), g.src()), with(f.tgt(), g.tgt()), std::move(ps));
}

Rel curry(const Rel& s) {
  const U& c = component(s.src(), 1, "curry");
  const U& a = component(s.src(), 2, "curry");
  std::vector<Pair> ps;
  for (auto& [m, b] : s.pairs()) {
    auto [p, q] = split(m);
    ps.emplace_back(p, Elem::arrow(q, b));
  }
  return Rel(c, arrow(a, s.tgt()), std::move(ps));
}

Rel uncurry(const Rel& f) {
  if (f.tgt()->kind != Universe::Kind::Arrow) throw TypeMismatch("uncurry: target " + to_string(f.tgt()));
  std::vector<Pair> ps;
  for (auto& [p, e] : f.pairs()) ps.emplace_back(join(p, e.ms()), e.inner());
  return Rel(with(f.src(), f.tgt()->a), f.tgt()->b, std::move(ps));
}

Rel eval_with(const Rel& f, const Rel& h) {
  if (f.tgt()->kind != Universe::Kind::Arrow) throw TypeMismatch("eval_with: target " + to_string(f.tgt()));
  expect_same(f.src(), h.src(), "eval_with source");
  expect_same(f.tgt()->a, h.tgt(), "eval_with argument");
  // ev o <f,h> = curry^-1(f) o <Id, h>, by the closed formula
  std::map<Elem, std::vector<const Multiset*>> by_target;
  for (auto& [m, a] : h.pairs()) by_target[a].push_back(&m);
  std::vector<Pair> out;
  for (auto& [m0, e] : f.pairs()) {
    const Multiset& args = e.ms();
    std::vector<const std::vector<const Multiset*>*> opts;
    bool ok = true;
    for (auto& a : args) {
      auto it = by_target.find(a);
      if (it == by_target.end()) {
        ok = false;
        break;
      }
      opts.push_back(&it->second);
    }
    if (!ok) continue;
    std::vector<std::size_t> pick(args.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, const Multiset& acc) -> void {
      if (i == args.size()) {
        out.emplace_back(acc, e.inner());
        return;
      }
      std::size_t from = (i > 0 && args[i] == args[i - 1]) ? pick[i - 1] : 0;
      for (std::size_t j = from; j < opts[i]->size(); ++j) {
        pick[i] = j;
        self(self, i + 1, ms_union(acc, *(*opts[i])[j]));
      }
    };
    rec(rec, 0, m0);
  }
  return Rel(f.src(), f.tgt()->b, std::move(out));
}

Rel differential(const Rel& f) {
  std::vector<Pair> ps;
  for (auto& [m, b] : f.pairs()) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i > 0 && m[i] == m[i - 1]) continue;
      Multiset rest = m;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      ps.emplace_back(join({m[i]}, rest), b);
    }
  }
  return Rel(with(f.src(), f.src()), f.tgt(), std::move(ps));
}

Rel star(const Rel& f, const Rel& g) {
  const U& c = component(f.src(), 1, "star");
  const U& a = component(f.src(), 2, "star");
  expect_same(c, g.src(), "star context");
  expect_same(a, g.tgt(), "star argument");
  std::map<Elem, std::vector<const Multiset*>> by_target;
  for (auto& [m1, alpha] : g.pairs()) by_target[alpha].push_back(&m1);
  std::vector<Pair> ps;
  for (auto& [mm, b] : f.pairs()) {
    auto [m2, ma] = split(mm);
    for (std::size_t i = 0; i < ma.size(); ++i) {
      if (i > 0 && ma[i] == ma[i - 1]) continue;
      auto it = by_target.find(ma[i]);
      if (it == by_target.end()) continue;
      Multiset rest = ma;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      for (auto* m1 : it->second) ps.emplace_back(join(ms_union(*m1, m2), rest), b);
    }
  }
  return Rel(f.src(), f.tgt(), std::move(ps));
}

bool is_linear(const Rel& f) {
  return std::all_of(f.pairs().begin(), f.pairs().end(), [](const Pair& p) { return p.first.size() == 1; });
}

Rel sw(const U& a, const U& b, const U& c) {
  // <<pi1 o pi1, pi2>, pi2 o pi1>
  U src = with(with(a, b), c);
  U tgt = with(with(a, c), b);
  std::vector<Pair> ps;
  for (auto& x : elements(a)) ps.emplace_back(Multiset{Elem::tag(1, Elem::tag(1, x))}, Elem::tag(1, Elem::tag(1, x)));
  for (auto& y : elements(b)) ps.emplace_back(Multiset{Elem::tag(1, Elem::tag(2, y))}, Elem::tag(2, y));
  for (auto& z : elements(c)) ps.emplace_back(Multiset{Elem::tag(2, z)}, Elem::tag(1, Elem::tag(2, z)));
  return Rel(src, tgt, std::move(ps));
}

// ---------------------------------------------------------------- generators

namespace {

std::uint32_t uniform(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

}  // namespace

U random_atoms(std::mt19937_64& rng, const GenParams& p) { return atoms(uniform(rng, p.atoms_min, p.atoms_max)); }

Elem random_elem(const U& u, std::mt19937_64& rng, const GenParams& p) {
  switch (u->kind) {
    case Universe::Kind::Atoms:
      return Elem::atom(uniform(rng, 0, u->n - 1));
    case Universe::Kind::Reflexive:
      return Elem::atom(0);
    case Universe::Kind::With: {
      bool left_ok = u->a->kind != Universe::Kind::Terminal;
      bool right_ok = u->b->kind != Universe::Kind::Terminal;
      int side = left_ok && right_ok ? static_cast<int>(uniform(rng, 1, 2)) : (left_ok ? 1 : 2);
      return Elem::tag(side, random_elem(side == 1 ? u->a : u->b, rng, p));
    }
    case Universe::Kind::Arrow: {
      Multiset m = random_ms(u->a, rng, p);
      return Elem::arrow(std::move(m), random_elem(u->b, rng, p));
    }
    case Universe::Kind::Terminal:
      break;
  }
  throw TypeMismatch("random_elem: empty universe");
}

Multiset random_ms(const U& u, std::mt19937_64& rng, const GenParams& p) {
  Multiset m;
  if (u->kind == Universe::Kind::Terminal) return m;
  std::uint32_t k = uniform(rng, 0, p.ms_max);
  for (std::uint32_t i = 0; i < k; ++i) m.push_back(random_elem(u, rng, p));
  return ms(std::move(m));
}

Rel random_rel(const U& src, const U& tgt, std::mt19937_64& rng, const GenParams& p) {
  std::vector<Pair> ps;
  if (tgt->kind == Universe::Kind::Terminal) return Rel(src, tgt);
  std::uint32_t k = uniform(rng, 0, p.pairs_max);
  for (std::uint32_t i = 0; i < k; ++i) ps.emplace_back(random_ms(src, rng, p), random_elem(tgt, rng, p));
  return Rel(src, tgt, std::move(ps));
}

Rel random_linear_rel(const U& src, const U& tgt, std::mt19937_64& rng, const GenParams& p) {
  std::vector<Pair> ps;
  if (tgt->kind == Universe::Kind::Terminal || src->kind == Universe::Kind::Terminal) return Rel(src, tgt);
  std::uint32_t k = uniform(rng, 0, p.pairs_max);
  for (std::uint32_t i = 0; i < k; ++i) ps.emplace_back(Multiset{random_elem(src, rng, p)}, random_elem(tgt, rng, p));
  return Rel(src, tgt, std::move(ps));
}

}  // namespace difflam::mrel
