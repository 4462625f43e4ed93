#include "difflam/dmodel.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

namespace difflam::dmodel {
namespace {

using Ids = std::vector<std::uint32_t>;  // multiset of handles, sorted by id

struct Rec {
  Ids head;
  std::uint32_t tail = 0;
  std::uint32_t size = 1;
};

// Interned elements.  Entry 0 is *.
class Table {
 public:
  Table() { recs_.push_back(Rec{}); }

  Rec get(std::uint32_t id) {
    std::shared_lock lock(mu_);
    return recs_[id];
  }
  std::uint32_t size_of(std::uint32_t id) {
    std::shared_lock lock(mu_);
    return recs_[id].size;
  }

  std::uint32_t intern(Ids head, std::uint32_t tail) {
    std::sort(head.begin(), head.end());
    if (head.empty() && tail == 0) return 0;
    {
      std::shared_lock lock(mu_);
      auto it = index_.find({head, tail});
      if (it != index_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto it = index_.find({head, tail});
    if (it != index_.end()) return it->second;
    Rec r;
    r.size = recs_[tail].size + 1;
    for (auto h : head) r.size += recs_[h].size;
    r.head = head;
    r.tail = tail;
    auto id = static_cast<std::uint32_t>(recs_.size());
    recs_.push_back(std::move(r));
    index_.emplace(std::make_pair(std::move(head), tail), id);
    return id;
  }

  // Handles of all elements of size k, in structural order.
  std::vector<std::uint32_t> of_size(std::size_t k);

 private:
  std::shared_mutex mu_;
  std::vector<Rec> recs_;
  std::map<std::pair<Ids, std::uint32_t>, std::uint32_t> index_;

  std::mutex gen_mu_;
  std::vector<std::vector<std::uint32_t>> by_size_{{}, {0}};
  std::vector<std::uint32_t> all_;  // by_size_ concatenated
  std::vector<std::vector<Ids>> by_mass_{{Ids{}}};
};

Table& table() {
  static Table t;
  return t;
}

int order_ids(std::uint32_t a, std::uint32_t b);

// Head multisets compared as structurally sorted lists.
int order_heads(const Ids& a, const Ids& b) {
  auto sa = a, sb = b;
  auto less = [](std::uint32_t x, std::uint32_t y) { return order_ids(x, y) < 0; };
  std::sort(sa.begin(), sa.end(), less);
  std::sort(sb.begin(), sb.end(), less);
  for (std::size_t i = 0; i < sa.size() && i < sb.size(); ++i)
    if (int c = order_ids(sa[i], sb[i])) return c;
  return sa.size() < sb.size() ? -1 : sa.size() > sb.size() ? 1 : 0;
}

int order_ids(std::uint32_t a, std::uint32_t b) {
  if (a == b) return 0;
  Rec ra = table().get(a), rb = table().get(b);
  if (ra.size != rb.size) return ra.size < rb.size ? -1 : 1;
  // Same size and distinct, so neither is *.
  if (int c = order_heads(ra.head, rb.head)) return c;
  return order_ids(ra.tail, rb.tail);
}

std::vector<std::uint32_t> Table::of_size(std::size_t k) {
  std::lock_guard lock(gen_mu_);
  if (all_.empty()) all_.push_back(0);
  while (by_size_.size() <= k) {
    std::size_t n = by_size_.size();
    // Multisets of mass up to n - 2 draw on elements of size < n, all known.
    while (by_mass_.size() + 1 < n) {
      std::size_t j = by_mass_.size();
      std::vector<Ids> out;
      Ids cur;
      auto rec = [&](auto&& self, std::size_t from, std::size_t left) -> void {
        if (left == 0) {
          out.push_back(cur);
          return;
        }
        for (std::size_t i = from; i < all_.size(); ++i) {
          std::size_t s = size_of(all_[i]);
          if (s > left) break;  // all_ is sorted by size
          cur.push_back(all_[i]);
          self(self, i, left - s);
          cur.pop_back();
        }
      };
      rec(rec, 0, j);
      by_mass_.push_back(std::move(out));
    }
    std::vector<std::uint32_t> level;
    for (std::size_t j = 0; j + 2 <= n; ++j) {
      for (auto tail : by_size_[n - 1 - j]) {
        if (j == 0 && tail == 0) continue;
        for (auto& m : by_mass_[j]) level.push_back(intern(m, tail));
      }
    }
    std::sort(level.begin(), level.end(), [](auto a, auto b) { return order_ids(a, b) < 0; });
    all_.insert(all_.end(), level.begin(), level.end());
    by_size_.push_back(std::move(level));
  }
  return by_size_[k];
}

DMultiset to_public(const Ids& m) {
  DMultiset out;
  for (auto h : m) out.push_back(DElem::from_id(h));
  std::sort(out.begin(), out.end(), DLess{});
  return out;
}

Ids to_ids(const DMultiset& m) {
  Ids out;
  for (auto e : m) out.push_back(e.id());
  std::sort(out.begin(), out.end());
  return out;
}

Ids merge(const Ids& a, const Ids& b) {
  Ids out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---- interpretation ----

struct IEntry {
  std::vector<Ids> ctx;
  std::vector<std::uint32_t> pm;  // mass per position
  std::uint32_t val = 0;
  std::uint32_t size = 0;

  bool operator<(const IEntry& o) const {
    if (val != o.val) return val < o.val;
    return ctx < o.ctx;
  }
};

using ESet = std::set<IEntry>;

struct Interp {
  std::size_t n_free;
  std::size_t b_out;
  std::size_t c_inner;  // cap for function parts and arguments
  std::unordered_map<Sym, std::size_t> pos;
  std::map<std::tuple<const diff::Node*, std::size_t, std::vector<std::uint32_t>>, ESet> memo;
  std::vector<std::vector<std::uint32_t>> delem_cache;

  const std::vector<std::uint32_t>& elems_of_size(std::size_t k) {
    while (delem_cache.size() <= k) delem_cache.push_back(table().of_size(delem_cache.size()));
    return delem_cache[k];
  }

  // pools[p]: the largest context mass position p may still carry.
  const ESet& term(const diff::Term& t, std::size_t cap, const std::vector<std::uint32_t>& pools) {
    auto key = std::make_tuple(t.get(), cap, pools);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ESet out = compute(t, cap, pools);
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }

  ESet sum(const diff::Sum& s, std::size_t cap, const std::vector<std::uint32_t>& pools) {
    ESet out;
    for (auto& [t, n] : s) {
      auto& e = term(t, cap, pools);
      out.insert(e.begin(), e.end());
    }
    return out;
  }

  static bool fits(const IEntry& e, std::size_t cap, const std::vector<std::uint32_t>& pools) {
    if (e.size > cap) return false;
    for (std::size_t p = 0; p < pools.size(); ++p)
      if (e.pm[p] > pools[p]) return false;
    return true;
  }

  ESet variable(std::size_t p, std::size_t cap, const std::vector<std::uint32_t>& pools) {
    ESet out;
    std::size_t depth = pools.size();
    for (std::size_t k = 1; 2 * k <= cap && k <= pools[p]; ++k) {
      for (auto s : elems_of_size(k)) {
        IEntry e;
        e.ctx.assign(depth, Ids{});
        e.pm.assign(depth, 0);
        e.ctx[p] = Ids{s};
        e.pm[p] = static_cast<std::uint32_t>(k);
        e.val = s;
        e.size = static_cast<std::uint32_t>(2 * k);
        out.insert(std::move(e));
      }
    }
    return out;
  }

  static void add_ctx(IEntry& acc, const IEntry& e) {
    for (std::size_t p = 0; p < acc.ctx.size(); ++p) {
      if (e.ctx[p].empty()) continue;
      acc.ctx[p] = merge(acc.ctx[p], e.ctx[p]);
      acc.pm[p] += e.pm[p];
    }
    acc.size += e.size - table().size_of(e.val);
  }

  using Index = std::unordered_map<std::uint32_t, std::vector<const IEntry*>>;
  static Index index_by_val(const ESet& s) {
    Index idx;
    for (auto& e : s) idx[e.val].push_back(&e);
    return idx;
  }

  ESet application(const diff::Term& t, std::size_t cap, const std::vector<std::uint32_t>& pools) {
    ESet out;
    const ESet& fs = term(t->head(), c_inner, pools);
    if (fs.empty()) return out;
    ESet args = sum(t->arg(), c_inner, pools);
    Index idx = index_by_val(args);
    for (auto& f : fs) {
      Rec r = table().get(f.val);
      IEntry base;
      base.ctx = f.ctx;
      base.pm = f.pm;
      base.val = r.tail;
      base.size = f.size - r.size + table().size_of(r.tail);
      if (!fits(base, cap, pools)) continue;
      // Distinct witnesses with their multiplicities.
      std::vector<std::pair<std::uint32_t, std::size_t>> groups;
      bool ok = true;
      for (auto h : r.head) {
        if (!groups.empty() && groups.back().first == h)
          ++groups.back().second;
        else
          groups.emplace_back(h, 1);
        if (!idx.count(h)) ok = false;
      }
      if (!ok) continue;
      choose(groups, 0, 0, groups.empty() ? 0 : groups[0].second, base, idx, cap, pools, out);
    }
    return out;
  }

  // Picks, for each witness group, `left` argument entries as a multiset
  // (nondecreasing candidate index).
  void choose(const std::vector<std::pair<std::uint32_t, std::size_t>>& groups, std::size_t g, std::size_t from,
              std::size_t left, const IEntry& acc, Index& idx, std::size_t cap,
              const std::vector<std::uint32_t>& pools, ESet& out) {
    if (g == groups.size()) {
      out.insert(acc);
      return;
    }
    if (left == 0) {
      std::size_t next = g + 1 < groups.size() ? groups[g + 1].second : 0;
      choose(groups, g + 1, 0, next, acc, idx, cap, pools, out);
      return;
    }
    auto& cands = idx[groups[g].first];
    for (std::size_t i = from; i < cands.size(); ++i) {
      IEntry next = acc;
      add_ctx(next, *cands[i]);
      if (!fits(next, cap, pools)) continue;
      choose(groups, g, i, left - 1, next, idx, cap, pools, out);
    }
  }

  // D s . t from the entries of s and of t.
  ESet dstep(const ESet& fs, const ESet& ts, std::size_t cap, const std::vector<std::uint32_t>& pools) {
    ESet out;
    Index idx = index_by_val(ts);
    for (auto& f : fs) {
      Rec r = table().get(f.val);
      for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i > 0 && r.head[i] == r.head[i - 1]) continue;
        auto c = idx.find(r.head[i]);
        if (c == idx.end()) continue;
        Ids rest = r.head;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        std::uint32_t v = table().intern(rest, r.tail);
        IEntry base;
        base.ctx = f.ctx;
        base.pm = f.pm;
        base.val = v;
        base.size = f.size - r.size + table().size_of(v);
        for (auto* te : c->second) {
          IEntry e = base;
          add_ctx(e, *te);
          if (fits(e, cap, pools)) out.insert(std::move(e));
        }
      }
    }
    return out;
  }

  ESet compute(const diff::Term& t, std::size_t cap, const std::vector<std::uint32_t>& pools) {
    std::size_t depth = pools.size();
    switch (t->kind()) {
      case diff::Kind::Free:
        return variable(pos.at(t->sym()), cap, pools);
      case diff::Kind::Bound:
        return variable(depth - 1 - t->index(), cap, pools);
      case diff::Kind::Abs: {
        auto inner = pools;
        inner.push_back(static_cast<std::uint32_t>(cap >= 2 ? cap - 2 : 0));
        ESet out;
        for (auto& e : term(t->head(), cap, inner)) {
          IEntry r;
          r.ctx.assign(e.ctx.begin(), e.ctx.end() - 1);
          r.pm.assign(e.pm.begin(), e.pm.end() - 1);
          r.val = table().intern(e.ctx.back(), e.val);
          r.size = e.size - e.pm.back() + (table().size_of(r.val) - table().size_of(e.val));
          if (r.size <= cap) out.insert(std::move(r));
        }
        return out;
      }
      case diff::Kind::App:
        return application(t, cap, pools);
      case diff::Kind::Lin: {
        ESet cur = term(t->head(), c_inner, pools);
        for (auto& a : t->args()) {
          if (cur.empty()) break;
          cur = dstep(cur, term(a, c_inner, pools), c_inner, pools);
        }
        ESet out;
        for (auto& e : cur)
          if (e.size <= cap) out.insert(e);
        return out;
      }
    }
    return {};
  }
};

}  // namespace

int order(DElem a, DElem b) { return order_ids(a.id(), b.id()); }

int order(const DMultiset& a, const DMultiset& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (int c = order(a[i], b[i])) return c;
  return a.size() < b.size() ? -1 : a.size() > b.size() ? 1 : 0;
}

DElem cons(const DMultiset& m, DElem s) { return DElem::from_id(table().intern(to_ids(m), s.id())); }

std::pair<DMultiset, DElem> uncons(DElem e) {
  Rec r = table().get(e.id());
  return {to_public(r.head), DElem::from_id(r.tail)};
}

std::vector<DMultiset> sequence(DElem e) {
  std::vector<DMultiset> out;
  while (!e.is_star()) {
    auto [m, s] = uncons(e);
    out.push_back(std::move(m));
    e = s;
  }
  return out;
}

DElem from_sequence(const std::vector<DMultiset>& seq) {
  DElem e;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) e = cons(*it, e);
  return e;
}

std::size_t size(DElem e) { return table().size_of(e.id()); }

std::size_t mass(const DMultiset& m) {
  std::size_t n = 0;
  for (auto e : m) n += size(e);
  return n;
}

namespace {
std::string ms_string(const DMultiset& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += to_string(m[i]);
  }
  return s + "]";
}
}  // namespace

std::string to_string(DElem e) {
  std::string s = "[";
  auto seq = sequence(e);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ",";
    s += ms_string(seq[i]);
  }
  return s + "]";
}

std::vector<DElem> enumerate_delems(std::size_t max_size) {
  std::vector<DElem> out;
  for (std::size_t k = 1; k <= max_size; ++k)
    for (auto id : table().of_size(k)) out.push_back(DElem::from_id(id));
  return out;
}

std::size_t Entry::size() const {
  std::size_t n = dmodel::size(val);
  for (auto& m : ctx) n += mass(m);
  return n;
}

int order(const Entry& a, const Entry& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.ctx.size() && i < b.ctx.size(); ++i)
    if (int c = order(a.ctx[i], b.ctx[i])) return c;
  if (a.ctx.size() != b.ctx.size()) return a.ctx.size() < b.ctx.size() ? -1 : 1;
  return order(a.val, b.val);
}

bool operator==(const Entry& a, const Entry& b) { return a.val == b.val && a.ctx == b.ctx; }

std::string to_string(const Entry& e) {
  std::string s = "{\"ctx\":[";
  for (std::size_t i = 0; i < e.ctx.size(); ++i) {
    if (i) s += ",";
    s += ms_string(e.ctx[i]);
  }
  return s + "],\"val\":" + to_string(e.val) + "}";
}

Interpretation interpret(const diff::Sum& s, const std::vector<Sym>& xs, const Budgets& b, bool normalize_first,
                         std::size_t fuel) {
  Interp in;
  in.n_free = xs.size();
  in.b_out = b.output;
  in.c_inner = b.output + b.witness;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!in.pos.emplace(xs[i], i).second)
      throw InadequateVariables("variable listed twice: " + sym_name(xs[i]));
  for (Sym x : diff::free_vars(s))
    if (!in.pos.count(x)) throw InadequateVariables("free variable not listed: " + sym_name(x));

  Interpretation res;
  diff::Sum t = s;
  if (normalize_first) {
    auto n = diff::normalize(s, fuel);
    res.exhausted = n.exhausted;
    t = n.term;
  }
  res.clipped = b.witness < b.output;
  res.exact = !res.clipped && !res.exhausted && !diff::has_redex(t);

  std::vector<std::uint32_t> pools(xs.size(), static_cast<std::uint32_t>(b.output >= 1 ? b.output - 1 : 0));
  ESet top = in.sum(t, b.output, pools);
  for (auto& e : top) {
    Entry out;
    for (auto& m : e.ctx) out.ctx.push_back(to_public(m));
    out.val = DElem::from_id(e.val);
    res.entries.push_back(std::move(out));
  }
  std::sort(res.entries.begin(), res.entries.end(), [](const Entry& x, const Entry& y) { return order(x, y) < 0; });
  return res;
}

Verdict interp_eq(const Interpretation& a, const Interpretation& b) {
  auto less = [](const Entry& x, const Entry& y) { return order(x, y) < 0; };
  std::vector<Entry> only_a, only_b;
  std::set_difference(a.entries.begin(), a.entries.end(), b.entries.begin(), b.entries.end(),
                      std::back_inserter(only_a), less);
  std::set_difference(b.entries.begin(), b.entries.end(), a.entries.begin(), a.entries.end(),
                      std::back_inserter(only_b), less);
  if (only_a.empty() && only_b.empty()) return Verdict::Equal;
  // Every enumerated entry really belongs to its side; its absence on the
  // other side only counts when that side was enumerated exactly.
  if ((!only_a.empty() && b.exact) || (!only_b.empty() && a.exact)) return Verdict::NotEqual;
  return Verdict::Unknown;
}

Verdict interp_eq(const diff::Sum& s, const diff::Sum& t, const std::vector<Sym>& xs, const Budgets& b,
                  bool normalize_first, std::size_t fuel) {
  return interp_eq(interpret(s, xs, b, normalize_first, fuel), interpret(t, xs, b, normalize_first, fuel));
}

mrel::Elem encode(DElem e) { return mrel::Elem::atom(e.id()); }

namespace {
mrel::Multiset encode(const DMultiset& m) {
  std::vector<mrel::Elem> v;
  for (auto e : m) v.push_back(encode(e));
  return mrel::ms(std::move(v));
}
}  // namespace

mrel::Rel lambda_rel(const std::vector<std::pair<DMultiset, DElem>>& sample) {
  auto d = mrel::reflexive();
  std::vector<mrel::Pair> pairs;
  for (auto& [m, s] : sample)
    pairs.push_back({mrel::ms({mrel::Elem::arrow(encode(m), encode(s))}), encode(cons(m, s))});
  return mrel::Rel(mrel::arrow(d, d), d, std::move(pairs));
}

mrel::Rel app_rel(const std::vector<DElem>& sample) {
  auto d = mrel::reflexive();
  std::vector<mrel::Pair> pairs;
  for (auto e : sample) {
    auto [m, s] = uncons(e);
    pairs.push_back({mrel::ms({encode(e)}), mrel::Elem::arrow(encode(m), encode(s))});
  }
  return mrel::Rel(d, mrel::arrow(d, d), std::move(pairs));
}

}  // namespace difflam::dmodel
