#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "difflam/mrel.hpp"

namespace difflam::mrel {
namespace {

using Named = std::vector<std::pair<std::string, Rel>>;

// A trial returns a counterexample description, or nothing when the law holds.
using Trial = std::function<std::optional<std::string>(std::mt19937_64&, const GenParams&)>;

std::string block(const Named& inputs, const Rel& lhs, const Rel& rhs) {
  std::ostringstream os;
  for (auto& [n, r] : inputs) os << "    " << n << " = " << to_string(r) << "\n";
  os << "    lhs = " << to_string(lhs) << "\n";
  os << "    rhs = " << to_string(rhs) << "\n";
  return os.str();
}

std::optional<std::string> expect_eq(const Named& inputs, const Rel& lhs, const Rel& rhs) {
  if (lhs == rhs) return std::nullopt;
  return block(inputs, lhs, rhs);
}

// Runs the checks in order and reports the first failure.
std::optional<std::string> all(std::initializer_list<std::function<std::optional<std::string>()>> checks) {
  for (auto& c : checks)
    if (auto r = c()) return r;
  return std::nullopt;
}

struct Ctx {
  std::mt19937_64& rng;
  const GenParams& p;
  U obj() { return random_atoms(rng, p); }
  Rel rel(const U& a, const U& b) { return random_rel(a, b, rng, p); }
  Rel lin(const U& a, const U& b) { return random_linear_rel(a, b, rng, p); }
  bool coin() { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; }
};

Rel D(const Rel& f) { return differential(f); }
Rel o(const Rel& t, const Rel& s) { return compose(t, s); }
Rel pr(const Rel& f, const Rel& g) { return pairing(f, g); }

struct Law {
  const char* name;
  Trial trial;
};

std::vector<Law> laws() {
  std::vector<Law> v;
  auto add = [&](const char* n, std::function<std::optional<std::string>(Ctx&)> f) {
    v.push_back({n, [f](std::mt19937_64& rng, const GenParams& p) {
                   Ctx c{rng, p};
                   return f(c);
                 }});
  };

  add("D1", [](Ctx& c) {
    U a = c.obj(), b = c.obj();
    Rel f = c.rel(a, b), g = c.rel(a, b);
    return all({[&] { return expect_eq({{"f", f}, {"g", g}}, D(unite(f, g)), unite(D(f), D(g))); },
                [&] { return expect_eq({}, D(zero(a, b)), zero(with(a, a), b)); }});
  });
  add("D2", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel f = c.rel(a, b), h = c.rel(cc, a), k = c.rel(cc, a), w = c.rel(cc, a);
    Named in{{"f", f}, {"h", h}, {"k", k}, {"v", w}};
    return all({[&] {
                  return expect_eq(in, o(D(f), pr(unite(h, k), w)), unite(o(D(f), pr(h, w)), o(D(f), pr(k, w))));
                },
                [&] { return expect_eq(in, o(D(f), pr(zero(cc, a), w)), zero(cc, b)); }});
  });
  add("D3", [](Ctx& c) {
    U a = c.obj(), b = c.obj();
    U ab = with(a, b);
    return all({[&] { return expect_eq({}, D(identity(a)), proj(a, a, 1)); },
                [&] { return expect_eq({}, D(proj(a, b, 1)), o(proj(a, b, 1), proj(ab, ab, 1))); },
                [&] { return expect_eq({}, D(proj(a, b, 2)), o(proj(a, b, 2), proj(ab, ab, 1))); }});
  });
  add("D4", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel f = c.rel(a, b), g = c.rel(a, cc);
    return expect_eq({{"f", f}, {"g", g}}, D(pr(f, g)), pr(D(f), D(g)));
  });
  add("D5", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel g = c.rel(a, b), f = c.rel(b, cc);
    return expect_eq({{"f", f}, {"g", g}}, D(o(f, g)), o(D(f), pr(D(g), after_proj(g, 2, a))));
  });
  add("D6", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel f = c.rel(a, b), g = c.rel(cc, a), h = c.rel(cc, a), k = c.rel(cc, a);
    return expect_eq({{"f", f}, {"g", g}, {"h", h}, {"k", k}}, o(D(D(f)), pr(pr(g, zero(cc, a)), pr(h, k))),
                     o(D(f), pr(g, k)));
  });
  add("D7", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel f = c.rel(a, b), g = c.rel(cc, a), h = c.rel(cc, a), k = c.rel(cc, a);
    Rel z = zero(cc, a);
    return expect_eq({{"f", f}, {"g", g}, {"h", h}, {"k", k}}, o(D(D(f)), pr(pr(z, h), pr(g, k))),
                     o(D(D(f)), pr(pr(z, g), pr(h, k))));
  });
  add("D-curry", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(with(cc, a), b);
    // <pi1 x 0_A, pi2 x Id_A> : (C&C)&A -> (C&A)&(C&A)
    Rel m = pr(product_map(proj(cc, cc, 1), zero(a, a)), product_map(proj(cc, cc, 2), identity(a)));
    return expect_eq({{"f", f}}, D(curry(f)), curry(o(D(f), m)));
  });
  add("D-eval", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel h = c.rel(cc, arrow(a, b)), g = c.rel(cc, a);
    U c2 = with(cc, cc);
    Rel g2 = after_proj(g, 2, cc);
    Rel rhs = unite(eval_with(D(h), g2),
                    o(D(uncurry(h)), pr(pr(zero(c2, cc), D(g)), pr(proj(cc, cc, 2), g2))));
    return expect_eq({{"h", h}, {"g", g}}, D(eval_with(h, g)), rhs);
  });
  add("+-curry", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(with(cc, a), b), g = c.rel(with(cc, a), b);
    return all({[&] { return expect_eq({{"f", f}, {"g", g}}, curry(unite(f, g)), unite(curry(f), curry(g))); },
                [&] { return expect_eq({}, curry(zero(with(cc, a), b)), zero(cc, arrow(a, b))); }});
  });
  add("+-eval", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(cc, arrow(a, b)), g = c.rel(cc, arrow(a, b)), h = c.rel(cc, a);
    return all({[&] {
                  return expect_eq({{"f", f}, {"g", g}, {"h", h}}, eval_with(unite(f, g), h),
                                   unite(eval_with(f, h), eval_with(g, h)));
                },
                [&] { return expect_eq({{"h", h}}, eval_with(zero(cc, arrow(a, b)), h), zero(cc, b)); }});
  });
  add("star-commute", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(with(cc, a), b), g = c.rel(cc, a), h = c.rel(cc, a);
    return expect_eq({{"f", f}, {"g", g}, {"h", h}}, star(star(f, g), h), star(star(f, h), g));
  });
  add("star-via-D", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(with(cc, a), b), g = c.rel(cc, a);
    U ca = with(cc, a);
    Rel rhs = o(D(f), pr(pr(zero(ca, cc), after_proj(g, 1, a)), identity(ca)));
    return expect_eq({{"f", f}, {"g", g}}, star(f, g), rhs);
  });
  add("D-via-star", [](Ctx& c) {
    U a = c.obj(), b = c.obj();
    Rel f = c.rel(a, b);
    return expect_eq({{"f", f}}, D(f), star(after_proj(f, 2, a), identity(a)));
  });
  add("main1-i", [](Ctx& c) {
    U cc = c.obj(), a = c.obj();
    Rel g = c.rel(cc, a);
    return expect_eq({{"g", g}}, star(proj(cc, a, 2), g), after_proj(g, 1, a));
  });
  add("main1-ii", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel h = c.rel(cc, b), g = c.rel(cc, a);
    return expect_eq({{"h", h}, {"g", g}}, star(after_proj(h, 1, a), g), zero(with(cc, a), b));
  });
  add("main1-iii", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), d = c.obj(), b = c.obj();
    Rel f = c.rel(with(with(cc, a), d), b), g = c.rel(cc, a);
    Rel inner = star(o(f, sw(cc, d, a)), after_proj(g, 1, d));
    return expect_eq({{"f", f}, {"g", g}}, star(curry(f), g), curry(o(inner, sw(cc, a, d))));
  });
  add("main2-i", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), d = c.obj(), b = c.obj();
    U ca = with(cc, a);
    Rel f = c.rel(ca, arrow(d, b)), g = c.rel(cc, a), h = c.rel(ca, d);
    Rel rhs = eval_with(unite(star(f, g), curry(star(uncurry(f), star(h, g)))), h);
    return expect_eq({{"f", f}, {"g", g}, {"h", h}}, star(eval_with(f, h), g), rhs);
  });
  add("main2-ii", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), d = c.obj(), b = c.obj();
    U ca = with(cc, a);
    Rel f = c.rel(ca, arrow(d, b)), g = c.rel(cc, a), h = c.rel(ca, d);
    Rel lhs = star(curry(star(uncurry(f), h)), g);
    Rel rhs = unite(curry(star(uncurry(star(f, g)), h)), curry(star(uncurry(f), star(h, g))));
    return expect_eq({{"f", f}, {"g", g}, {"h", h}}, lhs, rhs);
  });
  add("main2-iii", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), d = c.obj(), b = c.obj();
    U ca = with(cc, a);
    Rel f = c.rel(ca, arrow(d, b)), g = c.rel(cc, a), h = c.rel(ca, d);
    Rel ig = pr(identity(cc), g);
    Rel lhs = o(curry(star(uncurry(f), h)), ig);
    Rel rhs = curry(star(uncurry(o(f, ig)), o(h, ig)));
    return expect_eq({{"f", f}, {"g", g}, {"h", h}}, lhs, rhs);
  });
  add("Taylor", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(cc, arrow(a, b)), g = c.rel(cc, a);
    // the k-th term is empty once k exceeds every argument multiset of f
    std::size_t kmax = 0;
    for (auto& pr_ : f.pairs()) kmax = std::max(kmax, pr_.second.ms().size());
    Rel at0 = pr(identity(cc), zero(cc, a));
    Rel term = uncurry(f);
    Rel sum = zero(cc, b);
    for (std::size_t k = 0; k <= kmax + 1; ++k) {
      sum = unite(sum, o(term, at0));
      term = star(term, g);
    }
    return expect_eq({{"f", f}, {"g", g}}, eval_with(f, g), sum);
  });
  add("category", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj(), d = c.obj();
    Rel f = c.rel(a, b), g = c.rel(b, cc), h = c.rel(cc, d);
    Named in{{"f", f}, {"g", g}, {"h", h}};
    return all({[&] { return expect_eq(in, o(f, identity(a)), f); },
                [&] { return expect_eq(in, o(identity(b), f), f); },
                [&] { return expect_eq(in, o(o(h, g), f), o(h, o(g, f))); }});
  });
  add("product", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel f = c.rel(cc, a), g = c.rel(cc, b), h = c.rel(cc, with(a, b));
    Named in{{"f", f}, {"g", g}, {"h", h}};
    return all({[&] { return expect_eq(in, o(proj(a, b, 1), pr(f, g)), f); },
                [&] { return expect_eq(in, o(proj(a, b, 2), pr(f, g)), g); },
                [&] { return expect_eq(in, pr(o(proj(a, b, 1), h), o(proj(a, b, 2), h)), h); },
                [&] { return expect_eq({}, pr(zero(cc, a), zero(cc, b)), zero(cc, with(a, b))); }});
  });
  add("pair", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj(), e = c.obj();
    Rel f = c.rel(cc, a), g = c.rel(cc, b), h = c.rel(e, cc);
    return expect_eq({{"f", f}, {"g", g}, {"h", h}}, o(pr(f, g), h), pr(o(f, h), o(g, h)));
  });
  add("Curry", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj(), e = c.obj();
    Rel f = c.rel(with(cc, a), b), g = c.rel(e, cc);
    return expect_eq({{"f", f}, {"g", g}}, o(curry(f), g), curry(o(f, product_map(g, identity(a)))));
  });
  add("beta-cat", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(with(cc, a), b), g = c.rel(cc, a);
    return expect_eq({{"f", f}, {"g", g}}, eval_with(curry(f), g), o(f, pr(identity(cc), g)));
  });
  add("Id-Curry", [](Ctx& c) {
    U cc = c.obj(), a = c.obj(), b = c.obj();
    Rel f = c.rel(cc, arrow(a, b)), s = c.rel(with(cc, a), b);
    return all({[&] { return expect_eq({{"f", f}}, curry(uncurry(f)), f); },
                [&] { return expect_eq({{"s", s}}, uncurry(curry(s)), s); }});
  });
  add("linear-compose", [](Ctx& c) -> std::optional<std::string> {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel g = c.lin(a, b), f = c.lin(b, cc);
    Rel fg = o(f, g);
    if (is_linear(fg)) return std::nullopt;
    return block({{"f", f}, {"g", g}}, fg, fg);
  });
  add("linear-iff-D", [](Ctx& c) -> std::optional<std::string> {
    U a = c.obj(), b = c.obj();
    Rel f = c.coin() ? c.lin(a, b) : c.rel(a, b);
    bool lhs = D(f) == after_proj(f, 1, a);
    if (lhs == is_linear(f)) return std::nullopt;
    return block({{"f", f}}, D(f), after_proj(f, 1, a));
  });
  add("linear-star", [](Ctx& c) -> std::optional<std::string> {
    U a = c.obj(), b = c.obj(), cc = c.obj();
    Rel f = c.coin() ? c.lin(a, b) : c.rel(a, b);
    Rel g = c.rel(cc, a);
    if (is_linear(f)) {
      if (auto r = expect_eq({{"f", f}, {"g", g}}, star(after_proj(f, 2, cc), g), after_proj(o(f, g), 1, a)))
        return r;
    }
    // the converse only needs g = Id
    bool at_id = star(after_proj(f, 2, a), identity(a)) == after_proj(f, 1, a);
    if (at_id == is_linear(f)) return std::nullopt;
    return block({{"f", f}}, star(after_proj(f, 2, a), identity(a)), after_proj(f, 1, a));
  });
  add("sw", [](Ctx& c) {
    U a = c.obj(), b = c.obj(), cc = c.obj(), e = c.obj();
    Rel f = c.rel(e, a), g = c.rel(e, b), h = c.rel(e, cc);
    Rel s = sw(a, b, cc);
    Named in{{"f", f}, {"g", g}, {"h", h}};
    return all({[&] { return expect_eq({}, o(sw(a, cc, b), s), identity(with(with(a, b), cc))); },
                [&] { return expect_eq(in, o(s, pr(pr(f, g), h)), pr(pr(f, h), g)); },
                [&] { return expect_eq({}, D(s), after_proj(s, 1, s.src())); }});
  });
  return v;
}

// Every pair of mutually inverse relations between tiny universes, with at
// most two pairs each, is singleton-shaped.
AxiomResult iso_linear() {
  AxiomResult res{"iso-linear", 0, true, {}};
  for (std::uint32_t na = 1; na <= 2; ++na) {
    for (std::uint32_t nb = 1; nb <= 2; ++nb) {
      U a = atoms(na), b = atoms(nb);
      auto candidates = [](const U& src, const U& tgt) {
        std::vector<Multiset> mss{{}};
        auto es = elements(src);
        for (std::size_t i = 0; i < es.size(); ++i) {
          mss.push_back({es[i]});
          for (std::size_t j = i; j < es.size(); ++j) mss.push_back(ms({es[i], es[j]}));
        }
        std::vector<Pair> all_pairs;
        for (auto& m : mss)
          for (auto& t : elements(tgt)) all_pairs.emplace_back(m, t);
        std::vector<Rel> out{Rel(src, tgt)};
        for (std::size_t i = 0; i < all_pairs.size(); ++i) {
          out.push_back(Rel(src, tgt, {all_pairs[i]}));
          for (std::size_t j = i + 1; j < all_pairs.size(); ++j)
            out.push_back(Rel(src, tgt, {all_pairs[i], all_pairs[j]}));
        }
        return out;
      };
      auto fs = candidates(b, a);
      auto gs = candidates(a, b);
      Rel ida = identity(a), idb = identity(b);
      for (auto& f : fs) {
        for (auto& g : gs) {
          ++res.trials;
          if (o(f, g) != ida || o(g, f) != idb) continue;
          if (is_linear(f) && is_linear(g)) continue;
          res.pass = false;
          res.counterexample = block({{"f", f}, {"g", g}}, o(f, g), o(g, f));
          return res;
        }
      }
    }
  }
  return res;
}

}  // namespace

std::vector<std::string> axiom_names() {
  std::vector<std::string> out;
  for (auto& l : laws()) out.push_back(l.name);
  out.push_back("iso-linear");
  return out;
}

std::vector<AxiomResult> check_axioms(std::uint64_t seed, std::size_t trials, const GenParams& p, unsigned threads) {
  auto ls = laws();
  std::vector<AxiomResult> out(ls.size() + 1);
  auto run = [&](std::size_t i) {
    AxiomResult& r = out[i];
    r.name = ls[i].name;
    std::seed_seq ss{seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(ss);
    for (std::size_t t = 0; t < trials; ++t) {
      ++r.trials;
      if (auto ce = ls[i].trial(rng, p)) {
        r.pass = false;
        r.counterexample = "  counterexample (trial " + std::to_string(t) + "):\n" + *ce;
        break;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned k = 0; k < threads; ++k) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < ls.size();) run(i);
    });
  }
  for (auto& t : pool) t.join();
  out.back() = iso_linear();
  return out;
}

std::string format_report(const std::vector<AxiomResult>& results) {
  std::ostringstream os;
  for (auto& r : results) {
    os << "AXIOM " << r.name << (r.pass ? " PASS" : " FAIL") << " trials=" << r.trials << "\n";
    if (!r.pass) os << r.counterexample;
  }
  return os.str();
}

}  // namespace difflam::mrel
