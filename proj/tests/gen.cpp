#include "gen.hpp"

namespace gen {

using namespace difflam;

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

namespace {

// Splits n - 1 nodes between two children, n >= 3.
std::pair<std::size_t, std::size_t> split(Rng& rng, std::size_t n) {
  std::size_t left = 1 + pick(rng, n - 2);
  return {left, n - 1 - left};
}

diff::Term dvar(Rng& rng, const std::vector<std::string>& names) { return diff::var(names[pick(rng, names.size())]); }

}  // namespace

diff::Term diff_term(Rng& rng, const Shape& sh) {
  std::size_t n = sh.size;
  if (n <= 1) return dvar(rng, sh.names);
  Shape sub = sh;
  std::size_t choice = pick(rng, sh.linear ? 4 : 3);
  if (choice == 0 || n == 2) {
    sub.size = n - 1;
    Sym x = intern(sh.names[pick(rng, sh.names.size())]);
    return diff::mk_abs(x, diff::single(diff_term(rng, sub)))[0].first;
  }
  auto [l, r] = split(rng, n);
  sub.size = l;
  diff::Term f = diff_term(rng, sub);
  sub.size = r;
  if (choice == 3) {
    std::vector<diff::Term> args{diff_term(rng, sub)};
    if (r >= 4 && pick(rng, 2) == 0) {
      sub.size = r / 2;
      args.push_back(diff_term(rng, sub));
    }
    return diff::lin(f, args);
  }
  return diff::app(f, sh.sums ? diff_sum(rng, sub) : diff::single(diff_term(rng, sub)));
}

diff::Sum diff_sum(Rng& rng, const Shape& sh, std::size_t max_summands) {
  std::size_t k = sh.sums ? pick(rng, max_summands + 1) : 1;
  if (sh.sums && k == 0 && pick(rng, 3) != 0) k = 1;  // keep 0 occasional
  diff::Sum out;
  for (std::size_t i = 0; i < k; ++i) out += diff::single(diff_term(rng, sh));
  return out;
}

diff::Term pure_term(Rng& rng, std::size_t size, const std::vector<std::string>& names) {
  Shape sh;
  sh.size = size;
  sh.names = names;
  sh.sums = false;
  sh.linear = false;
  return diff_term(rng, sh);
}

res::Term res_term(Rng& rng, const Shape& sh) {
  std::size_t n = sh.size;
  if (n <= 1) return res::var(sh.names[pick(rng, sh.names.size())]);
  Shape sub = sh;
  if (pick(rng, 3) == 0 || n == 2) {
    sub.size = n - 1;
    Sym x = intern(sh.names[pick(rng, sh.names.size())]);
    return res::mk_abs(x, res::single(res_term(rng, sub)))[0].first;
  }
  auto [l, r] = split(rng, n);
  sub.size = l;
  res::Term f = res_term(rng, sub);
  std::vector<res::Bag::Item> items;
  std::size_t k = pick(rng, 3);
  for (std::size_t i = 0; i < k; ++i) {
    sub.size = std::max<std::size_t>(1, r / (k ? k : 1));
    items.push_back({res::Resource{res_term(rng, sub), pick(rng, 2) == 0}, 1});
  }
  return res::app(f, res::Bag::from_items(std::move(items)));
}

res::Sum res_sum(Rng& rng, const Shape& sh, std::size_t max_summands) {
  std::size_t k = 1 + pick(rng, max_summands);
  res::Sum out;
  for (std::size_t i = 0; i < k; ++i) out += res::single(res_term(rng, sh));
  return out;
}

diff::Term diff_redex(Rng& rng, const Shape& sh) {
  Shape sub = sh;
  sub.size = std::max<std::size_t>(1, sh.size / 2);
  Sym x = intern(sh.names[pick(rng, sh.names.size())]);
  // Make the bound variable likely to occur.
  diff::Term body = diff_term(rng, sub);
  if (!diff::occurs_free(x, body) && pick(rng, 2) == 0) body = diff::app(diff::var(x), diff::single(body));
  diff::Term f = diff::mk_abs(x, diff::single(body))[0].first;
  sub.size = std::max<std::size_t>(1, sh.size / 3);
  if (sh.linear && pick(rng, 2) == 0) return diff::lin(f, {diff_term(rng, sub)});
  return diff::app(f, sh.sums ? diff_sum(rng, sub) : diff::single(diff_term(rng, sub)));
}

res::Term res_redex(Rng& rng, const Shape& sh) {
  Shape sub = sh;
  sub.size = std::max<std::size_t>(1, sh.size / 2);
  Sym x = intern(sh.names[pick(rng, sh.names.size())]);
  res::Term body = res_term(rng, sub);
  if (!res::occurs_free(x, body) && pick(rng, 2) == 0) {
    std::vector<res::Bag::Item> items{{res::Resource{body, false}, 1}};
    body = res::app(res::var(x), res::Bag::from_items(std::move(items)));
  }
  res::Term f = res::mk_abs(x, res::single(body))[0].first;
  sub.size = std::max<std::size_t>(1, sh.size / 3);
  std::vector<res::Bag::Item> items;
  std::size_t k = pick(rng, 3);
  for (std::size_t i = 0; i < k; ++i) items.push_back({res::Resource{res_term(rng, sub), pick(rng, 2) == 0}, 1});
  return res::app(f, res::Bag::from_items(std::move(items)));
}

}  // namespace gen
