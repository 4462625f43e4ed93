#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "difflam/formal_sum.hpp"
#include "difflam/symbol.hpp"

// Terms, bags and sums of the resource calculus, locally nameless like the
// differential terms.
namespace difflam::res {

enum class Kind : std::uint8_t { Bound, Free, Abs, App };

class Node;
using Term = std::shared_ptr<const Node>;

struct Resource {
  Term term;
  bool banged = false;
};

int order(const Term& a, const Term& b);
int order(const Resource& a, const Resource& b);
bool same(const Term& a, const Term& b);

// A bag is a multiset of resources; linear resources sort before banged ones.
using Bag = FormalSum<Resource>;
using Sum = FormalSum<Term>;
using BagSum = FormalSum<Bag>;

class Node {
 public:
  Kind kind() const { return kind_; }
  Sym sym() const { return sym_; }
  std::uint32_t index() const { return index_; }
  // Abs: the body.  App: the function part.
  const Term& head() const { return head_; }
  // App: the argument bag.
  const Bag& bag() const { return bag_; }

  std::size_t size() const { return size_; }
  std::size_t hash() const { return hash_; }
  std::uint32_t loose() const { return loose_; }
  bool has_redex() const { return has_redex_; }
  const std::vector<Sym>& free_vars() const { return fv_; }
  bool is_redex() const { return kind_ == Kind::App && head_->kind_ == Kind::Abs; }

  static Term make_bound(std::uint32_t i);
  static Term make_free(Sym x);
  static Term make_abs(Sym hint, Term body);
  static Term make_app(Term f, Bag b);

 private:
  void finish();

  Kind kind_ = Kind::Free;
  Sym sym_ = 0;
  std::uint32_t index_ = 0;
  Term head_;
  Bag bag_;
  std::size_t size_ = 1;
  std::size_t hash_ = 0;
  std::uint32_t loose_ = 0;
  bool has_redex_ = false;
  std::vector<Sym> fv_;
};

Term bound(std::uint32_t i);
Term var(Sym x);
Term var(const std::string& name);
Term abs_raw(Sym hint, Term body);
Term app(Term f, Bag b);

Sum single(Term t);
Bag empty_bag();

// Sum-level constructors:
//   \x.(M1+...+Mk) = \x.M1 + ... + \x.Mk
//   application is bilinear in the function and the bag
//   [M1+...+Mk] + P    = [M1] + P + ... + [Mk] + P      (sum of bags)
//   [(M1+...+Mk)!] + P = [M1!,...,Mk!] + P              (a single bag)
Sum mk_abs(Sym x, const Sum& s);
Sum mk_abs(Sym x, const Sum& s, Sym hint);
Sum mk_app(const Sum& s, const BagSum& p);
BagSum bag_linear(const Sum& m);
Bag bag_banged(const Sum& m);
BagSum bag_union(const BagSum& p, const BagSum& q);
BagSum bag_union(const BagSum& p, const Bag& q);
// mk_bag_cons(R, P) for a linear R is bag_union(bag_linear(R), P).
BagSum mk_bag_cons(const Sum& r, bool banged, const BagSum& p);

Term open(const Term& body, Sym x);
Term close(const Term& t, Sym x);

bool occurs_free(Sym x, const Term& t);
bool occurs_free(Sym x, const Sum& s);
std::vector<Sym> free_vars(const Sum& s);
std::vector<Sym> free_vars(const Bag& b);
std::vector<std::string> free_var_names(const Sum& s);

bool alpha_eq(const Sum& a, const Sum& b);
Sum canonicalize(const Sum& s, bool idempotent);
std::size_t size(const Sum& s);
bool has_redex(const Sum& s);
bool well_formed(const Sum& s, std::string* why = nullptr);

}  // namespace difflam::res
