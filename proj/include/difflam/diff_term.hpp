#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "difflam/formal_sum.hpp"
#include "difflam/symbol.hpp"

// Simple terms and sums of the differential lambda-calculus.
//
// Terms are locally nameless: a bound occurrence is a de Bruijn index, a free
// occurrence is a name.  Alpha-equivalent terms are therefore identical and
// the term order is alpha-invariant.  Binders keep the user's name as a hint
// for printing only.
namespace difflam::diff {

enum class Kind : std::uint8_t { Bound, Free, Abs, App, Lin };

class Node;
using Term = std::shared_ptr<const Node>;
using Sum = FormalSum<Term>;

int order(const Term& a, const Term& b);
bool same(const Term& a, const Term& b);

class Node {
 public:
  Kind kind() const { return kind_; }
  // Free: the variable.  Abs: the binder hint.
  Sym sym() const { return sym_; }
  std::uint32_t index() const { return index_; }
  // Abs: the body.  App, Lin: the function part.
  const Term& head() const { return head_; }
  // App: the argument sum.
  const Sum& arg() const { return arg_; }
  // Lin: the linear arguments, sorted.
  const std::vector<Term>& args() const { return args_; }

  std::size_t size() const { return size_; }
  std::size_t hash() const { return hash_; }
  // 1 + the largest index pointing outside this node, 0 if locally closed.
  std::uint32_t loose() const { return loose_; }
  bool has_redex() const { return has_redex_; }
  // Sorted by id.
  const std::vector<Sym>& free_vars() const { return fv_; }

  bool is_redex() const {
    return (kind_ == Kind::App || kind_ == Kind::Lin) && head_->kind_ == Kind::Abs;
  }

  static Term make_bound(std::uint32_t i);
  static Term make_free(Sym x);
  static Term make_abs(Sym hint, Term body);
  static Term make_app(Term f, Sum u);
  static Term make_lin(Term f, std::vector<Term> args);

 private:
  void finish();

  Kind kind_ = Kind::Free;
  Sym sym_ = 0;
  std::uint32_t index_ = 0;
  Term head_;
  Sum arg_;
  std::vector<Term> args_;
  std::size_t size_ = 1;
  std::size_t hash_ = 0;
  std::uint32_t loose_ = 0;
  bool has_redex_ = false;
  std::vector<Sym> fv_;
};

// Term-level constructors.  lin flattens D^m(D^n s.u).v into D^(n+m) s.(u,v)
// and sorts the arguments.
Term bound(std::uint32_t i);
Term var(Sym x);
Term var(const std::string& name);
Term abs_raw(Sym hint, Term body);
Term app(Term f, Sum u);
Term lin(Term f, std::vector<Term> args);

Sum single(Term t);

// Sum-level constructors following the sum conventions:
//   \x.(s1+...+sk) = \x.s1 + ... + \x.sk
//   (s1+...+sk) T  = s1 T + ... + sk T        (the argument is not split)
//   D(S; T) is bilinear, D^n(S; T1..Tn) multilinear.
Sum mk_abs(Sym x, const Sum& s);
Sum mk_abs(Sym x, const Sum& s, Sym hint);
Sum mk_app(const Sum& s, const Sum& t);
Sum mk_dapp(const Sum& s, const Sum& t);
Sum mk_dapp_multi(const Sum& s, const std::vector<Sum>& ts);

// Locally nameless plumbing.
Term open(const Term& body, Sym x);
Term close(const Term& t, Sym x);
Sum close(const Sum& s, Sym x);

bool occurs_free(Sym x, const Term& t);
bool occurs_free(Sym x, const Sum& s);
std::vector<Sym> free_vars(const Term& t);
std::vector<Sym> free_vars(const Sum& s);
// Free variables as names, sorted by name.
std::vector<std::string> free_var_names(const Sum& s);

bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const Sum& a, const Sum& b);

Sum canonicalize(const Sum& s, bool idempotent);

// Sum of the sizes of the summands, with multiplicity.
std::size_t size(const Sum& s);
bool has_redex(const Sum& s);
bool is_pure(const Sum& s);  // no D, no sums, no 0

// Structural validator for the invariants the constructors maintain.
bool well_formed(const Sum& s, std::string* why = nullptr);

}  // namespace difflam::diff
