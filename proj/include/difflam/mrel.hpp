#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Finite relations of MRel: a morphism A -> B is a set of pairs (m, b) with m
// a finite multiset over A.  Exponentials are infinite, so ev and identities
// on them are never built; composites with them have closed formulas
// (curry, uncurry, eval_with, star).
namespace difflam::mrel {

class Elem;
// Sorted by order(), repetitions allowed.
using Multiset = std::vector<Elem>;

class Elem {
 public:
  enum class Kind : std::uint8_t { Atom, Tag, Arrow };

  static Elem atom(std::uint32_t i);
  static Elem tag(int side, Elem e);  // side is 1 or 2
  static Elem arrow(Multiset m, Elem e);

  Kind kind() const;
  std::uint32_t atom_id() const;
  int side() const;
  const Elem& inner() const;  // Tag: the tagged element; Arrow: the result
  const Multiset& ms() const; // Arrow: the argument multiset

  friend int order(const Elem& a, const Elem& b);
  friend bool operator==(const Elem& a, const Elem& b) { return order(a, b) == 0; }
  friend bool operator<(const Elem& a, const Elem& b) { return order(a, b) < 0; }

 private:
  struct Rep;
  std::shared_ptr<const Rep> p_;
};

int order(const Multiset& a, const Multiset& b);
Multiset ms(std::vector<Elem> items);  // sorts
Multiset ms_union(const Multiset& a, const Multiset& b);
Multiset tag_all(int side, const Multiset& m);
// Splits a multiset over A&B into its A part and its B part.
std::pair<Multiset, Multiset> split(const Multiset& m);
Multiset join(const Multiset& a, const Multiset& b);

std::string to_string(const Elem& e);
std::string to_string(const Multiset& m);

// Objects.
struct Universe;
using U = std::shared_ptr<const Universe>;
struct Universe {
  enum class Kind : std::uint8_t { Atoms, With, Arrow, Terminal, Reflexive };
  Kind kind = Kind::Terminal;
  std::uint32_t n = 0;  // Atoms
  U a, b;               // With: A & B.  Arrow: [A => B]
};

U atoms(std::uint32_t n);
U with(U a, U b);
U arrow(U a, U b);
U terminal();
// The object D of the extensional model; its elements are carried as atoms
// whose ids are the model's element handles.
U reflexive();

bool same(const U& a, const U& b);
bool finite(const U& u);
bool contains(const U& u, const Elem& e);
// All elements, for finite universes only.
std::vector<Elem> elements(const U& u);
std::string to_string(const U& u);

class TypeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Pair = std::pair<Multiset, Elem>;

class Rel {
 public:
  Rel() = default;
  Rel(U src, U tgt, std::vector<Pair> pairs = {});

  const U& src() const { return src_; }
  const U& tgt() const { return tgt_; }
  const std::vector<Pair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool contains(const Pair& p) const;

  friend bool operator==(const Rel& a, const Rel& b) { return a.pairs_ == b.pairs_; }
  friend bool operator!=(const Rel& a, const Rel& b) { return !(a == b); }

 private:
  U src_, tgt_;
  std::vector<Pair> pairs_;  // sorted, no duplicates
};

std::string to_string(const Rel& r);

// Identity; on an infinite universe the sample lists the elements to keep.
Rel identity(const U& u);
Rel identity(const U& u, const std::vector<Elem>& sample);
Rel zero(const U& src, const U& tgt);
Rel unite(const Rel& f, const Rel& g);
// t o s
Rel compose(const Rel& t, const Rel& s);

Rel proj(const U& a, const U& b, int side);  // A&B -> A or B; finite only
// f o pi_side for f defined on the chosen component of A&B.
Rel after_proj(const Rel& f, int side, const U& other);
Rel pairing(const Rel& f, const Rel& g);
Rel product_map(const Rel& f, const Rel& g);  // f x g = <f o pi1, g o pi2>

Rel curry(const Rel& s);    // C&A -> B  to  C -> [A=>B]
Rel uncurry(const Rel& f);  // C -> [A=>B]  to  C&A -> B
// ev o <f, h>
Rel eval_with(const Rel& f, const Rel& h);

Rel differential(const Rel& f);          // A -> B  to  A&A -> B
Rel star(const Rel& f, const Rel& g);    // f: C&A -> B, g: C -> A
bool is_linear(const Rel& f);
// (A&B)&C -> (A&C)&B
Rel sw(const U& a, const U& b, const U& c);

struct GenParams {
  std::uint32_t atoms_min = 1;
  std::uint32_t atoms_max = 4;
  std::uint32_t ms_max = 3;
  std::uint32_t pairs_max = 6;
};

Elem random_elem(const U& u, std::mt19937_64& rng, const GenParams& p);
Multiset random_ms(const U& u, std::mt19937_64& rng, const GenParams& p);
Rel random_rel(const U& src, const U& tgt, std::mt19937_64& rng, const GenParams& p);
// Only pairs with singleton input multisets.
Rel random_linear_rel(const U& src, const U& tgt, std::mt19937_64& rng, const GenParams& p);
U random_atoms(std::mt19937_64& rng, const GenParams& p);

struct AxiomResult {
  std::string name;
  std::size_t trials = 0;
  bool pass = true;
  std::string counterexample;  // empty on pass
};

std::vector<AxiomResult> check_axioms(std::uint64_t seed, std::size_t trials, const GenParams& p = {},
                                      unsigned threads = 0);
std::vector<std::string> axiom_names();
// AXIOM <name> PASS|FAIL trials=<n>, each failure followed by its counterexample block.
std::string format_report(const std::vector<AxiomResult>& results);

}  // namespace difflam::mrel
