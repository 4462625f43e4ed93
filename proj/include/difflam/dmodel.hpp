#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "difflam/diff_term.hpp"
#include "difflam/mrel.hpp"
#include "difflam/rewrite.hpp"

// The extensional relational model D.  An element is a quasi-finite sequence
// of finite multisets of elements; * is the empty sequence and m::s puts m in
// front of s.  Elements are interned, so equality is handle equality.
namespace difflam::dmodel {

class DElem {
 public:
  DElem() = default;  // *
  static DElem star() { return DElem(); }
  static DElem from_id(std::uint32_t id) { return DElem(id); }
  bool is_star() const { return id_ == 0; }
  std::uint32_t id() const { return id_; }
  friend bool operator==(DElem a, DElem b) { return a.id_ == b.id_; }
  friend bool operator!=(DElem a, DElem b) { return a.id_ != b.id_; }

 private:
  explicit DElem(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

// Sorted by order(), repetitions allowed.
using DMultiset = std::vector<DElem>;

// Structural order: by size, then lexicographic on the sequence.
int order(DElem a, DElem b);
int order(const DMultiset& a, const DMultiset& b);
struct DLess {
  bool operator()(DElem a, DElem b) const { return order(a, b) < 0; }
};

DElem cons(const DMultiset& m, DElem s);
std::pair<DMultiset, DElem> uncons(DElem e);
std::vector<DMultiset> sequence(DElem e);
DElem from_sequence(const std::vector<DMultiset>& seq);
// size(*) = 1, size(m::s) = size(s) + mass(m) + 1 for m::s other than *.
std::size_t size(DElem e);
std::size_t mass(const DMultiset& m);
std::string to_string(DElem e);  // nested arrays, * is []

// Every element of size at most max_size once, in order().
std::vector<DElem> enumerate_delems(std::size_t max_size);

struct Entry {
  std::vector<DMultiset> ctx;  // one multiset per variable
  DElem val;
  std::size_t size() const;
};
int order(const Entry& a, const Entry& b);
bool operator==(const Entry& a, const Entry& b);
std::string to_string(const Entry& e);

struct Budgets {
  std::size_t output = 8;   // B: entries reported have size <= B
  std::size_t witness = 16; // W: every intermediate entry has size <= B + W
};

struct Interpretation {
  std::vector<Entry> entries;  // sorted
  // W < B, so even normal forms may have lost entries.
  bool clipped = false;
  // normalize_first ran out of fuel.
  bool exhausted = false;
  // The interpreted term is normal and nothing was clipped: the entries are
  // exactly those of the model up to size B.
  bool exact = false;
};

class InadequateVariables : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Interpretation interpret(const diff::Sum& s, const std::vector<Sym>& xs, const Budgets& b = {},
                         bool normalize_first = false, std::size_t fuel = kDefaultFuel);

// Equal when the enumerations agree.  An entry found on one side only proves
// NotEqual when the other side is exact; otherwise a difference gives Unknown.
Verdict interp_eq(const Interpretation& a, const Interpretation& b);
Verdict interp_eq(const diff::Sum& s, const diff::Sum& t, const std::vector<Sym>& xs, const Budgets& b = {},
                  bool normalize_first = false, std::size_t fuel = kDefaultFuel);

// The isomorphisms between D and [D => D] on finite samples, with elements of
// D carried as mrel atoms whose ids are element handles.
mrel::Elem encode(DElem e);
mrel::Rel lambda_rel(const std::vector<std::pair<DMultiset, DElem>>& sample);  // [D=>D] -> D
mrel::Rel app_rel(const std::vector<DElem>& sample);                           // D -> [D=>D]

}  // namespace difflam::dmodel
