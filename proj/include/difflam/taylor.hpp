#pragma once

#include <cstddef>

#include "difflam/diff_term.hpp"
#include "difflam/rewrite.hpp"

namespace difflam::diff {

struct TaylorBudget {
  std::size_t degree = 3;     // largest k kept in each application's expansion
  std::size_t size_cap = 400; // summands larger than this are dropped
};

struct TaylorResult {
  Sum term;              // idempotent
  bool clipped = false;  // some summand was dropped by the size cap
  // Some application still had nonzero terms at k = K, so higher k were cut.
  bool truncated = false;
};

// Finite approximant of S*: every application sT becomes sum_{k<=K} (D^k s*.(T*,..,T*))0.
TaylorResult taylor(const Sum& s, const TaylorBudget& b = {});

// Normal form on the fragment made of iterated linear applications and
// applications to 0.  Other applications are reduced by beta as well, so
// fuel can run out on input outside the fragment.
Normalized<Sum> taylor_nf(const Sum& s, std::size_t fuel = kDefaultFuel);

// Compares NF(S*) and NF(T*) as summand sets at the given budget.  NotEqual
// is replaced by Unknown if either expansion was clipped or truncated, since
// the missing summands may reduce to the difference.
Verdict taylor_eq(const Sum& a, const Sum& b, const TaylorBudget& budget = {},
                  std::size_t fuel = kDefaultFuel);

}  // namespace difflam::diff
