#pragma once

#include <cstddef>
#include <optional>

#include "difflam/diff_term.hpp"
#include "difflam/res_term.hpp"

namespace difflam {

enum class Verdict { Equal, NotEqual, Unknown };
const char* to_string(Verdict v);

// Which redex a step contracts.  Steps always work on the least summand
// (in term order) that has a redex of the requested kind.
enum class Strategy {
  LeftmostOutermost,
  LeftmostInnermost,
  Head,  // only redexes in head position: under abstractions and in function parts
};

inline constexpr std::size_t kDefaultFuel = 10000;
// Normalization also stops, as if out of fuel, once a sum grows past this.
inline constexpr std::size_t kSizeGuard = 200000;

template <class S>
struct Normalized {
  S term;
  bool exhausted = false;
  std::size_t steps = 0;
};

namespace diff {

// One beta or beta_D step; nullopt at normal form (for the strategy).
std::optional<Sum> step(const Sum& s, Strategy st = Strategy::LeftmostOutermost);

// Contracts every \x.s x with x not free in s.
Sum eta_contract(const Sum& s);

Normalized<Sum> normalize(const Sum& s, std::size_t fuel = kDefaultFuel, bool eta = false,
                          Strategy st = Strategy::LeftmostOutermost);

Verdict theory_eq(const Sum& a, const Sum& b, std::size_t fuel = kDefaultFuel, bool eta = false,
                  bool idempotent = false);

}  // namespace diff

namespace res {

// One giant-step beta^r step: the whole bag is consumed at once.
std::optional<Sum> step(const Sum& s, Strategy st = Strategy::LeftmostOutermost);

// Contracts every \x.M[x!] with x not free in M.
Sum eta_contract(const Sum& s);

Normalized<Sum> normalize(const Sum& s, std::size_t fuel = kDefaultFuel, bool eta = false,
                          Strategy st = Strategy::LeftmostOutermost);

Verdict theory_eq(const Sum& a, const Sum& b, std::size_t fuel = kDefaultFuel, bool eta = false,
                  bool idempotent = false);

}  // namespace res
}  // namespace difflam
