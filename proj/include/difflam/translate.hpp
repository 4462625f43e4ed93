#pragma once

#include <cstddef>

#include "difflam/diff_term.hpp"
#include "difflam/res_term.hpp"
#include "difflam/rewrite.hpp"

// Translations between the resource calculus and the differential calculus.
namespace difflam {

// (M[L1..Lk, N1!..Nn!])^d = (D^k M^d . (L1^d..Lk^d)) (N1^d + ... + Nn^d)
diff::Sum to_diff(const res::Sum& m);
diff::Sum to_diff(const res::Term& m);

// (s T)^r = s^r[(T^r)!] and (D^k s . (t1..tk))^r = \y. s^r[t1^r..tk^r, y!]
// with y fresh.
res::Sum to_res(const diff::Sum& s);
res::Sum to_res(const diff::Term& s);

// (S^r)^d against S with eta; pure terms must also come back unchanged.
Verdict roundtrip_dr(const diff::Sum& s, std::size_t fuel = kDefaultFuel);
// (M^d)^r against M.
Verdict roundtrip_rd(const res::Sum& m, std::size_t fuel = kDefaultFuel);

}  // namespace difflam
