#pragma once

#include <stdexcept>
#include <vector>

#include "difflam/diff_term.hpp"
#include "difflam/res_term.hpp"

namespace difflam {

class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace diff {

// S{T/x}.  Capture cannot happen: T carries no bound indices, so going under
// a binder needs no renaming.
Sum subst(const Sum& s, Sym x, const Sum& t);
Sum subst(const Term& s, Sym x, const Sum& t);

// The derivative dS/dx . T: replaces exactly one linear occurrence of x.
Sum dsubst(const Sum& s, Sym x, const Sum& t);
Sum dsubst(const Term& s, Sym x, const Sum& t);

// d^n S / dx1...dxn . (t1..tn), iterated left to right.  Throws
// PreconditionViolation if some xi is free in some tj.
Sum dsubst_multi(const Sum& s, const std::vector<Sym>& xs, const std::vector<Sum>& ts);

// body{T/#0} for the body of an abstraction.
Sum instantiate(const Term& body, const Sum& t);

}  // namespace diff

namespace res {

// Linear substitution A<N/x>, bilinear in A and N.
Sum lsubst(const Sum& a, Sym x, const Sum& n);
Sum lsubst(const Term& a, Sym x, const Sum& n);
BagSum lsubst(const Bag& p, Sym x, const Sum& n);

// Classic substitution A{N/x}; a banged resource M! becomes the bag of the
// summands of M{N/x}, each banged.
Sum rsubst(const Sum& a, Sym x, const Sum& n);
Sum rsubst(const Term& a, Sym x, const Sum& n);
BagSum rsubst(const Bag& p, Sym x, const Sum& n);

}  // namespace res
}  // namespace difflam
