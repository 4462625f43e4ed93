#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "difflam/diff_term.hpp"
#include "difflam/res_term.hpp"

// Concrete syntax.
//
// differential:
//   sum   := '0' | sterm ('+' sterm)*
//   sterm := atom+                                   (left-associative)
//   atom  := var | '(' sum ')' | '\' var+ '.' sterm | 'D(' sterm ';' sterm (',' sterm)* ')'
// resource:
//   rsum  := '0' | rterm ('+' rterm)*
//   rterm := ratom bag*
//   ratom := var | '(' rsum ')' | '\' var+ '.' rterm
//   bag   := '[' (res (',' res)*)? ']'
//   res   := rterm '!'?
// var := [a-zA-Z][a-zA-Z0-9_]*; whitespace is insignificant.  A sum with
// multiplicity n prints its summand n times.
namespace difflam {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::vector<std::string> expected, std::string found);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

// Abbreviations expanded at variable-occurrence positions, as if the
// definition text were pasted in parentheses.  A definition may use the ones
// before it.
using Prelude = std::vector<std::pair<std::string, std::string>>;

diff::Sum parse_diff(std::string_view text, const Prelude& prelude = {});
res::Sum parse_res(std::string_view text, const Prelude& prelude = {});

std::string print(const diff::Sum& s);
std::string print(const diff::Term& t);
std::string print(const res::Sum& s);
std::string print(const res::Term& t);
std::string print(const res::Bag& b);

bool valid_var_name(std::string_view name);

}  // namespace difflam
