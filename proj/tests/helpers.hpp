#pragma once

#include <string>

#include "difflam/syntax.hpp"

namespace th {

inline const difflam::Prelude& prelude() {
  static const difflam::Prelude p = {
      {"I", "\\x.x"},
      {"Delta", "\\x.x x"},
      {"Omega", "Delta Delta"},
      {"Y", "\\f.(\\x.f (x x)) (\\x.f (x x))"},
  };
  return p;
}

inline difflam::diff::Sum D(const std::string& s) { return difflam::parse_diff(s, prelude()); }
inline difflam::res::Sum R(const std::string& s) { return difflam::parse_res(s, prelude()); }

}  // namespace th
