#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace difflam {

// Interned variable name.  Ids are process-local; anything that must be
// deterministic (term order, printing) goes through sym_order, which looks
// at the names.
using Sym = std::uint32_t;

Sym intern(std::string_view name);
std::string sym_name(Sym s);

// A name the parser can never produce, unique for the process.  Fresh names
// are not stored in the intern table; they order before every user name and
// among themselves by creation time.
Sym fresh_sym();
bool is_internal(Sym s);

int sym_order(Sym a, Sym b);

}  // namespace difflam
