#include "difflam/symbol.hpp"

#include <atomic>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace difflam {
namespace {

constexpr Sym kInternalBit = 0x80000000u;

struct Table {
  std::shared_mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string, Sym> ids;
};

Table& table() {
  static Table t;
  return t;
}

std::atomic<Sym> fresh_counter{0};

}  // namespace

Sym intern(std::string_view name) {
  Table& t = table();
  std::string key(name);
  {
    std::shared_lock lock(t.mu);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
  }
  std::unique_lock lock(t.mu);
  auto [it, inserted] = t.ids.try_emplace(key, static_cast<Sym>(t.names.size()));
  if (inserted) t.names.push_back(key);
  return it->second;
}

std::string sym_name(Sym s) {
  if (s & kInternalBit) return "%" + std::to_string(s & ~kInternalBit);
  Table& t = table();
  std::shared_lock lock(t.mu);
  return t.names.at(s);
}

Sym fresh_sym() { return kInternalBit | (fresh_counter.fetch_add(1) & ~kInternalBit); }

bool is_internal(Sym s) { return (s & kInternalBit) != 0; }

int sym_order(Sym a, Sym b) {
  if (a == b) return 0;
  bool ia = is_internal(a), ib = is_internal(b);
  if (ia || ib) {
    if (ia && ib) return a < b ? -1 : 1;
    return ia ? -1 : 1;
  }
  Table& t = table();
  std::shared_lock lock(t.mu);
  int c = t.names[a].compare(t.names[b]);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

}  // namespace difflam
