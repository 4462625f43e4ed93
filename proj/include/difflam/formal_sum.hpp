#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace difflam {

// Finite formal sum with natural-number multiplicities, stored sorted by
// order(a, b) (found by ADL) with one entry per distinct element.  The empty
// sum is 0.
template <class T>
class FormalSum {
 public:
  using Item = std::pair<T, std::uint64_t>;

  FormalSum() = default;
  explicit FormalSum(T t, std::uint64_t n = 1) {
    if (n) items_.emplace_back(std::move(t), n);
  }

  static FormalSum from_items(std::vector<Item> items) {
    FormalSum s;
    std::sort(items.begin(), items.end(),
              [](const Item& a, const Item& b) { return order(a.first, b.first) < 0; });
    for (auto& it : items) {
      if (it.second == 0) continue;
      if (!s.items_.empty() && order(s.items_.back().first, it.first) == 0)
        s.items_.back().second += it.second;
      else
        s.items_.push_back(std::move(it));
    }
    return s;
  }

  bool empty() const { return items_.empty(); }
  std::size_t distinct() const { return items_.size(); }
  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (auto& it : items_) n += it.second;
    return n;
  }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const Item& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Item>& items() const { return items_; }

  std::uint64_t count(const T& t) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), t,
                               [](const Item& a, const T& b) { return order(a.first, b) < 0; });
    return (it != items_.end() && order(it->first, t) == 0) ? it->second : 0;
  }

  FormalSum& operator+=(const FormalSum& o) {
    if (o.items_.empty()) return *this;
    std::vector<Item> out;
    out.reserve(items_.size() + o.items_.size());
    auto a = items_.begin(), b = o.items_.begin();
    while (a != items_.end() && b != o.items_.end()) {
      int c = order(a->first, b->first);
      if (c < 0) {
        out.push_back(*a++);
      } else if (c > 0) {
        out.push_back(*b++);
      } else {
        out.emplace_back(a->first, a->second + b->second);
        ++a;
        ++b;
      }
    }
    out.insert(out.end(), a, items_.end());
    out.insert(out.end(), b, o.items_.end());
    items_ = std::move(out);
    return *this;
  }
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }

  FormalSum scaled(std::uint64_t n) const {
    if (n == 0) return {};
    FormalSum s = *this;
    for (auto& it : s.items_) it.second *= n;
    return s;
  }

  // All multiplicities collapsed to 1.
  FormalSum idempotent() const {
    FormalSum s = *this;
    for (auto& it : s.items_) it.second = 1;
    return s;
  }

  // This sum with every copy of t removed.
  FormalSum without(const T& t) const {
    FormalSum s;
    for (auto& it : items_)
      if (order(it.first, t) != 0) s.items_.push_back(it);
    return s;
  }

  friend int order(const FormalSum& a, const FormalSum& b) {
    std::size_t n = std::min(a.items_.size(), b.items_.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = order(a.items_[i].first, b.items_[i].first);
      if (c) return c;
      if (a.items_[i].second != b.items_[i].second) return a.items_[i].second < b.items_[i].second ? -1 : 1;
    }
    if (a.items_.size() == b.items_.size()) return 0;
    return a.items_.size() < b.items_.size() ? -1 : 1;
  }
  friend bool operator==(const FormalSum& a, const FormalSum& b) {
    if (a.items_.size() != b.items_.size()) return false;
    for (std::size_t i = 0; i < a.items_.size(); ++i)
      if (a.items_[i].second != b.items_[i].second || order(a.items_[i].first, b.items_[i].first) != 0)
        return false;
    return true;
  }
  friend bool operator!=(const FormalSum& a, const FormalSum& b) { return !(a == b); }

 private:
  std::vector<Item> items_;
};

// Accumulates summands in any order; build() sorts and merges once.
template <class T>
class SumBuilder {
 public:
  void add(T t, std::uint64_t n = 1) {
    if (n) items_.emplace_back(std::move(t), n);
  }
  void add(const FormalSum<T>& s, std::uint64_t scale = 1) {
    if (!scale) return;
    for (auto& it : s) items_.emplace_back(it.first, it.second * scale);
  }
  FormalSum<T> build() { return FormalSum<T>::from_items(std::move(items_)); }

 private:
  std::vector<typename FormalSum<T>::Item> items_;
};

}  // namespace difflam
