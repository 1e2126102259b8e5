#pragma once

#include <cstdint>
#include <vector>

namespace atld {

// Subset of a model's states, fixed universe size, packed bits.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int universe)
      : n_(universe), bits_((universe + 63) / 64, 0) {}

  static StateSet all(int universe) {
    StateSet s(universe);
    for (int v = 0; v < universe; ++v) s.insert(v);
    return s;
  }

  int universe() const { return n_; }

  void insert(int v) { bits_[v >> 6] |= (uint64_t{1} << (v & 63)); }
  void erase(int v) { bits_[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
  bool contains(int v) const {
    return (bits_[v >> 6] >> (v & 63)) & 1;
  }

  int count() const {
    int c = 0;
    for (uint64_t w : bits_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (uint64_t w : bits_)
      if (w) return false;
    return true;
  }

  StateSet& operator|=(const StateSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
  }
  StateSet& operator-=(const StateSet& o) {
    for (size_t i = 0; i < bits_.size(); ++i) bits_[i] &= ~o.bits_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  StateSet complement() const {
    StateSet r = all(n_);
    r -= *this;
    return r;
  }

  bool operator==(const StateSet& o) const {
    return n_ == o.n_ && bits_ == o.bits_;
  }
  bool operator!=(const StateSet& o) const { return !(*this == o); }

  bool subset_of(const StateSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int v = 0; v < n_; ++v)
      if (contains(v)) out.push_back(v);
    return out;
  }

 private:
  int n_ = 0;
  std::vector<uint64_t> bits_;
};

}  // namespace atld
