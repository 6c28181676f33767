#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace qnetsim {

// Bitset over node ids 1..n. Iteration is always in ascending id order, which
// is the deterministic traversal order used throughout the protocol.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(int n) : words_(static_cast<std::size_t>(n) / 64 + 1, 0) {}

  void set(int id) { words_[static_cast<std::size_t>(id) >> 6] |= bit(id); }
  void reset(int id) { words_[static_cast<std::size_t>(id) >> 6] &= ~bit(id); }
  bool test(int id) const {
    return (words_[static_cast<std::size_t>(id) >> 6] & bit(id)) != 0;
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  // Visit set ids in ascending order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        f(static_cast<int>(wi * 64) + b);
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for_each([&](int id) { out.push_back(id); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  static std::uint64_t bit(int id) {
    return std::uint64_t{1} << (static_cast<unsigned>(id) & 63u);
  }

  std::vector<std::uint64_t> words_;
};

// Visit ids present in a or b (their union) in ascending order.
template <class F>
inline void for_each_union(const NodeSet& a, const NodeSet& b, F&& f) {
  const auto& wa = a.words();
  const auto& wb = b.words();
  const std::size_t n = wa.size() < wb.size() ? wa.size() : wb.size();
  for (std::size_t wi = 0; wi < n; ++wi) {
    std::uint64_t w = wa[wi] | wb[wi];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      f(static_cast<int>(wi * 64) + bit);
      w &= w - 1;
    }
  }
}

}  // namespace qnetsim
