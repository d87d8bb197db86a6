#ifndef MIA_CORE_HPP
#define MIA_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mia {

/// Bad input, unknown identifier, or violated precondition. CLI exit code 2.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration or valuation space exceeded the configured budget.
/// Work is refused outright; results are never silently sampled.
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A verification built into a construction failed. Must never fire.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

/// Default cap on exhaustive spaces (tuple counts, valuation counts).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

inline void require_within_budget(std::uint64_t count, std::uint64_t budget,
                                  const std::string& what) {
  if (count > budget)
    throw ResourceError(what + " needs " + std::to_string(count) +
                        " cases, over the budget of " + std::to_string(budget));
}

inline int popcount32(std::uint32_t x) { return __builtin_popcount(x); }

/// Iterate set bit positions of a 32-bit mask, lowest first.
template <typename Fn>
void for_each_bit(std::uint32_t mask, Fn&& fn) {
  while (mask) {
    int i = __builtin_ctz(mask);
    fn(i);
    mask &= mask - 1;
  }
}

/// Fixed-size bit set backed by 64-bit words. Used for triple sets, where
/// frames of up to a dozen worlds need a few thousand bits.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t bits)
      : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) {
    words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }
  bool none() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  DynBitset& subtract(const DynBitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  /// Complement within the declared bit width.
  DynBitset complemented() const {
    DynBitset r(bits_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.trim();
    return r;
  }

  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }
  friend DynBitset operator-(DynBitset a, const DynBitset& b) {
    return a.subtract(b);
  }

  bool operator==(const DynBitset& o) const {
    return bits_ == o.bits_ && words_ == o.words_;
  }
  bool operator!=(const DynBitset& o) const { return !(*this == o); }

  bool is_subset_of(const DynBitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        int b = __builtin_ctzll(w);
        fn(wi * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

 private:
  void trim() {
    if (bits_ & 63) {
      std::uint64_t keep = (std::uint64_t{1} << (bits_ & 63)) - 1;
      words_.back() &= keep;
    }
  }

  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mia

#endif  // MIA_CORE_HPP
