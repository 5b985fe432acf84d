#pragma once

#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace epd {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Raised when an operation's precondition on its inputs is violated.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exhaustive procedure would exceed its configured budget.
/// Never accompanied by a partial answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed-capacity bit set over dense vertex indices [0, kCapacity).
class VertexSet {
 public:
  static constexpr int kWords = 2;
  static constexpr int kCapacity = 64 * kWords;

  constexpr VertexSet() = default;

  static VertexSet full(int n) {
    VertexSet s;
    for (int i = 0; i < n; ++i) s.insert(i);
    return s;
  }

  void insert(int i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  void erase(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
  bool contains(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }

  int size() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Smallest member, or -1 when empty.
  int first() const {
    for (int k = 0; k < kWords; ++k)
      if (words_[k]) return 64 * k + std::countr_zero(words_[k]);
    return -1;
  }

  VertexSet& operator|=(const VertexSet& o) {
    for (int k = 0; k < kWords; ++k) words_[k] |= o.words_[k];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& o) {
    for (int k = 0; k < kWords; ++k) words_[k] &= o.words_[k];
    return *this;
  }
  VertexSet& operator-=(const VertexSet& o) {
    for (int k = 0; k < kWords; ++k) words_[k] &= ~o.words_[k];
    return *this;
  }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

  bool intersects(const VertexSet& o) const {
    for (int k = 0; k < kWords; ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }
  bool subset_of(const VertexSet& o) const {
    for (int k = 0; k < kWords; ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (int k = 0; k < kWords; ++k) {
      uint64_t w = words_[k];
      while (w) {
        int b = std::countr_zero(w);
        f(64 * k + b);
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  const std::array<uint64_t, kWords>& words() const { return words_; }

  size_t hash() const {
    size_t h = 0;
    for (auto w : words_) h = h * 0x9E3779B97F4A7C15ULL ^ (w + 0x7F4A7C15ULL + (h << 6) + (h >> 2));
    return h;
  }

 private:
  std::array<uint64_t, kWords> words_{};
};

struct VertexSetHash {
  size_t operator()(const VertexSet& s) const { return s.hash(); }
};

namespace detail {

struct KeyHash {
  size_t operator()(const std::vector<uint64_t>& v) const {
    size_t h = v.size();
    for (uint64_t x : v) h ^= x + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace detail

/// Work limit shared by the exhaustive searches: a step counter plus an
/// optional wall-clock deadline. Exhaustion throws BudgetExceeded.
class Budget {
 public:
  Budget() = default;
  explicit Budget(uint64_t max_steps, std::optional<double> seconds = std::nullopt)
      : max_steps_(max_steps) {
    if (seconds) deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                                 std::chrono::duration<double>(*seconds));
  }

  static Budget unlimited() { return Budget(UINT64_MAX); }

  void tick(const char* what = "search") {
    if (++steps_ > max_steps_)
      throw BudgetExceeded(std::string(what) + ": step budget exhausted");
    if (deadline_ && (steps_ & 1023) == 0 && Clock::now() > *deadline_)
      throw BudgetExceeded(std::string(what) + ": time budget exhausted");
  }

  uint64_t steps() const { return steps_; }

 private:
  using Clock = std::chrono::steady_clock;
  uint64_t max_steps_ = 2'000'000'000ULL;
  uint64_t steps_ = 0;
  std::optional<Clock::time_point> deadline_;
};

}  // namespace epd
