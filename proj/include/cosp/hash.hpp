#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace cosp {

// 128-bit content digest. Used for label-independent color keys and graph
// signatures; never used as the sole identity inside a single refinement run.
struct Digest128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend auto operator<=>(const Digest128&, const Digest128&) = default;

  std::string hex() const;
};

struct Digest128Hash {
  std::size_t operator()(const Digest128& d) const noexcept {
    return static_cast<std::size_t>(d.lo ^ (d.hi * 0x9e3779b97f4a7c15ULL));
  }
};

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive streaming hasher with two independent 64-bit lanes.
class Hasher {
 public:
  explicit Hasher(std::uint64_t domain = 0)
      : a_(mix64(domain ^ 0x243f6a8885a308d3ULL)),
        b_(mix64(domain + 0x13198a2e03707344ULL)) {}

  Hasher& add(std::uint64_t x) {
    ++count_;
    a_ = mix64(a_ ^ (x + 0x9e3779b97f4a7c15ULL));
    b_ = mix64(b_ + x * 0xc2b2ae3d27d4eb4fULL + count_);
    return *this;
  }
  Hasher& add(std::int64_t x) { return add(static_cast<std::uint64_t>(x)); }
  Hasher& add(int x) { return add(static_cast<std::uint64_t>(static_cast<std::int64_t>(x))); }
  Hasher& add(const Digest128& d) { return add(d.hi).add(d.lo); }

  Digest128 finish() const {
    Digest128 d;
    d.lo = mix64(a_ ^ count_);
    d.hi = mix64(b_ ^ ((a_ << 32) | (a_ >> 32)) ^ (count_ * 0x165667b19e3779f9ULL));
    return d;
  }

 private:
  std::uint64_t a_;
  std::uint64_t b_;
  std::uint64_t count_ = 0;
};

}  // namespace cosp
