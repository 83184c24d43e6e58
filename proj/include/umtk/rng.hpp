#pragma once

#include <cstdint>

#include "umtk/rational.hpp"

namespace umtk {

// Deterministic 64-bit generator (splitmix64). Implemented here rather than
// on top of <random> so the draw sequence is identical on every platform and
// standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Modulo bias is irrelevant at the tiny ranges used for
  // generation, and keeps the draw count per call fixed at one.
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

  bool coin() { return (next() & 1) != 0; }

  // Positive rational p/q with 1 <= p <= max_num, 1 <= q <= max_den.
  Rational positive_rational(unsigned long max_num, unsigned long max_den) {
    long p = static_cast<long>(1 + below(max_num));
    long q = static_cast<long>(1 + below(max_den));
    return Rational(p, q);
  }

 private:
  std::uint64_t state_;
};

}  // namespace umtk
