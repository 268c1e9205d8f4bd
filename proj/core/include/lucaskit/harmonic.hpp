#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace lucaskit {

/// H_0 .. H_{p-1} reduced mod p.  H_0 is the empty sum, and for p >= 3 the
/// top entry H_{p-1} vanishes mod p.
struct HarmonicTable {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> values;

  /// Range-checked access; throws std::out_of_range for n >= p.
  std::uint64_t at(std::uint64_t n) const;
};

/// Table of harmonic numbers mod p, computed in O(p) via batch inversion.
/// Tables are memoized in a bounded FIFO store shared across threads;
/// a concurrent miss may recompute, which is benign.
std::shared_ptr<const HarmonicTable> harmonic_table(std::uint64_t p);

/// H_n mod p for 0 <= n <= p-1.
std::uint64_t harmonic(std::uint64_t p, std::uint64_t n);

/// Resize the memo store (default capacity 64 primes).
void set_harmonic_cache_capacity(std::size_t capacity);

}  // namespace lucaskit
