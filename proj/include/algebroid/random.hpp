#pragma once

#include <cstdint>
#include <vector>

#include "algebroid/field.hpp"

namespace algebroid {

/// Counter-based generator: the n-th draw is splitmix64(seed, n), so any
/// stream is reproducible from (seed, stream) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : key_(mix(seed ^ mix(stream + 0x5851F42D4C957F2DULL))) {}

  std::uint64_t next() { return mix(key_ + 0x9E3779B97F4A7C15ULL * ++counter_); }
  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// `count` points uniform in [lo, hi]^m.
std::vector<Point> sample_points(std::uint64_t seed, std::size_t count, std::size_t m, double lo = -1.0,
                                 double hi = 1.0);

/// Polynomial with every monomial of total degree <= max_degree and
/// coefficients uniform in [lo, hi].
ScalarField random_polynomial(CounterRng& rng, std::size_t nvars, std::uint32_t max_degree, double lo = -1.0,
                              double hi = 1.0);

/// All exponent vectors of total degree <= max_degree, graded-lexicographic.
std::vector<Exponents> monomials_up_to(std::size_t nvars, std::uint32_t max_degree);

}  // namespace algebroid
