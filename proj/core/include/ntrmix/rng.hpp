// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace ntrmix {

/// Seedable, splittable random source. All samplers are implemented here
/// rather than through std distributions, whose output is
/// implementation-defined; identical seeds must give identical draws for
/// the reproducibility contract. Streams derived from (seed, stream_id)
/// are independent, so replicates agree whether run serially or in
/// parallel.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    return Rng(mix(seed) ^ mix(stream_id * 0x9E3779B97F4A7C15ULL + 1));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal (Box-Muller, one value per call).
  double normal();

  /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang squeeze).
  double gamma(double shape);

  /// Beta(a, b), a > 0, b > 0.
  double beta(double a, double b);

  /// Index sampled proportionally to the (unnormalized, nonnegative)
  /// weights. Throws if all weights are zero.
  int categorical(std::span<const double> weights);

 private:
  static std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace ntrmix
