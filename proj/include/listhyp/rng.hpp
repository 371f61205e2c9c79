#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace listhyp {

/// SplitMix64 finalizer. Used to derive independent sub-seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Sub-seed for stream `stream` of a command-level `seed`: mix64(seed ^ mix64(stream)).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

/// Seedable generator whose output depends only on 64-bit integer arithmetic.
///
/// The raw engine is std::mt19937_64, which the standard fixes bit-for-bit. The
/// continuous samplers are written out here rather than taken from <random>,
/// whose distributions are implementation-defined and differ between libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  double standard_normal();

  /// Gamma(shape, 1) by Marsaglia-Tsang. Shapes below 1 use Gamma(shape + 1) * U^(1/shape).
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Symmetric Dirichlet(concentration) sample of dimension n.
std::vector<double> sample_dirichlet(Rng& rng, std::size_t n, double concentration);

}  // namespace listhyp
