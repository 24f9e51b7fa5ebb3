#pragma once

#include <cstdint>
#include <string>

namespace bellmc {

/// Seedable random stream with cheap substream derivation.
///
/// The generator is xoshiro256++ whose 256-bit state is filled from a
/// splitmix64 chain over (seed, stream). Substreams with distinct stream
/// indices are statistically independent, so event i of a dataset can be
/// drawn from RandomStream(seed, i) and the result is identical no matter
/// how events are partitioned across workers.
class RandomStream {
 public:
  RandomStream() : RandomStream(0, 0) {}
  /// domain separates independent uses of the same (seed, stream) pair,
  /// e.g. generation vs detector smearing of the same event.
  RandomStream(std::uint64_t seed, std::uint64_t stream,
               std::uint64_t domain = 0);

  /// Algorithm identifier recorded in output metadata.
  static std::string algorithm() { return "xoshiro256++/splitmix64-streams"; }

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform();

  /// Uniform in (0, 1]; never returns 0, safe as a log() argument.
  double uniform_pos();

  double uniform_range(double lo, double hi);

  /// Exponential with the given mean (inverse-CDF on uniform_pos).
  double exponential(double mean);

  /// Standard normal via Box-Muller; two uniforms per call, no cached spare.
  double gaussian();
  double gaussian(double mean, double sigma);

  /// true with probability p.
  bool bernoulli(double p);

 private:
  std::uint64_t state_[4];
};

/// Fixed stream domains used across the pipeline.
namespace stream_domain {
inline constexpr std::uint64_t kGeneration = 0;
inline constexpr std::uint64_t kDetector = 1;
inline constexpr std::uint64_t kSampleAssignment = 2;
inline constexpr std::uint64_t kEnsemble = 3;
}  // namespace stream_domain

}  // namespace bellmc
