#include "bellmc/rng.hpp"

#include <cmath>
#include <numbers>

namespace bellmc {

namespace {

// splitmix64 step; used only to expand (seed, stream) into generator state.
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t domain) {
  // Decorrelate the inputs before expansion; a plain XOR would make
  // (seed, stream) and (seed^k, stream^k) collide.
  std::uint64_t x = seed;
  std::uint64_t mixed = splitmix64(x) ^ (stream * 0xda942042e4dd58b5ULL) ^
                        (domain * 0x8bb84b93962eacc9ULL);
  std::uint64_t y = mixed;
  for (auto& word : state_) word = splitmix64(y);
  // All-zero state is invalid for xoshiro; splitmix64 cannot emit four zeros
  // from any input, so no further check is needed.
}

std::uint64_t RandomStream::next_u64() {
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RandomStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_pos() {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RandomStream::uniform_range(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RandomStream::exponential(double mean) {
  return -mean * std::log(uniform_pos());
}

double RandomStream::gaussian() {
  const double u1 = uniform_pos();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::gaussian(double mean, double sigma) {
  return mean + sigma * gaussian();
}

bool RandomStream::bernoulli(double p) { return uniform() < p; }

}  // namespace bellmc
