#pragma once

#include <cstdint>
#include <random>

namespace sicheck {

//! SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

//! Seed for stream (seed, index, purpose). Replicate r of a study uses
//! derive_seed(seed, r, purpose) so results do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t purpose = 0);

//! Purposes for derive_seed.
inline constexpr std::uint64_t kStreamData = 0;
inline constexpr std::uint64_t kStreamBootstrap = 1;

//! 64-bit Mersenne Twister (std::mt19937_64) with portable uniform and
//! normal variates. The standard library distributions are
//! implementation-defined, so variates are generated here to keep
//! simulated tables identical across toolchains.
class Rng
{
public:
  explicit Rng(std::uint64_t seed)
    : engine_(seed)
  {
  }

  //! Uniform on [0, 1) with 53 random bits.
  double uniform();

  //! Standard normal via the Marsaglia polar method.
  double normal();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace sicheck
