#pragma once

#include <cstdint>
#include <string_view>

namespace surfgrf::rng {

/// Philox4x32-10 block: 128-bit counter, 64-bit key.
struct PhiloxBlock {
  std::uint32_t v[4];
};

PhiloxBlock philox4x32(const std::uint32_t counter[4],
                       const std::uint32_t key[2]);

/// Counter-based stream: (seed, stream) select the key and the high counter
/// words, so draws are reproducible and independent of thread scheduling.
/// Normal variates use the inverse CDF, keeping streams splittable and
/// platform-stable.
class Substream {
public:
  Substream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform();  // (0,1)
  double normal();   // N(0,1) via inverse CDF

private:
  std::uint32_t key_[2];
  std::uint32_t stream_[2];
  std::uint64_t block_ = 0;
  std::uint32_t buf_[4] = {};
  int avail_ = 0;
};

/// Derives an independent base seed for a named stream family
/// (e.g. "mean" vs "cov" sample sets).
std::uint64_t seed_for_tag(std::uint64_t base_seed, std::string_view tag);

/// Double-precision inverse of the standard normal CDF (Wichura's AS 241).
double inverse_normal_cdf(double p);

}  // namespace surfgrf::rng
