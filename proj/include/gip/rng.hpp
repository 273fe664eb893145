#pragma once

#include <cstdint>

namespace gip {

/// Counter-based random stream: output k of stream (seed, stream_id) is
/// mix64(base + k*gamma), the SplittableRandom construction. Streams for
/// distinct ids are independent of each other and of any execution schedule,
/// which is what makes parallel Monte Carlo runs reproducible.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform on (0, 1].
    double next_uniform();

    /// Standard normal by Box-Muller; the spare draw is cached.
    double next_normal();

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace gip
