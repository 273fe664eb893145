#include "gip/rng.hpp"

#include <cmath>
#include <numbers>

namespace gip {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_id) {
    // hash the pair so adjacent stream ids start far apart
    state_ = mix64(mix64(seed ^ kGamma) + stream_id * 0xda942042e4dd58b5ULL);
}

std::uint64_t CounterRng::next_u64() {
    state_ += kGamma;
    return mix64(state_);
}

double CounterRng::next_uniform() {
    // 53 significant bits, shifted into (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

}  // namespace gip
