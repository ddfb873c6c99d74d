#pragma once

#include <cmath>
#include <cstdint>

namespace lattice {

/// splitmix64: the per-replica stream state is
/// mix(master_seed XOR (replica+1) * 0x9E3779B97F4A7C15); every draw then
/// advances the state by the golden-ratio increment and applies the same
/// finalizer. Fully pinned so datasets are reproducible across platforms.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1].
    double next_unit() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard Gaussian via Box-Muller; caches the sine partner.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        spare_ = mag * std::sin(ang);
        has_spare_ = true;
        return mag * std::cos(ang);
    }

  private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

inline SplitMix64 replica_stream(std::uint64_t master_seed, std::uint64_t replica) {
    return SplitMix64(
        SplitMix64::mix(master_seed ^ ((replica + 1) * 0x9E3779B97F4A7C15ULL)));
}

}  // namespace lattice
