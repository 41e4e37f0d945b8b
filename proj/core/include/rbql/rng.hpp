#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace rbql {

/// Deterministic pseudo-random generator (splitmix64) with labeled
/// sub-stream derivation. Every piece of randomness in the project flows
/// from one master seed through fixed labels, so components are
/// individually reproducible and output files are byte-stable across
/// platforms (std distributions are not pinned by the standard, so none
/// are used here).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    /// Sub-stream derived from the construction seed (not the current
    /// draw position), so derivations are order-independent.
    Rng derive(std::string_view label) const { return Rng(derive_seed(label)); }

    std::uint64_t derive_seed(std::string_view label) const;

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random mantissa bits.
    double next_double();

    /// Uniform in [0, bound); bound must be positive.
    std::uint32_t next_below(std::uint32_t bound);

    /// Fisher-Yates shuffle driven by this stream.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = next_below(static_cast<std::uint32_t>(i));
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace rbql
