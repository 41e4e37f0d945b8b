#include "rbql/rng.hpp"

namespace rbql {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : text) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace

std::uint64_t Rng::derive_seed(std::string_view label) const {
    return mix64((seed_ + kGolden) ^ fnv1a(label));
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint32_t Rng::next_below(std::uint32_t bound) {
    // Lemire multiply-shift; bias is below 2^-32 and irrelevant at the
    // bounds used here (<= a few thousand).
    const std::uint64_t wide = (next_u64() >> 32) * static_cast<std::uint64_t>(bound);
    return static_cast<std::uint32_t>(wide >> 32);
}

} // namespace rbql
