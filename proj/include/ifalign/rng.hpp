#ifndef IFALIGN_RNG_HPP
#define IFALIGN_RNG_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace ifalign {

/// FNV-1a 64-bit hash; used for seed salting and file checksums.
std::uint64_t fnv1a64(const std::string& data);

/// Deterministic RNG with explicitly pinned distributions. std:: distribution
/// objects are implementation-defined, so uniform draws are implemented here
/// to keep generated datasets and initializations stable across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream derived from (seed, salt).
    Rng(std::uint64_t seed, const std::string& salt)
        : engine_(seed ^ fnv1a64(salt)) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n), n >= 1. Rejection-free modulo bias is
    /// negligible for desk-scale n but avoided anyway.
    std::size_t below(std::size_t n);

    /// k distinct indices sampled uniformly from [0, n), ascending.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace ifalign

#endif
