#include "ifalign/rng.hpp"

namespace ifalign {

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::size_t Rng::below(std::size_t n) {
    // classic rejection: discard the sliver where 2^64 % n values bunch up
    std::uint64_t nn = n;
    std::uint64_t threshold = (0 - nn) % nn;
    for (;;) {
        std::uint64_t r = bits();
        if (r >= threshold) return static_cast<std::size_t>(r % nn);
    }
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    // Knuth's sequential sampling; output is ascending by construction
    std::vector<std::size_t> out;
    out.reserve(k);
    std::size_t needed = k < n ? k : n;
    for (std::size_t i = 0; i < n && needed > 0; ++i) {
        if (below(n - i) < needed) {
            out.push_back(i);
            --needed;
        }
    }
    return out;
}

}  // namespace ifalign
