#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace geolex::rng {

// Deterministic random source. mt19937_64 output is fully specified by the
// standard; the derived draws below are hand-rolled because the standard
// distributions (and std::shuffle) are implementation-defined and would break
// the bit-reproducibility promises made by the trainer and the splitter.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound); bound > 0. Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        std::uint64_t x = gen_();
        while (x < threshold) x = gen_();
        return x % bound;
    }

private:
    std::mt19937_64 gen_;
};

// Fisher-Yates with a pinned visitation order.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(v[i - 1], v[j]);
    }
}

// Stream derivation for per-worker generators (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace geolex::rng
