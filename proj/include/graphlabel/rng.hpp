#pragma once

#include <cstdint>
#include <vector>

namespace graphlabel {

// SplitMix64. Used directly as a counter-derived per-walk generator and to
// seed other state. Output sequences are pinned by the algorithm itself, so
// results are reproducible across platforms and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound). Modulo bias is negligible for bound << 2^64 and
    // keeps the draw count per call fixed, which determinism relies on.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

// Mixes a master seed with a stream index (walk id, node id, ...) so each
// stream is independent and fully determined by (seed, index).
inline SplitMix64 stream_rng(std::uint64_t master_seed, std::uint64_t index) {
    SplitMix64 mixer(master_seed ^ (0x9e3779b97f4a7c15ULL + index * 0xd1b54a32d192ed03ULL));
    return SplitMix64(mixer.next());
}

// Deterministic Fisher-Yates shuffle (std::shuffle is implementation-defined).
template <typename T>
void deterministic_shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace graphlabel
