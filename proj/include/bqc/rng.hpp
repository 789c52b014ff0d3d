#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace bqc {

// Seeded random stream. Every consumer derives its own labeled substream from
// one master seed, so multi-party runs stay reproducible however the pieces
// are reordered.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    // Substreams derive from the construction seed, not the current state.
    Rng substream(std::string_view label) const { return Rng(mix(seed_, label)); }
    Rng substream(std::uint64_t index) const {
        return Rng(splitmix(seed_ ^ (0x9e3779b97f4a7c15ULL + index)));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }

    double uniform() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Inclusive bounds; rejection sampling so results do not depend on the
    // standard library's distribution internals.
    int uniform_int(int lo, int hi) {
        const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<int>(v % range);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_int(0, static_cast<int>(i) - 1)]);
        }
    }

    static std::uint64_t mix(std::uint64_t seed, std::string_view label) {
        std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
        for (unsigned char c : label) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return splitmix(h);
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace bqc
