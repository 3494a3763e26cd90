#pragma once

#include <cstdint>

namespace treemoments {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: the i-th output of stream (key) is a pure
// function of key and i, so streams can be recreated anywhere.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
        : key_(mix64(key ^ 0x6a09e667f3bcc909ULL)), counter_(counter) {}

    // Key for sub-stream `index` of a master seed.
    static std::uint64_t derive(std::uint64_t master, std::uint64_t index) {
        return mix64(mix64(master) + 0x9e3779b97f4a7c15ULL * (index + 1));
    }

    std::uint64_t next() {
        ++counter_;
        return mix64(key_ + 0x9e3779b97f4a7c15ULL * counter_);
    }

    // Uniform on [0, bound), Lemire's multiply-and-reject.
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

}  // namespace treemoments
