#pragma once

#include "mdgemm/dtypes.hpp"

#include <cstdint>
#include <string_view>

namespace mdgemm {

// Counter-based splittable generator built on the splitmix64 mixing function.
// Every draw is a pure function of (seed, counter), so independent streams
// can be derived by hashing labels into the seed without shared state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(state_ += 0x9e3779b97f4a7c15ULL); }

    // Uniform in [-1, 1].
    double next_uniform() {
        constexpr double scale = 1.0 / 9007199254740992.0; // 2^-53
        double u01 = static_cast<double>(next_u64() >> 11) * scale;
        return 2.0 * u01 - 1.0;
    }

    // Derives an independent stream keyed by a string tag.
    Rng split(std::string_view tag) const {
        std::uint64_t h = state_ ^ 0x9e3779b97f4a7c15ULL;
        for (char ch : tag)
            h = mix(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(ch)));
        return Rng(h);
    }

    Rng split(std::uint64_t salt) const { return Rng(mix(state_ ^ salt)); }

private:
    std::uint64_t state_;
};

// Fills the logical elements of a view with uniform [-1, 1] values drawn per
// real component, in a storage-independent (i, j) order.
inline void fill_uniform(const MatrixView& v, Rng rng) {
    for (std::int64_t j = 0; j < v.n; ++j)
        for (std::int64_t i = 0; i < v.m; ++i) {
            double re = rng.next_uniform();
            double im = v.dtype.domain == Domain::Complex ? rng.next_uniform() : 0.0;
            store_elem(v, i, j, {re, im});
        }
}

} // namespace mdgemm
