#ifndef CCLUST_RANDOM_HPP
#define CCLUST_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace cclust {

using Seed = std::uint64_t;

/// Stable child seed for stream `index` of `parent`; used to give each
/// ensemble instance or restart an independent, order-free random stream.
Seed derive_seed(Seed parent, std::uint64_t index) noexcept;

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n).
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Standard normal draw (Marsaglia polar method, no cached spare).
double standard_normal(Rng& rng);

/// `m` distinct indices from [0, n), returned in ascending order.
std::vector<std::size_t> sample_without_replacement(Rng& rng, std::size_t n, std::size_t m);

}

#endif
