#ifndef CCLUST_KERNELS_HPP
#define CCLUST_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string_view>

/**
 * @file kernels.hpp
 * @brief Data-parallel inner loops with a scalar reference and ISA variants.
 *
 * Every variant computes the same quantity. Elementwise kernels (`axpy`,
 * `rotate`) are bit-identical across variants because no variant contracts
 * multiply-adds. Reductions (`dot`, `squared_distance`) use four or more
 * independent accumulators in the vector variants, so they match the scalar
 * reference only up to round-off.
 *
 * The active variant is chosen once at startup from the CPU features, and can
 * be overridden with the `CCLUST_KERNELS` environment variable (`scalar`,
 * `avx2`, `neon`) or `set_active()`.
 */

namespace cclust::kernels {

enum class Isa { scalar, avx2, neon };

struct Table {
    Isa isa;
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y += alpha * x
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// Plane rotation: x' = c*x - s*y, y' = s*x + c*y.
    void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
};

const Table& scalar_table() noexcept;

/// Table for `isa` if it was compiled in and the CPU supports it, else nullptr.
const Table* table_for(Isa isa) noexcept;

/// Best variant available on this machine.
Isa detect_best() noexcept;

const Table& active() noexcept;

/// Switch the process-wide variant. Returns false if `isa` is unavailable.
bool set_active(Isa isa) noexcept;

std::string_view name(Isa isa) noexcept;

/// Parse a variant name; returns false on unknown names.
bool parse_isa(std::string_view text, Isa& out) noexcept;

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    return active().squared_distance(a.data(), b.data(), a.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

inline void rotate(std::span<double> x, std::span<double> y, double c, double s) noexcept {
    active().rotate(x.data(), y.data(), c, s, x.size());
}

}

#endif
