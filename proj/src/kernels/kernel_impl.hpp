#ifndef CCLUST_KERNEL_IMPL_HPP
#define CCLUST_KERNEL_IMPL_HPP

#include <cstddef>

// Per-ISA entry points. Each namespace is defined in its own translation unit
// compiled with the matching target flags.

namespace cclust::kernels::scalar {
double squared_distance(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}

namespace cclust::kernels::avx2 {
double squared_distance(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}

namespace cclust::kernels::neon {
double squared_distance(const double* a, const double* b, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}

#endif
