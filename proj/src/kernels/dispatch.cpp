#include "cclust/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "kernel_impl.hpp"

namespace cclust::kernels {

namespace {

constexpr Table kScalar{Isa::scalar, scalar::squared_distance, scalar::dot, scalar::axpy, scalar::rotate};

#ifdef CCLUST_HAVE_AVX2_KERNELS
constexpr Table kAvx2{Isa::avx2, avx2::squared_distance, avx2::dot, avx2::axpy, avx2::rotate};
#endif

#ifdef CCLUST_HAVE_NEON_KERNELS
constexpr Table kNeon{Isa::neon, neon::squared_distance, neon::dot, neon::axpy, neon::rotate};
#endif

const Table* initial_table() noexcept {
    if (const char* env = std::getenv("CCLUST_KERNELS")) {
        Isa requested;
        if (parse_isa(env, requested)) {
            if (const Table* t = table_for(requested)) {
                return t;
            }
        }
    }
    return table_for(detect_best());
}

std::atomic<const Table*>& current() noexcept {
    static std::atomic<const Table*> table{initial_table()};
    return table;
}

}

const Table& scalar_table() noexcept { return kScalar; }

const Table* table_for(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return &kScalar;
    case Isa::avx2:
#ifdef CCLUST_HAVE_AVX2_KERNELS
        if (__builtin_cpu_supports("avx2")) {
            return &kAvx2;
        }
#endif
        return nullptr;
    case Isa::neon:
#ifdef CCLUST_HAVE_NEON_KERNELS
        return &kNeon;
#else
        return nullptr;
#endif
    }
    return nullptr;
}

Isa detect_best() noexcept {
    if (table_for(Isa::avx2)) {
        return Isa::avx2;
    }
    if (table_for(Isa::neon)) {
        return Isa::neon;
    }
    return Isa::scalar;
}

const Table& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool set_active(Isa isa) noexcept {
    const Table* t = table_for(isa);
    if (!t) {
        return false;
    }
    current().store(t, std::memory_order_relaxed);
    return true;
}

std::string_view name(Isa isa) noexcept {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "unknown";
}

bool parse_isa(std::string_view text, Isa& out) noexcept {
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (text == name(isa)) {
            out = isa;
            return true;
        }
    }
    return false;
}

}
