#include "netslice/kernels/kernels.hpp"

#include <cstdlib>
#include <string>

#include "netslice/util/errors.hpp"

namespace netslice::kernels {

namespace {

struct Table {
    Backend backend;
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*sq_l2)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
};

constexpr Table kScalar{Backend::Scalar, scalar::dot, scalar::axpy, scalar::sq_l2, scalar::sum};

#if defined(__x86_64__) || defined(_M_X64)
constexpr Table kAvx2{Backend::Avx2, avx2::dot, avx2::axpy, avx2::sq_l2, avx2::sum};
#endif

Table pick_default() {
    if (const char* env = std::getenv("NETSLICE_KERNEL_BACKEND")) {
        const std::string v = env;
        if (v == "scalar") return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
        if (v == "avx2" && cpu_supports_avx2()) return kAvx2;
#endif
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_supports_avx2()) return kAvx2;
#endif
    return kScalar;
}

Table g_table = pick_default();

} // namespace

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() { return g_table.backend; }

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar: return "scalar";
        case Backend::Avx2: return "avx2";
    }
    return "?";
}

void force_backend(Backend b) {
    if (b == Backend::Scalar) {
        g_table = kScalar;
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::Avx2 && cpu_supports_avx2()) {
        g_table = kAvx2;
        return;
    }
#endif
    throw internal_error("requested kernel backend is not supported on this CPU");
}

double dot(const double* a, const double* b, std::size_t n) { return g_table.dot(a, b, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { g_table.axpy(a, x, y, n); }
double sq_l2(const double* a, const double* b, std::size_t n) { return g_table.sq_l2(a, b, n); }
double sum(const double* x, std::size_t n) { return g_table.sum(x, n); }

} // namespace netslice::kernels
