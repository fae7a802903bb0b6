#pragma once

#include <cstddef>
#include <string_view>

namespace netslice::kernels {

// Dense double-precision primitives behind the ML hot paths (KNN distance
// scans, recurrent-cell matvecs, MSE reductions). Each has a scalar
// reference implementation and an AVX2 variant; the active backend is
// picked once at startup from CPUID and can be overridden for
// equivalence tests. Scalar and SIMD variants may differ in the last few
// ulps because the reduction order differs.

enum class Backend { Scalar, Avx2 };

Backend active_backend();
std::string_view backend_name(Backend b);
bool cpu_supports_avx2();

// Overrides the dispatch (tests; also honored for NETSLICE_KERNEL_BACKEND
// env values "scalar"/"avx2" at first use). Throws if unsupported.
void force_backend(Backend b);

// Σ a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// Σ (a[i]-b[i])²  — squared Euclidean distance
double sq_l2(const double* a, const double* b, std::size_t n);

// Σ x[i]
double sum(const double* x, std::size_t n);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double sq_l2(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double sq_l2(const double* a, const double* b, std::size_t n);
double sum(const double* x, std::size_t n);
} // namespace avx2
#endif

} // namespace netslice::kernels
