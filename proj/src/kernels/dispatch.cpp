#include <atomic>
#include <cstdlib>
#include <cstring>

#include "covstark/kernels.hpp"

namespace covstark::kernels {

namespace {

bool cpu_has_avx2()
{
#if defined(COVSTARK_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend()
{
    const char* env = std::getenv("COVSTARK_KERNELS");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Backend::Scalar;
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> b{initial_backend()};
    return b;
}

} // namespace

bool avx2_available()
{
    static const bool ok = cpu_has_avx2();
    return ok;
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

Backend set_backend(Backend b)
{
    if (b == Backend::Avx2 && !avx2_available()) b = Backend::Scalar;
    current().store(b, std::memory_order_relaxed);
    return b;
}

const char* backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

double weighted_sum(std::span<const double> w, std::span<const double> f)
{
    return active_backend() == Backend::Avx2 ? avx2::weighted_sum(w, f) : scalar::weighted_sum(w, f);
}

double weighted_dot(std::span<const double> w, std::span<const double> f, std::span<const double> g)
{
    return active_backend() == Backend::Avx2 ? avx2::weighted_dot(w, f, g) : scalar::weighted_dot(w, f, g);
}

std::complex<double> weighted_cdot(std::span<const double> w, std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b)
{
    return active_backend() == Backend::Avx2 ? avx2::weighted_cdot(w, a, b) : scalar::weighted_cdot(w, a, b);
}

void gaussian_row(const GaussianRow& row, std::span<double> out)
{
    if (active_backend() == Backend::Avx2)
        avx2::gaussian_row(row, out);
    else
        scalar::gaussian_row(row, out);
}

#if !defined(COVSTARK_BUILD_AVX2)
// Hosts without the vector build route the avx2 entry points to the reference path.
namespace avx2 {
double weighted_sum(std::span<const double> w, std::span<const double> f) { return scalar::weighted_sum(w, f); }
double weighted_dot(std::span<const double> w, std::span<const double> f, std::span<const double> g)
{
    return scalar::weighted_dot(w, f, g);
}
std::complex<double> weighted_cdot(std::span<const double> w, std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b)
{
    return scalar::weighted_cdot(w, a, b);
}
void gaussian_row(const GaussianRow& row, std::span<double> out) { scalar::gaussian_row(row, out); }
} // namespace avx2
#endif

} // namespace covstark::kernels
