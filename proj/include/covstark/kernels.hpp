#pragma once

// Data-parallel inner loops shared by the quadrature and current-density
// code. Each kernel has a scalar reference implementation and, on x86-64
// hosts with AVX2+FMA, a vector variant selected at runtime. The
// environment variable COVSTARK_KERNELS=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <span>

namespace covstark::kernels {

enum class Backend { Scalar, Avx2 };

/// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();

Backend active_backend();

/// Selects a backend for the whole process. Requesting Avx2 on a host
/// without support falls back to Scalar. Returns the backend in effect.
Backend set_backend(Backend b);

const char* backend_name(Backend b);

/// sum_i w[i] * f[i]
double weighted_sum(std::span<const double> w, std::span<const double> f);

/// sum_i w[i] * f[i] * g[i]
double weighted_dot(std::span<const double> w, std::span<const double> f, std::span<const double> g);

/// sum_i w[i] * conj(a[i]) * b[i]
std::complex<double> weighted_cdot(std::span<const double> w, std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b);

/// Parameters of one row of an isotropic Gaussian sampled on a uniform
/// axis: out[i] = amplitude * exp(-(((start + i*step) - center)^2 + base_r2) * inv_two_s2)
struct GaussianRow {
    double start;
    double step;
    double center;
    double base_r2;
    double inv_two_s2;
    double amplitude;
};

void gaussian_row(const GaussianRow& row, std::span<double> out);

namespace scalar {
double weighted_sum(std::span<const double> w, std::span<const double> f);
double weighted_dot(std::span<const double> w, std::span<const double> f, std::span<const double> g);
std::complex<double> weighted_cdot(std::span<const double> w, std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b);
void gaussian_row(const GaussianRow& row, std::span<double> out);
} // namespace scalar

namespace avx2 {
double weighted_sum(std::span<const double> w, std::span<const double> f);
double weighted_dot(std::span<const double> w, std::span<const double> f, std::span<const double> g);
std::complex<double> weighted_cdot(std::span<const double> w, std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b);
void gaussian_row(const GaussianRow& row, std::span<double> out);
} // namespace avx2

} // namespace covstark::kernels
