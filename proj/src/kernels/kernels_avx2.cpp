// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "covstark/kernels.hpp"

namespace covstark::kernels::avx2 {

namespace {

double hsum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// exp(x) for x <= 0. Cody-Waite reduction by ln 2 and a degree-13 Taylor
// polynomial on |r| <= ln2/2; arguments below -700 flush to zero.
__m256d exp_nonpositive(__m256d x)
{
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d floor_arg = _mm256_set1_pd(-700.0);

    const __m256d underflow = _mm256_cmp_pd(x, floor_arg, _CMP_LT_OQ);
    x = _mm256_max_pd(x, floor_arg);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);

    static constexpr double c[] = {1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
                                   1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
                                   1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        0.5,
                                   1.0,                1.0};
    __m256d p = _mm256_set1_pd(c[0]);
    for (std::size_t k = 1; k < sizeof(c) / sizeof(c[0]); ++k) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(c[k]));

    // 2^n via the exponent field; n is in [-1010, 0] here.
    const __m256d magic = _mm256_set1_pd(6755399441055744.0); // 2^52 + 2^51
    const __m256i ni = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(n, magic)), _mm256_castpd_si256(magic));
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(ni, _mm256_set1_epi64x(1023)), 52);
    const __m256d scale = _mm256_castsi256_pd(bits);

    return _mm256_andnot_pd(underflow, _mm256_mul_pd(p, scale));
}

} // namespace

double weighted_sum(std::span<const double> w, std::span<const double> f)
{
    const std::size_t n = w.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&f[i]), acc);
    double total = hsum(acc);
    for (; i < n; ++i) total += w[i] * f[i];
    return total;
}

double weighted_dot(std::span<const double> w, std::span<const double> f, std::span<const double> g)
{
    const std::size_t n = w.size();
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wf = _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&f[i]));
        acc = _mm256_fmadd_pd(wf, _mm256_loadu_pd(&g[i]), acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += w[i] * f[i] * g[i];
    return total;
}

std::complex<double> weighted_cdot(std::span<const double> w, std::span<const std::complex<double>> a,
                                   std::span<const std::complex<double>> b)
{
    // Two complex values per register, laid out (re0, im0, re1, im1).
    const std::size_t n = w.size();
    const double* pa = reinterpret_cast<const double*>(a.data());
    const double* pb = reinterpret_cast<const double*>(b.data());
    __m256d acc_re = _mm256_setzero_pd(); // w*(ar*br), w*(ai*bi)
    __m256d acc_im = _mm256_setzero_pd(); // w*(ar*bi), -w*(ai*br)
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d va = _mm256_loadu_pd(pa + 2 * i);
        const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        const __m256d ww = _mm256_set_pd(w[i + 1], w[i + 1], w[i], w[i]);
        const __m256d wa = _mm256_mul_pd(ww, va);
        acc_re = _mm256_fmadd_pd(wa, vb, acc_re);
        const __m256d vb_sw = _mm256_permute_pd(vb, 0b0101);
        acc_im = _mm256_fmadd_pd(wa, vb_sw, acc_im);
    }
    alignas(32) double re[4];
    alignas(32) double im[4];
    _mm256_store_pd(re, acc_re);
    _mm256_store_pd(im, acc_im);
    std::complex<double> total(re[0] + re[1] + re[2] + re[3], (im[0] - im[1]) + (im[2] - im[3]));
    for (; i < n; ++i) total += w[i] * (std::conj(a[i]) * b[i]);
    return total;
}

void gaussian_row(const GaussianRow& row, std::span<double> out)
{
    const std::size_t n = out.size();
    const __m256d step = _mm256_set1_pd(row.step);
    const __m256d offs = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const __m256d start = _mm256_set1_pd(row.start);
    const __m256d center = _mm256_set1_pd(row.center);
    const __m256d base = _mm256_set1_pd(row.base_r2);
    const __m256d k = _mm256_set1_pd(row.inv_two_s2);
    const __m256d amp = _mm256_set1_pd(row.amplitude);
    const __m256d sign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // Unfused operations in the scalar order so both backends see the same exponent.
        const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), offs);
        const __m256d d = _mm256_sub_pd(_mm256_add_pd(start, _mm256_mul_pd(idx, step)), center);
        const __m256d r2 = _mm256_add_pd(_mm256_mul_pd(d, d), base);
        const __m256d arg = _mm256_xor_pd(_mm256_mul_pd(r2, k), sign);
        _mm256_storeu_pd(&out[i], _mm256_mul_pd(amp, exp_nonpositive(arg)));
    }
    for (; i < n; ++i) {
        const double d = row.start + static_cast<double>(i) * row.step - row.center;
        out[i] = row.amplitude * std::exp(-(d * d + row.base_r2) * row.inv_two_s2);
    }
}

} // namespace covstark::kernels::avx2
