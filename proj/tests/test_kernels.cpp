#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "covstark/kernels.hpp"

using namespace covstark;
using cplx = std::complex<double>;

namespace {

struct Data {
    std::vector<double> w, f, g;
    std::vector<cplx> a, b;
};

Data make_data(std::size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        d.w.push_back(std::abs(u(rng)));
        d.f.push_back(u(rng));
        d.g.push_back(u(rng));
        d.a.emplace_back(u(rng), u(rng));
        d.b.emplace_back(u(rng), u(rng));
    }
    return d;
}

} // namespace

TEST_CASE("scalar reference kernels")
{
    const std::vector<double> w{1, 2, 3}, f{4, 5, 6}, g{1, 0, -1};
    CHECK(kernels::scalar::weighted_sum(w, f) == 32.0);
    CHECK(kernels::scalar::weighted_dot(w, f, g) == 4.0 - 18.0);
    const std::vector<cplx> a{{0, 1}}, b{{2, 0}};
    CHECK(kernels::scalar::weighted_cdot(std::vector<double>{1.0}, a, b) == cplx(0, -2));
    std::vector<double> out(3);
    kernels::scalar::gaussian_row({0.0, 1.0, 1.0, 0.5, 0.5, 2.0}, out);
    CHECK(out[1] == doctest::Approx(2.0 * std::exp(-0.25)));
}

TEST_CASE("vector kernels agree with the scalar reference")
{
    if (!kernels::avx2_available()) {
        MESSAGE("AVX2 not available; vector kernels not exercised");
        return;
    }
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
        const Data d = make_data(n, static_cast<unsigned>(n) + 5);
        const double scale = 1.0 + static_cast<double>(n);
        CHECK(std::abs(kernels::scalar::weighted_sum(d.w, d.f) - kernels::avx2::weighted_sum(d.w, d.f)) < 1e-14 * scale);
        CHECK(std::abs(kernels::scalar::weighted_dot(d.w, d.f, d.g) - kernels::avx2::weighted_dot(d.w, d.f, d.g)) < 1e-14 * scale);
        CHECK(std::abs(kernels::scalar::weighted_cdot(d.w, d.a, d.b) - kernels::avx2::weighted_cdot(d.w, d.a, d.b)) < 1e-14 * scale);

        std::vector<double> s(n), v(n);
        const kernels::GaussianRow row{-3.0, 0.013, 0.2, 0.7, 1.9, 0.4};
        kernels::scalar::gaussian_row(row, s);
        kernels::avx2::gaussian_row(row, v);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s[i] - v[i]) <= 1e-14 * std::abs(s[i]) + 1e-300);
    }
    std::vector<double> s(8), v(8);
    const kernels::GaussianRow far{-40.0, 1.0, 0.0, 0.0, 1.0, 1.0};
    kernels::scalar::gaussian_row(far, s);
    kernels::avx2::gaussian_row(far, v);
    for (std::size_t i = 0; i < 8; ++i) CHECK(v[i] == doctest::Approx(s[i]).epsilon(1e-15));
}

TEST_CASE("backend selection")
{
    const auto before = kernels::active_backend();
    CHECK(kernels::set_backend(kernels::Backend::Scalar) == kernels::Backend::Scalar);
    const Data d = make_data(100, 3);
    const double ref = kernels::weighted_sum(d.w, d.f);
    const auto b = kernels::set_backend(kernels::Backend::Avx2);
    CHECK((b == kernels::Backend::Avx2) == kernels::avx2_available());
    CHECK(kernels::weighted_sum(d.w, d.f) == doctest::Approx(ref).epsilon(1e-14));
    CHECK(std::string(kernels::backend_name(kernels::Backend::Scalar)) == "scalar");
    kernels::set_backend(before);
}
