#include <doctest.h>

#include <cmath>
#include <complex>

#include "spikedetect/rng.hpp"

using namespace spikedetect::rng;

TEST_SUITE_BEGIN("rng");

TEST_CASE("philox4x64-10 known-answer vectors") {
    // Generated with numpy.random.Philox. numpy pre-increments its 256-bit
    // little-endian counter before producing a block, so its first block at
    // counter=[c,...] is the raw bijection at [c+1,...] (with carry).
    const auto z = philox4x64({1, 0, 0, 0}, {0, 0});
    CHECK(z[0] == 0x02f4ba6408e4d89bULL);
    CHECK(z[1] == 0x3dd62b0b9ca8c5b2ULL);
    CHECK(z[2] == 0x1c8667a55d902e79ULL);
    CHECK(z[3] == 0x907d7a052fd5b4dcULL);

    const auto z1 = philox4x64({2, 0, 0, 0}, {0, 0});
    CHECK(z1[0] == 0x809bf322883987c3ULL);
    CHECK(z1[1] == 0x471128b9e807f7ddULL);
    CHECK(z1[2] == 0xf250ba0dbec065b7ULL);
    CHECK(z1[3] == 0xfc6ed66767a457bcULL);

    const auto z2 = philox4x64({2, 2, 3, 4}, {0xdeadbeefcafebabeULL, 0xfaceb00c12345678ULL});
    CHECK(z2[0] == 0x92670c765d40b2b7ULL);
    CHECK(z2[1] == 0xc1f721c9888e499aULL);
    CHECK(z2[2] == 0xe423738a5c68e2f8ULL);
    CHECK(z2[3] == 0xa8cfb3b6c969970cULL);

    const std::uint64_t m = ~0ULL;
    const auto z3 = philox4x64({0, 0, 0, 0}, {m, m});  // all-ones counter + 1 wraps to zero
    CHECK(z3[0] == 0x44b7493d1acfc229ULL);
    CHECK(z3[1] == 0x6636af8e997921ddULL);
    CHECK(z3[2] == 0x3f73e132b5b3780eULL);
    CHECK(z3[3] == 0x605644dde03b01b1ULL);
}

TEST_CASE("stream is deterministic and role/trial separated") {
    ComplexGaussianStream a(42, 7, StreamRole::noise);
    ComplexGaussianStream b(42, 7, StreamRole::noise);
    ComplexGaussianStream c(42, 8, StreamRole::noise);
    ComplexGaussianStream d(42, 7, StreamRole::signal);
    for (std::uint64_t j = 0; j < 16; ++j) {
        CHECK(a.normal(j) == b.normal(j));
        CHECK(a.normal(j) != c.normal(j));
        CHECK(a.normal(j) != d.normal(j));
    }
}

TEST_CASE("complex normals have unit variance and zero mean") {
    ComplexGaussianStream s(2024, 0, StreamRole::noise);
    const long n = 200000;
    double sum_re = 0.0, sum_im = 0.0, sum_abs2 = 0.0;
    for (long j = 0; j < n; ++j) {
        const std::complex<double> z = s.normal(j);
        sum_re += z.real();
        sum_im += z.imag();
        sum_abs2 += std::norm(z);
    }
    // mean ~ N(0, 1/(2n)) per part; |z|^2 has mean 1, variance 1.
    const double se_mean = std::sqrt(0.5 / n);
    CHECK(std::abs(sum_re / n) < 4 * se_mean);
    CHECK(std::abs(sum_im / n) < 4 * se_mean);
    CHECK(std::abs(sum_abs2 / n - 1.0) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("uniforms stay in (0,1]") {
    ComplexGaussianStream s(1, 1, StreamRole::channel);
    for (std::uint64_t j = 0; j < 1000; ++j) {
        const double u = s.uniform(j);
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_SUITE_END();
