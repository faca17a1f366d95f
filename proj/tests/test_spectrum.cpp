#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "spikedetect/errors.hpp"
#include "spikedetect/spectrum.hpp"

using namespace spikedetect;

namespace {

SnapshotMatrix random_matrix(int k, int n, unsigned seed, double spike = 0.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g(0.0, M_SQRT1_2);
    SnapshotMatrix y(k, n);
    for (int col = 0; col < n; ++col)
        for (int row = 0; row < k; ++row) y.at(row, col) = cplx{g(gen), g(gen)};
    if (spike > 0.0) {
        for (int col = 0; col < n; ++col) {
            const cplx s{g(gen), g(gen)};
            y.at(0, col) += spike * s;
        }
    }
    return y;
}

}  // namespace

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("sample covariance of orthonormal rows scaled by sqrt(N) is the identity") {
    const int k = 3, n = 6;
    SnapshotMatrix y(k, n);
    // rows = sqrt(N) * distinct Fourier rows, mutually orthogonal with norm N.
    for (int row = 0; row < k; ++row)
        for (int col = 0; col < n; ++col) {
            const double phase = 2.0 * M_PI * row * col / n;
            y.at(row, col) = cplx{std::cos(phase), std::sin(phase)};
        }
    const HermitianMatrix r = sample_covariance(y);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const cplx expect = i == j ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            CHECK(std::abs(r.at(i, j) - expect) < 1e-14);
        }
}

TEST_CASE("scalar covariance is the average squared magnitude") {
    SnapshotMatrix y(1, 4);
    y.at(0, 0) = {1.0, 1.0};
    y.at(0, 1) = {0.0, 2.0};
    y.at(0, 2) = {-1.0, 0.0};
    y.at(0, 3) = {0.5, -0.5};
    const HermitianMatrix r = sample_covariance(y);
    CHECK(r.at(0, 0).real() == doctest::Approx((2.0 + 4.0 + 1.0 + 0.5) / 4.0).epsilon(1e-15));
    CHECK(r.at(0, 0).imag() == 0.0);
}

TEST_CASE("covariance matches the naive triple loop") {
    const SnapshotMatrix y = random_matrix(3, 8, 123);
    const HermitianMatrix r = sample_covariance(y);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cplx acc{0.0, 0.0};
            for (int n = 0; n < 8; ++n) acc += y.at(i, n) * std::conj(y.at(j, n));
            acc /= 8.0;
            CHECK(std::abs(r.at(i, j) - acc) < 1e-13);
        }
}

TEST_CASE("covariance is Hermitian PSD by construction") {
    const SnapshotMatrix y = random_matrix(5, 12, 77);
    const HermitianMatrix r = sample_covariance(y);
    for (int i = 0; i < 5; ++i) {
        CHECK(r.at(i, i).imag() == 0.0);
        for (int j = 0; j < 5; ++j) CHECK(r.at(i, j) == std::conj(r.at(j, i)));
    }
    const auto eigs = hermitian_eigenvalues(r);
    for (double v : eigs) CHECK(v >= -1e-12 * eigs.front());
}

TEST_CASE("jacobi eigenvalues: diagonal and identity") {
    HermitianMatrix d;
    d.n = 3;
    d.a = {cplx{3, 0}, {}, {}, {}, cplx{1, 0}, {}, {}, {}, cplx{1, 0}};
    const auto e = hermitian_eigenvalues(d);
    CHECK(e[0] == doctest::Approx(3.0));
    CHECK(e[1] == doctest::Approx(1.0));
    CHECK(e[2] == doctest::Approx(1.0));

    HermitianMatrix id;
    id.n = 4;
    id.a.assign(16, cplx{0, 0});
    for (int i = 0; i < 4; ++i) id.at(i, i) = {1.0, 0.0};
    for (double v : hermitian_eigenvalues(id)) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("jacobi matches the characteristic-polynomial oracle on random 4x4") {
    std::mt19937_64 gen(2025);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        HermitianMatrix m;
        m.n = 4;
        m.a.assign(16, cplx{0, 0});
        for (int i = 0; i < 4; ++i) {
            m.at(i, i) = {2.0 * g(gen), 0.0};
            for (int j = 0; j < i; ++j) {
                m.at(i, j) = {g(gen), g(gen)};
                m.at(j, i) = std::conj(m.at(i, j));
            }
        }
        const auto jac = hermitian_eigenvalues(m);
        const auto ora = oracles::charpoly_eigenvalues(m);
        for (int i = 0; i < 4; ++i) CHECK(jac[i] == doctest::Approx(ora[i]).epsilon(1e-10));
    }
}

TEST_CASE("jacobi conserves the trace and rejects non-Hermitian input") {
    const SnapshotMatrix y = random_matrix(6, 20, 5);
    const HermitianMatrix r = sample_covariance(y);
    double trace = 0.0;
    for (int i = 0; i < 6; ++i) trace += r.at(i, i).real();
    const auto eigs = hermitian_eigenvalues(r);
    double sum = 0.0;
    for (double v : eigs) sum += v;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-12));

    HermitianMatrix bad = r;
    bad.at(0, 1) += cplx{0.1, 0.0};
    CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::domain_error);
}

TEST_CASE("glr statistic: identity, arithmetic, scale invariance") {
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(glr_statistic(ones, 1.0) == doctest::Approx(1.0));
    const std::vector<double> eigs{3.0, 1.0, 1.0, 1.0};
    CHECK(glr_statistic(eigs, 1.5) == doctest::Approx(2.0));
    // scaling all eigenvalues (and hence the trace) by sigma^2 cancels
    const std::vector<double> scaled{3e4, 1e4, 1e4, 1e4};
    CHECK(glr_statistic(scaled, 1.5e4) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(glr_statistic(eigs, 0.0), degenerate_error);
}

TEST_CASE("log_glr arithmetic, limit, and monotonicity") {
    // K=2, N=3, T=1.5: 3*log(1/2) - 3*log(1.5) - 3*log(0.25).
    const double expect = 3.0 * std::log(0.5) - 3.0 * std::log(1.5) - 3.0 * std::log(0.25);
    CHECK(log_glr(1.5, 2, 3) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(log_glr(1.5, 2, 3) == doctest::Approx(0.86304622).epsilon(1e-7));

    // T -> 1+ gives L -> 1: a sup-ratio over nested models cannot dip below 1.
    CHECK(std::abs(log_glr(1.0 + 1e-9, 2, 1)) < 1e-7);
    CHECK(std::abs(log_glr(1.0 + 1e-11, 5, 7)) < 1e-8);

    // strictly increasing on (1, K)
    for (int k : {2, 5, 11}) {
        double prev = log_glr(1.0 + 1e-9, k, 4);
        for (int i = 1; i <= 200; ++i) {
            const double t = 1.0 + (k - 1.0 - 2e-9) * i / 200.0;
            const double v = log_glr(t, k, 4);
            CHECK(v > prev);
            prev = v;
        }
    }
    CHECK_THROWS_AS(log_glr(1.0, 2, 3), std::domain_error);
    CHECK_THROWS_AS(log_glr(2.0, 2, 3), std::domain_error);
    CHECK_THROWS_AS(log_glr(0.5, 2, 3), std::domain_error);
}

TEST_CASE("log_glr matches the nested maximum-likelihood oracle") {
    // Brute-force maximisation of the two likelihoods on small instances.
    struct Instance {
        int k, n;
        unsigned seed;
        double spike;
    };
    const Instance cases[] = {
        {2, 4, 11, 0.8}, {2, 6, 12, 0.0}, {3, 5, 13, 1.2}, {3, 6, 14, 0.5}, {2, 5, 15, 2.0}};
    for (const auto& inst : cases) {
        const SnapshotMatrix y = random_matrix(inst.k, inst.n, inst.seed, inst.spike);
        const SpectrumSummary s = summarize(y);
        const double closed = log_glr(s.t_stat, inst.k, inst.n);
        const double brute = oracles::mle_log_glr(y);
        CHECK(std::abs(brute - closed) / std::abs(closed) < 1e-6);
    }
}

TEST_CASE("condition number: identity, arithmetic, scale invariance, degeneracy") {
    const std::vector<double> ones{1.0, 1.0, 1.0};
    CHECK(condition_number(ones) == doctest::Approx(1.0));
    const std::vector<double> eigs{4.0, 2.0, 1.0};
    CHECK(condition_number(eigs) == doctest::Approx(4.0));
    const std::vector<double> scaled{4e-3, 2e-3, 1e-3};
    CHECK(condition_number(scaled) == doctest::Approx(4.0).epsilon(1e-15));
    const std::vector<double> degenerate{4.0, 2.0, 0.0};
    CHECK_THROWS_AS(condition_number(degenerate), degenerate_error);
}

TEST_CASE("centering scales and zeros") {
    // K=10, N=50: b_N = (1+sqrt(.2)) (1/sqrt(.2)+1)^(1/3).
    const double c_n = 0.2;
    const double expected_b = (1.0 + std::sqrt(c_n)) * std::cbrt(1.0 / std::sqrt(c_n) + 1.0);
    CHECK(top_edge_scale(c_n) == doctest::Approx(expected_b).epsilon(1e-14));
    CHECK(top_edge_scale(c_n) == doctest::Approx(2.140614743877543).epsilon(1e-12));

    const double s = std::sqrt(c_n);
    std::vector<double> eigs{(1.0 + s) * (1.0 + s), 1.0, (1.0 - s) * (1.0 - s)};
    const auto [l1, lk] = center_statistics(eigs, 10, 50);
    CHECK(l1 == doctest::Approx(0.0));
    CHECK(lk == doctest::Approx(0.0));
    CHECK(bottom_edge_scale(c_n) < 0.0);  // negative for c_N < 1

    CHECK_THROWS_AS(center_statistics(eigs, 50, 50), std::domain_error);
    CHECK_THROWS_AS(center_statistics(eigs, 60, 50), std::domain_error);
}

TEST_CASE("summarize composes the pipeline and enforces invariants") {
    const SnapshotMatrix y = random_matrix(4, 16, 99);
    const SpectrumSummary s = summarize(y);
    REQUIRE(s.eigenvalues.size() == 4);
    for (std::size_t i = 1; i < 4; ++i) CHECK(s.eigenvalues[i - 1] >= s.eigenvalues[i]);
    double total = 0.0;
    for (double v : s.eigenvalues) total += v;
    CHECK(total / 4.0 == doctest::Approx(s.trace_mean).epsilon(1e-10));
    CHECK(s.t_stat >= 1.0);
    CHECK(s.t_stat < 4.0);
    CHECK(s.u_stat >= 1.0);

    // degenerate all-zero data
    SnapshotMatrix zeros(3, 9);
    CHECK_THROWS_AS(summarize(zeros), degenerate_error);

    // regime checks
    CHECK_THROWS_AS(summarize(random_matrix(1, 8, 1)), std::domain_error);
    CHECK_THROWS_AS(summarize(random_matrix(4, 4, 1)), std::domain_error);
}

TEST_CASE("summary statistics are exactly scale invariant") {
    const SnapshotMatrix y = random_matrix(4, 20, 31337);
    SnapshotMatrix y_scaled = y;
    for (auto& v : y_scaled.entries()) v *= 17.0;
    const SpectrumSummary a = summarize(y);
    const SpectrumSummary b = summarize(y_scaled);
    CHECK(std::abs(a.t_stat - b.t_stat) <= 1e-12 * a.t_stat);
    CHECK(std::abs(a.u_stat - b.u_stat) <= 1e-12 * a.u_stat);
}

TEST_CASE("non-finite entries are rejected") {
    SnapshotMatrix y(2, 4);
    y.at(1, 2) = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(y.validate(), std::domain_error);
    CHECK_THROWS_AS(sample_covariance(y), std::domain_error);
}

TEST_SUITE_END();
