#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "spikedetect/errors.hpp"
#include "spikedetect/rng.hpp"
#include "spikedetect/tracy_widom.hpp"

using namespace spikedetect;

TEST_SUITE_BEGIN("tracy_widom");

TEST_CASE("airy values against an arbitrary-precision table") {
    // mpmath, 20 significant digits.
    struct Ref {
        double x, ai, aip;
    };
    const Ref refs[] = {
        {-20.0, -0.17640612707798468959, 0.89286285673647123840},
        {-15.0, 0.27821749087082892953, 0.27237420430864202083},
        {-10.0, 0.040241238486443190689, 0.99626504413279005590},
        {-5.0, 0.35076100902411431979, 0.32719281855444313679},
        {-2.5, -0.11232506769296608919, 0.67885273426479436337},
        {-1.0, 0.53556088329235211880, -0.010160567116645209395},
        {0.0, 0.35502805388781723926, -0.25881940379280679841},
        {0.5, 0.23169360648083348977, -0.22491053266468389314},
        {1.0, 0.13529241631288141552, -0.15914744129679321279},
        {2.0, 0.034924130423274379135, -0.053090384433653631704},
        {5.0, 0.00010834442813607441735, -0.00024741389086846247600},
        {10.0, 1.1047532552898685934e-10, -3.5206336767389236366e-10},
        {15.0, 2.1649625207379922990e-18, -8.4205679540177727661e-18},
        {20.0, 1.6916728686705403136e-27, -7.5863916257483549605e-27},
    };
    for (const Ref& r : refs) {
        CHECK(std::abs(airy_ai(r.x) - r.ai) < 1e-10);
        CHECK(std::abs(airy_ai_prime(r.x) - r.aip) < 1e-10);
    }
    // Ai(0) closed form 3^(-2/3)/Gamma(2/3)
    CHECK(airy_ai(0.0) == doctest::Approx(0.35502805388781723926).epsilon(1e-14));
    CHECK_THROWS_AS(airy_ai(20.5), std::domain_error);
    CHECK_THROWS_AS(airy_ai(-25.0), std::domain_error);
    CHECK_THROWS_AS(airy_ai_prime(30.0), std::domain_error);
}

TEST_CASE("airy monotone decay on the positive axis and defining ODE") {
    double prev = airy_ai(0.0);
    for (double x = 0.5; x <= 20.0; x += 0.5) {
        const double v = airy_ai(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    // Ai''(x) = x Ai(x) via central differences at x = 1.
    const double h = 1e-4;
    const double second = (airy_ai(1.0 + h) - 2.0 * airy_ai(1.0) + airy_ai(1.0 - h)) / (h * h);
    CHECK(std::abs(second - 1.0 * airy_ai(1.0)) < 1e-8);
}

TEST_CASE("determinant evaluation matches the Painleve representation") {
    // Independent route: RK4 on q'' = xq + 2q^3 with Airy tail data.
    for (double x : {-4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0}) {
        const double det = tw2_cdf_determinant(x, 64);
        const double ode = oracles::painleve_tw2_cdf(x);
        CHECK(std::abs(det - ode) < 1e-6);
        CHECK(std::abs(det - ode) < 5e-8);  // observed headroom
    }
}

TEST_CASE("doubling the quadrature order moves the determinant by < 1e-9") {
    for (double x : {-5.0, -2.0, 0.0, 3.0}) {
        CHECK(std::abs(tw2_cdf_determinant(x, 64) - tw2_cdf_determinant(x, 128)) < 1e-9);
    }
}

static const TwCdf& table() {
    static const TwCdf t = TwCdf::build();
    return t;
}

TEST_CASE("cdf saturates in the far tails and is strictly monotone") {
    const TwCdf& tw = table();
    CHECK(tw.cdf(-10.0) < 1e-6);
    CHECK(tw.cdf(-25.0) > 0.0);
    CHECK(tw.cdf(6.0) > 1.0 - 1e-9);
    CHECK(tw.cdf(25.0) < 1.0);
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-9.0, 5.0);
    for (int i = 0; i < 300; ++i) {
        double a = u(gen), b = u(gen);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(tw.cdf(a) < tw.cdf(b));
    }
}

TEST_CASE("table values agree with the one-point determinant") {
    const TwCdf& tw = table();
    for (double x : {-6.0, -3.7, -1.3, 0.4, 2.2}) {
        CHECK(tw.cdf(x) == doctest::Approx(tw2_cdf_determinant(x, 64)).epsilon(1e-8));
    }
}

TEST_CASE("quantile round trips and monotonicity") {
    const TwCdf& tw = table();
    CHECK(tw.quantile(tw.cdf(-1.5)) == doctest::Approx(-1.5).epsilon(1e-6));
    for (double p : {1e-6, 0.05, 0.5, 0.9, 0.95, 0.999}) {
        CHECK(tw.cdf(tw.quantile(p)) == doctest::Approx(p).epsilon(1e-8));
    }
    // Median against the ODE oracle, inverted by bisection on the oracle.
    double lo = -3.0, hi = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (oracles::painleve_tw2_cdf(mid) < 0.5 ? lo : hi) = mid;
    }
    CHECK(tw.quantile(0.5) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-4));
    CHECK(tw.quantile(0.2) < tw.quantile(0.4));
    CHECK_THROWS_AS(tw.quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(tw.quantile(1.0), std::domain_error);
}

TEST_CASE("pdf is nonnegative and integrates to one") {
    const TwCdf& tw = table();
    double mass = 0.0, mean = 0.0;
    const double h = 0.005;
    for (double x = -12.0; x <= 7.0; x += h) {
        const double f = tw.pdf(x);
        CHECK(f >= 0.0);
        mass += f * h;
        mean += x * f * h;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    // Known beta=2 mean -1.7710868074
    CHECK(mean == doctest::Approx(-1.7710868074).epsilon(2e-4));
}

TEST_CASE("csv cache round trip validates and reproduces the table") {
    const TwCdf& tw = table();
    const auto path = std::filesystem::temp_directory_path() / "tw_cache_test.csv";
    tw.save_csv(path.string());
    const TwCdf loaded = TwCdf::load_csv(path.string());
    for (double x : {-5.0, -1.0, 0.0, 2.0})
        CHECK(loaded.cdf(x) == doctest::Approx(tw.cdf(x)).epsilon(1e-11));

    // loader rejects non-monotone rows
    {
        std::ofstream bad(path);
        bad << "-1,0.5\n-0.5,0.4\n0,0.6\n0.5,0.7\n1,0.8\n1.5,0.9\n2,0.95\n2.5,0.99\n";
    }
    CHECK_THROWS(TwCdf::load_csv(path.string()));
    std::filesystem::remove(path);
}

TEST_CASE("combo quantile degenerate cases") {
    const TwCdf& tw = table();
    for (double p : {0.1, 0.5, 0.9}) {
        CHECK(combo_quantile(2.0, 0.0, p, tw) ==
              doctest::Approx(2.0 * tw.quantile(p)).epsilon(1e-4));
    }
    CHECK(combo_quantile(1.0, 0.0, 0.9, tw) ==
          doctest::Approx(tw.quantile(0.9)).epsilon(1e-4));
    CHECK_THROWS_AS(combo_quantile(-1.0, 0.0, 0.5, tw), std::domain_error);
    CHECK_THROWS_AS(combo_quantile(1.0, -1.0, 0.0, tw), std::domain_error);
}

TEST_CASE("combo of a difference matches a Monte Carlo quantile") {
    const TwCdf& tw = table();
    const ComboQuantiler combo(1.0, -1.0, tw);
    CHECK(std::abs(combo.raw_mass() - 1.0) < 1e-6);

    // 10^6 paired samples by inverse transform.
    const long n = 1000000;
    spikedetect::rng::ComplexGaussianStream u(99, 0, spikedetect::rng::StreamRole::channel);
    std::vector<double> z(n);
    for (long i = 0; i < n; ++i) {
        const double x = tw.quantile(std::min(u.uniform(2 * i), 1.0 - 1e-12));
        const double y = tw.quantile(std::min(u.uniform(2 * i + 1), 1.0 - 1e-12));
        z[i] = x - y;
    }
    std::sort(z.begin(), z.end());
    const double mc_median = 0.5 * (z[n / 2 - 1] + z[n / 2]);
    // X - Y is symmetric: median 0. 3 MC standard errors of the median.
    const double density_at_median = combo.cdf(0.05) - combo.cdf(-0.05);
    const double se = 0.5 / std::sqrt(static_cast<double>(n)) / (density_at_median * 10.0);
    CHECK(std::abs(combo.quantile(0.5) - mc_median) < 3 * se + 1e-3);

    // Kolmogorov distance between combo cdf and the empirical cdf <= 0.002.
    double ks = 0.0;
    for (long i = 0; i < n; i += 97) {
        const double emp = static_cast<double>(i + 1) / n;
        ks = std::max(ks, std::abs(emp - combo.cdf(z[i])));
    }
    CHECK(ks < 0.002);
}

TEST_CASE("combo quantile rejects out-of-grid levels") {
    const TwCdf& tw = table();
    const ComboQuantiler combo(1.0, -1.0, tw);
    CHECK_THROWS_AS(combo.quantile(1e-9), config_error);
    CHECK_THROWS_AS(combo.quantile(1.0 - 1e-9), config_error);
}

TEST_SUITE_END();
