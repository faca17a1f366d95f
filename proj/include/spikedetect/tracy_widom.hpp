#pragma once

#include <string>
#include <vector>

#include "spikedetect/numerics.hpp"

namespace spikedetect {

// Airy function of the first kind and its derivative on [-20, 20]
// (absolute accuracy better than 1e-10).
double airy_ai(double x);
double airy_ai_prime(double x);

// One-point evaluation of the beta=2 Tracy-Widom c.d.f. as the Fredholm
// determinant of the Airy kernel on (x, infinity): Nystrom discretisation
// with `order` Gauss-Legendre nodes under u = x + t/(1-t). Accurate to
// ~1e-13 for x >= -8; the far left tail instead follows the
// tau * |x|^(-1/8) * exp(-|x|^3/12) asymptotic.
double tw2_cdf_determinant(double x, int order = 64);

// Tabulated beta=2 Tracy-Widom distribution with monotone-cubic
// interpolation. Construction is the expensive step; evaluators on the
// finished table are immutable and safe to share across threads.
class TwCdf {
public:
    struct BuildOptions {
        double x_min = -13.0;
        double x_max = 8.0;
        double spacing = 0.02;
        int quadrature_order = 64;
        int threads = 0;  // 0 = runtime default, 1 = serial reference
    };

    static TwCdf build(const BuildOptions& opts);
    static TwCdf build() { return build(BuildOptions{}); }

    // Shared eagerly-built instance. Honors SPIKE_DETECT_TW_CACHE: when the
    // variable names a readable file the table is loaded from it, otherwise
    // the table is built and (best effort) saved there.
    static const TwCdf& shared();

    // C.d.f. with saturated tails: clamps to the table range, never returns
    // 0 or 1 exactly.
    double cdf(double x) const;

    // Density (derivative of the interpolant); nonnegative.
    double pdf(double x) const;

    // Quantile for p in (0,1); inverse of cdf to ~1e-10.
    double quantile(double p) const;

    double x_min() const { return grid_.front(); }
    double x_max() const { return grid_.back(); }

    // CSV cache: rows "x,F(x)", 12 significant digits. The loader validates
    // strict monotonicity and range.
    void save_csv(const std::string& path) const;
    static TwCdf load_csv(const std::string& path);

private:
    TwCdf(std::vector<double> grid, std::vector<double> values);
    static void strictify(std::vector<double>& values);

    std::vector<double> grid_;
    std::vector<double> values_;
    numerics::MonotoneCubic interp_;
};

// Quantiles of a X + b Y for X, Y independent beta=2 Tracy-Widom variables
// (a > 0; b may carry either sign). Densities are convolved numerically on a
// uniform grid spanning the component quantiles at 1e-7 / 1-1e-7.
class ComboQuantiler {
public:
    ComboQuantiler(double a, double b, const TwCdf& tw = TwCdf::shared(),
                   int points_per_component = 8192);

    double a() const { return a_; }
    double b() const { return b_; }

    double cdf(double z) const;
    double quantile(double p) const;

    // Mass of the numerical density before normalisation (diagnostic;
    // should be 1 to ~1e-6).
    double raw_mass() const { return raw_mass_; }

private:
    double a_, b_;
    double z0_, step_;
    std::vector<double> cdf_grid_;
    double raw_mass_;
};

double combo_quantile(double a, double b, double p, const TwCdf& tw = TwCdf::shared());

}  // namespace spikedetect
