#include "spikedetect/tracy_widom.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/math/special_functions/airy.hpp>

#include "spikedetect/errors.hpp"

namespace spikedetect {

namespace {

// Deift-Its-Krasovsky left-tail constant 2^(1/24) * exp(zeta'(-1)).
constexpr double kTau2 = 0.87237141495412744;

// F2(x) ~ tau2 |x|^(-1/8) exp(-|x|^3/12) as x -> -inf. Used below the range
// where the double-precision determinant resolves 1 - lambda_max(K_x).
double left_tail_asymptotic(double x) {
    const double ax = -x;
    return kTau2 * std::pow(ax, -0.125) * std::exp(-ax * ax * ax / 12.0);
}

double det_with_rule(double x, const numerics::QuadratureRule& rule) {
    const int m = static_cast<int>(rule.nodes.size());
    std::vector<double> u(m), sw(m), ai(m), aip(m);
    for (int i = 0; i < m; ++i) {
        const double t = rule.nodes[i];
        u[i] = x + t / (1.0 - t);
        sw[i] = std::sqrt(rule.weights[i]) / (1.0 - t);
        ai[i] = boost::math::airy_ai(u[i]);
        aip[i] = boost::math::airy_ai_prime(u[i]);
    }
    std::vector<double> a(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double kij = (i == j)
                                   ? aip[i] * aip[i] - u[i] * ai[i] * ai[i]
                                   : (ai[i] * aip[j] - aip[i] * ai[j]) / (u[i] - u[j]);
            a[static_cast<std::size_t>(i) * m + j] = (i == j ? 1.0 : 0.0) - sw[i] * kij * sw[j];
        }
    }
    int sign = 0;
    const double logdet = numerics::log_abs_det(a, m, sign);
    if (sign <= 0) return 0.0;  // far tail, below double-precision resolution
    return std::exp(logdet);
}

}  // namespace

double airy_ai(double x) {
    if (!(x >= -20.0 && x <= 20.0))
        throw std::domain_error("airy_ai supported on [-20, 20], got " + std::to_string(x));
    return boost::math::airy_ai(x);
}

double airy_ai_prime(double x) {
    if (!(x >= -20.0 && x <= 20.0))
        throw std::domain_error("airy_ai_prime supported on [-20, 20], got " + std::to_string(x));
    return boost::math::airy_ai_prime(x);
}

double tw2_cdf_determinant(double x, int order) {
    const auto rule = numerics::gauss_legendre_01(order);
    return det_with_rule(x, rule);
}

void TwCdf::strictify(std::vector<double>& values) {
    // Clamp into (0,1) and make the sequence strictly increasing. The
    // saturated right end collapses to equal doubles (true gaps below one
    // ulp), so shave it strictly below the cap from the right before the
    // forward pass, which could otherwise chain past 1.
    const double cap = std::nextafter(1.0, 0.0);
    const int n = static_cast<int>(values.size());
    for (int i = 0; i < n; ++i) values[i] = std::clamp(values[i], 1e-300, cap);
    for (int i = n - 2; i >= 0; --i)
        values[i] = std::min(values[i], std::nextafter(values[i + 1], 0.0));
    for (int i = 1; i < n; ++i)
        if (values[i] <= values[i - 1]) values[i] = std::nextafter(values[i - 1], 2.0);
}

TwCdf::TwCdf(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)), interp_(grid_, values_) {
    if (grid_.size() < 8) throw config_error("TW table too small");
    if (!(values_.front() < 1e-8) || !(values_.back() > 1.0 - 1e-8))
        throw config_error("TW table does not reach the required tail levels");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0) || !(values_[i] < 1.0))
            throw config_error("TW table values must lie in (0,1)");
        if (i > 0 && !(values_[i] > values_[i - 1]))
            throw config_error("TW table values must be strictly increasing");
    }
}

TwCdf TwCdf::build(const BuildOptions& opts) {
    const int n = static_cast<int>(std::llround((opts.x_max - opts.x_min) / opts.spacing)) + 1;
    std::vector<double> grid(n), values(n);
    const auto rule = numerics::gauss_legendre_01(opts.quadrature_order);
    numerics::parallel_for(n, opts.threads, [&](long i) {
        const double x = opts.x_min + static_cast<double>(i) * opts.spacing;
        grid[i] = x;
        // Below ~-8.6 the determinant's smallest factor 1 - lambda_1 drops
        // under double roundoff; switch to the tail asymptotic there (the
        // two agree to ~1% at the splice, far below the grid step ratio).
        values[i] = x <= -8.6 ? left_tail_asymptotic(x) : det_with_rule(x, rule);
    });

    strictify(values);
    return TwCdf(std::move(grid), std::move(values));
}

const TwCdf& TwCdf::shared() {
    static const TwCdf instance = [] {
        if (const char* path = std::getenv("SPIKE_DETECT_TW_CACHE"); path && *path) {
            if (std::ifstream probe(path); probe.good()) return load_csv(path);
            TwCdf t = build();
            try {
                t.save_csv(path);
            } catch (const std::exception&) {
                // cache is an optimisation only
            }
            return t;
        }
        return build();
    }();
    return instance;
}

double TwCdf::cdf(double x) const {
    if (std::isnan(x)) throw std::domain_error("tw2_cdf of NaN");
    if (x <= grid_.front()) return values_.front();
    if (x >= grid_.back()) return values_.back();
    const double v = interp_(x);
    return std::clamp(v, values_.front(), values_.back());
}

double TwCdf::pdf(double x) const {
    if (x <= grid_.front() || x >= grid_.back()) return 0.0;
    return std::max(interp_.derivative(x), 0.0);
}

double TwCdf::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("quantile requires p in (0,1), got " + std::to_string(p));
    if (p < values_.front() || p > values_.back())
        throw config_error("quantile level " + std::to_string(p) +
                           " outside the tabulated range");
    const auto it = std::upper_bound(values_.begin(), values_.end(), p);
    std::size_t cell = it == values_.begin() ? 0 : static_cast<std::size_t>(it - values_.begin()) - 1;
    cell = std::min(cell, values_.size() - 2);
    return interp_.invert_on_cell(cell, p);
}

void TwCdf::save_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    char buf[80];
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", grid_[i], values_[i]);
        out << buf;
    }
}

TwCdf TwCdf::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open TW cache " + path);
    std::vector<double> grid, values;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw parse_error("TW cache row needs \"x,F\"", lineno, 1);
        try {
            grid.push_back(std::stod(line.substr(0, comma)));
            values.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw parse_error("TW cache row does not parse as decimals", lineno, 1);
        }
    }
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw config_error("TW cache abscissae must be strictly increasing");
    // Monotonicity validation. The 12-digit format rounds the ulp-separated
    // saturated tail to ties (or to a literal 1), which strictify repairs;
    // an actual decrease means a corrupt file.
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0) || !(values[i] <= 1.0))
            throw config_error("TW cache values must lie in (0,1]");
        if (i > 0 && values[i] < values[i - 1])
            throw config_error("TW cache values must be non-decreasing");
    }
    strictify(values);
    return TwCdf(std::move(grid), std::move(values));  // value checks in ctor
}

ComboQuantiler::ComboQuantiler(double a, double b, const TwCdf& tw, int points_per_component)
    : a_(a), b_(b) {
    if (!(a > 0.0)) throw std::domain_error("combo weight a must be positive");
    if (points_per_component < 64) throw config_error("combo grid too coarse");

    const double qlo = tw.quantile(1e-7);
    const double qhi = tw.quantile(1.0 - 1e-7);

    if (b == 0.0) {
        // Degenerate: a*X only. Sample its c.d.f. directly on the grid.
        z0_ = a * qlo;
        const double z1 = a * qhi;
        step_ = (z1 - z0_) / (points_per_component - 1);
        cdf_grid_.resize(points_per_component);
        for (int i = 0; i < points_per_component; ++i)
            cdf_grid_[i] = tw.cdf((z0_ + i * step_) / a);
        raw_mass_ = cdf_grid_.back() - cdf_grid_.front();
        const double lo = cdf_grid_.front(), span = cdf_grid_.back() - lo;
        for (double& v : cdf_grid_) v = (v - lo) / span;
        return;
    }

    const double a_lo = a * qlo, a_hi = a * qhi;
    const double b_lo = b > 0 ? b * qlo : b * qhi;
    const double b_hi = b > 0 ? b * qhi : b * qlo;
    const double width_a = a_hi - a_lo, width_b = b_hi - b_lo;
    step_ = std::max(width_a, width_b) / (points_per_component - 1);
    const int na = static_cast<int>(std::floor(width_a / step_)) + 1;
    const int nb = static_cast<int>(std::floor(width_b / step_)) + 1;

    std::vector<double> fa(na), fb(nb);
    for (int i = 0; i < na; ++i) fa[i] = tw.pdf((a_lo + i * step_) / a) / a;
    for (int i = 0; i < nb; ++i) fb[i] = tw.pdf((b_lo + i * step_) / b) / std::abs(b);

    // Trapezoidal convolution on the shared uniform step.
    const int nz = na + nb - 1;
    std::vector<double> fz(nz, 0.0);
    for (int i = 0; i < na; ++i) {
        const double w = (i == 0 || i == na - 1) ? 0.5 : 1.0;
        const double fai = w * fa[i] * step_;
        if (fai == 0.0) continue;
        for (int j = 0; j < nb; ++j) fz[i + j] += fai * fb[j];
    }

    z0_ = a_lo + b_lo;
    cdf_grid_.resize(nz);
    cdf_grid_[0] = 0.0;
    for (int i = 1; i < nz; ++i)
        cdf_grid_[i] = cdf_grid_[i - 1] + 0.5 * step_ * (fz[i - 1] + fz[i]);
    raw_mass_ = cdf_grid_.back();
    if (!(raw_mass_ > 0.5))
        throw config_error("combo density mass lost; grid misconfigured");
    for (double& v : cdf_grid_) v /= raw_mass_;
}

double ComboQuantiler::cdf(double z) const {
    if (z <= z0_) return 0.0;
    const double pos = (z - z0_) / step_;
    const auto n = static_cast<double>(cdf_grid_.size() - 1);
    if (pos >= n) return 1.0;
    const auto i = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i);
    return cdf_grid_[i] + frac * (cdf_grid_[i + 1] - cdf_grid_[i]);
}

double ComboQuantiler::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("combo quantile requires p in (0,1)");
    if (p < 1e-7 || p > 1.0 - 1e-7)
        throw config_error("combo grid covers quantile levels in [1e-7, 1-1e-7] only");
    const auto it = std::lower_bound(cdf_grid_.begin(), cdf_grid_.end(), p);
    std::size_t i = it == cdf_grid_.begin() ? 1 : static_cast<std::size_t>(it - cdf_grid_.begin());
    i = std::min(i, cdf_grid_.size() - 1);
    const double c0 = cdf_grid_[i - 1], c1 = cdf_grid_[i];
    const double frac = c1 > c0 ? (p - c0) / (c1 - c0) : 0.0;
    return z0_ + step_ * (static_cast<double>(i - 1) + frac);
}

double combo_quantile(double a, double b, double p, const TwCdf& tw) {
    return ComboQuantiler(a, b, tw).quantile(p);
}

}  // namespace spikedetect
