#include "spikedetect/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spikedetect::numerics {

QuadratureRule gauss_legendre_01(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n via the three-term recurrence.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[order - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[order - 1 - i] = 0.5 * w;
    }
    return rule;
}

double log_abs_det(std::vector<double>& a, int n, int& sign) {
    sign = 1;
    double logdet = 0.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(a[static_cast<std::size_t>(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a[static_cast<std::size_t>(i) * n + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) {
            sign = 0;
            return -std::numeric_limits<double>::infinity();
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(piv) * n + j],
                          a[static_cast<std::size_t>(k) * n + j]);
            sign = -sign;
        }
        const double pivot = a[static_cast<std::size_t>(k) * n + k];
        if (pivot < 0.0) sign = -sign;
        logdet += std::log(std::abs(pivot));
        for (int i = k + 1; i < n; ++i) {
            const double factor = a[static_cast<std::size_t>(i) * n + k] / pivot;
            if (factor == 0.0) continue;
            for (int j = k + 1; j < n; ++j)
                a[static_cast<std::size_t>(i) * n + j] -=
                    factor * a[static_cast<std::size_t>(k) * n + j];
        }
    }
    return logdet;
}

double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
    constexpr double inv_phi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? x1 : x2;
}

double grid_then_golden_min(const std::function<double(double)>& f, double lo, double hi,
                            int grid_points, double tol) {
    if (!(hi >= lo)) throw std::invalid_argument("empty minimisation interval");
    if (hi == lo || grid_points < 3) return lo;
    const double h = (hi - lo) / (grid_points - 1);
    int best = 0;
    double best_val = f(lo);
    for (int i = 1; i < grid_points; ++i) {
        const double v = f(lo + i * h);
        if (v < best_val) {
            best_val = v;
            best = i;
        }
    }
    const double a = lo + std::max(best - 1, 0) * h;
    const double b = lo + std::min(best + 1, grid_points - 1) * h;
    return golden_section_min(f, a, b, tol);
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double target, double xtol) {
    double a = lo, b = hi;
    for (int it = 0; it < 200 && b - a > xtol; ++it) {
        const double mid = 0.5 * (a + b);
        if (f(mid) < target)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n) throw std::invalid_argument("interpolant needs >= 2 nodes");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw std::invalid_argument("abscissae must increase");

    // Fritsch-Carlson slopes.
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    d_[0] = delta[0];
    d_[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // Endpoint safeguard against overshoot.
    for (std::size_t i : {std::size_t{0}, n - 1}) {
        const double del = i == 0 ? delta[0] : delta[n - 2];
        if (d_[i] * del <= 0.0)
            d_[i] = 0.0;
        else if (std::abs(d_[i]) > 3.0 * std::abs(del))
            d_[i] = 3.0 * del;
    }
}

std::size_t MonotoneCubic::locate(double x) const {
    if (x <= x_.front()) return 0;
    if (x >= x_.back()) return x_.size() - 2;
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double MonotoneCubic::eval_cell(std::size_t i, double x) const {
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double MonotoneCubic::operator()(double x) const { return eval_cell(locate(x), x); }

double MonotoneCubic::derivative(double x) const {
    const std::size_t i = locate(x);
    const double h = x_[i + 1] - x_[i];
    const double t = (x - x_[i]) / h;
    const double t2 = t * t;
    const double dh00 = (6 * t2 - 6 * t) / h;
    const double dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = (-6 * t2 + 6 * t) / h;
    const double dh11 = 3 * t2 - 2 * t;
    return dh00 * y_[i] + dh10 * d_[i] + dh01 * y_[i + 1] + dh11 * d_[i + 1];
}

double MonotoneCubic::invert_on_cell(std::size_t i, double y) const {
    double a = x_[i], b = x_[i + 1];
    const bool increasing = y_[i + 1] >= y_[i];
    for (int it = 0; it < 200 && b - a > 1e-15 * (std::abs(a) + std::abs(b) + 1.0); ++it) {
        const double mid = 0.5 * (a + b);
        const double v = eval_cell(i, mid);
        if ((v < y) == increasing)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

}  // namespace spikedetect::numerics
