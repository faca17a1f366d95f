#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spikedetect::numerics {

// Gauss-Legendre rule on (0,1). Nodes ascending, weights positive.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_legendre_01(int order);

// LU with partial pivoting on a dense row-major n x n matrix (destroyed).
// Returns log|det| and the sign of det in `sign` (0 if singular).
double log_abs_det(std::vector<double>& a, int n, int& sign);

// Golden-section refinement of a bracketed minimum of f on [lo, hi].
// Returns the abscissa of the minimum to absolute tolerance `tol`.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

// Dense-grid bracketing followed by golden-section refinement.
// Scans `grid_points` evaluations of f over [lo, hi], brackets the best one,
// then refines. Returns the minimising abscissa.
double grid_then_golden_min(const std::function<double(double)>& f, double lo, double hi,
                            int grid_points, double tol);

// Bisection for a root of the increasing function f on [lo, hi].
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double target, double xtol);

// Monotone cubic interpolant (Fritsch-Carlson slopes). Inputs must be strictly
// increasing in x; if the y data is monotone the interpolant is too.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    // Solves interpolant(x) = y on cell [x_i, x_i+1]; y must lie between the
    // cell's endpoint values.
    double invert_on_cell(std::size_t i, double y) const;

    std::span<const double> abscissae() const { return x_; }
    std::span<const double> values() const { return y_; }

private:
    std::size_t locate(double x) const;
    double eval_cell(std::size_t i, double x) const;

    std::vector<double> x_, y_, d_;
};

// Serial loop when threads == 1, OpenMP otherwise (threads == 0 picks the
// runtime default). Bodies must write only to per-index state so that the
// two paths produce bit-identical results.
template <class F>
void parallel_for(long n, int threads, F&& body) {
    if (n <= 0) return;
#ifdef _OPENMP
    if (threads != 1) {
        int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
#else
    (void)threads;
#endif
    for (long i = 0; i < n; ++i) body(i);
}

}  // namespace spikedetect::numerics
