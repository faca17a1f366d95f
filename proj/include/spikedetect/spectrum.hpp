#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace spikedetect {

using cplx = std::complex<double>;

// K x N complex observation matrix (sensors x snapshots), column-major so a
// snapshot y(n) is contiguous. Entries must be finite.
class SnapshotMatrix {
public:
    SnapshotMatrix(int sensors, int snapshots);

    int sensors() const { return k_; }
    int snapshots() const { return n_; }

    cplx& at(int k, int n) { return data_[static_cast<std::size_t>(n) * k_ + k]; }
    const cplx& at(int k, int n) const { return data_[static_cast<std::size_t>(n) * k_ + k]; }

    std::span<const cplx> column(int n) const {
        return {data_.data() + static_cast<std::size_t>(n) * k_, static_cast<std::size_t>(k_)};
    }
    std::span<cplx> column(int n) {
        return {data_.data() + static_cast<std::size_t>(n) * k_, static_cast<std::size_t>(k_)};
    }

    std::span<const cplx> entries() const { return data_; }
    std::span<cplx> entries() { return data_; }

    // Throws if any entry is non-finite.
    void validate() const;

private:
    int k_, n_;
    std::vector<cplx> data_;
};

// Dense Hermitian matrix, row-major.
struct HermitianMatrix {
    int n = 0;
    std::vector<cplx> a;

    cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// R = (1/N) Y Y^H, symmetrised as (A + A^H)/2 (exact by construction: the
// upper triangle is the conjugate of the computed lower triangle and the
// diagonal is real).
HermitianMatrix sample_covariance(const SnapshotMatrix& y);

// Eigenvalues of a Hermitian matrix in descending order, by cyclic Jacobi
// with complex rotations. Off-diagonal Frobenius tolerance 1e-13 * ||R||_F,
// 30-sweep cap (convergence_error beyond that). Input must be Hermitian to
// 1e-12 relative.
std::vector<double> hermitian_eigenvalues(const HermitianMatrix& r);

// T_N = lambda_1 / ((1/K) tr R). Scale invariant; degenerate when the trace
// vanishes.
double glr_statistic(std::span<const double> eigenvalues_desc, double trace_mean);

// log of the generalized likelihood ratio as a function of T in (1, K):
//   log L = (K-1) N log(1 - 1/K) - N log T - (K-1) N log(1 - T/K).
// Strictly increasing in T. Note the constant's exponent: direct numerical
// maximisation of the two likelihoods fixes it as (K-1)N, which also makes
// L -> 1 as T -> 1 (a GLR is a sup-ratio over nested models, so L >= 1).
double log_glr(double t, int sensors, int snapshots);

// U_N = lambda_1 / lambda_K. Degenerate when lambda_K = 0.
double condition_number(std::span<const double> eigenvalues_desc);

// Edge-centred statistics for c_N = K/N in (0,1), unit noise variance:
//   Lambda_1 = N^(2/3) (lambda_1 - (1+sqrt(c_N))^2) / b_N,
//   b_N = (1+sqrt(c_N)) (1/sqrt(c_N) + 1)^(1/3),
//   Lambda_K = N^(2/3) (lambda_K - (1-sqrt(c_N))^2)
//              / ((sqrt(c_N)-1) (c_N^(-1/2)-1)^(1/3)).
// The Lambda_K scale factor is negative for c_N < 1.
std::pair<double, double> center_statistics(std::span<const double> eigenvalues_desc,
                                            int sensors, int snapshots);
double top_edge_scale(double c_n);     // b_N above
double bottom_edge_scale(double c_n);  // Lambda_K scale factor (negative)

// Full pipeline: covariance, eigenvalues (clamped to >= 0 when above
// -1e-12*lambda_1, rejected below), statistics.
struct SpectrumSummary {
    std::vector<double> eigenvalues;  // descending, nonnegative
    double trace_mean = 0.0;          // (1/K) tr R
    double t_stat = 0.0;              // T_N
    double u_stat = 0.0;              // U_N
    double lambda1_centered = 0.0;    // Lambda_1
    double lambdaK_centered = 0.0;    // Lambda_K
};

SpectrumSummary summarize(const SnapshotMatrix& y);

}  // namespace spikedetect
