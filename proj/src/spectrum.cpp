#include "spikedetect/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spikedetect/errors.hpp"

namespace spikedetect {

SnapshotMatrix::SnapshotMatrix(int sensors, int snapshots) : k_(sensors), n_(snapshots) {
    if (sensors < 1 || snapshots < 1)
        throw std::domain_error("SnapshotMatrix needs K >= 1, N >= 1");
    data_.assign(static_cast<std::size_t>(k_) * n_, cplx{0.0, 0.0});
}

void SnapshotMatrix::validate() const {
    for (const cplx& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("SnapshotMatrix contains non-finite entries");
}

HermitianMatrix sample_covariance(const SnapshotMatrix& y) {
    y.validate();
    const int k = y.sensors(), n = y.snapshots();
    HermitianMatrix r;
    r.n = k;
    r.a.assign(static_cast<std::size_t>(k) * k, cplx{0.0, 0.0});
    // Accumulate rank-one column updates on the lower triangle.
    for (int col = 0; col < n; ++col) {
        const auto yn = y.column(col);
        for (int i = 0; i < k; ++i) {
            const cplx yi = yn[i];
            for (int j = 0; j <= i; ++j) r.at(i, j) += yi * std::conj(yn[j]);
        }
    }
    const double inv_n = 1.0 / n;
    for (int i = 0; i < k; ++i) {
        r.at(i, i) = cplx{r.at(i, i).real() * inv_n, 0.0};
        for (int j = 0; j < i; ++j) {
            r.at(i, j) *= inv_n;
            r.at(j, i) = std::conj(r.at(i, j));
        }
    }
    return r;
}

namespace {

double frobenius(const HermitianMatrix& r) {
    double s = 0.0;
    for (const cplx& v : r.a) s += std::norm(v);
    return std::sqrt(s);
}

double off_diagonal_frobenius(const HermitianMatrix& r) {
    double s = 0.0;
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j)
            if (i != j) s += std::norm(r.at(i, j));
    return std::sqrt(s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const HermitianMatrix& r_in) {
    const int n = r_in.n;
    if (n < 1 || r_in.a.size() != static_cast<std::size_t>(n) * n)
        throw std::domain_error("malformed Hermitian matrix");
    const double norm = frobenius(r_in);
    // Input validation: Hermitian to 1e-12 relative.
    double herm_err = 0.0;
    for (int i = 0; i < n; ++i) {
        herm_err = std::max(herm_err, std::abs(r_in.at(i, i).imag()));
        for (int j = 0; j < i; ++j)
            herm_err = std::max(herm_err, std::abs(r_in.at(i, j) - std::conj(r_in.at(j, i))));
    }
    if (herm_err > 1e-12 * std::max(norm, 1e-300))
        throw std::domain_error("matrix is not Hermitian to 1e-12 relative");

    HermitianMatrix m = r_in;
    if (n == 1) return {m.at(0, 0).real()};

    const double tol = 1e-13 * norm;
    constexpr int kMaxSweeps = 30;
    // Skip rotations on entries already far below the convergence target;
    // they cannot affect the final off-diagonal norm materially.
    const double skip = tol / (static_cast<double>(n) * n);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_frobenius(m) <= tol) {
            std::vector<double> eig(n);
            for (int i = 0; i < n; ++i) eig[i] = m.at(i, i).real();
            std::sort(eig.begin(), eig.end(), std::greater<>());
            return eig;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = m.at(p, q);
                const double r = std::abs(apq);
                if (r <= skip) continue;
                const cplx phase = apq / r;  // e^{i phi}
                const double tau = (m.at(q, q).real() - m.at(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Rows p and q.
                for (int j = 0; j < n; ++j) {
                    const cplx mpj = m.at(p, j), mqj = m.at(q, j);
                    m.at(p, j) = c * mpj - s * phase * mqj;
                    m.at(q, j) = s * std::conj(phase) * mpj + c * mqj;
                }
                // Columns p and q.
                for (int i = 0; i < n; ++i) {
                    const cplx mip = m.at(i, p), miq = m.at(i, q);
                    m.at(i, p) = c * mip - s * std::conj(phase) * miq;
                    m.at(i, q) = s * phase * mip + c * miq;
                }
                m.at(p, q) = cplx{0.0, 0.0};
                m.at(q, p) = cplx{0.0, 0.0};
                m.at(p, p) = cplx{m.at(p, p).real(), 0.0};
                m.at(q, q) = cplx{m.at(q, q).real(), 0.0};
            }
        }
    }
    throw convergence_error("Jacobi did not converge in 30 sweeps; off-diagonal norm " +
                            std::to_string(off_diagonal_frobenius(m)) + " vs tolerance " +
                            std::to_string(tol));
}

double glr_statistic(std::span<const double> eigs, double trace_mean) {
    if (eigs.empty()) throw std::domain_error("empty spectrum");
    if (!(trace_mean > 0.0)) throw degenerate_error("zero trace: statistic undefined");
    return eigs.front() / trace_mean;
}

double log_glr(double t, int sensors, int snapshots) {
    const double k = sensors;
    if (sensors < 2 || snapshots < 1) throw std::domain_error("log_glr needs K >= 2, N >= 1");
    if (!(t > 1.0) || !(t < k))
        throw std::domain_error("log_glr requires T in (1, K), got " + std::to_string(t));
    const double n = snapshots;
    return (k - 1.0) * n * std::log1p(-1.0 / k) - n * std::log(t) -
           (k - 1.0) * n * std::log1p(-t / k);
}

double condition_number(std::span<const double> eigs) {
    if (eigs.empty()) throw std::domain_error("empty spectrum");
    if (!(eigs.back() > 0.0))
        throw degenerate_error("smallest eigenvalue is zero: condition number undefined");
    return eigs.front() / eigs.back();
}

double top_edge_scale(double c_n) {
    const double s = std::sqrt(c_n);
    return (1.0 + s) * std::cbrt(1.0 / s + 1.0);
}

double bottom_edge_scale(double c_n) {
    const double s = std::sqrt(c_n);
    return (s - 1.0) * std::cbrt(1.0 / s - 1.0);
}

std::pair<double, double> center_statistics(std::span<const double> eigs, int sensors,
                                            int snapshots) {
    if (eigs.empty()) throw std::domain_error("empty spectrum");
    const double c_n = static_cast<double>(sensors) / snapshots;
    if (!(c_n > 0.0) || !(c_n < 1.0))
        throw std::domain_error("centering requires c_N = K/N in (0,1), got " +
                                std::to_string(c_n));
    const double s = std::sqrt(c_n);
    const double n23 = std::pow(static_cast<double>(snapshots), 2.0 / 3.0);
    const double lambda1 = n23 * (eigs.front() - (1.0 + s) * (1.0 + s)) / top_edge_scale(c_n);
    const double lambdak = n23 * (eigs.back() - (1.0 - s) * (1.0 - s)) / bottom_edge_scale(c_n);
    return {lambda1, lambdak};
}

SpectrumSummary summarize(const SnapshotMatrix& y) {
    const int k = y.sensors(), n = y.snapshots();
    if (k < 2) throw std::domain_error("detection statistics need K >= 2 sensors");
    if (!(static_cast<double>(k) / n < 1.0))
        throw std::domain_error("detection statistics need N > K (c_N < 1)");

    const HermitianMatrix r = sample_covariance(y);
    double trace = 0.0;
    for (int i = 0; i < k; ++i) trace += r.at(i, i).real();

    SpectrumSummary out;
    out.eigenvalues = hermitian_eigenvalues(r);
    const double lambda1 = out.eigenvalues.front();
    for (double& v : out.eigenvalues) {
        if (v < 0.0) {
            if (v < -1e-12 * std::max(lambda1, 0.0))
                throw degenerate_error("covariance eigenvalue " + std::to_string(v) +
                                       " below the PSD clamp window");
            v = 0.0;
        }
    }
    out.trace_mean = trace / k;
    out.t_stat = glr_statistic(out.eigenvalues, out.trace_mean);
    out.u_stat = condition_number(out.eigenvalues);
    std::tie(out.lambda1_centered, out.lambdaK_centered) =
        center_statistics(out.eigenvalues, k, n);
    return out;
}

}  // namespace spikedetect
