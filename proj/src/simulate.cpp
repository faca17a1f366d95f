#include "spikedetect/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spikedetect/errors.hpp"
#include "spikedetect/numerics.hpp"
#include "spikedetect/rng.hpp"

namespace spikedetect::sim {

void SimConfig::validate() const {
    if (sensors < 2) throw std::domain_error("simulation needs K >= 2");
    if (snapshots <= sensors) throw std::domain_error("simulation needs N > K (c_N < 1)");
    if (!(sigma2 > 0.0)) throw std::domain_error("sigma2 must be positive");
    if (!(rho >= 0.0)) throw std::domain_error("rho must be >= 0");
    if (trials < 1) throw std::domain_error("need at least one trial");
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("alpha must lie in (0,1)");
    if (threads < 0) throw std::domain_error("threads must be >= 0");
}

SnapshotMatrix gen_h0(const SimConfig& cfg, long trial) {
    cfg.validate();
    const rng::ComplexGaussianStream noise(cfg.seed, static_cast<std::uint64_t>(trial),
                                           rng::StreamRole::noise);
    const double scale = std::sqrt(cfg.sigma2);
    SnapshotMatrix y(cfg.sensors, cfg.snapshots);
    std::uint64_t idx = 0;
    for (int n = 0; n < cfg.snapshots; ++n)
        for (int k = 0; k < cfg.sensors; ++k) y.at(k, n) = scale * noise.normal(idx++);
    return y;
}

SnapshotMatrix gen_h1(const SimConfig& cfg, long trial) {
    cfg.validate();
    if (!(cfg.rho > 0.0)) throw std::domain_error("gen_h1 needs rho > 0");
    SnapshotMatrix y = gen_h0(cfg, trial);

    // Channel with ||h||^2 = rho * sigma2 exactly.
    std::vector<cplx> h(cfg.sensors, cplx{0.0, 0.0});
    const double target_norm = std::sqrt(cfg.rho * cfg.sigma2);
    if (cfg.channel_mode == ChannelMode::deterministic_axis) {
        h[0] = target_norm;
    } else {
        const rng::ComplexGaussianStream chan(cfg.seed, static_cast<std::uint64_t>(trial),
                                              rng::StreamRole::channel);
        double norm2 = 0.0;
        for (int k = 0; k < cfg.sensors; ++k) {
            h[k] = chan.normal(k);
            norm2 += std::norm(h[k]);
        }
        const double rescale = target_norm / std::sqrt(norm2);
        for (cplx& v : h) v *= rescale;
    }

    const rng::ComplexGaussianStream sig(cfg.seed, static_cast<std::uint64_t>(trial),
                                         rng::StreamRole::signal);
    for (int n = 0; n < cfg.snapshots; ++n) {
        const cplx s = sig.normal(n);  // unit-variance source sample
        auto col = y.column(n);
        for (int k = 0; k < cfg.sensors; ++k) col[k] += h[k] * s;
    }
    return y;
}

PairedStats paired_statistics(const SimConfig& cfg) {
    cfg.validate();
    if (!(cfg.rho > 0.0)) throw std::domain_error("paired sweep needs rho > 0");
    PairedStats out;
    out.t_h0.resize(cfg.trials);
    out.u_h0.resize(cfg.trials);
    out.t_h1.resize(cfg.trials);
    out.u_h1.resize(cfg.trials);
    numerics::parallel_for(cfg.trials, cfg.threads, [&](long i) {
        const SpectrumSummary s0 = summarize(gen_h0(cfg, i));
        out.t_h0[i] = s0.t_stat;
        out.u_h0[i] = s0.u_stat;
        const SpectrumSummary s1 = summarize(gen_h1(cfg, i));
        out.t_h1[i] = s1.t_stat;
        out.u_h1[i] = s1.u_stat;
    });
    return out;
}

std::vector<double> h0_t_statistics(const SimConfig& cfg) {
    cfg.validate();
    std::vector<double> t(cfg.trials);
    numerics::parallel_for(cfg.trials, cfg.threads,
                           [&](long i) { t[i] = summarize(gen_h0(cfg, i)).t_stat; });
    return t;
}

PfaEstimate empirical_pfa(const SimConfig& cfg, const TwCdf& tw) {
    const double threshold = glrt_threshold(cfg.sensors, cfg.snapshots, cfg.alpha, tw);
    const std::vector<double> t = h0_t_statistics(cfg);
    long rejections = 0;
    for (double v : t) rejections += v > threshold ? 1 : 0;

    PfaEstimate est;
    est.rejections = rejections;
    est.trials = cfg.trials;
    est.threshold = threshold;
    est.estimate = static_cast<double>(rejections) / cfg.trials;
    // Wilson 95% interval.
    const double z = 1.959963984540054;
    const double n = static_cast<double>(cfg.trials);
    const double p = est.estimate;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    est.wilson_low = std::max(0.0, center - half);
    est.wilson_high = std::min(1.0, center + half);
    return est;
}

namespace {

RocCurve::Point sweep_point(const std::vector<double>& h0, const std::vector<double>& h1,
                            double threshold) {
    long fa = 0, det = 0;
    for (double v : h0) fa += v > threshold ? 1 : 0;
    for (double v : h1) det += v > threshold ? 1 : 0;
    return {static_cast<double>(fa) / h0.size(), static_cast<double>(det) / h1.size(),
            static_cast<long>(h0.size())};
}

// Empirical upper quantile: smallest statistic value rejected at rate <= pfa.
double h0_quantile_threshold(std::vector<double> sorted_h0, double pfa) {
    const long n = static_cast<long>(sorted_h0.size());
    long k = static_cast<long>(std::floor(pfa * n));  // allow k rejections
    k = std::clamp(k, 0L, n - 1);
    return sorted_h0[n - 1 - k];
}

}  // namespace

std::pair<RocCurve, RocCurve> roc_curves(const SimConfig& cfg,
                                         std::span<const double> threshold_grid) {
    const PairedStats st = paired_statistics(cfg);
    std::vector<double> grid(threshold_grid.begin(), threshold_grid.end());
    std::sort(grid.begin(), grid.end(), std::greater<>());  // ascending PFA

    RocCurve t_curve, u_curve;
    t_curve.kind = TestKind::glrt;
    u_curve.kind = TestKind::condition;
    for (double thr : grid) {
        t_curve.points.push_back(sweep_point(st.t_h0, st.t_h1, thr));
        u_curve.points.push_back(sweep_point(st.u_h0, st.u_h1, thr));
    }
    return {std::move(t_curve), std::move(u_curve)};
}

std::pair<RocCurve, RocCurve> roc_at_matched_pfa(const SimConfig& cfg,
                                                 std::span<const double> pfa_grid) {
    const PairedStats st = paired_statistics(cfg);
    std::vector<double> t0 = st.t_h0, u0 = st.u_h0;
    std::sort(t0.begin(), t0.end());
    std::sort(u0.begin(), u0.end());

    RocCurve t_curve, u_curve;
    t_curve.kind = TestKind::glrt;
    u_curve.kind = TestKind::condition;
    std::vector<double> grid(pfa_grid.begin(), pfa_grid.end());
    std::sort(grid.begin(), grid.end());
    for (double pfa : grid) {
        if (!(pfa > 0.0) || !(pfa < 1.0))
            throw std::domain_error("pfa grid values must lie in (0,1)");
        auto pt = sweep_point(st.t_h0, st.t_h1, h0_quantile_threshold(t0, pfa));
        auto pu = sweep_point(st.u_h0, st.u_h1, h0_quantile_threshold(u0, pfa));
        t_curve.points.push_back(pt);
        u_curve.points.push_back(pu);
    }
    return {std::move(t_curve), std::move(u_curve)};
}

double tw_fluctuation_check(const SimConfig& cfg, bool under_h1, const TwCdf& tw) {
    cfg.validate();
    std::vector<double> centered(cfg.trials);
    numerics::parallel_for(cfg.trials, cfg.threads, [&](long i) {
        const SpectrumSummary sum =
            summarize(under_h1 ? gen_h1(cfg, i) : gen_h0(cfg, i));
        // Centering assumes unit noise variance; normalise by the known sigma2.
        std::vector<double> eigs = sum.eigenvalues;
        for (double& v : eigs) v /= cfg.sigma2;
        centered[i] = center_statistics(eigs, cfg.sensors, cfg.snapshots).first;
    });
    std::sort(centered.begin(), centered.end());
    double dist = 0.0;
    const double n = static_cast<double>(cfg.trials);
    for (long i = 0; i < cfg.trials; ++i) {
        const double f = tw.cdf(centered[i]);
        dist = std::max(dist, std::abs((i + 1) / n - f));
        dist = std::max(dist, std::abs(i / n - f));
    }
    return dist;
}

}  // namespace spikedetect::sim
