#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spikedetect/detectors.hpp"
#include "spikedetect/spectrum.hpp"

namespace spikedetect::sim {

enum class ChannelMode { deterministic_axis, random_isotropic };

// Monte Carlo configuration. Everything downstream is a pure function of
// this struct: rerunning with the same config reproduces results exactly,
// independent of thread count.
struct SimConfig {
    int sensors = 0;                                       // K
    int snapshots = 0;                                     // N (> K)
    double sigma2 = 1.0;                                   // noise variance
    double rho = 0.0;                                      // linear SNR
    ChannelMode channel_mode = ChannelMode::deterministic_axis;
    long trials = 1;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    int threads = 1;  // 1 = serial reference; 0 = all cores

    void validate() const;
};

// Data generation per trial (counter-based streams; bit-reproducible).
SnapshotMatrix gen_h0(const SimConfig& cfg, long trial);
SnapshotMatrix gen_h1(const SimConfig& cfg, long trial);

// All four statistics from paired H0/H1 trials (same trial index never
// shares noise between hypotheses; pairing means both detectors see the
// same matrices). Arrays are indexed by trial.
struct PairedStats {
    std::vector<double> t_h0, u_h0;
    std::vector<double> t_h1, u_h1;
};
PairedStats paired_statistics(const SimConfig& cfg);

// H0-only T_N draws (for PFA estimation and fluctuation checks).
std::vector<double> h0_t_statistics(const SimConfig& cfg);

struct PfaEstimate {
    double estimate = 0.0;
    double wilson_low = 0.0;   // 95% Wilson interval
    double wilson_high = 0.0;
    long rejections = 0;
    long trials = 0;
    double threshold = 0.0;
};

// Fraction of H0 trials with T_N above the asymptotic GLRT threshold.
PfaEstimate empirical_pfa(const SimConfig& cfg, const TwCdf& tw = TwCdf::shared());

struct RocCurve {
    struct Point {
        double pfa = 0.0;
        double power = 0.0;
        long trials = 0;
    };
    std::vector<Point> points;  // ordered by pfa
    TestKind kind = TestKind::glrt;
};

// Sweeps one raw threshold grid over both statistics (paired trials).
std::pair<RocCurve, RocCurve> roc_curves(const SimConfig& cfg,
                                         std::span<const double> threshold_grid);

// Empirical ROC evaluated at matched false-alarm rates: per test, the
// threshold at PFA p is the empirical (1-p)-quantile of its H0 statistics.
std::pair<RocCurve, RocCurve> roc_at_matched_pfa(const SimConfig& cfg,
                                                 std::span<const double> pfa_grid);

// Kolmogorov-Smirnov distance between the empirical law of Lambda_1 and the
// Tracy-Widom c.d.f. Uses H1 data instead when `under_h1` (negative
// control: a supercritical spike destroys the agreement). Eigenvalues are
// normalised by sigma2 before centering.
double tw_fluctuation_check(const SimConfig& cfg, bool under_h1 = false,
                            const TwCdf& tw = TwCdf::shared());

}  // namespace spikedetect::sim
