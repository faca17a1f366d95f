#include "spikedetect/detectors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spikedetect/errors.hpp"

namespace spikedetect {

namespace {

double ratio_cn(int sensors, int snapshots) {
    if (sensors < 2 || snapshots < 1) throw std::domain_error("need K >= 2, N >= 1");
    const double c_n = static_cast<double>(sensors) / snapshots;
    if (!(c_n > 0.0) || !(c_n < 1.0))
        throw std::domain_error("tests require c_N = K/N in (0,1), got " + std::to_string(c_n));
    return c_n;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::domain_error("level alpha must lie in (0,1), got " + std::to_string(alpha));
}

}  // namespace

double glrt_threshold(int sensors, int snapshots, double alpha, const TwCdf& tw) {
    check_alpha(alpha);
    const double c_n = ratio_cn(sensors, snapshots);
    const double s = std::sqrt(c_n);
    const double n23 = std::pow(static_cast<double>(snapshots), 2.0 / 3.0);
    return (1.0 + s) * (1.0 + s) + top_edge_scale(c_n) / n23 * tw.quantile(1.0 - alpha);
}

double glrt_pvalue(double t, int sensors, int snapshots, const TwCdf& tw) {
    const double c_n = ratio_cn(sensors, snapshots);
    const double s = std::sqrt(c_n);
    const double n23 = std::pow(static_cast<double>(snapshots), 2.0 / 3.0);
    const double centered = n23 * (t - (1.0 + s) * (1.0 + s)) / top_edge_scale(c_n);
    return 1.0 - tw.cdf(centered);
}

Decision glrt_decide(const SnapshotMatrix& y, double alpha, const TwCdf& tw) {
    check_alpha(alpha);
    const SpectrumSummary sum = summarize(y);
    Decision d;
    d.kind = TestKind::glrt;
    d.sensors = y.sensors();
    d.snapshots = y.snapshots();
    d.alpha = alpha;
    d.statistic = sum.t_stat;
    d.threshold = glrt_threshold(d.sensors, d.snapshots, alpha, tw);
    d.reject_null = d.statistic > d.threshold;
    double p = glrt_pvalue(d.statistic, d.sensors, d.snapshots, tw);
    // The threshold decides; if interpolation puts p on the wrong side of
    // alpha (only possible within ~1e-9 of it), nudge p to agree.
    if ((p < alpha) != d.reject_null)
        p = d.reject_null ? std::nextafter(alpha, 0.0) : alpha;
    d.p_value = p;
    return d;
}

CondWeights cond_weights(double c_n) {
    if (!(c_n > 0.0) || !(c_n < 1.0)) throw std::domain_error("cond_weights needs c in (0,1)");
    const double s = std::sqrt(c_n);
    const double a = (1.0 + s) / ((1.0 - s) * (1.0 - s)) * std::cbrt(1.0 / s + 1.0);
    const double b = (1.0 + s) * (1.0 + s) / std::pow(s - 1.0, 3.0) * std::cbrt(1.0 / s - 1.0);
    return {a, b};
}

double cond_threshold(int sensors, int snapshots, double alpha, const TwCdf& tw) {
    check_alpha(alpha);
    const double c_n = ratio_cn(sensors, snapshots);
    const double s = std::sqrt(c_n);
    const double limit = (1.0 + s) * (1.0 + s) / ((1.0 - s) * (1.0 - s));
    const auto [a, b] = cond_weights(c_n);
    const double n23 = std::pow(static_cast<double>(snapshots), 2.0 / 3.0);
    return limit + combo_quantile(a, b, 1.0 - alpha, tw) / n23;
}

Decision cond_decide(const SnapshotMatrix& y, double alpha, const TwCdf& tw) {
    check_alpha(alpha);
    const SpectrumSummary sum = summarize(y);
    Decision d;
    d.kind = TestKind::condition;
    d.sensors = y.sensors();
    d.snapshots = y.snapshots();
    d.alpha = alpha;
    d.statistic = sum.u_stat;
    d.threshold = cond_threshold(d.sensors, d.snapshots, alpha, tw);
    d.reject_null = d.statistic > d.threshold;
    return d;
}

}  // namespace spikedetect
