#pragma once

#include <optional>

#include "spikedetect/spectrum.hpp"
#include "spikedetect/tracy_widom.hpp"

namespace spikedetect {

enum class TestKind { glrt, condition };

// Outcome of a single test. reject_null is equivalent to
// statistic > threshold, and when a p-value is present also to
// p_value < alpha (ties within interpolation error are resolved in favour
// of the threshold comparison and the p-value is nudged to the consistent
// side of alpha, well below its accuracy).
struct Decision {
    double statistic = 0.0;
    double threshold = 0.0;
    std::optional<double> p_value;
    bool reject_null = false;
    TestKind kind = TestKind::glrt;
    int sensors = 0;
    int snapshots = 0;
    double alpha = 0.0;
};

// Asymptotic level-alpha threshold on T_N:
//   (1+sqrt(c_N))^2 + b_N N^(-2/3) * F_TW^-1(1-alpha).
double glrt_threshold(int sensors, int snapshots, double alpha,
                      const TwCdf& tw = TwCdf::shared());

// Asymptotic p-value 1 - F_TW(N^(2/3) (t - (1+sqrt(c_N))^2) / b_N).
double glrt_pvalue(double t, int sensors, int snapshots, const TwCdf& tw = TwCdf::shared());

Decision glrt_decide(const SnapshotMatrix& y, double alpha, const TwCdf& tw = TwCdf::shared());

// Asymptotic edge-scale weights of the condition-number statistic,
//   a = (1+sqrt(c)) / (1-sqrt(c))^2 * (1/sqrt(c)+1)^(1/3),
//   b = (1+sqrt(c))^2 / (sqrt(c)-1)^3 * (1/sqrt(c)-1)^(1/3)  (negative for c<1).
struct CondWeights {
    double a;
    double b;
};
CondWeights cond_weights(double c_n);

// Threshold on U_N: (1+sqrt(c_N))^2/(1-sqrt(c_N))^2
//                   + N^(-2/3) * combo_quantile(a, b, 1-alpha).
double cond_threshold(int sensors, int snapshots, double alpha,
                      const TwCdf& tw = TwCdf::shared());

// Threshold-only decision on U_N (no p-value attached).
Decision cond_decide(const SnapshotMatrix& y, double alpha, const TwCdf& tw = TwCdf::shared());

}  // namespace spikedetect
