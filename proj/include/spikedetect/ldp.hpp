#pragma once

#include <vector>

#include "spikedetect/mp_law.hpp"

namespace spikedetect::ldp {

// Spiked-model limit of the largest eigenvalue, (1+rho)(1+c/rho), for
// rho > 0 and c in (0,1). Equals lambda_plus at rho = sqrt(c).
double lambda_spike(double rho, double c);

// Large-deviation context: limit ratio c, limiting SNR rho (>= 0; 0 means
// the noise-only model), the MP edges and the spiked limit.
class LdpContext {
public:
    LdpContext(double c, double rho);

    const MpLaw& law() const { return law_; }
    double c() const { return law_.aspect_ratio(); }
    double rho() const { return rho_; }
    double lambda_minus() const { return law_.lambda_minus(); }
    double lambda_plus() const { return law_.lambda_plus(); }
    double lambda_spike() const;  // requires rho > 0
    bool supercritical() const { return supercritical_; }

private:
    MpLaw law_;
    double rho_;
    double lambda_spike_;   // NaN when rho == 0
    bool supercritical_;
};

// Rate functions (extended-real: +infinity outside the effective domain;
// never used in further arithmetic without an explicit finiteness check).
//
// I0+ governs the largest eigenvalue under the null: zero at lambda_plus,
// increasing to infinity on [lambda_plus, inf).
double rate_I0_plus(const LdpContext& ctx, double x);

// I_rho+ governs it under a supercritical spike (rho > sqrt(c)): decreasing
// on [lambda_plus, lambda_spike], zero at lambda_spike, increasing beyond.
double rate_Irho_plus(const LdpContext& ctx, double x);

// I- governs the smallest eigenvalue: zero at lambda_minus, +infinity
// outside (0, lambda_minus].
double rate_I_minus(const LdpContext& ctx, double x);

// Spherical-integral limit J_rho (piecewise; constant branch applies for
// rho <= sqrt(c) and x in [lambda_plus, lambda_spike]) and the variational
// function G_rho = x/(1+rho) - (1-c) log x - c F+(x) + c + c log(rho/(c(1+rho))),
// minimised at lambda_spike. I_rho+ = G_rho - G_rho(lambda_spike).
double appendix_J_rho(const LdpContext& ctx, double x);
double appendix_G_rho(const LdpContext& ctx, double x);

// Error exponent of the eigenvalue-ratio test at fixed level:
// I_rho+(lambda_plus) when supercritical, else 0.
double error_exponent_T(const LdpContext& ctx);

// Achievable error-exponent pair: a under H0, b under H1 (nats/snapshot).
struct CurvePoint {
    double a;
    double b;
};

// Error-exponent curve of the ratio test: points (I0+(x), I_rho+(x)) for x
// in the open interval (lambda_plus, lambda_spike), sampled log-uniformly in
// x - lambda_plus. Empty when rho <= sqrt(c).
std::vector<CurvePoint> ee_curve_T(const LdpContext& ctx, int n_points, int threads = 1);

// Contraction rate functions for the condition-number statistic,
//   Gamma(t) = inf { I+(x) + I-(y) : x/y = t, x >= lambda_plus, y <= lambda_minus },
// reduced to a 1-D minimisation over y in [lambda_plus/t, lambda_minus]
// (dense 1024-point bracket + golden-section to 1e-10).
// +infinity for t < lambda_plus/lambda_minus; domain error for t <= 1.
double gamma_0(const LdpContext& ctx, double t);
double gamma_rho(const LdpContext& ctx, double t);

// Error-exponent curve of the condition-number test: (Gamma_0(t), Gamma_rho(t))
// for t in (lambda_plus/lambda_minus, lambda_spike/lambda_minus).
std::vector<CurvePoint> ee_curve_U(const LdpContext& ctx, int n_points, int threads = 1);

}  // namespace spikedetect::ldp
