#include "spikedetect/ldp.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spikedetect/numerics.hpp"

namespace spikedetect::ldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Log-spaced offsets from the left endpoint; resolves the steep region of
// the rate functions next to lambda_plus.
std::vector<double> log_spaced_interior(double lo, double width, int n_points) {
    if (n_points < 2) throw std::domain_error("curve needs at least 2 points");
    std::vector<double> xs(n_points);
    const double log_min = std::log(width * 1e-8);
    const double log_max = std::log(width * (1.0 - 1e-6));
    for (int i = 0; i < n_points; ++i) {
        const double f = static_cast<double>(i) / (n_points - 1);
        xs[i] = lo + std::exp(log_min + f * (log_max - log_min));
    }
    return xs;
}

}  // namespace

double lambda_spike(double rho, double c) {
    if (!(rho > 0.0)) throw std::domain_error("lambda_spike needs rho > 0");
    if (!(c > 0.0) || !(c < 1.0)) throw std::domain_error("lambda_spike needs c in (0,1)");
    return (1.0 + rho) * (1.0 + c / rho);
}

LdpContext::LdpContext(double c, double rho) : law_(c), rho_(rho) {
    if (!(rho >= 0.0)) throw std::domain_error("rho must be >= 0");
    lambda_spike_ = rho > 0.0 ? ldp::lambda_spike(rho, c)
                              : std::numeric_limits<double>::quiet_NaN();
    supercritical_ = rho > std::sqrt(c);
}

double LdpContext::lambda_spike() const {
    if (!(rho_ > 0.0)) throw std::domain_error("lambda_spike undefined at rho = 0");
    return lambda_spike_;
}

double rate_I0_plus(const LdpContext& ctx, double x) {
    const MpLaw& law = ctx.law();
    const double lp = law.lambda_plus();
    if (x < lp) return kInf;
    const double c = ctx.c();
    return x - lp - (1.0 - c) * std::log(x / lp) -
           2.0 * c * (law.log_potential_plus(x) - law.log_potential_plus(lp));
}

double rate_Irho_plus(const LdpContext& ctx, double x) {
    if (!ctx.supercritical())
        throw std::domain_error("I_rho+ needs a supercritical spike (rho > sqrt(c))");
    const MpLaw& law = ctx.law();
    const double lp = law.lambda_plus();
    if (x < lp) return kInf;
    const double c = ctx.c();
    const double ls = ctx.lambda_spike();
    return (x - ls) / (1.0 + ctx.rho()) - (1.0 - c) * std::log(x / ls) -
           c * (law.log_potential_plus(x) - law.log_potential_plus(ls));
}

double rate_I_minus(const LdpContext& ctx, double x) {
    const MpLaw& law = ctx.law();
    const double lm = law.lambda_minus();
    if (!(x > 0.0) || x > lm) return kInf;
    const double c = ctx.c();
    return x - lm - (1.0 - c) * std::log(x / lm) -
           2.0 * c * (law.log_potential_minus(x) - law.log_potential_minus(lm));
}

double appendix_J_rho(const LdpContext& ctx, double x) {
    const double rho = ctx.rho();
    if (!(rho > 0.0)) throw std::domain_error("J_rho needs rho > 0");
    const MpLaw& law = ctx.law();
    const double lp = law.lambda_plus();
    if (x < lp) throw std::domain_error("J_rho defined for x >= lambda_plus");
    const double c = ctx.c();
    const double ls = ctx.lambda_spike();
    const double log_term = std::log(rho / (c * (1.0 + rho)));
    if (rho <= std::sqrt(c) && x <= ls)
        return rho / c - log_term - law.log_potential_plus(ls);
    return rho * x / (c * (1.0 + rho)) - 1.0 - log_term - law.log_potential_plus(x);
}

double appendix_G_rho(const LdpContext& ctx, double x) {
    const double rho = ctx.rho();
    if (!(rho > 0.0)) throw std::domain_error("G_rho needs rho > 0");
    const MpLaw& law = ctx.law();
    if (x < law.lambda_plus()) throw std::domain_error("G_rho defined for x >= lambda_plus");
    const double c = ctx.c();
    return x / (1.0 + rho) - (1.0 - c) * std::log(x) - c * law.log_potential_plus(x) + c +
           c * std::log(rho / (c * (1.0 + rho)));
}

double error_exponent_T(const LdpContext& ctx) {
    if (!ctx.supercritical()) return 0.0;
    return rate_Irho_plus(ctx, ctx.lambda_plus());
}

std::vector<CurvePoint> ee_curve_T(const LdpContext& ctx, int n_points, int threads) {
    if (!ctx.supercritical()) return {};  // empty curve: no achievable pairs
    const double lp = ctx.lambda_plus();
    const double width = ctx.lambda_spike() - lp;
    const auto xs = log_spaced_interior(lp, width, n_points);
    std::vector<CurvePoint> curve(xs.size());
    numerics::parallel_for(static_cast<long>(xs.size()), threads, [&](long i) {
        const double a = rate_I0_plus(ctx, xs[i]);
        const double b = rate_Irho_plus(ctx, xs[i]);
        assert(std::isfinite(a) && std::isfinite(b));
        curve[i] = CurvePoint{a, b};
    });
    return curve;
}

namespace {

double gamma_contraction(const LdpContext& ctx, double t, bool spiked) {
    if (!(t > 1.0)) throw std::domain_error("contraction rate needs t > 1");
    const double lp = ctx.lambda_plus();
    const double lm = ctx.lambda_minus();
    if (t < lp / lm) return kInf;  // no feasible (x, y) with x >= lp, y <= lm
    const double y_lo = lp / t;
    const double y_hi = lm;
    const auto objective = [&](double y) {
        const double top = spiked ? rate_Irho_plus(ctx, t * y) : rate_I0_plus(ctx, t * y);
        const double bottom = rate_I_minus(ctx, y);
        assert(std::isfinite(top) && std::isfinite(bottom));
        return top + bottom;
    };
    if (y_hi - y_lo < 1e-14) return objective(y_hi);
    const double y_star = numerics::grid_then_golden_min(objective, y_lo, y_hi, 1024, 1e-10);
    return objective(y_star);
}

}  // namespace

double gamma_0(const LdpContext& ctx, double t) { return gamma_contraction(ctx, t, false); }

double gamma_rho(const LdpContext& ctx, double t) {
    if (!ctx.supercritical())
        throw std::domain_error("Gamma_rho needs a supercritical spike");
    return gamma_contraction(ctx, t, true);
}

std::vector<CurvePoint> ee_curve_U(const LdpContext& ctx, int n_points, int threads) {
    if (!ctx.supercritical()) return {};
    const double lm = ctx.lambda_minus();
    const double t_lo = ctx.lambda_plus() / lm;
    const double width = ctx.lambda_spike() / lm - t_lo;
    const auto ts = log_spaced_interior(t_lo, width, n_points);
    std::vector<CurvePoint> curve(ts.size());
    numerics::parallel_for(static_cast<long>(ts.size()), threads, [&](long i) {
        const double a = gamma_0(ctx, ts[i]);
        const double b = gamma_rho(ctx, ts[i]);
        assert(std::isfinite(a) && std::isfinite(b));
        curve[i] = CurvePoint{a, b};
    });
    return curve;
}

}  // namespace spikedetect::ldp
