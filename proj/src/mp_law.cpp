#include "spikedetect/mp_law.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spikedetect {

MpLaw::MpLaw(double c) : c_(c) {
    if (!(c > 0.0) || !(c < 1.0))
        throw std::domain_error("MP aspect ratio must satisfy 0 < c < 1, got " +
                                std::to_string(c));
    sqrt_c_ = std::sqrt(c);
    lambda_minus_ = (1.0 - sqrt_c_) * (1.0 - sqrt_c_);
    lambda_plus_ = (1.0 + sqrt_c_) * (1.0 + sqrt_c_);
}

double MpLaw::pdf(double y) const {
    if (y <= lambda_minus_ || y >= lambda_plus_) return 0.0;
    return std::sqrt((lambda_plus_ - y) * (y - lambda_minus_)) / (2.0 * M_PI * c_ * y);
}

void MpLaw::require_outside_support(double x) const {
    if (!(x > 0.0) || (x > lambda_minus_ && x < lambda_plus_))
        throw std::domain_error("Stieltjes transform evaluated inside the support: x = " +
                                std::to_string(x));
}

double MpLaw::stieltjes(double x) const {
    require_outside_support(x);
    const double u = 1.0 - x - c_;
    // (1-x-c)^2 - 4cx factored through the edges: exact cancellation at
    // lambda_minus/lambda_plus instead of O(sqrt(eps)) noise, and the clamp
    // only absorbs the sign of rounding residue (continuous limit).
    const double disc = std::max((x - lambda_minus_) * (x - lambda_plus_), 0.0);
    const double root = std::sqrt(disc);
    return x >= lambda_plus_ ? (u + root) / (2.0 * c_ * x) : (u - root) / (2.0 * c_ * x);
}

double MpLaw::stieltjes_tilde(double x) const { return c_ * stieltjes(x) - (1.0 - c_) / x; }

double MpLaw::log_potential_plus(double x) const {
    if (!(x >= lambda_plus_))
        throw std::domain_error("F+ requires x >= lambda_plus, got " + std::to_string(x));
    const double f = stieltjes(x);
    const double ft = c_ * f - (1.0 - c_) / x;
    return std::log(x) + std::log1p(c_ * f) / c_ + std::log1p(ft) + x * f * ft;
}

double MpLaw::log_potential_minus(double x) const {
    if (!(x > 0.0) || !(x <= lambda_minus_))
        throw std::domain_error("F- requires 0 < x <= lambda_minus, got " + std::to_string(x));
    const double f = stieltjes(x);
    const double ft = c_ * f - (1.0 - c_) / x;
    // 1 + f~ < 0 on this side of the support.
    return std::log(x) + std::log1p(c_ * f) / c_ + std::log(-(1.0 + ft)) + x * f * ft;
}

}  // namespace spikedetect
