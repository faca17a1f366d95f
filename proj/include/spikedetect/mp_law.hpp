#pragma once

namespace spikedetect {

// Marcenko-Pastur law with aspect ratio c in (0,1): the limiting spectral
// distribution of a white-noise sample covariance matrix, supported on
// [(1-sqrt(c))^2, (1+sqrt(c))^2]. Provides the closed forms used throughout:
// the Stieltjes transform f, its companion f~, and the log-potentials
//   F+(x) = int log(x-y) dMP(y)   for x >= lambda_plus,
//   F-(x) = int log(y-x) dMP(y)   for 0 < x <= lambda_minus.
class MpLaw {
public:
    explicit MpLaw(double c);

    double aspect_ratio() const { return c_; }
    double lambda_minus() const { return lambda_minus_; }
    double lambda_plus() const { return lambda_plus_; }

    // Density of the law; 0 outside the open support (total function).
    double pdf(double y) const;

    // Stieltjes transform f(x) = int (y-x)^-1 dMP(y) on the real axis outside
    // the open support. Negative branch for x >= lambda_plus, positive branch
    // for 0 < x <= lambda_minus. At the edges the vanishing discriminant is
    // clamped to 0 (continuous limiting value).
    double stieltjes(double x) const;

    // Companion transform f~(x) = c f(x) - (1-c)/x. Same domain as stieltjes.
    double stieltjes_tilde(double x) const;

    // Closed forms of the log-potentials.
    double log_potential_plus(double x) const;   // x >= lambda_plus
    double log_potential_minus(double x) const;  // 0 < x <= lambda_minus

private:
    void require_outside_support(double x) const;

    double c_;
    double sqrt_c_;
    double lambda_minus_;
    double lambda_plus_;
};

}  // namespace spikedetect
