#pragma once

namespace briesz::specfun {

/// Evaluation controls for the Bessel routines. The power series is used for
/// x < crossover_x and the large-argument (Hankel) expansion beyond; both
/// branches are summed in extended (long double) precision.
struct SpecFunConfig {
    double series_tol = 1e-19;  // termwise truncation tolerance
    double crossover_x = 20.0;  // series / asymptotic handoff point

    void validate() const;
};

/// Gamma function for x > 0. Relative error below 1e-12 on (0, 50];
/// the Lanczos rational approximation used here is accurate to ~1e-13
/// over (0, 171). Throws std::domain_error for x <= 0.
double gamma(double x);

/// log Gamma for x > 0.
double log_gamma(double x);

/// Bessel function of the first kind J_nu(x), real order nu >= 0, x >= 0.
/// Absolute error <= 1e-10 over x in [0, 1e3] for orders up to ~12.
double bessel_j(double order, double x, const SpecFunConfig& cfg = {});

/// The radial profile J_nu(x)/x^nu, continuously extended by its limit
/// 1/(2^nu Gamma(nu+1)) at x = 0.
double bessel_ratio(double order, double x, const SpecFunConfig& cfg = {});

/// m-th positive zero of J_nu (m >= 1), via McMahon's expansion refined by
/// Newton steps. Intended for panel boundaries in radial quadrature.
double bessel_j_zero(double order, int m, const SpecFunConfig& cfg = {});

} // namespace briesz::specfun
