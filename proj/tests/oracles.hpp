// Test-only oracles, deliberately independent of the library code paths they
// check: plain long-double summation and quadrature, closed-form Gaussian
// integrals, and brute-force grid minimization.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// Recursive Simpson quadrature in long double (fixed uniform refinement).
long double simpson_ld(const std::function<long double(long double)>& f, long double a,
                       long double b, int panels = 4096);

// Gamma(x) as 2 int_0^inf u^{2x-1} e^{-u^2} du (substituted form, smooth at 0
// for x >= 0.5; for smaller x one recurrence step is applied).
long double gamma_quadrature(long double x);

// J_nu(x) by direct series summation with lgammal term weights.
long double bessel_series(long double nu, long double x, int terms = 200);

// ||c1 exp(-c2 |x|^2)||_p on R^n in closed form.
long double gaussian_lp_norm(long double c1, long double c2, long double p, int n);

// Convolution of two centered Gaussians c1 e^{-c2|x|^2} and c3 e^{-c4|x|^2}:
// returns (amp, decay) with (f*g)(x) = amp e^{-decay |x|^2}.
struct GaussianPair {
    long double amp;
    long double decay;
};
GaussianPair gaussian_convolution(long double c1, long double c2, long double c3,
                                  long double c4, int n);

// Brute-force minimizer over a uniform grid of `points` samples on [lo, hi].
double grid_min(const std::function<double(double)>& f, double lo, double hi, int points,
                double* argmin = nullptr);

} // namespace oracles
