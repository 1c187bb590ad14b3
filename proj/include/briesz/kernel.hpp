#pragma once

#include "briesz/field.hpp"

#include <span>

namespace briesz {

/// Parameters of the radial convolution kernel with multiplier order alpha,
/// dimension n and dilation R. Derived quantities:
///   lambda     = alpha + n/2
///   q0         = n / ((n+1)/2 + alpha)       (Lq blow-up exponent)
///   norm_const = 2^alpha Gamma(alpha+1) (2pi)^{-n/2}
/// norm_const is the unique constant for which the closed form equals the
/// inverse transform of (1-|y|^2)_+^alpha under this toolkit's convention,
/// so that the kernel has unit integral.
class KernelSpec {
  public:
    KernelSpec(double alpha, int dim, double R);

    double alpha() const { return alpha_; }
    int dim() const { return dim_; }
    double R() const { return R_; }
    double lambda() const { return alpha_ + 0.5 * dim_; }
    double q0() const { return dim_ / (0.5 * (dim_ + 1) + alpha_); }
    double norm_const() const { return norm_const_; }
    /// Decay exponent of |K|: (n+1)/2 + alpha.
    double decay_exponent() const { return 0.5 * (dim_ + 1) + alpha_; }

  private:
    double alpha_;
    int dim_;
    double R_;
    double norm_const_;
};

/// K_lambda^R(z) = R^n norm_const J_lambda(R|z|) / (R|z|)^lambda, finite at 0.
double kernel_eval(const KernelSpec& spec, std::span<const double> z);
double kernel_eval_radial(const KernelSpec& spec, double r);

GridFunction kernel_sample(const KernelSpec& spec, const Grid& grid);

/// Lq norm of the kernel by radial quadrature: panels between consecutive
/// Bessel zeros up to r_cut = max(200, 50/(q-q0)), then an analytic tail from
/// the asymptotic envelope. `error` bounds the quadrature error plus the gap
/// between the envelope tail bound and the oscillation-averaged tail estimate.
struct LqNorm {
    double value = 0.0;
    double error = 0.0;
    double head_integral = 0.0;  // quadrature part of int |K|^q r^{n-1} dr (with area factor)
    double tail_integral = 0.0;  // averaged-envelope tail estimate
    double r_cut = 0.0;
};
LqNorm kernel_lq_norm_detailed(const KernelSpec& spec, double q, double tol_scale = 1.0);
double kernel_lq_norm(const KernelSpec& spec, double q);

/// Convolution form of the operator: convolve_direct(f, kernel samples).
/// Refuses grids above 2^20 nodes (GuardError); quadratic cost.
GridFunction bochner_riesz_direct(const GridFunction& f, const KernelSpec& spec);

/// Surface area of the unit sphere in R^n.
double sphere_area(int n);

} // namespace briesz
