#pragma once

#include "briesz/field.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace briesz {

/// Frequency lattice dual to a Grid: along axis i the frequencies are
/// y_k = pi k / L_i for k = -M_i/2 .. M_i/2 - 1, stored in ascending k order.
class DualGrid {
  public:
    explicit DualGrid(Grid primal) : primal_(primal) {}

    const Grid& primal() const { return primal_; }
    int dim() const { return primal_.dim(); }
    int points(int axis) const { return primal_.points(axis); }
    std::size_t size() const { return primal_.size(); }

    /// Dual lattice spacing kappa_i = pi / L_i.
    double spacing(int axis) const { return M_PI / primal_.half_extent(axis); }

    /// Frequency coordinate for storage index a in [0, M_i).
    double freq(int axis, int index) const {
        return spacing(axis) * (index - primal_.points(axis) / 2);
    }

    /// Largest radius representable on every axis: min_i pi M_i / (2 L_i).
    double nyquist_radius() const;

    bool operator==(const DualGrid& other) const { return primal_ == other.primal_; }

  private:
    Grid primal_;
};

/// Samples of a function of frequency on a DualGrid, row-major like
/// GridFunction.
struct DualFunction {
    DualGrid grid;
    std::vector<Complex> values;

    DualFunction(DualGrid g, std::vector<Complex> v);
    explicit DualFunction(DualGrid g);
};

/// Radial multiplier symbols m(|y|).
class Symbol {
  public:
    enum class Kind { identity, bochner_riesz, gaussian_limit, tabulated };

    /// (1 - rho^2/R^2)_+^alpha, supported on |y| < R.
    static Symbol bochner_riesz(double alpha, double R);
    /// (1 - rho^2/R^2)^{R^2/2} on |y| < R; pointwise limit exp(-rho^2/2).
    static Symbol gaussian_limit(double R);
    static Symbol identity();
    /// Piecewise-linear radial profile; zero beyond the last sample.
    static Symbol tabulated(std::vector<double> radii, std::vector<double> values);

    double operator()(double rho) const;
    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    /// Support radius; +infinity for the identity symbol.
    double support_radius() const;

  private:
    Kind kind_ = Kind::identity;
    double alpha_ = 0.0;
    double R_ = 0.0;
    std::vector<double> radii_, profile_;
};

/// Lattice approximation of f~(y) = int e^{i(x,y)} f(x) dx, evaluated on the
/// dual lattice via an FFT with the phase/scale factors of this convention.
DualFunction forward_ft(const GridFunction& f);

/// (2pi)^{-n} prod(kappa_i) sum_k g(y_k) e^{-i(t,y_k)}; exact inverse of
/// forward_ft on the lattice.
GridFunction inverse_ft(const DualFunction& g);

/// inverse_ft(m(|y|) * forward_ft(f)). Refuses symbols whose support radius
/// exceeds 0.9 x the Nyquist radius of f's grid (GuardError).
GridFunction apply_multiplier(const GridFunction& f, const Symbol& m);

/// The operator with symbol (1 - |y|^2/R^2)_+^alpha in spectral form.
GridFunction bochner_riesz_spectral(const GridFunction& f, double alpha, double R);

/// The operator with symbol (1 - |y|^2/R^2)^{R^2/2} I(|y| < R).
GridFunction gaussian_limit_operator(const GridFunction& f, double R);

/// FFT convolution: inverse_ft(forward_ft(f) . forward_ft(g)). Periodic
/// wrap-around applies; intended for functions that decay inside the box.
GridFunction convolve_spectral(const GridFunction& f, const GridFunction& g);

} // namespace briesz
