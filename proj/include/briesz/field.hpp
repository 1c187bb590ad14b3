#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace briesz {

using Complex = std::complex<double>;

/// Uniform sampling lattice of the symmetric box prod_i [-L_i, L_i].
/// Sample coordinates along axis i are x_j = -L_i + j h_i with h_i = 2L_i/M_i,
/// j = 0 .. M_i - 1 (the right endpoint +L_i is not a sample).
class Grid {
  public:
    Grid(int dim, std::span<const double> half_extent, std::span<const int> points);

    int dim() const { return dim_; }
    double half_extent(int axis) const { return half_extent_[axis]; }
    int points(int axis) const { return points_[axis]; }
    double spacing(int axis) const { return 2.0 * half_extent_[axis] / points_[axis]; }
    std::size_t size() const;
    double cell_volume() const;

    double coord(int axis, int index) const {
        return -half_extent_[axis] + index * spacing(axis);
    }

    std::array<int, 3> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::array<int, 3>& idx) const;
    void point(std::size_t flat, std::array<double, 3>& x) const;

    bool operator==(const Grid& other) const;

  private:
    int dim_;
    std::array<double, 3> half_extent_{};
    std::array<int, 3> points_{};
};

/// Complex-valued samples on a Grid, row-major over grid points.
/// Values are immutable by convention once constructed; every operation
/// below returns a fresh function.
struct GridFunction {
    Grid grid;
    std::vector<Complex> values;

    GridFunction(Grid g, std::vector<Complex> v);
    explicit GridFunction(Grid g);
};

/// Closed-form test functions used throughout the experiments.
struct TestFunctionSpec {
    enum class Kind { gaussian, box_indicator, smooth_bump, cosine_packet };

    Kind kind = Kind::gaussian;
    double c1 = 1.0, c2 = 1.0;          // gaussian: c1 exp(-c2 |x|^2)
    std::array<double, 3> corner{};     // box_indicator
    double side = 1.0;
    double radius = 1.0;                // smooth_bump
    double frequency = 1.0, width = 1.0;  // cosine_packet

    static TestFunctionSpec gaussian(double c1, double c2);
    /// The standard normal density f0 on R^n.
    static TestFunctionSpec standard_gaussian(int dim);
    static TestFunctionSpec box_indicator(std::span<const double> corner, double side);
    static TestFunctionSpec smooth_bump(double radius);
    static TestFunctionSpec cosine_packet(double frequency, double width);

    double eval(std::span<const double> x) const;
};

GridFunction sample(const TestFunctionSpec& spec, const Grid& grid);

/// Riemann-sum L^p norm, p in [1, inf]; p = inf gives max |f_j|.
double lp_norm(const GridFunction& f, double p);

/// prod(h) * sum of values (the Riemann integral of f over the box).
Complex integral(const GridFunction& f);

/// f(. - h) with multilinear interpolation for off-lattice h and zero
/// extension outside the box. Lattice-multiple shifts are exact index moves.
GridFunction shift(const GridFunction& f, std::span<const double> h);

/// Sampled lower bound for omega_p[f](delta) = sup_{|h|<=delta} ||T_h f - f||_p:
/// all axis-aligned shifts of length delta plus `directions` deterministic
/// pseudo-random directions at radii delta and delta/2.
double modulus_of_continuity(const GridFunction& f, double p, double delta, int directions = 8);

/// O(N^2) quadrature convolution with zero extension; small grids only.
GridFunction convolve_direct(const GridFunction& f, const GridFunction& g);

// Pointwise arithmetic (grids must match).
GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator*(Complex c, const GridFunction& f);

/// GridFunction JSON document:
/// {"dim": n, "half_extent": [...], "points": [...],
///  "values_re": [...], "values_im": [...]}
GridFunction read_grid_function(std::istream& in);
void write_grid_function(std::ostream& out, const GridFunction& f);

} // namespace briesz
