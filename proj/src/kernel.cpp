#include "briesz/kernel.hpp"

#include "briesz/errors.hpp"
#include "briesz/numerics.hpp"
#include "briesz/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace briesz {

namespace {

// Mean of |cos|^q over a period: Gamma((q+1)/2) / (sqrt(pi) Gamma(q/2 + 1)).
double abs_cos_power_mean(double q) {
    return specfun::gamma(0.5 * (q + 1.0)) /
           (std::sqrt(M_PI) * specfun::gamma(0.5 * q + 1.0));
}

} // namespace

double sphere_area(int n) {
    switch (n) {
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
    }
    throw std::domain_error("sphere_area: dim must be 1, 2 or 3");
}

KernelSpec::KernelSpec(double alpha, int dim, double R) : alpha_(alpha), dim_(dim), R_(R) {
    if (!(alpha > -1.0))
        throw std::domain_error("KernelSpec: alpha must be > -1, got " + std::to_string(alpha));
    if (dim < 1 || dim > 3) throw std::domain_error("KernelSpec: dim must be 1, 2 or 3");
    if (!(R > 0.0)) throw std::domain_error("KernelSpec: R must be > 0");
    if (!(lambda() >= 0.0))
        throw std::domain_error("KernelSpec: lambda = alpha + n/2 must be >= 0 "
                                "(Bessel orders below 0 are unsupported)");
    norm_const_ = std::pow(2.0, alpha) * specfun::gamma(alpha + 1.0) *
                  std::pow(2.0 * M_PI, -0.5 * dim);
}

double kernel_eval_radial(const KernelSpec& spec, double r) {
    const double Rn = std::pow(spec.R(), spec.dim());
    return Rn * spec.norm_const() * specfun::bessel_ratio(spec.lambda(), spec.R() * std::abs(r));
}

double kernel_eval(const KernelSpec& spec, std::span<const double> z) {
    if (z.size() != static_cast<std::size_t>(spec.dim()))
        throw std::invalid_argument("kernel_eval: point size != dim");
    double r2 = 0.0;
    for (double zi : z) r2 += zi * zi;
    return kernel_eval_radial(spec, std::sqrt(r2));
}

GridFunction kernel_sample(const KernelSpec& spec, const Grid& grid) {
    if (grid.dim() != spec.dim())
        throw std::invalid_argument("kernel_sample: grid dim != kernel dim");
    GridFunction out(grid);
    std::array<double, 3> x{};
    for (std::size_t j = 0; j < out.values.size(); ++j) {
        grid.point(j, x);
        out.values[j] =
            Complex{kernel_eval(spec, std::span<const double>(x.data(), grid.dim())), 0.0};
    }
    return out;
}

LqNorm kernel_lq_norm_detailed(const KernelSpec& spec, double q, double tol_scale) {
    const double q0 = spec.q0();
    if (!(q > q0))
        throw std::domain_error(
            "kernel_lq_norm: q = " + std::to_string(q) + " <= q0 = " + std::to_string(q0) +
            "; ||K_lambda||_q is infinite for q <= q0");

    const int n = spec.dim();
    const double s = spec.decay_exponent();
    const double area = sphere_area(n);
    const double r_cut = std::max(200.0, 50.0 / (q - q0));

    const auto integrand = [&](double r) {
        return std::pow(std::abs(kernel_eval_radial(spec, r)), q) * std::pow(r, n - 1);
    };

    // Panels between consecutive zeros of J_lambda(R r).
    std::vector<double> cuts{0.0};
    for (int m = 1;; ++m) {
        const double z = specfun::bessel_j_zero(spec.lambda(), m) / spec.R();
        if (z >= r_cut) break;
        cuts.push_back(z);
    }
    cuts.push_back(r_cut);

    // One tolerance scale for all panels so that panels where the integrand
    // has decayed to nothing are dismissed cheaply instead of recursed into.
    double global_scale = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        global_scale = std::max(global_scale, integrand(mid) * (cuts[i + 1] - cuts[i]));
    }
    const double floor_tol = std::max(1e-12 * global_scale, 1e-300);

    double head = 0.0;
    double head_err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double mid = 0.5 * (a + b);
        const double scale = integrand(mid) * (b - a);
        const double tol = std::max(1e-9 * tol_scale * scale, floor_tol);
        const auto res = adaptive_simpson(integrand, a, b, tol, 22);
        head += res.value;
        head_err += res.error;
    }
    head *= area;
    head_err *= area;

    // Tail beyond r_cut from the large-argument envelope
    //   |K^R(r)| <= C_env r^{-s},  s = (n+1)/2 + alpha.
    // The asymptotic amplitude is A = norm_const sqrt(2/pi) R^{n-s}; C_env is
    // the max of A and an empirical fit near r_cut with a 5% margin.
    const double A =
        spec.norm_const() * std::sqrt(2.0 / M_PI) * std::pow(spec.R(), n - s);
    double fitted = 0.0;
    for (int k = 0; k <= 400; ++k) {
        const double r = r_cut * (0.5 + 0.5 * k / 400.0);
        fitted = std::max(fitted, std::abs(kernel_eval_radial(spec, r)) * std::pow(r, s));
    }
    const double c_env = 1.05 * std::max(A, fitted);

    const double tail_exp = q * s - n;  // > 0 iff q > q0
    const double tail_bound = area * std::pow(c_env, q) * std::pow(r_cut, -tail_exp) / tail_exp;
    const double tail_mean = area * std::pow(A, q) * abs_cos_power_mean(q) *
                             std::pow(r_cut, -tail_exp) / tail_exp;

    LqNorm out;
    out.head_integral = head;
    out.tail_integral = tail_mean;
    out.r_cut = r_cut;
    const double total = head + tail_mean;
    const double total_err = head_err + (tail_bound - tail_mean);
    out.value = std::pow(total, 1.0 / q);
    out.error = out.value * total_err / (q * total);
    return out;
}

double kernel_lq_norm(const KernelSpec& spec, double q) {
    return kernel_lq_norm_detailed(spec, q).value;
}

GridFunction bochner_riesz_direct(const GridFunction& f, const KernelSpec& spec) {
    if (f.grid.size() > (std::size_t{1} << 20))
        throw GuardError("bochner_riesz_direct: grid exceeds 2^20 nodes; "
                         "use the spectral form");
    return convolve_direct(f, kernel_sample(spec, f.grid));
}

} // namespace briesz
