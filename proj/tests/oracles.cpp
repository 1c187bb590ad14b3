#include "oracles.hpp"

#include <limits>

namespace oracles {

long double simpson_ld(const std::function<long double(long double)>& f, long double a,
                       long double b, int panels) {
    const long double h = (b - a) / panels;
    long double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
    return sum * h / 3.0L;
}

long double gamma_quadrature(long double x) {
    // Lift the argument so the substituted integrand u^{2x-1} e^{-u^2} is C^4
    // at u = 0 and composite Simpson converges at full order.
    long double shift = 1.0L;
    while (x < 2.5L) {
        shift *= x;
        x += 1.0L;
    }
    const auto integrand = [x](long double u) {
        return 2.0L * std::pow(u, 2.0L * x - 1.0L) * std::exp(-u * u);
    };
    return simpson_ld(integrand, 0.0L, 48.0L, 1 << 16) / shift;
}

long double bessel_series(long double nu, long double x, int terms) {
    const long double half = 0.5L * x;
    long double sum = 0.0L;
    for (int m = 0; m < terms; ++m) {
        const long double lw = std::lgammal(m + 1.0L) + std::lgammal(nu + m + 1.0L);
        const long double lt = (nu + 2.0L * m) * std::log(half) - lw;
        if (lt < -12000.0L) break;
        const long double term = std::exp(lt);
        sum += (m % 2 ? -term : term);
    }
    return sum;
}

long double gaussian_lp_norm(long double c1, long double c2, long double p, int n) {
    // (int c1^p e^{-p c2 |x|^2} dx)^{1/p} = c1 (pi/(p c2))^{n/(2p)}
    const long double pi = 3.141592653589793238462643383279L;
    if (std::isinf(static_cast<double>(p))) return c1;
    return c1 * std::pow(pi / (p * c2), 0.5L * n / p);
}

GaussianPair gaussian_convolution(long double c1, long double c2, long double c3,
                                  long double c4, int n) {
    const long double pi = 3.141592653589793238462643383279L;
    GaussianPair out;
    out.decay = c2 * c4 / (c2 + c4);
    out.amp = c1 * c3 * std::pow(pi / (c2 + c4), 0.5L * n);
    return out;
}

double grid_min(const std::function<double(double)>& f, double lo, double hi, int points,
                double* argmin) {
    double best = std::numeric_limits<double>::infinity();
    double best_x = lo;
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
        const double v = f(x);
        if (v < best) {
            best = v;
            best_x = x;
        }
    }
    if (argmin) *argmin = best_x;
    return best;
}

} // namespace oracles
