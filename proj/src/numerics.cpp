#include "briesz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace briesz {

namespace {

double pairwise_sum_rec(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_rec(xs.first(half)) + pairwise_sum_rec(xs.subspan(half));
}

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

struct SimpsonState {
    const std::function<double(double)>* f;
    double value = 0.0;
    double error = 0.0;
};

void simpson_rec(SimpsonState& st, double a, double fa, double b, double fb, double m, double fm,
                 double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = (*st.f)(lm);
    const double frm = (*st.f)(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        st.value += left + right + delta / 15.0;
        st.error += std::abs(delta) / 15.0;
        return;
    }
    simpson_rec(st, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1);
    simpson_rec(st, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_sum_rec(xs); }

QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double abs_tol, int max_depth) {
    if (a == b) return {0.0, 0.0};
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    SimpsonState st{&f};
    simpson_rec(st, a, fa, b, fb, m, fm, simpson(a, fa, b, fb, fm), abs_tol, max_depth);
    return {st.value, st.error};
}

MinResult golden_section_min(const std::function<double(double)>& f, double a, double b,
                             double rel_tol) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    const double scale = std::max(std::abs(a), std::abs(b)) + 1.0;
    while (b - a > rel_tol * scale) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? MinResult{x1, f1} : MinResult{x2, f2};
}

} // namespace briesz
