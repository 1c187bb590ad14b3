#include "briesz/gls.hpp"

#include "briesz/errors.hpp"
#include "briesz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace briesz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEndpointClamp = 1e-6;  // distance kept from open endpoints

void check_support(double a, double b) {
    if (!(a >= 1.0 && a < b))
        throw std::domain_error("GeneratingFunction: support requires 1 <= a < b");
}

} // namespace

GeneratingFunction GeneratingFunction::power(double m, double a, double b) {
    check_support(a, b);
    if (!(m > 0.0)) throw std::domain_error("GeneratingFunction: power exponent m must be > 0");
    GeneratingFunction gf;
    gf.kind = Kind::power;
    gf.m = m;
    gf.a = a;
    gf.b = b;
    return gf;
}

GeneratingFunction GeneratingFunction::iwaniec_sbordone(double a, double b, double alpha_exp,
                                                        double beta_exp) {
    check_support(a, b);
    if (!std::isfinite(b))
        throw std::domain_error("GeneratingFunction: iwaniec_sbordone requires finite b");
    if (alpha_exp < 0.0 || beta_exp < 0.0)
        throw std::domain_error("GeneratingFunction: iwaniec_sbordone exponents must be >= 0");
    GeneratingFunction gf;
    gf.kind = Kind::iwaniec_sbordone;
    gf.a = a;
    gf.b = b;
    gf.alpha_exp = alpha_exp;
    gf.beta_exp = beta_exp;
    return gf;
}

GeneratingFunction GeneratingFunction::tabulated(std::vector<double> ps,
                                                 std::vector<double> vals) {
    if (ps.size() != vals.size() || ps.size() < 2)
        throw std::domain_error("GeneratingFunction: tabulated needs >= 2 matching samples");
    if (!std::is_sorted(ps.begin(), ps.end()))
        throw std::domain_error("GeneratingFunction: tabulated p-grid must be sorted");
    check_support(ps.front(), ps.back());
    for (double v : vals)
        if (!(v > 0.0))
            throw std::domain_error("GeneratingFunction: tabulated values must be positive");
    GeneratingFunction gf;
    gf.kind = Kind::tabulated;
    gf.a = ps.front();
    gf.b = ps.back();
    gf.ps = std::move(ps);
    gf.vals = std::move(vals);
    return gf;
}

GeneratingFunction GeneratingFunction::single_point(double r) {
    if (!(r >= 1.0)) throw std::domain_error("GeneratingFunction: single_point needs r >= 1");
    GeneratingFunction gf;
    gf.kind = Kind::single_point;
    gf.point = r;
    gf.a = std::max(1.0, r - 0.5);
    gf.b = r + 0.5;
    return gf;
}

double psi_eval(const GeneratingFunction& gf, double p) {
    switch (gf.kind) {
        case GeneratingFunction::Kind::power:
            if (p <= gf.a || p >= gf.b) return kInf;
            return std::pow(p, 1.0 / gf.m);
        case GeneratingFunction::Kind::iwaniec_sbordone:
            if (p <= gf.a || p >= gf.b) return kInf;
            return std::pow(p - gf.a, -gf.alpha_exp) * std::pow(gf.b - p, -gf.beta_exp);
        case GeneratingFunction::Kind::tabulated: {
            if (p < gf.ps.front() || p > gf.ps.back()) return kInf;
            const auto it = std::upper_bound(gf.ps.begin(), gf.ps.end(), p);
            if (it == gf.ps.begin()) return gf.vals.front();
            if (it == gf.ps.end()) return gf.vals.back();
            const std::size_t hi = static_cast<std::size_t>(it - gf.ps.begin());
            const double t = (p - gf.ps[hi - 1]) / (gf.ps[hi] - gf.ps[hi - 1]);
            return (1.0 - t) * gf.vals[hi - 1] + t * gf.vals[hi];
        }
        case GeneratingFunction::Kind::single_point:
            return p == gf.point ? 1.0 : kInf;
    }
    return kInf;
}

NormReport gls_norm(const GridFunction& f, const GeneratingFunction& gf, int p_samples,
                    double p_max) {
    if (p_samples < 16) throw std::domain_error("gls_norm: p_samples must be >= 16");

    NormReport report;
    if (gf.kind == GeneratingFunction::Kind::single_point) {
        report.norm = lp_norm(f, gf.point);
        report.trace.emplace_back(gf.point, report.norm);
        report.stabilized = true;
        return report;
    }

    std::vector<double> grid;
    if (gf.kind == GeneratingFunction::Kind::tabulated) {
        grid = gf.ps;
    } else {
        const double lo = gf.a + kEndpointClamp;
        const double hi = std::isfinite(gf.b) ? gf.b - kEndpointClamp : p_max;
        if (!(hi > lo)) throw std::domain_error("gls_norm: empty p-interval");
        for (int i = 0; i < p_samples; ++i) {
            const double t = static_cast<double>(i) / (p_samples - 1);
            grid.push_back(lo * std::pow(hi / lo, t));
        }
    }

    std::size_t argmax = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double psi = psi_eval(gf, grid[i]);
        const double val = std::isfinite(psi) ? lp_norm(f, grid[i]) / psi : 0.0;
        report.trace.emplace_back(grid[i], val);
        if (val > report.norm) {
            report.norm = val;
            argmax = i;
        }
    }
    report.stabilized =
        std::isfinite(gf.b) || (argmax + 2 < grid.size());
    return report;
}

double q_of(double p, double r) {
    if (std::isinf(r)) return p > 1.0 ? p / (p - 1.0) : kInf;
    const double denom = p * r + p - r;
    if (!(denom > 0.0)) return kInf;
    return p * r / denom;
}

double q0_of(double alpha, int n) {
    if (!(alpha > -1.0)) throw std::domain_error("q0: alpha must be > -1");
    if (n < 1) throw std::domain_error("q0: n must be >= 1");
    return n / (0.5 * (n + 1) + alpha);
}

double r0_of(double alpha, int n, double p) {
    const double q0 = q0_of(alpha, n);
    if (!std::isfinite(p)) return q0 < 1.0 ? q0 / (1.0 - q0) : kInf;
    const double denom = p + q0 - p * q0;
    if (!(denom > 0.0)) return kInf;
    return p * q0 / denom;
}

double p0_of(double alpha, int n) {
    const double q0 = q0_of(alpha, n);
    if (q0 <= 1.0) return kInf;
    return q0 / (q0 - 1.0);
}

double s_upper(double alpha, int n, double r, double b) {
    const double q0 = q0_of(alpha, n);
    const double denom = r * q0 + q0 - r;
    const double s_q = denom > 0.0 ? r * q0 / denom : kInf;
    return std::min(b, s_q);
}

double d_lower(double alpha, int n, double b) { return r0_of(alpha, n, b); }

BoundParams BoundParams::make(double alpha, int n, double p, double r, double b) {
    BoundParams bp;
    bp.alpha = alpha;
    bp.n = n;
    bp.p = p;
    bp.r = r;
    bp.q = q_of(p, r);
    bp.q0 = q0_of(alpha, n);
    bp.r0 = r0_of(alpha, n, p);
    bp.p0 = p0_of(alpha, n);
    bp.s = s_upper(alpha, n, r, b);
    bp.d = d_lower(alpha, n, b);
    return bp;
}

void BoundParams::validate() const {
    if (!(p >= 1.0 && r >= 1.0))
        throw std::domain_error("bound params: p and r must be >= 1");
    if (!(r > p)) throw std::domain_error("bound params: r <= p");
    // p > p0 forces q(p,r) <= q0 for every r, so report it first.
    if (p > p0) throw std::domain_error("bound params: p > p0");
    if (!(q > q0)) throw std::domain_error("bound params: q(p,r) <= q0");
    if (!(r > r0)) throw std::domain_error("bound params: r <= r0");
}

double w_coeff(double alpha, int n, double R, double p, double r) {
    if (!(R > 0.0)) throw std::domain_error("w_coeff: R must be > 0");
    if (!std::isfinite(p) || !std::isfinite(r))
        throw std::domain_error("w_coeff: p and r must be finite");
    const BoundParams bp = BoundParams::make(alpha, n, p, r);
    bp.validate();
    return std::pow(R, n * (1.0 / p - 1.0 / r)) *
           std::pow(bp.q - bp.q0, 1.0 / p - 1.0 - 1.0 / r);
}

double beckner_constant(double m) {
    if (!(m >= 1.0)) throw std::domain_error("beckner_constant: m must be >= 1");
    if (m == 1.0 || std::isinf(m)) return 1.0;
    const double mp = m / (m - 1.0);
    return std::sqrt(std::pow(m, 1.0 / m) / std::pow(mp, 1.0 / mp));
}

double young_bound(double p, double q, double r, int n) {
    if (!(p >= 1.0 && q >= 1.0 && r >= 1.0))
        throw std::domain_error("young_bound: exponents must be >= 1");
    const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
    if (std::abs(1.0 + inv_r - 1.0 / p - 1.0 / q) > 1e-12)
        throw std::domain_error("young_bound: scaling relation 1 + 1/r = 1/p + 1/q violated");
    return std::pow(beckner_constant(p) * beckner_constant(q) / beckner_constant(r),
                    static_cast<double>(n));
}

double theta(int n, double p) {
    if (n < 1) throw std::domain_error("theta: n must be >= 1");
    if (!(p >= 1.0)) throw std::domain_error("theta: p must be >= 1");
    return std::pow(2.0 * M_PI, n * (1.0 - p) / (2.0 * p)) * std::pow(p, -n / (2.0 * p));
}

namespace {

// W psi as an extended-real objective; inadmissible p evaluates to +infinity.
double nu_objective(const GeneratingFunction& gf, double alpha, int n, double R, double r,
                    double p) {
    const double psi = psi_eval(gf, p);
    if (!std::isfinite(psi)) return kInf;
    try {
        return w_coeff(alpha, n, R, p, r) * psi;
    } catch (const std::domain_error&) {
        return kInf;
    }
}

} // namespace

NuResult nu_of_detailed(const GeneratingFunction& gf, double alpha, int n, double R, double r) {
    const double d = d_lower(alpha, n, gf.b);
    if (!(r > d))
        throw std::domain_error("nu_of: r = " + std::to_string(r) +
                                " must exceed d = r0(alpha,n;b) = " + std::to_string(d));
    const double s = s_upper(alpha, n, r, gf.b);
    const double lo = gf.a + kEndpointClamp;
    const double hi = std::min(s, r) - kEndpointClamp;
    if (!(hi > lo))
        throw std::domain_error("nu_of: admissible p-interval (a, min(s,r)) is empty");

    NuResult out;
    if (gf.kind == GeneratingFunction::Kind::single_point) {
        const double p = gf.point;
        out.argmin_p = p;
        out.value = (p > gf.a && p < s) ? nu_objective(gf, alpha, n, R, r, p) : kInf;
        out.trace.emplace_back(p, out.value);
        return out;
    }

    const auto objective = [&](double p) { return nu_objective(gf, alpha, n, R, r, p); };

    const int samples = 512;
    std::vector<double> ps(samples), vals(samples);
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        ps[i] = lo * std::pow(hi / lo, t);
        vals[i] = objective(ps[i]);
        out.trace.emplace_back(ps[i], vals[i]);
    }

    double best_val = kInf;
    double best_p = ps[0];
    // Refine every sampled local minimum; W psi may be multimodal when psi
    // has poles at both endpoints.
    for (int i = 0; i < samples; ++i) {
        const bool left_ok = i == 0 || vals[i] <= vals[i - 1];
        const bool right_ok = i == samples - 1 || vals[i] <= vals[i + 1];
        if (!std::isfinite(vals[i]) || !left_ok || !right_ok) continue;
        const double bl = ps[std::max(0, i - 1)];
        const double br = ps[std::min(samples - 1, i + 1)];
        const auto refined = golden_section_min(objective, bl, br, 1e-10);
        const double cand_val = std::min(refined.value, vals[i]);
        const double cand_p = refined.value <= vals[i] ? refined.argmin : ps[i];
        if (cand_val < best_val) {
            best_val = cand_val;
            best_p = cand_p;
        }
    }
    out.value = best_val;
    out.argmin_p = best_p;
    return out;
}

double nu_of(const GeneratingFunction& gf, double alpha, int n, double R, double r) {
    return nu_of_detailed(gf, alpha, n, R, r).value;
}

QnSearchResult qn_lower_search(int n, double p, double r, std::span<const double> alpha_grid,
                               std::span<const double> R_grid) {
    if (!(r > p)) throw std::domain_error("qn_lower_search: requires r > p");
    if (alpha_grid.empty() || R_grid.empty())
        throw std::domain_error("qn_lower_search: grids must be nonempty");

    std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
    std::vector<double> Rs(R_grid.begin(), R_grid.end());
    std::sort(alphas.begin(), alphas.end());
    std::sort(Rs.begin(), Rs.end());

    QnSearchResult res;
    res.total_cells = alphas.size() * Rs.size();
    res.theta_reference = theta(n, q_of(p, r));

    bool found = false;
    // Ascending iteration plus strict improvement gives the lexicographically
    // smallest (alpha, R) argmax on ties.
    for (double alpha : alphas) {
        for (double R : Rs) {
            double w;
            try {
                w = w_coeff(alpha, n, R, p, r);
            } catch (const std::domain_error&) {
                continue;
            }
            ++res.admissible_cells;
            if (!found || w > res.max_w) {
                res.max_w = w;
                res.arg_alpha = alpha;
                res.arg_R = R;
                found = true;
            }
        }
    }
    if (!found)
        throw GuardError("qn_lower_search: no admissible (alpha, R) cell in the grid");
    res.meets_theta = res.max_w >= res.theta_reference;
    res.on_R_boundary = res.arg_R == Rs.back();
    res.on_alpha_boundary = res.arg_alpha == alphas.back();
    return res;
}

} // namespace briesz
