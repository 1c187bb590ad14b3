#pragma once

#include "briesz/field.hpp"

#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace briesz {

/// Generating function psi(p) of a Grand Lebesgue Space on (a,b),
/// 1 <= a < b <= infinity. Evaluation is extended-real: +infinity outside the
/// support (and everywhere off the point for the degenerate single_point
/// kind, which reduces the space to classical L_r).
struct GeneratingFunction {
    enum class Kind { power, iwaniec_sbordone, tabulated, single_point };

    Kind kind = Kind::power;
    double a = 1.0;
    double b = std::numeric_limits<double>::infinity();
    double m = 1.0;                    // power: psi(p) = p^{1/m}
    double alpha_exp = 0.0, beta_exp = 0.0;  // iwaniec_sbordone: (p-a)^-alpha (b-p)^-beta
    std::vector<double> ps, vals;      // tabulated
    double point = 2.0;                // single_point

    static GeneratingFunction power(double m, double a = 1.0,
                                    double b = std::numeric_limits<double>::infinity());
    static GeneratingFunction iwaniec_sbordone(double a, double b, double alpha_exp,
                                               double beta_exp);
    static GeneratingFunction tabulated(std::vector<double> ps, std::vector<double> vals);
    static GeneratingFunction single_point(double r);
};

double psi_eval(const GeneratingFunction& gf, double p);

/// sup over a sampled p-grid of ||f||_p / psi(p); a certified lower bound of
/// the Gpsi norm. For b = infinity the grid is log-spaced up to p_max and
/// `stabilized` records whether the running sup settled before the cap.
struct NormReport {
    double norm = 0.0;
    std::vector<std::pair<double, double>> trace;  // (p, ||f||_p / psi(p))
    bool stabilized = true;
};
NormReport gls_norm(const GridFunction& f, const GeneratingFunction& gf, int p_samples = 48,
                    double p_max = 64.0);

// Exponent bookkeeping for the Lp -> Lr bound. All helpers return +infinity
// where the defining expression has a nonpositive denominator.
double q_of(double p, double r);               // pr/(pr + p - r)
double q0_of(double alpha, int n);             // n/((n+1)/2 + alpha)
double r0_of(double alpha, int n, double p);   // p q0/(p + q0 - p q0)
double p0_of(double alpha, int n);             // (1 - 1/q0)^{-1}
double s_upper(double alpha, int n, double r, double b);  // min{b, r q0/(r q0 + q0 - r)}
double d_lower(double alpha, int n, double b);            // r0(alpha, n; b)

/// Exponent bundle with every derived quantity of the Lp->Lr and GLS bounds.
struct BoundParams {
    double alpha = 0.0;
    int n = 2;
    double p = 0.0, q = 0.0, r = 0.0;
    double q0 = 0.0, r0 = 0.0, p0 = 0.0, s = 0.0, d = 0.0;

    static BoundParams make(double alpha, int n, double p, double r,
                            double b = std::numeric_limits<double>::infinity());
    /// Throws std::domain_error naming the first violated constraint among
    /// r <= p, q <= q0, p > p0, r <= r0.
    void validate() const;
};

/// W(alpha,n,R; p,r) = R^{n(1/p - 1/r)} [q(p,r) - q0]^{1/p - 1 - 1/r}.
double w_coeff(double alpha, int n, double R, double p, double r);

/// Sharp Young constant C_m = (m^{1/m}/(m'^{1/m'}))^{1/2}; C_1 = C_inf = 1.
double beckner_constant(double m);

/// (C_p C_q / C_r)^n for an admissible Young triple 1 + 1/r = 1/p + 1/q.
double young_bound(double p, double q, double r, int n);

/// Theta(n,p) = (2pi)^{n(1-p)/2p} p^{-n/2p}.
double theta(int n, double p);

/// nu[psi](r) = inf over p in (a, s) of W(alpha,n,R; p,r) psi(p), by dense
/// bracketing plus golden-section refinement of every local minimum.
struct NuResult {
    double value = 0.0;
    double argmin_p = 0.0;
    std::vector<std::pair<double, double>> trace;  // sampled (p, W psi)
};
NuResult nu_of_detailed(const GeneratingFunction& gf, double alpha, int n, double R, double r);
double nu_of(const GeneratingFunction& gf, double alpha, int n, double R, double r);

/// Grid search for the lower-bound coefficient: max of W over admissible
/// (alpha, R) cells, against the Gaussian reference Theta(n, q(p,r)).
struct QnSearchResult {
    double max_w = 0.0;
    double arg_alpha = 0.0;
    double arg_R = 0.0;
    double theta_reference = 0.0;
    bool meets_theta = false;
    bool on_R_boundary = false;      // evidence that the sup grows with R
    bool on_alpha_boundary = false;
    std::size_t admissible_cells = 0;
    std::size_t total_cells = 0;
};
QnSearchResult qn_lower_search(int n, double p, double r, std::span<const double> alpha_grid,
                               std::span<const double> R_grid);

} // namespace briesz
