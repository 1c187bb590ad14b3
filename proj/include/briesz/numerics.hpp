#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace briesz {

/// Sum with a fixed pairwise (balanced tree) order. The order does not depend
/// on how the caller might chunk work, so results are bit-reproducible for a
/// given input sequence.
double pairwise_sum(std::span<const double> xs);

/// Adaptive Simpson quadrature of f on [a,b].
/// abs_tol is the absolute error target for the whole interval; the returned
/// error field is a (heuristic, usually conservative) estimate of the
/// remaining error.
struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double abs_tol, int max_depth = 28);

/// Golden-section minimization of f on [a,b] down to relative bracket width
/// rel_tol. Assumes a single minimum inside the bracket.
struct MinResult {
    double argmin = 0.0;
    double value = 0.0;
};
MinResult golden_section_min(const std::function<double(double)>& f, double a, double b,
                             double rel_tol = 1e-8);

} // namespace briesz
