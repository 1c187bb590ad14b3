#include "briesz/spectral.hpp"

#include "briesz/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>

namespace briesz {

namespace {

// FFTW planning is not thread safe; execution of an existing plan is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

// In-place n-dimensional DFT with the given sign, FFTW_ESTIMATE plans only
// (deterministic plan choice, negligible planning cost at these sizes).
void run_dft(const Grid& grid, std::vector<Complex>& data, int sign) {
    int n[3] = {1, 1, 1};
    for (int i = 0; i < grid.dim(); ++i) n[i] = grid.points(i);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft(grid.dim(), n, buf, buf, sign, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

// Storage index (ascending k, k = a - M/2) <-> DFT index (k mod M).
// Adding M/2 mod M is an involution for even M, so one map serves both ways.
std::size_t swap_halves_index(const Grid& grid, std::size_t flat) {
    auto idx = grid.unflatten(flat);
    std::array<int, 3> out{};
    for (int i = 0; i < grid.dim(); ++i) {
        const int M = grid.points(i);
        out[i] = (idx[i] + M / 2) % M;
    }
    return grid.flatten(out);
}

// Parity of sum_i k_i for the storage index; gives the (-1)^{sum k_i}
// phase that maps the centered lattice onto DFT indexing.
double parity_sign(const Grid& grid, std::size_t flat) {
    auto idx = grid.unflatten(flat);
    int s = 0;
    for (int i = 0; i < grid.dim(); ++i) s += idx[i] - grid.points(i) / 2;
    return (s & 1) ? -1.0 : 1.0;
}

} // namespace

double DualGrid::nyquist_radius() const {
    double r = std::numeric_limits<double>::infinity();
    const int d = std::min(dim(), 3);
    for (int i = 0; i < d; ++i)
        r = std::min(r, M_PI * primal_.points(i) / (2.0 * primal_.half_extent(i)));
    return r;
}

DualFunction::DualFunction(DualGrid g, std::vector<Complex> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw std::invalid_argument("DualFunction: values length != grid size");
}

DualFunction::DualFunction(DualGrid g) : grid(g), values(grid.size(), Complex{0.0, 0.0}) {}

Symbol Symbol::bochner_riesz(double alpha, double R) {
    if (!(alpha > -1.0))
        throw std::domain_error("Symbol: bochner_riesz requires alpha > -1");
    if (!(R > 0.0)) throw std::domain_error("Symbol: R must be > 0");
    Symbol s;
    s.kind_ = Kind::bochner_riesz;
    s.alpha_ = alpha;
    s.R_ = R;
    return s;
}

Symbol Symbol::gaussian_limit(double R) {
    if (!(R > 0.0)) throw std::domain_error("Symbol: R must be > 0");
    Symbol s;
    s.kind_ = Kind::gaussian_limit;
    s.alpha_ = 0.5 * R * R;
    s.R_ = R;
    return s;
}

Symbol Symbol::identity() { return Symbol{}; }

Symbol Symbol::tabulated(std::vector<double> radii, std::vector<double> values) {
    if (radii.size() != values.size() || radii.size() < 2)
        throw std::invalid_argument("Symbol: tabulated profile needs >= 2 matching samples");
    if (!std::is_sorted(radii.begin(), radii.end()))
        throw std::invalid_argument("Symbol: tabulated radii must be sorted");
    Symbol s;
    s.kind_ = Kind::tabulated;
    s.radii_ = std::move(radii);
    s.profile_ = std::move(values);
    return s;
}

double Symbol::operator()(double rho) const {
    switch (kind_) {
        case Kind::identity:
            return 1.0;
        case Kind::bochner_riesz: {
            const double u = 1.0 - rho * rho / (R_ * R_);
            if (u <= 0.0) return 0.0;
            return alpha_ == 0.0 ? 1.0 : std::pow(u, alpha_);
        }
        case Kind::gaussian_limit: {
            const double u = 1.0 - rho * rho / (R_ * R_);
            if (u <= 0.0) return 0.0;
            return std::pow(u, alpha_);  // alpha_ = R^2/2
        }
        case Kind::tabulated: {
            if (rho <= radii_.front()) return profile_.front();
            if (rho >= radii_.back()) return 0.0;
            const auto it = std::upper_bound(radii_.begin(), radii_.end(), rho);
            const std::size_t hi = static_cast<std::size_t>(it - radii_.begin());
            const double t = (rho - radii_[hi - 1]) / (radii_[hi] - radii_[hi - 1]);
            return (1.0 - t) * profile_[hi - 1] + t * profile_[hi];
        }
    }
    return 0.0;
}

double Symbol::support_radius() const {
    switch (kind_) {
        case Kind::identity:
            return std::numeric_limits<double>::infinity();
        case Kind::bochner_riesz:
        case Kind::gaussian_limit:
            return R_;
        case Kind::tabulated:
            return radii_.back();
    }
    return 0.0;
}

DualFunction forward_ft(const GridFunction& f) {
    const Grid& g = f.grid;
    std::vector<Complex> buf = f.values;
    run_dft(g, buf, FFTW_BACKWARD);  // e^{+2 pi i jk/M}
    DualFunction out{DualGrid{g}};
    const double cv = g.cell_volume();
    for (std::size_t a = 0; a < out.values.size(); ++a)
        out.values[a] = cv * parity_sign(g, a) * buf[swap_halves_index(g, a)];
    return out;
}

GridFunction inverse_ft(const DualFunction& gf) {
    const Grid& g = gf.grid.primal();
    std::vector<Complex> buf(gf.values.size());
    for (std::size_t a = 0; a < gf.values.size(); ++a)
        buf[swap_halves_index(g, a)] = parity_sign(g, a) * gf.values[a];
    run_dft(g, buf, FFTW_FORWARD);  // e^{-2 pi i jk/M}
    double scale = 1.0;
    for (int i = 0; i < g.dim(); ++i) scale *= gf.grid.spacing(i) / (2.0 * M_PI);
    GridFunction out(g);
    for (std::size_t j = 0; j < buf.size(); ++j) out.values[j] = scale * buf[j];
    return out;
}

GridFunction apply_multiplier(const GridFunction& f, const Symbol& m) {
    const DualGrid dual{f.grid};
    const double support = m.support_radius();
    const double limit = 0.9 * dual.nyquist_radius();
    if (std::isfinite(support) && support > limit)
        throw GuardError("apply_multiplier: symbol radius R = " + std::to_string(support) +
                         " exceeds 0.9 x Nyquist radius " + std::to_string(dual.nyquist_radius()) +
                         "; refine the grid");

    DualFunction spec = forward_ft(f);
    const Grid& g = f.grid;
    for (std::size_t a = 0; a < spec.values.size(); ++a) {
        const auto idx = g.unflatten(a);
        double rho2 = 0.0;
        for (int i = 0; i < g.dim(); ++i) {
            const double y = dual.freq(i, idx[i]);
            rho2 += y * y;
        }
        spec.values[a] *= m(std::sqrt(rho2));
    }
    return inverse_ft(spec);
}

GridFunction bochner_riesz_spectral(const GridFunction& f, double alpha, double R) {
    return apply_multiplier(f, Symbol::bochner_riesz(alpha, R));
}

GridFunction gaussian_limit_operator(const GridFunction& f, double R) {
    return apply_multiplier(f, Symbol::gaussian_limit(R));
}

GridFunction convolve_spectral(const GridFunction& f, const GridFunction& g) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("convolve_spectral: grids must match");
    DualFunction ft = forward_ft(f);
    const DualFunction gt = forward_ft(g);
    for (std::size_t a = 0; a < ft.values.size(); ++a) ft.values[a] *= gt.values[a];
    return inverse_ft(ft);
}

} // namespace briesz
