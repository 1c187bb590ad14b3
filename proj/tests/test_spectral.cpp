#include "briesz/spectral.hpp"

#include "briesz/errors.hpp"
#include "briesz/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace briesz;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Grid grid1d(double L, int M) {
    const double Ls[] = {L};
    const int Ms[] = {M};
    return Grid(1, Ls, Ms);
}

double rel_l2(const GridFunction& a, const GridFunction& b) {
    return lp_norm(a - b, 2.0) / lp_norm(b, 2.0);
}

} // namespace

TEST_CASE("forward_ft: gaussian transform closed form") {
    const Grid g = grid1d(8.0, 512);
    const GridFunction f0 = sample(TestFunctionSpec::standard_gaussian(1), g);
    const DualFunction ft = forward_ft(f0);
    double max_err = 0.0;
    for (std::size_t a = 0; a < ft.values.size(); ++a) {
        const double y = ft.grid.freq(0, static_cast<int>(a));
        max_err = std::max(max_err, std::abs(ft.values[a] - Complex{std::exp(-0.5 * y * y), 0.0}));
    }
    CHECK(max_err <= 1e-8);
}

TEST_CASE("forward_ft: zero frequency equals the integral") {
    const Grid g = grid1d(8.0, 256);
    const GridFunction f = sample(TestFunctionSpec::smooth_bump(2.5), g);
    const DualFunction ft = forward_ft(f);
    const Complex dc = ft.values[256 / 2];  // k = 0 slot
    const Complex mass = integral(f);
    CHECK(std::abs(dc - mass) <= 1e-12);
}

TEST_CASE("forward_ft: real even input gives real even output") {
    const Grid g = grid1d(8.0, 256);
    const GridFunction f = sample(TestFunctionSpec::gaussian(1.3, 0.8), g);
    const DualFunction ft = forward_ft(f);
    const double scale = std::abs(ft.values[128]);
    for (std::size_t a = 0; a < ft.values.size(); ++a) {
        CHECK(std::abs(ft.values[a].imag()) <= 1e-10 * scale);
        if (a >= 1) {
            const std::size_t mirror = 256 - a;
            if (mirror < ft.values.size())
                CHECK(std::abs(ft.values[a].real() - ft.values[mirror].real()) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("inverse_ft: exact round trip and linearity") {
    const Grid g = grid1d(8.0, 128);
    Rng rng(7);
    GridFunction f(g);
    for (auto& v : f.values) v = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const GridFunction back = inverse_ft(forward_ft(f));
    CHECK(rel_l2(back, f) <= 1e-10);

    DualFunction ft = forward_ft(f);
    DualFunction scaled = ft;
    const Complex c{2.0, -0.5};
    for (auto& v : scaled.values) v *= c;
    const GridFunction lin = inverse_ft(scaled);
    const GridFunction ref = c * inverse_ft(ft);
    CHECK(lp_norm(lin - ref, kInf) <= 1e-12 * lp_norm(ref, kInf));
}

TEST_CASE("inverse_ft: gaussian pair under the chosen normalization") {
    const Grid g = grid1d(8.0, 512);
    DualFunction spec{DualGrid{g}};
    for (std::size_t a = 0; a < spec.values.size(); ++a) {
        const double y = spec.grid.freq(0, static_cast<int>(a));
        spec.values[a] = Complex{std::exp(-0.5 * y * y), 0.0};
    }
    const GridFunction f = inverse_ft(spec);
    const GridFunction f0 = sample(TestFunctionSpec::standard_gaussian(1), g);
    CHECK(lp_norm(f - f0, kInf) <= 1e-8);
}

TEST_CASE("Plancherel identity under this convention") {
    const Grid g = grid1d(8.0, 256);
    Rng rng(13);
    GridFunction f(g);
    for (auto& v : f.values) v = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const DualFunction ft = forward_ft(f);

    double acc = 0.0;
    for (const auto& v : ft.values) acc += std::norm(v);
    const double lhs = acc * ft.grid.spacing(0);
    const double rhs = std::pow(2.0 * M_PI, 1) * std::pow(lp_norm(f, 2.0), 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
}

TEST_CASE("apply_multiplier: identity symbol") {
    const Grid g = grid1d(8.0, 256);
    const GridFunction f = sample(TestFunctionSpec::gaussian(0.9, 1.1), g);
    const GridFunction out = apply_multiplier(f, Symbol::identity());
    CHECK(rel_l2(out, f) <= 1e-10);
}

TEST_CASE("apply_multiplier: Nyquist guard refuses aliased symbols") {
    const Grid g = grid1d(8.0, 64);  // Nyquist radius = pi*64/16 = 4 pi
    const GridFunction f = sample(TestFunctionSpec::gaussian(1.0, 1.0), g);
    CHECK_THROWS_AS(apply_multiplier(f, Symbol::bochner_riesz(1.0, 12.5)), GuardError);
    CHECK_NOTHROW(apply_multiplier(f, Symbol::bochner_riesz(1.0, 11.0)));
}

TEST_CASE("bochner_riesz_spectral: preserves the integral") {
    const Grid g = grid1d(16.0, 1024);
    const GridFunction f = sample(TestFunctionSpec::smooth_bump(3.0), g);
    const Complex mass = integral(f);
    for (double alpha : {0.0, 0.5, 2.0}) {
        for (double R : {1.0, 4.0}) {
            const Complex out = integral(bochner_riesz_spectral(f, alpha, R));
            CHECK(std::abs(out - mass) <= 1e-9 * std::abs(mass));
        }
    }
}

TEST_CASE("bochner_riesz_spectral: ball indicator leaves band-limited f unchanged") {
    const Grid g = grid1d(16.0, 1024);
    // spectrum concentrated around |y| = 2 with gaussian spread 1/2
    const GridFunction f = sample(TestFunctionSpec::cosine_packet(2.0, 2.0), g);
    const GridFunction out = bochner_riesz_spectral(f, 0.0, 8.0);
    CHECK(rel_l2(out, f) <= 1e-8);
}

TEST_CASE("bochner_riesz_spectral: R to infinity recovers band-limited f") {
    const Grid g = grid1d(16.0, 1024);
    const GridFunction f = sample(TestFunctionSpec::cosine_packet(2.0, 2.0), g);
    double prev = kInf;
    for (double R : {20.0, 40.0, 80.0}) {
        const double err = rel_l2(bochner_riesz_spectral(f, 1.5, R), f);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev <= 2e-3);
}

TEST_CASE("apply_multiplier: real even symbol preserves real evenness") {
    const Grid g = grid1d(16.0, 512);
    const GridFunction f = sample(TestFunctionSpec::gaussian(1.0, 0.5), g);
    const GridFunction out = apply_multiplier(f, Symbol::bochner_riesz(0.5, 4.0));
    const double scale = lp_norm(out, kInf);
    for (const auto& v : out.values) CHECK(std::abs(v.imag()) <= 1e-9 * scale);
    for (std::size_t j = 1; j < out.values.size(); ++j) {
        const std::size_t mirror = 512 - j;
        if (mirror >= out.values.size()) continue;
        CHECK(std::abs(out.values[j].real() - out.values[mirror].real()) <= 1e-9 * scale);
    }
}

TEST_CASE("gaussian_limit symbol: values and scalar limit") {
    const Symbol s = Symbol::gaussian_limit(50.0);
    CHECK(s(0.0) == doctest::Approx(1.0));
    CHECK(std::abs(s(1.0) - std::exp(-0.5)) <= 1e-3);
    CHECK(s(50.0) == 0.0);
    CHECK(s(60.0) == 0.0);
}

TEST_CASE("three dimensions: gaussian transform, round trip, mean preservation") {
    const std::vector<double> Ls(3, 8.0);
    const std::vector<int> Ms(3, 32);
    const Grid g(3, Ls, Ms);
    const GridFunction f0 = sample(TestFunctionSpec::standard_gaussian(3), g);

    const DualFunction ft = forward_ft(f0);
    double max_err = 0.0;
    for (std::size_t a = 0; a < ft.values.size(); ++a) {
        const auto idx = g.unflatten(a);
        double rho2 = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double y = ft.grid.freq(i, idx[i]);
            rho2 += y * y;
        }
        max_err = std::max(max_err, std::abs(ft.values[a] - Complex{std::exp(-0.5 * rho2), 0.0}));
    }
    CHECK(max_err <= 1e-7);

    const GridFunction back = inverse_ft(ft);
    CHECK(rel_l2(back, f0) <= 1e-10);

    const Complex before = integral(f0);
    const Complex after = integral(bochner_riesz_spectral(f0, 1.0, 4.0));
    CHECK(std::abs(after - before) <= 1e-9 * std::abs(before));
}

TEST_CASE("convolve_spectral agrees with convolve_direct on compact pairs") {
    const Grid g = grid1d(8.0, 256);
    const GridFunction f = sample(TestFunctionSpec::smooth_bump(1.5), g);
    const GridFunction h = sample(TestFunctionSpec::smooth_bump(2.0), g);
    const GridFunction a = convolve_spectral(f, h);
    const GridFunction b = convolve_direct(f, h);
    CHECK(rel_l2(a, b) <= 1e-6);
}
