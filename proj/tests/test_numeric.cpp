#include <doctest.h>

#include <cmath>
#include <random>

#include "growdiff/errors.hpp"
#include "growdiff/exact.hpp"
#include "growdiff/numeric.hpp"
#include "support.hpp"

using namespace growdiff;
using growdiff::testing::pi;

namespace {

std::vector<double> sampled(const std::vector<double>& nodes, double (*f)(double, double), double L) {
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(nodes[i], L);
    return v;
}

double sine(double x, double L) { return std::sin(pi * x / L); }
double bump(double x, double L) {
    const double y = x / L;
    return y * (1 - y) * (1 + 2 * y);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("fixed interval: u matches the decaying sine mode") {
    const auto phys = PhysicsParams::make(1.0, 0.4);
    const auto m = BoundaryMotion::separable(SeparableParams::fixed(pi));
    const auto nodes = uniform_nodes(pi, 512);
    const auto gs = solve_u(m, phys, sampled(nodes, sine, pi), 512, {1e-4, 0.0}, 1.0, {});
    REQUIRE(gs.times.size() == 1);
    CHECK(gs.times[0] == 1.0);
    double err = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        err = std::max(err, std::abs(gs.values[0][i] - std::exp(0.4 - 1.0) * std::sin(nodes[i])));
    CHECK(err < 1e-5);
    CHECK(gs.values[0].front() == 0.0);
    CHECK(gs.values[0].back() == 0.0);
    CHECK(gs.scheme.theta == 0.5);
    CHECK(gs.scheme.steps == 10000);
}

TEST_CASE("w-equation with zero potential is the heat equation") {
    const auto phys = PhysicsParams::make(0.7, 1.0);
    const double L0 = 2.0;
    const auto m = BoundaryMotion::separable(SeparableParams::fixed(L0, 0.0, 0.0, -L0 / 2));
    const auto nodes = uniform_nodes(L0, 1024);
    const auto gs = solve_w(m, phys, sampled(nodes, sine, L0), 1024, {1e-4, 0.0}, 1.0, {0.5, 1.0});
    for (std::size_t k = 0; k < 2; ++k) {
        const double decay = std::exp(-0.7 * pi * pi * gs.times[k] / (L0 * L0));
        double err = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            err = std::max(err, std::abs(gs.values[k][i] - decay * std::sin(pi * nodes[i] / L0)));
        CHECK(err < 1e-6);
    }
}

TEST_CASE("zero data stays zero") {
    const auto phys = PhysicsParams::make(1.0, 1.0);
    const auto m = BoundaryMotion::separable(SeparableParams::linear(1.0, 0.5, 0.2, 0.3));
    const auto gs = solve_u(m, phys, std::vector<double>(129, 0.0), 128, {1e-3, 0.0}, 1.0, {0.25, 0.5});
    for (const auto& row : gs.values)
        for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("second-order convergence in h and dt") {
    const auto phys = PhysicsParams::make(0.6, 1.0);
    const auto m = BoundaryMotion::separable(SeparableParams::linear(1.5, 0.4, 0.3, 0.2));
    const double T = 0.5;
    SUBCASE("space") {
        std::vector<std::vector<double>> sols;
        for (int N : {32, 64, 128}) {
            const auto nodes = uniform_nodes(1.5, N);
            sols.push_back(solve_u(m, phys, sampled(nodes, bump, 1.5), N, {1e-4, 0.0}, T, {}).values[0]);
        }
        double d1 = 0.0, d2 = 0.0;
        for (int i = 0; i <= 32; ++i) {
            d1 = std::max(d1, std::abs(sols[0][i] - sols[1][2 * i]));
            d2 = std::max(d2, std::abs(sols[1][2 * i] - sols[2][4 * i]));
        }
        const double order = std::log2(d1 / d2);
        CHECK(order > 1.8);
        CHECK(order < 2.2);
    }
    SUBCASE("time") {
        const auto nodes = uniform_nodes(1.5, 128);
        std::vector<std::vector<double>> sols;
        for (double dt : {0.05, 0.025, 0.0125})
            sols.push_back(solve_u(m, phys, sampled(nodes, bump, 1.5), 128, {dt, 0.0}, T, {}).values[0]);
        double d1 = 0.0, d2 = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            d1 = std::max(d1, std::abs(sols[0][i] - sols[1][i]));
            d2 = std::max(d2, std::abs(sols[1][i] - sols[2][i]));
        }
        const double order = std::log2(d1 / d2);
        CHECK(order > 1.8);
        CHECK(order < 2.2);
    }
}

TEST_CASE("u and w solves agree through the transform for a critical motion") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    CriticalParams cp;
    cp.alpha = 0.2 + U(rng);
    cp.eta = {0.3 * U(rng), 0.2 * U(rng), -0.5 - U(rng)};
    cp.L0_offset = 1.0 + U(rng);
    const auto phys = PhysicsParams::make(1.0, 0.5 + U(rng));
    const auto m = BoundaryMotion::critical(cp, phys);
    const int N = 2048;
    const auto nodes = uniform_nodes(m.L0(), N);
    const auto F = u_to_w(m, phys, nodes, std::vector<double>(N + 1, 1.0), 0.0);
    const auto w0 = sampled(nodes, sine, m.L0());
    std::vector<double> u0(N + 1);
    for (int i = 0; i <= N; ++i) u0[i] = w0[i] / F[i];
    const StepControl step{1e-4, 0.0};
    const auto gu = solve_u(m, phys, u0, N, step, 1.0, {0.5, 1.0});
    const auto gw = solve_w(m, phys, w0, N, step, 1.0, {0.5, 1.0});
    for (std::size_t k = 0; k < 2; ++k) {
        const auto w_from_u = u_to_w(m, phys, nodes, gu.values[k], gu.times[k]);
        double err = 0.0;
        for (int i = 0; i <= N; ++i) err = std::max(err, std::abs(w_from_u[i] - gw.values[k][i]));
        CHECK(err < 1e-6 * max_abs(gw.values[k]));
    }
}

TEST_CASE("radial solver") {
    const auto phys = PhysicsParams::make(1.0, 1.0);
    SUBCASE("3-ball principal mode") {
        const double R0 = 1.3;
        const auto m = ball_diameter_motion(0.0, 0.0, R0);
        const auto nodes = uniform_nodes(R0, 512);
        std::vector<double> W0(nodes.size());
        for (std::size_t i = 0; i < W0.size(); ++i)
            W0[i] = nodes[i] == 0.0 ? pi / R0 : std::sin(pi * nodes[i] / R0) / nodes[i];
        W0.back() = 0.0;
        const auto gs = solve_radial(m, phys, W0, 3, 512, {1e-4, 0.0}, 0.5, {});
        const double decay = std::exp(-pi * pi * 0.5 / (R0 * R0));
        double err = 0.0;
        for (std::size_t i = 0; i < W0.size(); ++i) err = std::max(err, std::abs(gs.values[0][i] - decay * W0[i]));
        CHECK(err < 1e-5 * max_abs(W0));
        CHECK(gs.values[0].back() == 0.0);
    }
    SUBCASE("n = 1 is half of the symmetric interval") {
        CriticalParams cp;
        cp.alpha = 0.6;
        cp.L0_offset = 2.0;
        const auto m = BoundaryMotion::critical(cp, phys);
        const int N = 256;
        const auto rn = uniform_nodes(1.0, N);
        const auto xn = uniform_nodes(2.0, 2 * N);
        std::vector<double> W0(N + 1), w0(2 * N + 1);
        for (int i = 0; i <= N; ++i) W0[i] = std::cos(pi * rn[i] / 2) * (1 + rn[i] * rn[i]);
        for (int j = 0; j <= 2 * N; ++j) {
            const double r = std::abs(xn[j] - 1.0);
            w0[j] = std::cos(pi * r / 2) * (1 + r * r);
        }
        W0.back() = 0.0;
        w0.front() = w0.back() = 0.0;
        const StepControl step{1e-3, 0.0};
        const auto gr = solve_radial(m, phys, W0, 1, N, step, 1.0, {0.5, 1.0});
        const auto gw = solve_w(m, phys, w0, 2 * N, step, 1.0, {0.5, 1.0});
        for (std::size_t k = 0; k < 2; ++k) {
            double err = 0.0;
            for (int i = 0; i <= N; ++i) err = std::max(err, std::abs(gr.values[k][i] - gw.values[k][N + i]));
            CHECK(err < 1e-8 * max_abs(gw.values[k]));
        }
    }
    SUBCASE("ball with quadratic radius matches the exact radial series") {
        const auto m = ball_diameter_motion(0.2, 0.1, 1.0);
        for (int n = 1; n <= 3; ++n) {
            CAPTURE(n);
            const auto es = solve_radial(phys.D, 1.0, m.tag().gamma0 / 16.0, n, 1024, 64);
            const auto psi0 = sample_on_grid([](double r) { return std::cos(pi * r / 2); }, es.nodes);
            const auto sol = build_radial_series(m, phys, n, psi0, es);
            const int N = 512;
            const auto nodes = uniform_nodes(1.0, N);
            std::vector<double> W0(N + 1);
            for (int i = 0; i <= N; ++i) W0[i] = sol.W(nodes[i], 0.0);
            const auto gs = solve_radial(m, phys, W0, n, N, {1e-4, 0.0}, 2.0, {1.0, 2.0});
            for (std::size_t k = 0; k < gs.times.size(); ++k) {
                double err = 0.0, scale = 0.0;
                for (int i = 0; i <= N; ++i) {
                    const double ex = sol.W(nodes[i], gs.times[k]);
                    err = std::max(err, std::abs(gs.values[k][i] - ex));
                    scale = std::max(scale, std::abs(ex));
                }
                CHECK(err < 1e-4 * scale);
            }
        }
    }
}

TEST_CASE("nonnegative data stays nonnegative") {
    const auto phys = PhysicsParams::make(1.0, 1.0);
    const auto m = growdiff::testing::perturbed_motion(1.0, -0.5, 3.0);
    const auto nodes = uniform_nodes(1.0, 256);
    std::vector<double> u0(nodes.size());
    for (std::size_t i = 0; i < u0.size(); ++i) u0[i] = std::pow(std::sin(pi * nodes[i]), 8);
    std::vector<double> outs;
    for (int k = 1; k <= 30; ++k) outs.push_back(0.1 * k);
    const auto gs = solve_u(m, phys, u0, 256, {1e-3, 0.0}, 3.0, outs);
    for (const auto& row : gs.values) {
        const double mx = max_abs(row);
        for (double v : row) CHECK(v >= -1e-10 * mx);
    }
}

TEST_CASE("guards and errors") {
    const auto phys = PhysicsParams::make(1.0, 1.0);
    SUBCASE("cell Peclet number") {
        const auto m = BoundaryMotion::separable(SeparableParams::fixed(1.0, 0.0, 1000.0));
        CHECK_THROWS_AS(solve_u(m, phys, sampled(uniform_nodes(1.0, 8), sine, 1.0), 8, {1e-3, 0.0}, 0.1, {}),
                        NumericalFailure);
    }
    SUBCASE("collapse before T") {
        const auto m = BoundaryMotion::separable(SeparableParams::sqrt_length(1.0, -1.0));
        CHECK_THROWS_AS(solve_u(m, phys, sampled(uniform_nodes(1.0, 64), sine, 1.0), 64, {1e-3, 0.0}, 0.6, {}),
                        DomainCollapsed);
    }
    SUBCASE("beyond a tabulated range") {
        const auto m = growdiff::testing::perturbed_motion(1.0, 0.0, 1.0);
        CHECK_THROWS_AS(solve_u(m, phys, sampled(uniform_nodes(1.0, 64), sine, 1.0), 64, {1e-3, 0.0}, 1.5, {}),
                        InvalidArgument);
    }
    SUBCASE("asymmetric motion in the w-equation") {
        const auto m = BoundaryMotion::separable(SeparableParams::fixed(1.0));
        CHECK_THROWS_AS(solve_w(m, phys, sampled(uniform_nodes(1.0, 64), sine, 1.0), 64, {1e-3, 0.0}, 0.1, {}),
                        InvalidArgument);
    }
    SUBCASE("bad arguments") {
        const auto m = BoundaryMotion::separable(SeparableParams::fixed(1.0));
        const auto u0 = sampled(uniform_nodes(1.0, 64), sine, 1.0);
        CHECK_THROWS_AS(solve_u(m, phys, u0, 32, {1e-3, 0.0}, 0.1, {}), InvalidArgument);
        CHECK_THROWS_AS(solve_u(m, phys, u0, 64, {-1e-3, 0.0}, 0.1, {}), InvalidArgument);
        CHECK_THROWS_AS(solve_u(m, phys, u0, 64, {1e-3, 0.0}, 0.1, {0.2}), InvalidArgument);
        CHECK_THROWS_AS(solve_radial(m, phys, u0, 4, 64, {1e-3, 0.0}, 0.1, {}), InvalidArgument);
    }
}

TEST_CASE("output times and determinism") {
    const auto phys = PhysicsParams::make(1.0, 1.0);
    const auto m = BoundaryMotion::separable(SeparableParams::sqrt_length(1.0, 0.5, 0.1, 0.2));
    const auto u0 = sampled(uniform_nodes(1.0, 128), bump, 1.0);
    const auto a = solve_u(m, phys, u0, 128, {7e-3, 0.05}, 2.0, {1.5, 0.0, 0.25, 0.25, 2.0});
    const auto b = solve_u(m, phys, u0, 128, {7e-3, 0.05}, 2.0, {1.5, 0.0, 0.25, 0.25, 2.0});
    REQUIRE(a.times == std::vector<double>{0.0, 0.25, 1.5, 2.0});
    CHECK(a.values[0] == u0);
    CHECK(a.values == b.values);
    CHECK(a.scheme.steps == b.scheme.steps);
}
