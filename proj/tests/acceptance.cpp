// one PASS/FAIL line per acceptance criterion; non-zero exit on any failure
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/tools/roots.hpp>

#include "growdiff/airy.hpp"
#include "growdiff/critical.hpp"
#include "growdiff/eigensystem.hpp"
#include "growdiff/exact.hpp"
#include "growdiff/io.hpp"
#include "growdiff/numeric.hpp"
#include "support.hpp"

using namespace growdiff;
using growdiff::testing::pi;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail, double seconds) {
    std::printf("%s criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

template <class F>
void run(int id, F body) {
    const auto start = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(id, pass, detail, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
}

BoundaryMotion critical_motion(double theta, const PhysicsParams& phys, double L0 = 1.0) {
    CriticalParams cp;
    cp.alpha = theta * phys.D / phys.c_star();
    cp.L0_offset = L0;
    return BoundaryMotion::critical(cp, phys);
}

double w_operator(const BoundaryMotion& m, const PhysicsParams& phys, const std::function<double(double, double)>& v,
                  double xi, double t, double hx, double ht, double* scale) {
    const double L0 = m.L0(), L = m.kinematics(t).L;
    const double P = potential(m, phys, t).P;
    const double q = (xi / L0) * (xi / L0 - 1.0);
    const double v0 = v(xi, t);
    const double vxx = (-v(xi + 2 * hx, t) + 16 * v(xi + hx, t) - 30 * v0 + 16 * v(xi - hx, t) - v(xi - 2 * hx, t)) /
                       (12 * hx * hx);
    const double vt = (v(xi, t - 2 * ht) - 8 * v(xi, t - ht) + 8 * v(xi, t + ht) - v(xi, t + 2 * ht)) / (12 * ht);
    const double k = phys.D * L0 * L0 / (L * L);
    *scale = std::abs(vt) + k * std::abs(vxx) + k * std::abs(P * q * v0 / (L0 * L0));
    return vt - k * (vxx + P * q * v0 / (L0 * L0));
}

bool c1_eigen(std::string& d) {
    const auto coarse = solve_sl(1.0, pi, 0.0, 0.0, 1024, 4);
    const auto fine = solve_sl(1.0, pi, 0.0, 0.0, 2048, 4);
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n)
        worst = std::max(worst, std::abs(richardson(coarse.sigma[n - 1], fine.sigma[n - 1]) + n * n));
    d = "max |sigma_n + n^2| = " + g(worst) + " (< 1e-6)";
    return worst < 1e-6;
}

bool c2_bound(std::string& d) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> R(0.1, 5.0), G(-5.0, 5.0);
    double closest = -1e300;
    int below = 0;
    for (int k = 0; k < 50; ++k) {
        const double rho = R(rng), g1 = G(rng);
        const double s = solve_sl(1.0, 1.0, -rho * rho, g1, 1024, 1).sigma[0];
        const double b = principal_eigen_bound(rho, g1, 1.0, 1.0);
        if (s < b) ++below;
        closest = std::max(closest, s - b);
    }
    d = std::to_string(below) + "/50 strictly below the bound, max sigma_1 - bound = " + g(closest);
    return below == 50;
}

bool c3_families(std::string& d) {
    const auto phys = PhysicsParams::make(1.0, 0.5);
    double worst = 0.0;
    std::string where;
    for (const auto& [name, p] : growdiff::testing::family_params()) {
        const auto m = BoundaryMotion::separable(p);
        const double T = growdiff::testing::end_time(m);
        auto init = [&](double x) { return std::sin(pi * x / p.L0); };
        const auto es = eigen_for_motion(m, phys, 2048, 64);
        const auto sol = build_series(m, phys, sample_on_grid(init, es.nodes), es);
        const auto nodes = uniform_nodes(p.L0, 512);
        std::vector<double> times;
        for (int k = 0; k <= 20; ++k) times.push_back(T * k / 20);
        const auto gs = solve_u(m, phys, sample_on_grid(init, nodes), 512, {1e-4, 0.0}, T, times);
        for (std::size_t k = 0; k < gs.times.size(); ++k) {
            const TimeFactors tf = sol.time_factors(gs.times[k]);
            double err = 0.0, mag = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                const double e = sol.eval(nodes[i], tf).value;
                err = std::max(err, std::abs(e - gs.values[k][i]));
                mag = std::max(mag, std::abs(e));
            }
            if (err / mag > worst) {
                worst = err / mag;
                where = name;
            }
        }
    }
    d = "worst relative Linf = " + g(worst) + " (" + where + ", < 1e-4)";
    return worst < 1e-4;
}

bool c4_closed_forms(std::string& d) {
    const auto phys = PhysicsParams::make(0.8, 1.3);
    std::mt19937_64 rng(3);
    double worst = 0.0;
    for (const auto& [name, p] : growdiff::testing::family_params_full()) {
        const auto m = BoundaryMotion::separable(p);
        const auto es = eigen_for_motion(m, phys, 256, 16);
        const auto u0 = sample_on_grid(
            [&](double x) {
                const double y = x / p.L0;
                return y * (1 - y) * (1 + y * y);
            },
            es.nodes);
        const auto sol = build_series(m, phys, u0, es);
        std::uniform_real_distribution<double> T(0.0, growdiff::testing::end_time(m));
        std::uniform_real_distribution<double> X(0.0, p.L0);
        for (int k = 0; k < 1000; ++k) {
            const double t = T(rng), xi = X(rng);
            for (std::size_t n = 0; n < sol.truncation(); ++n) {
                const double a = sol.mode_log_factor(n, xi, t), b = sol.mode_log_factor_closed_form(n, xi, t);
                worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
            }
            const double a = sol.eval(xi, t).value, b = sol.eval_closed_form(xi, t);
            worst = std::max(worst, std::abs(a - b) / std::max(sol.magnitude(xi, t), 1e-300));
        }
    }
    d = "worst relative deviation = " + g(worst) + " (< 1e-9)";
    return worst < 1e-9;
}

bool c5_decay(std::string& d) {
    const double D = 0.5, f0 = 2.0, L0 = 1.0;
    const auto phys = PhysicsParams::make(D, f0);
    const double cs = phys.c_star();
    auto formula = [&](double xi, double t) {
        const double Lt = L0 + 2 * cs * t;
        return std::exp(-D * pi * pi * t / (L0 * Lt)) * std::sin(pi * xi / L0) * std::sqrt(L0 / Lt) *
               std::exp(xi * cs / (2 * D * L0) * Lt * (1 - xi / L0));
    };
    const auto m = BoundaryMotion::separable(SeparableParams::linear(L0, 2 * cs, 0.0, -cs, -L0 / 2));
    const auto es = eigen_for_motion(m, phys, 2048, 32);
    const auto sol = build_series(m, phys, sample_on_grid([&](double x) { return formula(x, 0.0); }, es.nodes), es);
    std::vector<double> ts, ps;
    double dev = 0.0;
    for (int k = 0; k <= 40; ++k) {
        const double t = std::pow(10.0, 2.0 + 2.0 * k / 40);
        const double x = m.kinematics(t).A + 1.0;
        const double v = eval_physical(sol, x, t);
        const double xi = (x - m.kinematics(t).A) * L0 / m.kinematics(t).L;
        dev = std::max(dev, std::abs(v / formula(xi, t) - 1.0));
        ts.push_back(t);
        ps.push_back(v);
    }
    const double slope = loglog_slope(ts, ps);
    d = "slope = " + g(slope) + " (-1.5 +- 0.02), series vs formula " + g(dev);
    return std::abs(slope + 1.5) <= 0.02 && dev < 1e-6;
}

bool c6_exponents(std::string& d) {
    const auto phys = PhysicsParams::make(1.0, 400.0);
    CriticalRunOptions opts;
    opts.grid_size = 1024;
    opts.T = 1e3;
    double worst = 0.0;
    std::string fits;
    GradientBand band;
    for (double th : {1.0, 2.0, 3.0, 4.0}) {
        const auto m = critical_motion(th, phys);
        const auto w = run_critical(m, phys, 1, opts);
        const auto rep = fit_exponent_from(m, phys, w, {0.5, 1.0, 2.0}, std::pow(10.0, 1.5), 1e3);
        worst = std::max(worst, std::abs(rep.fitted_exponent - (-1.5 + th / 2)));
        fits += (fits.empty() ? "" : ", ") + g(rep.fitted_exponent);
        if (th == 3.0) band = gradient_band(m, phys, w, 1e2, 1e3);
    }
    d = "fitted {" + fits + "}, max deviation " + g(worst) + " (<= 0.05); gradient band [" + g(band.g_min) + ", " +
        g(band.g_max) + "] ratio " + g(band.ratio());
    return worst <= 0.05 && band.g_min > 0.0 && band.ratio() <= 1.5;
}

bool c7_envelope(std::string& d) {
    const auto phys = PhysicsParams::make(1.0, 400.0);
    const auto m = critical_motion(3.0, phys);
    CriticalRunOptions opts;
    opts.grid_size = 1024;
    const auto w = run_critical(m, phys, 1, opts);
    EnvelopeOptions eo;
    eo.throw_on_violation = false;
    const auto env = verify_envelope(m, phys, w, eo);
    double slack = 1e300;
    for (const auto& row : env.rows)
        if (row.t >= env.t_cal) slack = std::min(slack, row.slack);

    // residual signs at random points, same motion
    double t_min = 1.0;
    while (!subsolution_support_fits(m, phys, t_min) || potential(m, phys, t_min).Pdot < 0.0) t_min *= 1.1;
    t_min = std::max(t_min, pdot_onset(m, phys, 1e3)) * 1.01;
    const double L0 = m.L0();
    const double zc = -airy_ai(0.0).ai / airy_ai(0.0).aip - airy_first_zero();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto sub = [&](double xi, double t) { return subsolution(m, phys, xi, t, t_min); };
    auto sup = [&](double xi, double t) { return supersolution(m, phys, xi, t); };
    double worst_sub = -1.0, worst_sup = 1.0;
    for (int k = 0; k < 1000; ++k) {
        const double t = t_min * std::pow(1e3 / t_min, U(rng));
        const double p13 = std::cbrt(potential(m, phys, t).P);
        const double hx = 1e-3 * L0 / p13, ht = 1e-4 * t;
        const double xi = 3 * hx + (zc * L0 / p13 - 6 * hx) * U(rng);
        double s1 = 0.0, s2 = 0.0;
        worst_sub = std::max(worst_sub, w_operator(m, phys, sub, xi, t, hx, ht, &s1) / s1);
        const double xs = 3e-3 + (L0 - 6e-3) * U(rng);
        worst_sup = std::min(worst_sup, w_operator(m, phys, sup, xs, t, 1e-3, ht, &s2) / s2);
    }
    d = "min slack " + g(slack) + " (>= -1e-8), C1 = " + g(env.C1) + ", C2 = " + g(env.C2) + "; scaled residuals sub " +
        g(worst_sub) + " (<= 1e-6), super " + g(worst_sup) + " (>= -1e-6)";
    return slack >= -1e-8 && env.C1 > 0.0 && env.C2 > 0.0 && worst_sub <= 1e-6 && worst_sup >= -1e-6;
}

bool c8_radial(std::string& d) {
    const auto phys = PhysicsParams::make(1.0, 100.0);
    CriticalParams cp;
    cp.alpha = 5.0 * phys.D / phys.c_star();
    cp.L0_offset = 2.0;
    const auto m = BoundaryMotion::critical(cp, phys);
    CriticalRunOptions opts;
    opts.grid_size = 1024;
    const auto rep = fit_exponent(m, phys, 3, {0.5, 1.0, 2.0}, std::pow(10.0, 1.5), 1e3, opts);

    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve([](double x) { return std::cyl_bessel_j(0.0, x); }, 2.0, 3.0,
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
    const double j0 = 0.5 * (root.first + root.second);
    const auto coarse = solve_radial(1.0, 1.0, 0.0, 2, 1024, 1), fine = solve_radial(1.0, 1.0, 0.0, 2, 2048, 1);
    const double err = std::abs(richardson(coarse.sigma[0], fine.sigma[0]) + j0 * j0);
    d = "3-ball fitted exponent " + g(rep.fitted_exponent) + " (0 +- 0.08); disc |sigma_1 + j0^2| = " + g(err) +
        " (< 1e-5)";
    return std::abs(rep.fitted_exponent) <= 0.08 && err < 1e-5;
}

bool c9_comparison(std::string& d) {
    const auto doc = io::motion_from_json(io::read_json_file(GROWDIFF_CONFIG_DIR "/perturbed_motion.json"));
    const BoundaryMotion& m = doc.motion;
    const PhysicsParams& phys = doc.physics;
    const double L0 = m.L0(), T = 5.0;
    std::vector<double> times;
    for (int k = 2; k <= 20; ++k) times.push_back(0.25 * k);
    const auto nodes = uniform_nodes(L0, 512);
    const auto gs = solve_u(m, phys, sample_on_grid([&](double x) { return std::sin(pi * x / L0); }, nodes), 512,
                            {1e-4, 0.0}, T, times);

    // nested domains: fixed [0.2, 0.8] - t/2 inside, linear [-0.15, 1.15] grown at rate 1 outside
    auto series = [&](const SeparableParams& p, double amp) {
        const auto sm = BoundaryMotion::separable(p);
        const auto es = eigen_for_motion(sm, phys, 2048, 64);
        return build_series(sm, phys, sample_on_grid([&](double x) { return amp * std::sin(pi * x / p.L0); }, es.nodes),
                            es);
    };
    const auto inner = series(SeparableParams::fixed(0.6, 0.0, -0.5, 0.2), 0.5);
    const auto outer = series(SeparableParams::linear(1.3, 1.0, 0.0, -0.5, -0.15), 1.0);

    // gamma bounds on the same motion
    GammaBounds b = sampled_gamma_bounds(m, T, 4001);
    const double pad = 1e-6 * std::max(std::abs(b.gamma0_lo), std::abs(b.gamma0_hi));
    b.gamma0_lo -= pad;
    b.gamma0_hi += pad;
    const auto eg = solve_sl(phys.D, L0, 0.0, 0.0, 2048, 1);
    const auto pair = envelope_bounds_general(
        m, phys, sample_on_grid([&](double x) { return std::sin(pi * x / L0); }, eg.nodes), b, T, 2048, 64);

    double nested = 1e300, gamma = 1e300;
    for (std::size_t k = 0; k < gs.times.size(); ++k) {
        const double t = gs.times[k];
        const MotionState st = m.kinematics(t);
        const TimeFactors ti = inner.time_factors(t);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double xi = nodes[i];
            if (xi < 0.1 * L0 || xi > 0.9 * L0) continue;
            const double u = gs.values[k][i];
            const double x = st.A + xi * st.L / L0;
            const double lo = (x > ti.A && x < ti.A + ti.L) ? eval_physical(inner, x, t) : 0.0;
            nested = std::min({nested, u - lo, eval_physical(outer, x, t) - u});
            gamma = std::min({gamma, u - pair.lower.eval(xi, t).value, pair.upper.eval(xi, t).value - u});
        }
    }
    d = "nested-domain slack " + g(nested) + ", gamma envelope slack " + g(gamma) + " (>= -1e-8), gamma0 in [" +
        g(b.gamma0_lo) + ", " + g(b.gamma0_hi) + "]";
    return nested >= -1e-8 && gamma >= -1e-8;
}

bool c10_airy(std::string& d) {
    // Ai(0) = 1/(3^(2/3) Gamma(2/3)), Ai'(0) = -1/(3^(1/3) Gamma(1/3))
    const double ai0 = 1.0 / (std::cbrt(9.0) * std::tgamma(2.0 / 3.0));
    const double aip0 = -1.0 / (std::cbrt(3.0) * std::tgamma(1.0 / 3.0));
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve([](double x) { return boost::math::airy_ai(x); }, -2.5, -2.2,
                                                        boost::math::tools::eps_tolerance<double>(52), iters);
    const double c1 = 0.5 * (root.first + root.second);
    const AiryValue a = airy_ai(0.0);
    const double e0 = std::abs(a.ai - ai0), e1 = std::abs(a.aip - aip0), e2 = std::abs(airy_first_zero() - c1);
    double res = 0.0;
    const double h = 1e-3;
    for (double x = c1 - 1.0; x <= 5.0; x += 0.01) {
        const double d2 = (-airy_ai(x + 2 * h).aip + 8 * airy_ai(x + h).aip - 8 * airy_ai(x - h).aip +
                           airy_ai(x - 2 * h).aip) /
                          (12 * h);
        res = std::max(res, std::abs(d2 - x * airy_ai(x).ai));
    }
    d = "|Ai(0) err| " + g(e0) + ", |Ai'(0) err| " + g(e1) + " (< 1e-12), |c1 err| " + g(e2) + " (< 1e-10), ODE residual " +
        g(res) + " (< 1e-9)";
    return e0 < 1e-12 && e1 < 1e-12 && e2 < 1e-10 && res < 1e-9;
}

}  // namespace

int main() {
    run(1, c1_eigen);
    run(2, c2_bound);
    run(3, c3_families);
    run(4, c4_closed_forms);
    run(5, c5_decay);
    run(6, c6_exponents);
    run(7, c7_envelope);
    run(8, c8_radial);
    run(9, c9_comparison);
    run(10, c10_airy);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
