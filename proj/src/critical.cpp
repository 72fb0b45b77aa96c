#include "growdiff/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growdiff/airy.hpp"
#include "growdiff/eigensystem.hpp"
#include "growdiff/errors.hpp"
#include "growdiff/quadrature.hpp"

namespace growdiff {

namespace {

constexpr double k_pi = 3.14159265358979323846;
constexpr double k_j0 = 2.40482555769577276862;  // first zero of J0

bool pdot_negative(const PotentialTrace& tr) { return tr.Pdot < -1e-12 * std::max(1.0, std::abs(tr.P)); }

void require_nonnegative_P(const BoundaryMotion& m, const PhysicsParams& phys, double t) {
    for (int i = 0; i <= 64; ++i) {
        const double ti = t * i / 64.0;
        const PotentialTrace tr = potential(m, phys, ti);
        if (tr.P < -1e-12 * std::max(1.0, std::abs(tr.P)))
            throw HypothesisViolated("supersolution: P(t) < 0 at t = " + std::to_string(ti));
    }
}

void require_sub_hypotheses(const PotentialTrace& tr) {
    if (!(tr.P > 0.0)) throw HypothesisViolated("subsolution: needs P(t) > 0, t = " + std::to_string(tr.t));
    if (pdot_negative(tr)) throw HypothesisViolated("subsolution: needs dP/dt >= 0, t = " + std::to_string(tr.t));
}

// radial principal shape h0 on [0, 1] and its eigenvalue
double radial_shape(int n, double rho) {
    switch (n) {
        case 1: return std::cos(0.5 * k_pi * rho);
        case 2: return std::cyl_bessel_j(0.0, k_j0 * rho);
        default: return rho == 0.0 ? 1.0 : std::sin(k_pi * rho) / (k_pi * rho);
    }
}

double radial_lambda(int n) {
    switch (n) {
        case 1: return 0.25 * k_pi * k_pi;
        case 2: return k_j0 * k_j0;
        default: return k_pi * k_pi;
    }
}

void require_dim(int n_dim) {
    if (n_dim < 1) throw InvalidArgument("n_dim must be at least 1");
    if (n_dim > 3)
        throw HypothesisViolated("radial subsolution is established only for n_dim <= 3; higher dimensions are "
                                 "conjectural");
}

double support_extent() { return -subsolution_rate_constant(); }

double log_a_increment(const BoundaryMotion& m, const PhysicsParams& phys, double t0, double t1) {
    if (t0 == t1) return 0.0;
    auto f = [&](double x) {
        const MotionState st = m.kinematics(x);
        const double P = st.Lddot * st.L * st.L * st.L / (4.0 * phys.D * phys.D);
        return phys.D * std::cbrt(P * P) / (st.L * st.L);
    };
    const double lo = std::min(t0, t1), hi = std::max(t0, t1);
    const double v = integrate_checked(f, lo, hi, {1e-14, 1e-10, 4000});
    return subsolution_rate_constant() * (t1 >= t0 ? v : -v);
}

}  // namespace

double subsolution_rate_constant() {
    const AiryValue a0 = airy_ai(0.0);
    return a0.ai / a0.aip + airy_first_zero();
}

PotentialTrace potential(const BoundaryMotion& m, const PhysicsParams& phys, double t, bool radial) {
    const MotionState st = m.kinematics(t);
    const double L2 = st.L * st.L;
    const double D2 = 4.0 * phys.D * phys.D;
    PotentialTrace tr;
    tr.t = t;
    tr.P = st.Lddot * L2 * st.L / D2;
    tr.Pdot = (m.Ldddot(t) * L2 * st.L + 3.0 * st.Lddot * L2 * st.Ldot) / D2;
    if (radial) {
        tr.P /= 16.0;
        tr.Pdot /= 16.0;
    }
    return tr;
}

double pdot_onset(const BoundaryMotion& m, const PhysicsParams& phys, double t_max) {
    if (!(t_max > 0.0)) throw InvalidArgument("pdot_onset: t_max must be positive");
    std::vector<double> ts{0.0};
    const int n = 400;
    const double lo = std::min(1e-6, 1e-3 * t_max);
    for (int i = 0; i <= n; ++i) ts.push_back(lo * std::pow(t_max / lo, static_cast<double>(i) / n));
    ts.back() = t_max;
    int last_bad = -1;
    for (int i = 0; i < static_cast<int>(ts.size()); ++i)
        if (pdot_negative(potential(m, phys, ts[i]))) last_bad = i;
    if (last_bad < 0) return 0.0;
    if (last_bad == static_cast<int>(ts.size()) - 1)
        throw HypothesisViolated("dP/dt < 0 at the end of the run window");
    double a = ts[last_bad], b = ts[last_bad + 1];
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (a + b);
        if (pdot_negative(potential(m, phys, mid))) a = mid;
        else b = mid;
    }
    return b;
}

double supersolution(const BoundaryMotion& m, const PhysicsParams& phys, double xi, double t) {
    const double L0 = m.L0();
    if (!(xi >= 0.0 && xi <= L0)) throw InvalidArgument("supersolution: xi outside [0, L0]");
    require_nonnegative_P(m, phys, t);
    if (xi == 0.0 || xi == L0) return 0.0;
    return std::sin(k_pi * xi / L0) * std::exp(-phys.D * k_pi * k_pi * m.s(t) / (L0 * L0));
}

double subsolution_profile(double P, double xi, double L0) {
    if (!(P > 0.0)) throw HypothesisViolated("subsolution: needs P > 0");
    const AiryValue a0 = airy_ai(0.0);
    const double p3 = std::cbrt(P);
    const double z = p3 * xi / L0 + airy_first_zero();
    if (xi <= 0.0) return 0.0;
    if (z <= 0.0) return airy_ai(z).ai / p3;
    if (z <= -a0.ai / a0.aip) return (a0.ai + a0.aip * z) / p3;
    return 0.0;
}

double subsolution_log_a(const BoundaryMotion& m, const PhysicsParams& phys, double t_ref, double t) {
    return log_a_increment(m, phys, t_ref, t);
}

double subsolution(const BoundaryMotion& m, const PhysicsParams& phys, double xi, double t, double t_ref) {
    const double L0 = m.L0();
    if (!(xi >= 0.0 && xi <= L0)) throw InvalidArgument("subsolution: xi outside [0, L0]");
    const PotentialTrace tr = potential(m, phys, t);
    require_sub_hypotheses(tr);
    return subsolution_profile(tr.P, xi, L0) * std::exp(subsolution_log_a(m, phys, t_ref, t));
}

bool subsolution_support_fits(const BoundaryMotion& m, const PhysicsParams& phys, double t, bool radial) {
    // support ends at xi = |K| L0 P^{-1/3} with P the 1D potential of (the diameter motion of) m
    const PotentialTrace tr = potential(m, phys, t);
    if (!(tr.P > 0.0)) return false;
    return std::cbrt(tr.P) >= (radial ? 2.0 : 1.0) * support_extent();
}

double radial_supersolution(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim, double r, double t) {
    if (n_dim < 1 || n_dim > 3) throw InvalidArgument("radial_supersolution: n_dim must be 1, 2 or 3");
    const double R0 = 0.5 * m.L0();
    if (!(r >= 0.0 && r <= R0)) throw InvalidArgument("radial_supersolution: r outside [0, R0]");
    require_nonnegative_P(m, phys, t);
    if (r == R0) return 0.0;
    return radial_shape(n_dim, r / R0) * std::exp(-phys.D * radial_lambda(n_dim) * m.s(t) / (R0 * R0));
}

double radial_subsolution(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim, double r, double t,
                          double t_ref) {
    require_dim(n_dim);
    const double L0 = m.L0(), R0 = 0.5 * L0;
    if (!(r >= 0.0 && r <= R0)) throw InvalidArgument("radial_subsolution: r outside [0, R0]");
    const PotentialTrace tr = potential(m, phys, t);
    require_sub_hypotheses(tr);
    if (n_dim > 1 && !subsolution_support_fits(m, phys, t, true))
        throw HypothesisViolated("radial_subsolution: support does not fit inside the ball at t = " +
                                 std::to_string(t));
    const double v = subsolution_profile(tr.P, R0 - r, L0);
    if (v == 0.0) return 0.0;
    return v * std::exp(subsolution_log_a(m, phys, t_ref, t)) / std::pow(r, 0.5 * (n_dim - 1));
}

EnvelopePair verify_envelope(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w,
                             const EnvelopeOptions& opts) {
    if (w.field == FieldKind::U) throw InvalidArgument("verify_envelope: needs a transformed (w or W) solution");
    if (w.times.empty()) throw InvalidArgument("verify_envelope: empty solution");
    const bool radial = w.field == FieldKind::RadialW;
    const int n = radial ? w.n_dim : 1;
    if (radial) require_dim(n);
    const double L0 = m.L0();
    const double ell = radial ? 0.5 * L0 : L0;
    if (std::abs(w.nodes.back() - ell) > 1e-12 * ell)
        throw InvalidArgument("verify_envelope: grid does not match the motion");
    const double t_max = w.times.back();
    require_nonnegative_P(m, phys, t_max);

    EnvelopePair env;
    env.n_dim = n;
    env.onset = pdot_onset(m, phys, t_max);
    std::size_t k0 = w.times.size();
    for (std::size_t k = 0; k < w.times.size(); ++k) {
        const double t = w.times[k];
        if (t <= 0.0 || t < env.onset) continue;
        if (opts.check_sub && !subsolution_support_fits(m, phys, t, radial)) continue;
        k0 = k;
        break;
    }
    if (k0 == w.times.size()) throw HypothesisViolated("verify_envelope: no output time satisfies the hypotheses");
    env.t_cal = w.times[k0];

    const double lambda = radial ? radial_lambda(n) : k_pi * k_pi;
    const std::size_t N = w.nodes.size() - 1;
    const std::size_t i_lo = radial ? 0 : 1;
    std::vector<double> shape(N + 1);
    for (std::size_t i = 0; i <= N; ++i)
        shape[i] = radial ? radial_shape(n, w.nodes[i] / ell) : std::sin(k_pi * w.nodes[i] / ell);

    double log_a = 0.0, t_prev = env.t_cal;
    std::vector<double> sub(N + 1), sup(N + 1);
    env.worst_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = k0; k < w.times.size(); ++k) {
        const double t = w.times[k];
        const PotentialTrace tr = potential(m, phys, t);
        if (opts.check_sub) require_sub_hypotheses(tr);
        log_a += log_a_increment(m, phys, t_prev, t);
        t_prev = t;
        const double es = std::exp(-phys.D * lambda * m.s(t) / (ell * ell));
        const double ea = std::exp(log_a);
        const auto& v = w.values[k];
        double vmax = 0.0;
        for (std::size_t i = i_lo; i < N; ++i) {
            sup[i] = shape[i] * es;
            sub[i] = 0.0;
            if (opts.check_sub) {
                const double r = w.nodes[i];
                const double xi = radial ? ell - r : r;
                const double p = subsolution_profile(tr.P, xi, L0);
                if (p != 0.0) sub[i] = p * ea / (radial && n > 1 ? std::pow(r, 0.5 * (n - 1)) : 1.0);
            }
            vmax = std::max(vmax, std::abs(v[i]));
        }
        if (k == k0) {
            double c2 = 0.0, c1 = std::numeric_limits<double>::infinity();
            for (std::size_t i = i_lo; i < N; ++i) {
                if (sup[i] > 0.0) c2 = std::max(c2, v[i] / sup[i]);
                if (sub[i] > 0.0) c1 = std::min(c1, v[i] / sub[i]);
            }
            env.C2 = c2;
            env.C1 = opts.check_sub ? c1 : 0.0;
        }
        for (std::size_t i = i_lo; i < N; ++i) {
            const double lo = v[i] - env.C1 * sub[i];
            const double hi = env.C2 * sup[i] - v[i];
            const double slack = std::min(lo, hi) / vmax;
            if (slack < env.worst_slack) {
                env.worst_slack = slack;
                env.worst_xi = w.nodes[i];
                env.worst_t = t;
            }
            if (opts.keep_rows) env.rows.push_back({t, w.nodes[i], env.C1 * sub[i], v[i], env.C2 * sup[i], slack});
        }
    }
    if (opts.throw_on_violation && !env.ok(opts.tol))
        throw EnvelopeViolation("envelope ordering violated", env.worst_xi, env.worst_t, env.worst_slack);
    return env;
}

GridSolution run_critical(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim,
                          const CriticalRunOptions& opts) {
    if (n_dim < 1 || n_dim > 3) throw InvalidArgument("run_critical: n_dim must be 1, 2 or 3");
    if (!(opts.t_first > 0.0) || opts.t_first >= opts.T || opts.outputs_per_decade < 1)
        throw InvalidArgument("run_critical: bad output schedule");
    std::vector<double> outs;
    const double decades = std::log10(opts.T / opts.t_first);
    const int count = static_cast<int>(std::floor(decades * opts.outputs_per_decade + 1e-9));
    for (int j = 0; j <= count; ++j) outs.push_back(opts.t_first * std::pow(10.0, static_cast<double>(j) / opts.outputs_per_decade));
    if (opts.T - outs.back() > 1e-9 * opts.T) outs.push_back(opts.T);
    else outs.back() = opts.T;
    if (n_dim == 1 && m.is_symmetric(1e-10)) {
        const auto nodes = uniform_nodes(m.L0(), opts.grid_size);
        std::vector<double> w0(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) w0[i] = std::sin(k_pi * nodes[i] / m.L0());
        return solve_w(m, phys, w0, opts.grid_size, opts.step, opts.T, outs);
    }
    const double R0 = 0.5 * m.L0();
    const auto nodes = uniform_nodes(R0, opts.grid_size);
    std::vector<double> W0(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) W0[i] = radial_shape(n_dim, nodes[i] / R0);
    return solve_radial(m, phys, W0, n_dim, opts.grid_size, opts.step, opts.T, outs);
}

double critical_psi(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w, std::size_t k,
                    double y) {
    const double t = w.times.at(k);
    const MotionState st = m.kinematics(t);
    const double L0 = m.L0(), D = phys.D;
    if (w.field == FieldKind::RadialW) {
        const double R = 0.5 * st.L, R0 = 0.5 * L0;
        if (!(y >= 0.0 && y <= R)) throw InvalidArgument("critical_psi: probe outside the ball");
        const double r = R0 * (1.0 - y / R);
        return w.interpolate(k, r) * std::exp(ball_log_W_to_psi(m, phys, w.n_dim, r, t));
    }
    if (w.field != FieldKind::W) throw InvalidArgument("critical_psi: needs a transformed solution");
    if (!(y >= 0.0 && y <= st.L)) throw InvalidArgument("critical_psi: probe outside the interval");
    const double xi = y * L0 / st.L;
    const double lf = 0.5 * std::log(L0 / st.L) + m.log_growth(t, phys) -
                      xi * xi * st.Ldot * st.L / (4.0 * D * L0 * L0) - xi * st.Adot * st.L / (2.0 * D * L0);
    return w.interpolate(k, xi) * std::exp(lf);
}

double boundary_gradient(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w, std::size_t k) {
    const double t = w.times.at(k);
    const MotionState st = m.kinematics(t);
    const double L0 = m.L0();
    if (w.field == FieldKind::RadialW) {
        const double R = 0.5 * st.L, R0 = 0.5 * L0;
        return -w.slope_at_end(k) * (R0 / R) * std::exp(ball_log_W_to_psi(m, phys, w.n_dim, R0, t));
    }
    if (w.field != FieldKind::W) throw InvalidArgument("boundary_gradient: needs a transformed solution");
    return w.slope_at_zero(k) * std::pow(L0 / st.L, 1.5) * std::exp(m.log_growth(t, phys));
}

GradientBand gradient_band(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w, double t_lo,
                           double t_hi) {
    GradientBand band{t_lo, t_hi, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    int count = 0;
    for (std::size_t k = 0; k < w.times.size(); ++k) {
        const double t = w.times[k];
        if (t < t_lo * (1.0 - 1e-12) || t > t_hi * (1.0 + 1e-12)) continue;
        const double g = boundary_gradient(m, phys, w, k);
        band.g_min = std::min(band.g_min, g);
        band.g_max = std::max(band.g_max, g);
        ++count;
    }
    if (count == 0) throw InvalidArgument("gradient_band: no output times in the window");
    return band;
}

double predicted_exponent(double alpha, double c_star, double D, int n_dim) {
    return -1.0 - 0.5 * n_dim + alpha * c_star / (2.0 * D);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double* rms) {
    if (x.size() != y.size() || x.size() < 3) throw InvalidArgument("loglog_slope: need at least 3 points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw NumericalFailure("loglog_slope: non-positive sample");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    if (rms) {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = ly[i] - my - slope * (lx[i] - mx);
            ss += r * r;
        }
        *rms = std::sqrt(ss / n);
    }
    return slope;
}

CriticalFitReport fit_exponent_from(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w,
                                    const std::vector<double>& y_probes, double t_lo, double t_hi) {
    if (m.family() != Family::Critical) throw InvalidArgument("fit_exponent: motion must be critical");
    if (y_probes.empty()) throw InvalidArgument("fit_exponent: no probes");
    if (!(t_lo > 0.0) || std::log10(t_hi / t_lo) < 1.5 - 1e-9)
        throw InvalidArgument("fit_exponent: the window must span at least 1.5 decades");
    CriticalFitReport rep;
    rep.alpha = m.critical_params().alpha;
    rep.n_dim = w.field == FieldKind::RadialW ? w.n_dim : 1;
    rep.c_star = m.critical_c_star();
    rep.predicted_exponent = predicted_exponent(rep.alpha, rep.c_star, phys.D, rep.n_dim);
    rep.t_lo = t_lo;
    rep.t_hi = t_hi;
    rep.y_probes = y_probes;
    rep.experimental = !(rep.alpha > 0.0);
    std::vector<std::size_t> ks;
    for (std::size_t k = 0; k < w.times.size(); ++k)
        if (w.times[k] >= t_lo * (1.0 - 1e-12) && w.times[k] <= t_hi * (1.0 + 1e-12)) ks.push_back(k);
    if (ks.size() < 5) throw InvalidArgument("fit_exponent: fewer than 5 output times in the window");
    double sum = 0.0;
    for (double y : y_probes) {
        std::vector<double> ts, ps;
        for (std::size_t k : ks) {
            ts.push_back(w.times[k]);
            ps.push_back(critical_psi(m, phys, w, k, y));
        }
        double rms = 0.0;
        const double sl = loglog_slope(ts, ps, &rms);
        rep.probe_slopes.push_back(sl);
        rep.residual = std::max(rep.residual, rms);
        sum += sl;
    }
    rep.fitted_exponent = sum / y_probes.size();
    return rep;
}

CriticalFitReport fit_exponent(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim,
                               const std::vector<double>& y_probes, double t_lo, double t_hi,
                               const CriticalRunOptions& opts) {
    if (m.family() != Family::Critical) throw InvalidArgument("fit_exponent: motion must be critical");
    CriticalRunOptions run = opts;
    run.T = t_hi;
    run.t_first = std::min(opts.t_first, t_lo);
    // rough work estimate: steps of size dt_rel (1 + t) plus fixed steps, times grid points
    const double steps = run.step.dt_rel > 0.0 ? std::log1p(run.T) / run.step.dt_rel + 1.0 / run.step.dt
                                               : run.T / run.step.dt;
    if (steps * run.grid_size > 5e10)
        throw InvalidArgument("fit_exponent: window too long for the step budget; use a smaller t_hi or larger dt_rel");
    const GridSolution w = run_critical(m, phys, n_dim, run);
    return fit_exponent_from(m, phys, w, y_probes, t_lo, t_hi);
}

GammaBounds sampled_gamma_bounds(const BoundaryMotion& m, double t_end, int samples) {
    if (samples < 2) throw InvalidArgument("sampled_gamma_bounds: need at least 2 samples");
    GammaBounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int i = 0; i < samples; ++i) {
        const MotionState st = m.kinematics(t_end * i / (samples - 1));
        const double L3 = st.L * st.L * st.L;
        b.gamma0_lo = std::min(b.gamma0_lo, st.Lddot * L3);
        b.gamma0_hi = std::max(b.gamma0_hi, st.Lddot * L3);
        b.gamma1_lo = std::min(b.gamma1_lo, st.Addot * L3);
        b.gamma1_hi = std::max(b.gamma1_hi, st.Addot * L3);
    }
    return b;
}

BoundPair envelope_bounds_general(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& u0,
                                  const GammaBounds& bounds, double t_end, int grid_size, int num_modes) {
    if (!(bounds.gamma0_lo <= bounds.gamma0_hi) || !(bounds.gamma1_lo <= bounds.gamma1_hi))
        throw InvalidArgument("envelope_bounds_general: bounds are not ordered");
    const GammaBounds s = sampled_gamma_bounds(m, t_end, 1000);
    auto tol = [](double a, double b) { return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); };
    if (s.gamma0_lo < bounds.gamma0_lo - tol(s.gamma0_lo, bounds.gamma0_lo) ||
        s.gamma0_hi > bounds.gamma0_hi + tol(s.gamma0_hi, bounds.gamma0_hi))
        throw HypothesisViolated("envelope_bounds_general: Lddot L^3 leaves [gamma0-, gamma0+]");
    if (s.gamma1_lo < bounds.gamma1_lo - tol(s.gamma1_lo, bounds.gamma1_lo) ||
        s.gamma1_hi > bounds.gamma1_hi + tol(s.gamma1_hi, bounds.gamma1_hi))
        throw HypothesisViolated("envelope_bounds_general: Addot L^3 leaves [gamma1-, gamma1+]");
    for (double v : u0)
        if (v < 0.0) throw HypothesisViolated("envelope_bounds_general: initial data must be non-negative");
    const double L0 = m.L0();
    const EigenSystem hi = solve_sl(phys.D, L0, bounds.gamma0_hi, bounds.gamma1_hi, grid_size, num_modes);
    const EigenSystem lo = solve_sl(phys.D, L0, bounds.gamma0_lo, bounds.gamma1_lo, grid_size, num_modes);
    return {bounds, build_bound_series(m, phys, u0, hi), build_bound_series(m, phys, u0, lo)};
}

}  // namespace growdiff
