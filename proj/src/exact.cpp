#include "growdiff/exact.hpp"

#include <algorithm>
#include <cmath>

#include "growdiff/errors.hpp"

namespace growdiff {

namespace {

constexpr double k_pi = 3.14159265358979323846;

void require_interval(const EigenSystem& es) {
    if (es.params.geometry != Geometry::Interval) throw InvalidArgument("expected an interval eigen system");
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

double magnitude_sum(const SeriesSolution& sol, double xi, double t) {
    const TimeFactors tf = sol.time_factors(t);
    const double lw = sol.log_w_to_u(xi, tf);
    double m = 0.0;
    for (std::size_t n = 0; n < sol.coeffs.size(); ++n)
        m += std::abs(sol.coeffs[n] * sol.eigen.mode_value(n, xi)) * std::exp(sol.eigen.sigma[n] * tf.s + lw);
    return m;
}

}  // namespace

EigenSystem eigen_for_motion(const BoundaryMotion& m, const PhysicsParams& phys, int grid_size, int num_modes) {
    if (m.family() != Family::Separable) throw InvalidArgument("eigen_for_motion: motion must be separable");
    const auto& p = m.separable_params();
    const CaseTag tag = m.tag();
    return solve_sl(phys.D, p.L0, tag.gamma0, p.gamma1, grid_size, num_modes);
}

std::vector<double> sample_on_grid(const std::function<double(double)>& f, const std::vector<double>& nodes) {
    std::vector<double> v(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = f(nodes[i]);
    return v;
}

std::vector<double> transform_ic(const std::vector<double>& u0, const std::vector<double>& nodes,
                                 const BoundaryMotion& m, const PhysicsParams& phys) {
    if (u0.size() != nodes.size() || u0.size() < 3) throw InvalidArgument("transform_ic: grid mismatch");
    double scale = 0.0;
    for (double v : u0) scale = std::max(scale, std::abs(v));
    if (std::abs(u0.front()) > 1e-14 * std::max(scale, 1e-300) || std::abs(u0.back()) > 1e-14 * std::max(scale, 1e-300))
        throw InvalidArgument("transform_ic: initial data must vanish at both endpoints");
    const MotionState st = m.kinematics(0.0);
    const double L0 = m.L0(), D = phys.D;
    std::vector<double> w0(u0.size());
    for (std::size_t i = 0; i < u0.size(); ++i) {
        const double xi = nodes[i];
        w0[i] = u0[i] * std::exp(xi * xi * st.Ldot / (4.0 * D * L0) + xi * st.Adot / (2.0 * D));
    }
    w0.front() = 0.0;
    w0.back() = 0.0;
    return w0;
}

std::vector<double> expand(const std::vector<double>& w0, const EigenSystem& eigen) {
    if (w0.size() != eigen.nodes.size()) throw InvalidArgument("expand: grid mismatch");
    std::vector<double> c(eigen.num_modes());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = eigen.inner(w0, eigen.modes[n]);
    return c;
}

SeriesSolution build_series(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& u0,
                            const EigenSystem& eigen) {
    if (m.family() != Family::Separable) throw InvalidArgument("build_series: motion must be separable");
    require_interval(eigen);
    const auto& p = m.separable_params();
    if (!same(eigen.params.D, phys.D) || !same(eigen.params.L0, p.L0) || !same(eigen.params.gamma0, m.tag().gamma0) ||
        !same(eigen.params.gamma1, p.gamma1))
        throw InvalidArgument("build_series: eigen system does not match the motion");
    SeriesSolution sol = build_bound_series(m, phys, u0, eigen);
    sol.matched = true;
    return sol;
}

SeriesSolution build_bound_series(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& u0,
                                  const EigenSystem& eigen) {
    require_interval(eigen);
    if (!same(eigen.params.L0, m.L0()) || !same(eigen.params.D, phys.D))
        throw InvalidArgument("build_bound_series: eigen domain does not match the motion");
    SeriesSolution sol{m, phys, eigen, {}, false};
    sol.coeffs = expand(transform_ic(u0, eigen.nodes, m, phys), eigen);
    return sol;
}

TimeFactors SeriesSolution::time_factors(double t) const {
    const MotionState st = motion.kinematics(t);
    TimeFactors tf;
    tf.t = t;
    tf.s = motion.s(t);
    tf.L = st.L;
    tf.Ldot = st.Ldot;
    tf.Adot = st.Adot;
    tf.A = st.A;
    tf.log_growth = motion.log_growth(t, physics);
    return tf;
}

double SeriesSolution::log_w_to_u(double xi, const TimeFactors& tf) const {
    const double L0 = motion.L0(), D = physics.D;
    return 0.5 * std::log(L0 / tf.L) + tf.log_growth - xi * xi * tf.Ldot * tf.L / (4.0 * D * L0 * L0) -
           xi * tf.Adot * tf.L / (2.0 * D * L0);
}

FieldValue SeriesSolution::eval(double xi, const TimeFactors& tf) const {
    const double L0 = motion.L0();
    if (!(xi >= 0.0 && xi <= L0)) throw InvalidArgument("eval_series: xi outside [0, L0]");
    FieldValue fv;
    if (xi == 0.0 || xi == L0) return fv;
    double sum = 0.0, last = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        last = coeffs[n] * eigen.mode_value(n, xi) * std::exp(eigen.sigma[n] * tf.s);
        sum += last;
    }
    const double f = std::exp(log_w_to_u(xi, tf));
    fv.value = sum * f;
    fv.truncation_warning = std::abs(last) > 1e-8 * std::abs(sum);
    return fv;
}

FieldValue SeriesSolution::eval(double xi, double t) const { return eval(xi, time_factors(t)); }

double SeriesSolution::w(double xi, double t) const {
    const double s = motion.s(t);
    if (xi <= 0.0 || xi >= motion.L0()) return 0.0;
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) sum += coeffs[n] * eigen.mode_value(n, xi) * std::exp(eigen.sigma[n] * s);
    return sum;
}

double SeriesSolution::psi(double x, double t) const {
    const TimeFactors tf = time_factors(t);
    const double tol = 1e-12 * std::max(1.0, std::abs(tf.A) + tf.L);
    if (x < tf.A - tol || x > tf.A + tf.L + tol) throw InvalidArgument("eval_physical: x outside the moving interval");
    const double L0 = motion.L0();
    const double xi = std::clamp((x - tf.A) * L0 / tf.L, 0.0, L0);
    return eval(xi, tf).value;
}

double SeriesSolution::magnitude(double xi, double t) const { return magnitude_sum(*this, xi, t); }

double SeriesSolution::mode_log_factor(std::size_t n, double xi, double t) const {
    const TimeFactors tf = time_factors(t);
    return eigen.sigma.at(n) * tf.s + log_w_to_u(xi, tf);
}

double SeriesSolution::mode_log_factor_closed_form(std::size_t n, double xi, double t) const {
    if (motion.family() != Family::Separable || !matched)
        throw InvalidArgument("closed forms exist only for matched separable solutions");
    motion.kinematics(t);
    const auto& p = motion.separable_params();
    const double sig = eigen.sigma.at(n);
    const double D = physics.D, f0 = physics.f0, L0 = p.L0, c = p.c, g1 = p.gamma1;
    const double a = p.a, b = p.b;
    switch (motion.tag().kind) {
        case CaseKind::FixedLength: {
            const double L3 = L0 * L0 * L0, L6 = L3 * L3;
            return sig * t + f0 * t - (g1 * g1 / (3.0 * L6) * t * t * t + c * g1 / L3 * t * t + c * c * t) / (4.0 * D) -
                   xi / (2.0 * D * L0) * (g1 / (L0 * L0) * t + c * L0);
        }
        case CaseKind::LinearLength: {
            const double al = b / L0;
            const double Lt = L0 + al * t;
            return sig * L0 * t / Lt + 0.5 * std::log(L0 / Lt) + f0 * t -
                   (c * c * t - c * g1 * t / (al * L0 * Lt) -
                    g1 * g1 / (12.0 * al * al * al) * (1.0 / (Lt * Lt * Lt) - 1.0 / (L0 * L0 * L0))) /
                       (4.0 * D) -
                   xi * xi * al * Lt / (4.0 * D * L0 * L0) - xi * c * Lt / (2.0 * D * L0) +
                   xi * g1 / (4.0 * D * L0 * al * Lt);
        }
        case CaseKind::SqrtLength: {
            const double rho = b;
            const double r2 = L0 * L0 + 2.0 * rho * t;
            const double expo = sig * L0 * L0 / (2.0 * rho) - 0.25 - g1 * g1 / (8.0 * rho * rho * rho * D);
            return expo * std::log(r2 / (L0 * L0)) + f0 * t - c * c / (4.0 * D) * t +
                   c * g1 / (2.0 * rho * rho * D) * (std::sqrt(r2) - L0) - xi * xi * rho / (4.0 * D * L0 * L0) +
                   xi * g1 / (2.0 * D * L0 * rho) - xi * c * std::sqrt(r2) / (2.0 * D * L0);
        }
        case CaseKind::QuadNeg:
        case CaseKind::QuadPos: {
            const double q = b * b - a * L0 * L0;  // -gamma0
            const double L2 = a * t * t + 2.0 * b * t + L0 * L0;
            const double Lt = std::sqrt(L2);
            double log_theta;
            if (q > 0.0) {
                const double k = std::sqrt(q);
                const double lr = std::log(std::abs(a * t + b - k)) + std::log(std::abs(b + k)) -
                                  std::log(std::abs(b - k)) - std::log(std::abs(a * t + b + k));
                log_theta = (sig * L0 * L0 / (2.0 * k) - g1 * g1 / (8.0 * D * q * k)) * lr;
            } else {
                const double g0 = -q, sg = std::sqrt(g0);
                log_theta = (sig * L0 * L0 / sg + g1 * g1 / (4.0 * D * g0 * sg)) *
                            (std::atan((a * t + b) / sg) - std::atan(b / sg));
            }
            return log_theta + 0.25 * std::log(L0 * L0 / L2) + f0 * t -
                   (g1 * g1 * a / (q * q) + c * c) * t / (4.0 * D) + c * g1 / (2.0 * D * q) * (Lt - L0) -
                   xi * xi * (a * t + b) / (4.0 * D * L0 * L0) + xi * g1 * (a * t + b) / (2.0 * D * L0 * q) -
                   xi * c / (2.0 * D * L0) * Lt;
        }
        default: break;
    }
    throw InvalidArgument("closed forms exist only for separable motions");
}

double SeriesSolution::eval_closed_form(double xi, double t) const {
    if (xi <= 0.0 || xi >= motion.L0()) return 0.0;
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        sum += coeffs[n] * eigen.mode_value(n, xi) * std::exp(mode_log_factor_closed_form(n, xi, t));
    return sum;
}

SeriesSolution SeriesSolution::truncated(std::size_t modes) const {
    SeriesSolution s = *this;
    if (modes < s.coeffs.size()) s.coeffs.resize(modes);
    return s;
}

double eval_series(const SeriesSolution& sol, double xi, double t) { return sol.eval(xi, t).value; }

double eval_physical(const SeriesSolution& sol, double x, double t) { return sol.psi(x, t); }

const char* verdict_name(GrowthVerdict v) {
    switch (v) {
        case GrowthVerdict::Growth: return "growth";
        case GrowthVerdict::Decay: return "decay";
        case GrowthVerdict::Collapse: return "collapse";
    }
    return "decay";
}

GrowthReport growth_region(const BoundaryMotion& m, const PhysicsParams& phys) {
    if (m.family() != Family::Separable) throw InvalidArgument("growth_region: motion must be separable");
    const auto& p = m.separable_params();
    const double L0 = p.L0, c = p.c, D = phys.D, cs = phys.c_star();
    GrowthReport r;
    if (std::isfinite(m.horizon())) {
        r.verdict = GrowthVerdict::Collapse;
        r.note = "domain length reaches zero at a finite time; the solution tends to zero uniformly";
        return r;
    }
    auto window = [&](double speed, double ceff) {
        // growth where -c* < ceff + xi*speed/L0 < c*
        r.xi_lo = std::max(0.0, L0 / speed * (-cs - ceff));
        r.xi_hi = std::min(L0, L0 / speed * (cs - ceff));
        r.verdict = r.empty() ? GrowthVerdict::Decay : GrowthVerdict::Growth;
        if (r.empty()) r.xi_lo = r.xi_hi = 0.0;
    };
    switch (m.tag().kind) {
        case CaseKind::FixedLength:
            if (p.gamma1 != 0.0) {
                r.verdict = GrowthVerdict::Decay;
                r.note = "cubic-in-time decay from gamma1 != 0";
                return r;
            }
            r.has_threshold = true;
            r.threshold = D * k_pi * k_pi / (L0 * L0) + c * c / (4.0 * D);
            if (phys.f0 > r.threshold) {
                r.verdict = GrowthVerdict::Growth;
                r.xi_lo = 0.0;
                r.xi_hi = L0;
            } else {
                r.verdict = GrowthVerdict::Decay;
            }
            return r;
        case CaseKind::LinearLength: window(p.b / L0, c); return r;
        case CaseKind::SqrtLength:
            if (phys.f0 > c * c / (4.0 * D)) {
                r.verdict = GrowthVerdict::Growth;
                r.xi_lo = 0.0;
                r.xi_hi = L0;
            } else {
                r.verdict = GrowthVerdict::Decay;
            }
            return r;
        case CaseKind::QuadNeg:
        case CaseKind::QuadPos: {
            const double sa = std::sqrt(p.a);
            const double q = p.b * p.b - p.a * L0 * L0;
            window(sa, c - p.gamma1 * sa / q);
            return r;
        }
        default: break;
    }
    throw InvalidArgument("growth_region: unsupported case");
}

BoundaryMotion ball_diameter_motion(double a, double b, double R0) {
    SeparableParams p{4.0 * a, 4.0 * b, 2.0 * R0, 0.0, 0.0, -R0};
    return BoundaryMotion::separable(p);
}

double ball_log_W_to_psi(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim, double r, double t) {
    // psi = W (R0/R)^{n/2} exp(E) exp(-Rdot R (r^2 - R0^2)/(4 D R0^2)), E = f0 t - int Rdot^2/4D
    const MotionState st = m.kinematics(t);
    const double R = 0.5 * st.L, Rd = 0.5 * st.Ldot, R0 = 0.5 * m.L0();
    const double E = m.family() == Family::Critical ? m.log_growth(t, phys)
                                                    : phys.f0 * t - 0.25 * m.ldot_sq_integral(t) / (4.0 * phys.D);
    return 0.5 * n_dim * std::log(R0 / R) + E - Rd * R * (r * r - R0 * R0) / (4.0 * phys.D * R0 * R0);
}

RadialSeriesSolution build_radial_series(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim,
                                         const std::vector<double>& psi0, const EigenSystem& eigen) {
    if (m.family() != Family::Separable) throw InvalidArgument("build_radial_series: motion must be separable");
    if (eigen.params.geometry != Geometry::Ball || eigen.params.n_dim != n_dim)
        throw InvalidArgument("build_radial_series: eigen system is not the matching ball problem");
    const double R0 = 0.5 * m.L0();
    const double g0R = m.tag().gamma0 / 16.0;
    if (!same(eigen.params.L0, R0) || !same(eigen.params.gamma0, g0R) || !same(eigen.params.D, phys.D))
        throw InvalidArgument("build_radial_series: eigen parameters do not match the motion");
    if (psi0.size() != eigen.nodes.size()) throw InvalidArgument("build_radial_series: grid mismatch");
    const MotionState st = m.kinematics(0.0);
    const double Rd0 = 0.5 * st.Ldot;
    std::vector<double> w0(psi0.size());
    for (std::size_t i = 0; i < w0.size(); ++i) {
        const double r = eigen.nodes[i];
        w0[i] = psi0[i] * std::exp(Rd0 * r * r / (4.0 * phys.D * R0));
    }
    w0.back() = 0.0;
    RadialSeriesSolution sol{m, phys, eigen, {}, n_dim};
    sol.coeffs = expand(w0, eigen);
    return sol;
}

double RadialSeriesSolution::W(double r, double t) const {
    // W = w_sep exp(int Rdot^2/4D - Rdot R/4D), w_sep = sum c_l X_l exp(sigma_l s)
    const double R0v = R0();
    if (!(r >= 0.0 && r <= R0v)) throw InvalidArgument("radial series: r outside [0, R0]");
    if (r == R0v) return 0.0;
    const MotionState st = motion.kinematics(t);
    const double s = motion.s(t);
    double sum = 0.0;
    for (std::size_t l = 0; l < coeffs.size(); ++l) sum += coeffs[l] * eigen.mode_value(l, r) * std::exp(eigen.sigma[l] * s);
    const double R = 0.5 * st.L, Rd = 0.5 * st.Ldot;
    return sum * std::exp((0.25 * motion.ldot_sq_integral(t) - Rd * R) / (4.0 * physics.D));
}

double RadialSeriesSolution::psi(double rho, double t) const {
    const MotionState st = motion.kinematics(t);
    const double R = 0.5 * st.L, R0v = R0();
    if (!(rho >= 0.0 && rho <= R * (1.0 + 1e-12))) throw InvalidArgument("radial series: point outside the ball");
    const double r = std::min(rho * R0v / R, R0v);
    return W(r, t) * std::exp(ball_log_W_to_psi(motion, physics, n_dim, r, t));
}

}  // namespace growdiff
