#include "growdiff/motion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "growdiff/errors.hpp"
#include "growdiff/quadrature.hpp"

namespace growdiff {

const char* case_name(CaseKind k) {
    switch (k) {
        case CaseKind::FixedLength: return "FixedLength";
        case CaseKind::LinearLength: return "LinearLength";
        case CaseKind::SqrtLength: return "SqrtLength";
        case CaseKind::QuadNeg: return "QuadNeg";
        case CaseKind::QuadPos: return "QuadPos";
        case CaseKind::CriticalCase: return "CriticalCase";
        case CaseKind::General: return "General";
    }
    return "General";
}

SeparableParams SeparableParams::fixed(double L0, double gamma1, double c, double d) {
    return {0.0, 0.0, L0, gamma1, c, d};
}

SeparableParams SeparableParams::linear(double L0, double alpha, double gamma1, double c, double d) {
    return {alpha * alpha, alpha * L0, L0, gamma1, c, d};
}

SeparableParams SeparableParams::sqrt_length(double L0, double rho, double gamma1, double c, double d) {
    return {0.0, rho, L0, gamma1, c, d};
}

double EtaSpec::value(double t) const { return eta0 + k * std::pow(1.0 + t, p); }
double EtaSpec::d1(double t) const { return k * p * std::pow(1.0 + t, p - 1.0); }
double EtaSpec::d2(double t) const { return k * p * (p - 1.0) * std::pow(1.0 + t, p - 2.0); }
double EtaSpec::d3(double t) const {
    return k * p * (p - 1.0) * (p - 2.0) * std::pow(1.0 + t, p - 3.0);
}

namespace {

bool finite_all(std::initializer_list<double> xs) {
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

CaseTag classify_separable(const SeparableParams& p) {
    if (p.a == 0.0) {
        if (p.b == 0.0) return {CaseKind::FixedLength, 0.0};
        return {CaseKind::SqrtLength, -p.b * p.b};
    }
    const double aL = p.a * p.L0 * p.L0;
    const double g0 = aL - p.b * p.b;
    if (std::abs(g0) < 1e-12 * std::max(std::abs(aL), p.b * p.b)) return {CaseKind::LinearLength, 0.0};
    return {g0 < 0.0 ? CaseKind::QuadNeg : CaseKind::QuadPos, g0};
}

double separable_horizon(const SeparableParams& p, CaseKind kind) {
    const double inf = std::numeric_limits<double>::infinity();
    switch (kind) {
        case CaseKind::FixedLength: return inf;
        case CaseKind::SqrtLength: return p.b < 0.0 ? -p.L0 * p.L0 / (2.0 * p.b) : inf;
        case CaseKind::LinearLength: {
            const double alpha = p.b / p.L0;
            return alpha < 0.0 ? -p.L0 / alpha : inf;
        }
        case CaseKind::QuadPos: return inf;  // a > 0 and no real roots
        case CaseKind::QuadNeg: {
            const double disc = p.b * p.b - p.a * p.L0 * p.L0;
            const double q = -(p.b + std::copysign(std::sqrt(disc), p.b));
            double best = inf;
            for (double r : {q / p.a, p.L0 * p.L0 / q})
                if (r > 0.0 && r < best) best = r;
            return best;
        }
        default: return inf;
    }
}

// coefficients of the quintic Hermite interpolant in u = (t - t0)/h
void quintic(double h, double f0, double d0, double s0, double f1, double d1, double s1, double c[6]) {
    c[0] = f0;
    c[1] = h * d0;
    c[2] = 0.5 * h * h * s0;
    const double pp = f1 - (c[0] + c[1] + c[2]);
    const double q = h * d1 - (c[1] + 2.0 * c[2]);
    const double r = h * h * s1 - 2.0 * c[2];
    c[3] = 10.0 * pp - 4.0 * q + 0.5 * r;
    c[4] = -15.0 * pp + 7.0 * q - r;
    c[5] = 6.0 * pp - 3.0 * q + 0.5 * r;
}

// value and first three t-derivatives
void quintic_eval(const double c[6], double u, double h, double out[4]) {
    out[0] = c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * (c[4] + u * c[5]))));
    out[1] = (c[1] + u * (2 * c[2] + u * (3 * c[3] + u * (4 * c[4] + u * 5 * c[5])))) / h;
    out[2] = (2 * c[2] + u * (6 * c[3] + u * (12 * c[4] + u * 20 * c[5]))) / (h * h);
    out[3] = (6 * c[3] + u * (24 * c[4] + u * 60 * c[5])) / (h * h * h);
}

// three-point derivative estimates on a non-uniform grid
std::vector<double> fd_derivative(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0);
    if (n < 3) {
        const double s = (f[n - 1] - f[0]) / (x[n - 1] - x[0]);
        std::fill(d.begin(), d.end(), s);
        return d;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t m = std::clamp<std::size_t>(j, 1, n - 2);
        const double h1 = x[m] - x[m - 1], h2 = x[m + 1] - x[m];
        const double f0 = f[m - 1], f1 = f[m], f2 = f[m + 1];
        if (j == m)
            d[j] = -h2 / (h1 * (h1 + h2)) * f0 + (h2 - h1) / (h1 * h2) * f1 + h1 / (h2 * (h1 + h2)) * f2;
        else if (j < m)
            d[j] = -(2 * h1 + h2) / (h1 * (h1 + h2)) * f0 + (h1 + h2) / (h1 * h2) * f1 - h1 / (h2 * (h1 + h2)) * f2;
        else
            d[j] = h2 / (h1 * (h1 + h2)) * f0 - (h1 + h2) / (h1 * h2) * f1 + (2 * h2 + h1) / (h2 * (h1 + h2)) * f2;
    }
    return d;
}

// corrected trapezoid: f(b) - f(a) against h/2 (f'_a + f'_b) + h^2/12 (f''_a - f''_b)
void check_level(const std::vector<double>& t, const std::vector<double>& f, const std::vector<double>& df,
                 const std::vector<double>& ddf, const std::string& what) {
    double fscale = 1.0, dscale = 0.0;
    for (double v : f) fscale = std::max(fscale, std::abs(v));
    for (double v : df) dscale = std::max(dscale, std::abs(v));
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
        const double h = t[j + 1] - t[j];
        const double est = 0.5 * h * (df[j] + df[j + 1]) + h * h / 12.0 * (ddf[j] - ddf[j + 1]);
        const double diff = f[j + 1] - f[j];
        const double scale = std::max({std::abs(diff), h * dscale, 1e-12 * fscale});
        if (std::abs(est - diff) > 1e-6 * scale)
            throw InvalidArgument("tabulated motion: " + what + " near t = " + std::to_string(t[j]));
    }
}

void check_consistency(const std::vector<double>& t, const std::vector<double>& f,
                       const std::vector<double>& df, const std::vector<double>& ddf, const char* name) {
    check_level(t, f, df, ddf, std::string(name) + " inconsistent with its derivatives");
    check_level(t, df, ddf, fd_derivative(t, ddf),
                std::string("first derivative of ") + name + " inconsistent with the second");
}

}  // namespace

BoundaryMotion BoundaryMotion::separable(const SeparableParams& p) {
    if (!finite_all({p.a, p.b, p.L0, p.gamma1, p.c, p.d}))
        throw InvalidArgument("separable motion: parameters must be finite");
    if (!(p.L0 > 0.0)) throw InvalidArgument("separable motion: L0 must be positive");
    BoundaryMotion m;
    m.data_ = p;
    m.tag_ = classify_separable(p);
    m.horizon_ = separable_horizon(p, m.tag_.kind);
    return m;
}

BoundaryMotion BoundaryMotion::critical(const CriticalParams& p, const PhysicsParams& phys) {
    if (!finite_all({p.alpha, p.eta.eta0, p.eta.k, p.eta.p, p.L0_offset}))
        throw InvalidArgument("critical motion: parameters must be finite");
    if (!(p.L0_offset > 0.0)) throw InvalidArgument("critical motion: L0_offset must be positive");
    if (p.eta.k != 0.0 && !(p.eta.p < 0.0)) throw InvalidArgument("critical motion: eta exponent p must be negative");
    PhysicsParams::make(phys.D, phys.f0);
    BoundaryMotion m;
    m.data_ = p;
    m.tag_ = {CaseKind::CriticalCase, std::numeric_limits<double>::quiet_NaN()};
    m.c_star_ = phys.c_star();
    m.horizon_ = std::numeric_limits<double>::infinity();
    // L grows linearly for large t; scan geometrically for a sign change
    auto Lf = [&](double t) { return m.critical_state(t).L; };
    double prev = 0.0;
    for (double t = 1e-8; t < 1e15; t *= 1.01) {
        if (Lf(t) <= 0.0) {
            double lo = prev, hi = t;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                (Lf(mid) > 0.0 ? lo : hi) = mid;
            }
            m.horizon_ = hi;
            break;
        }
        prev = t;
    }
    return m;
}

BoundaryMotion BoundaryMotion::tabulated(const TabulatedParams& p) {
    const std::size_t n = p.t.size();
    if (n < 2) throw InvalidArgument("tabulated motion: need at least two samples");
    for (const auto* v : {&p.A, &p.Adot, &p.Addot, &p.L, &p.Ldot, &p.Lddot})
        if (v->size() != n) throw InvalidArgument("tabulated motion: sample arrays differ in length");
    if (p.t[0] != 0.0) throw InvalidArgument("tabulated motion: first sample must be at t = 0");
    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0 && !(p.t[j] > p.t[j - 1])) throw InvalidArgument("tabulated motion: times must increase");
        if (!finite_all({p.A[j], p.Adot[j], p.Addot[j], p.L[j], p.Ldot[j], p.Lddot[j]}))
            throw InvalidArgument("tabulated motion: samples must be finite");
        if (!(p.L[j] > 0.0)) throw InvalidArgument("tabulated motion: L must stay positive");
    }
    check_consistency(p.t, p.L, p.Ldot, p.Lddot, "L");
    check_consistency(p.t, p.A, p.Adot, p.Addot, "A");

    BoundaryMotion m;
    Tab tab;
    tab.p = p;
    tab.cum_s.assign(n, 0.0);
    tab.cum_adot2.assign(n, 0.0);
    tab.cum_ldot2.assign(n, 0.0);
    m.data_ = std::move(tab);
    m.tag_ = {CaseKind::General, std::numeric_limits<double>::quiet_NaN()};
    m.horizon_ = p.t.back();
    auto& t = std::get<Tab>(m.data_);
    const double L0 = p.L[0];
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double a = p.t[j], b = p.t[j + 1];
        auto fs = [&](double x) {
            const double L = m.tabulated_state(x).L;
            return L0 * L0 / (L * L);
        };
        auto fa = [&](double x) {
            const double v = m.tabulated_state(x).Adot;
            return v * v;
        };
        t.cum_s[j + 1] = t.cum_s[j] + integrate_checked(fs, a, b, {1e-14, 1e-14, 200});
        auto fl = [&](double x) {
            const double v = m.tabulated_state(x).Ldot;
            return v * v;
        };
        t.cum_adot2[j + 1] = t.cum_adot2[j] + integrate_checked(fa, a, b, {1e-14, 1e-14, 200});
        t.cum_ldot2[j + 1] = t.cum_ldot2[j] + integrate_checked(fl, a, b, {1e-14, 1e-14, 200});
    }
    return m;
}

Family BoundaryMotion::family() const {
    switch (data_.index()) {
        case 0: return Family::Separable;
        case 1: return Family::Critical;
        default: return Family::Tabulated;
    }
}

const SeparableParams& BoundaryMotion::separable_params() const {
    if (auto* p = std::get_if<SeparableParams>(&data_)) return *p;
    throw InvalidArgument("motion is not separable");
}

const CriticalParams& BoundaryMotion::critical_params() const {
    if (auto* p = std::get_if<CriticalParams>(&data_)) return *p;
    throw InvalidArgument("motion is not critical");
}

const TabulatedParams& BoundaryMotion::tabulated_params() const {
    if (auto* p = std::get_if<Tab>(&data_)) return p->p;
    throw InvalidArgument("motion is not tabulated");
}

double BoundaryMotion::critical_c_star() const {
    critical_params();
    return c_star_;
}

double BoundaryMotion::L0() const {
    switch (family()) {
        case Family::Separable: return std::get<SeparableParams>(data_).L0;
        case Family::Critical: return std::get<CriticalParams>(data_).L0_offset;
        default: return std::get<Tab>(data_).p.L[0];
    }
}

void BoundaryMotion::check_time(double t) const {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("motion: time must be finite and non-negative");
    if (family() == Family::Tabulated) {
        if (t > horizon_) throw InvalidArgument("motion: time beyond the tabulated range");
        return;
    }
    if (t >= horizon_) throw DomainCollapsed(t, horizon_);
}

MotionState BoundaryMotion::separable_state(double t) const {
    const auto& p = std::get<SeparableParams>(data_);
    MotionState st;
    st.t = t;
    const double L0 = p.L0;
    switch (tag_.kind) {
        case CaseKind::FixedLength:
            st.L = L0;
            st.Ldot = 0.0;
            st.Lddot = 0.0;
            st.A = p.gamma1 * t * t / (2.0 * L0 * L0 * L0) + p.c * t + p.d;
            st.Adot = p.gamma1 * t / (L0 * L0 * L0) + p.c;
            st.Addot = p.gamma1 / (L0 * L0 * L0);
            break;
        case CaseKind::LinearLength: {
            const double alpha = p.b / L0;
            st.L = L0 + alpha * t;
            st.Ldot = alpha;
            st.Lddot = 0.0;
            st.A = p.gamma1 / (2.0 * alpha * alpha * st.L) + p.c * t + p.d;
            st.Adot = -p.gamma1 / (2.0 * alpha * st.L * st.L) + p.c;
            st.Addot = p.gamma1 / (st.L * st.L * st.L);
            break;
        }
        default: {
            const double g0 = tag_.gamma0;
            const double L2 = (p.a * t + 2.0 * p.b) * t + L0 * L0;
            st.L = std::sqrt(L2);
            st.Ldot = (p.a * t + p.b) / st.L;
            st.Lddot = g0 / (L2 * st.L);
            const double r = p.gamma1 / g0;
            st.A = r * st.L + p.c * t + p.d;
            st.Adot = r * st.Ldot + p.c;
            st.Addot = p.gamma1 / (L2 * st.L);
            break;
        }
    }
    return st;
}

MotionState BoundaryMotion::critical_state(double t) const {
    const auto& p = std::get<CriticalParams>(data_);
    MotionState st;
    st.t = t;
    const double lp = std::log1p(t);
    const double deta = p.eta.k * std::expm1(p.eta.p * lp);  // eta(t) - eta(0)
    st.L = p.L0_offset + 2.0 * (c_star_ * t - p.alpha * lp - deta);
    st.Ldot = 2.0 * (c_star_ - p.alpha / (1.0 + t) - p.eta.d1(t));
    st.Lddot = 2.0 * (p.alpha / ((1.0 + t) * (1.0 + t)) - p.eta.d2(t));
    st.A = -0.5 * st.L;
    st.Adot = -0.5 * st.Ldot;
    st.Addot = -0.5 * st.Lddot;
    return st;
}

MotionState BoundaryMotion::tabulated_state(double t, double* jerk) const {
    const auto& tab = std::get<Tab>(data_).p;
    const auto& ts = tab.t;
    std::size_t j = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
    j = j == 0 ? 0 : j - 1;
    if (j + 1 >= ts.size()) j = ts.size() - 2;
    const double h = ts[j + 1] - ts[j];
    const double u = (t - ts[j]) / h;
    double c[6], out[4];
    MotionState st;
    st.t = t;
    quintic(h, tab.L[j], tab.Ldot[j], tab.Lddot[j], tab.L[j + 1], tab.Ldot[j + 1], tab.Lddot[j + 1], c);
    quintic_eval(c, u, h, out);
    st.L = out[0];
    st.Ldot = out[1];
    st.Lddot = out[2];
    if (jerk) *jerk = out[3];
    quintic(h, tab.A[j], tab.Adot[j], tab.Addot[j], tab.A[j + 1], tab.Adot[j + 1], tab.Addot[j + 1], c);
    quintic_eval(c, u, h, out);
    st.A = out[0];
    st.Adot = out[1];
    st.Addot = out[2];
    return st;
}

MotionState BoundaryMotion::kinematics(double t) const {
    check_time(t);
    switch (family()) {
        case Family::Separable: return separable_state(t);
        case Family::Critical: return critical_state(t);
        default: return tabulated_state(t);
    }
}

double BoundaryMotion::Ldddot(double t) const {
    check_time(t);
    switch (family()) {
        case Family::Separable: {
            if (tag_.kind == CaseKind::FixedLength || tag_.kind == CaseKind::LinearLength) return 0.0;
            const MotionState st = separable_state(t);
            const double L2 = st.L * st.L;
            return -3.0 * tag_.gamma0 * st.Ldot / (L2 * L2);
        }
        case Family::Critical: {
            const auto& p = std::get<CriticalParams>(data_);
            const double q = 1.0 + t;
            return 2.0 * (-2.0 * p.alpha / (q * q * q) - p.eta.d3(t));
        }
        default: {
            double jerk = 0.0;
            tabulated_state(t, &jerk);
            return jerk;
        }
    }
}

double BoundaryMotion::s(double t) const {
    check_time(t);
    switch (family()) {
        case Family::Separable: {
            const auto& p = std::get<SeparableParams>(data_);
            const double L0 = p.L0, L02 = L0 * L0;
            switch (tag_.kind) {
                case CaseKind::FixedLength: return t;
                case CaseKind::LinearLength: {
                    const double alpha = p.b / L0;
                    return L0 * t / (L0 + alpha * t);
                }
                case CaseKind::SqrtLength: return L02 / (2.0 * p.b) * std::log1p(2.0 * p.b * t / L02);
                case CaseKind::QuadPos: {
                    const double sg = std::sqrt(tag_.gamma0);
                    return L02 / sg * std::atan2(sg * t, L02 + p.b * t);
                }
                case CaseKind::QuadNeg: {
                    const double k = std::sqrt(-tag_.gamma0);
                    const double aL = p.a * L02;
                    double bm, bp;  // b - k, b + k, with b^2 - k^2 = a L0^2
                    if (p.b > 0.0) {
                        bp = p.b + k;
                        bm = aL / bp;
                    } else if (p.b < 0.0) {
                        bm = p.b - k;
                        bp = aL / bm;
                    } else {
                        bm = -k;
                        bp = k;
                    }
                    return L02 / (2.0 * k) * (std::log1p(p.a * t / bm) - std::log1p(p.a * t / bp));
                }
                default: break;
            }
            return std::numeric_limits<double>::quiet_NaN();
        }
        case Family::Critical: {
            const double L0 = this->L0();
            auto f = [&](double x) {
                const double L = critical_state(x).L;
                return L0 * L0 / (L * L);
            };
            return integrate_checked(f, 0.0, t, {1e-13, 1e-13, 4000});
        }
        default: {
            const auto& tab = std::get<Tab>(data_);
            const auto& ts = tab.p.t;
            std::size_t j = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
            j = j == 0 ? 0 : j - 1;
            if (t == ts[j]) return tab.cum_s[j];
            const double L0 = tab.p.L[0];
            auto f = [&](double x) {
                const double L = tabulated_state(x).L;
                return L0 * L0 / (L * L);
            };
            return tab.cum_s[j] + integrate_checked(f, ts[j], t, {1e-14, 1e-14, 200});
        }
    }
}

double BoundaryMotion::critical_g_integrals(double t, double* g2) const {
    // g = alpha/(1+t) + eta'(t); returns int g, stores int g^2
    const auto& p = std::get<CriticalParams>(data_);
    const double lp = std::log1p(t);
    const double k = p.eta.k, pe = p.eta.p;
    const double G = p.alpha * lp + k * std::expm1(pe * lp);
    double G2 = p.alpha * p.alpha * t / (1.0 + t);
    if (k != 0.0) {
        G2 += 2.0 * p.alpha * k * pe / (pe - 1.0) * std::expm1((pe - 1.0) * lp);
        G2 += k * k * pe * pe / (2.0 * pe - 1.0) * std::expm1((2.0 * pe - 1.0) * lp);
    }
    *g2 = G2;
    return G;
}

double BoundaryMotion::adot_sq_integral(double t) const {
    check_time(t);
    switch (family()) {
        case Family::Separable: {
            const auto& p = std::get<SeparableParams>(data_);
            const double L0 = p.L0;
            const double c = p.c, g1 = p.gamma1;
            switch (tag_.kind) {
                case CaseKind::FixedLength: {
                    const double L3 = L0 * L0 * L0;
                    return g1 * g1 * t * t * t / (3.0 * L3 * L3) + c * g1 * t * t / L3 + c * c * t;
                }
                case CaseKind::LinearLength: {
                    const double alpha = p.b / L0;
                    const double L = L0 + alpha * t;
                    const double inv3 = (1.0 / (L0 * L0 * L0) - 1.0 / (L * L * L));
                    return c * c * t - c * g1 * t / (alpha * L0 * L) +
                           g1 * g1 / (12.0 * alpha * alpha * alpha) * inv3;
                }
                default: {
                    const double r = g1 / tag_.gamma0;
                    const MotionState st = separable_state(t);
                    return r * r * (p.a * t - tag_.gamma0 * s(t) / (L0 * L0)) + 2.0 * c * r * (st.L - L0) +
                           c * c * t;
                }
            }
        }
        case Family::Critical: {
            double G2 = 0.0;
            const double G = critical_g_integrals(t, &G2);
            return c_star_ * c_star_ * t - 2.0 * c_star_ * G + G2;
        }
        default: {
            const auto& tab = std::get<Tab>(data_);
            const auto& ts = tab.p.t;
            std::size_t j = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
            j = j == 0 ? 0 : j - 1;
            if (t == ts[j]) return tab.cum_adot2[j];
            auto f = [&](double x) {
                const double v = tabulated_state(x).Adot;
                return v * v;
            };
            return tab.cum_adot2[j] + integrate_checked(f, ts[j], t, {1e-14, 1e-14, 200});
        }
    }
}

double BoundaryMotion::ldot_sq_integral(double t) const {
    check_time(t);
    switch (family()) {
        case Family::Separable: {
            const auto& p = std::get<SeparableParams>(data_);
            switch (tag_.kind) {
                case CaseKind::FixedLength: return 0.0;
                case CaseKind::LinearLength: return p.b * p.b / (p.L0 * p.L0) * t;
                default: return p.a * t - tag_.gamma0 * s(t) / (p.L0 * p.L0);
            }
        }
        case Family::Critical: return 4.0 * adot_sq_integral(t);
        default: {
            const auto& tab = std::get<Tab>(data_);
            const auto& ts = tab.p.t;
            std::size_t j = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
            j = j == 0 ? 0 : j - 1;
            if (t == ts[j]) return tab.cum_ldot2[j];
            auto f = [&](double x) {
                const double v = tabulated_state(x).Ldot;
                return v * v;
            };
            return tab.cum_ldot2[j] + integrate_checked(f, ts[j], t, {1e-14, 1e-14, 200});
        }
    }
}

double BoundaryMotion::log_growth(double t, const PhysicsParams& phys) const {
    if (family() == Family::Critical) {
        check_time(t);
        if (std::abs(phys.c_star() - c_star_) > 1e-12 * c_star_)
            throw InvalidArgument("critical motion was built for different physics parameters");
        double G2 = 0.0;
        const double G = critical_g_integrals(t, &G2);
        return (2.0 * c_star_ * G - G2) / (4.0 * phys.D);
    }
    return phys.f0 * t - adot_sq_integral(t) / (4.0 * phys.D);
}

bool BoundaryMotion::is_symmetric(double tol) const {
    if (family() == Family::Critical) return true;
    const double T = std::isfinite(horizon_) ? horizon_ : 10.0;
    for (int i = 0; i <= 16; ++i) {
        const double t = (family() == Family::Tabulated ? T : 0.999 * T) * i / 16.0;
        const MotionState st = kinematics(t);
        if (std::abs(st.A + 0.5 * st.L) > tol * std::max(1.0, st.L)) return false;
        if (std::abs(st.Adot + 0.5 * st.Ldot) > tol * std::max(1.0, std::abs(st.Ldot))) return false;
    }
    return true;
}

CaseTag classify(const BoundaryMotion& m) {
    if (m.family() == Family::Tabulated) throw Unclassifiable("tabulated motion cannot be classified: General");
    return m.tag();
}

MotionState eval_motion(const BoundaryMotion& m, double t) {
    MotionState st = m.kinematics(t);
    st.s = m.s(t);
    return st;
}

double time_rescale(const BoundaryMotion& m, double t) { return m.s(t); }

double validity_horizon(const BoundaryMotion& m) { return m.horizon(); }

double time_rescale_quadrature(const BoundaryMotion& m, double t) {
    m.kinematics(t);
    const double L0 = m.L0();
    auto f = [&](double x) {
        const double L = m.kinematics(x).L;
        return L0 * L0 / (L * L);
    };
    return integrate_checked(f, 0.0, t, {1e-13, 1e-13, 4000});
}

double adot_sq_integral_quadrature(const BoundaryMotion& m, double t) {
    m.kinematics(t);
    auto f = [&](double x) {
        const double v = m.kinematics(x).Adot;
        return v * v;
    };
    return integrate_checked(f, 0.0, t, {1e-13, 1e-13, 4000});
}

}  // namespace growdiff
