#include "growdiff/airy.hpp"

#include <cmath>

#include "growdiff/errors.hpp"

namespace growdiff {

namespace {

// Ai(0) and -Ai'(0)
constexpr double k_c1 = 0.355028053887817239260063186004183;
constexpr double k_c2 = 0.258819403792806798405183560189204;
constexpr double k_pi = 3.14159265358979323846264338327950;

constexpr double k_series_hi = 5.5;
constexpr double k_series_lo = -8.0;

}  // namespace

AiryValue airy_series(double x) {
    const double x3 = x * x * x;
    double f = 1.0, g = x, fp = 0.0, gp = 1.0;
    double tf = 1.0, tg = x, tfp = 0.5 * x * x, tgp = 1.0;
    fp = tfp;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0 * k - 1.0) * (3.0 * k));
        tg *= x3 / ((3.0 * k) * (3.0 * k + 1.0));
        if (k >= 2) {
            tfp *= x3 / ((3.0 * k - 1.0) * (3.0 * k - 3.0));
            fp += tfp;
        }
        tgp *= x3 / ((3.0 * k) * (3.0 * k - 2.0));
        f += tf;
        g += tg;
        gp += tgp;
        const double eps = 1e-18;
        if (std::abs(tf) <= eps * std::abs(f) && std::abs(tg) <= eps * std::abs(g) &&
            std::abs(tfp) <= eps * std::abs(fp) && std::abs(tgp) <= eps * std::abs(gp))
            break;
    }
    return {x, k_c1 * f - k_c2 * g, k_c1 * fp - k_c2 * gp};
}

AiryValue airy_asymptotic(double x) {
    if (x > 0.0) {
        const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
        double su = 1.0, sv = 1.0, u = 1.0, term_prev = 1.0;
        double zpow = 1.0;
        for (int k = 1; k < 60; ++k) {
            u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
            const double v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
            zpow *= -zeta;
            const double tu = u / zpow, tv = v / zpow;
            if (std::abs(tu) > term_prev) break;  // optimal truncation
            su += tu;
            sv += tv;
            term_prev = std::abs(tu);
            if (term_prev < 1e-18) break;
        }
        const double e = std::exp(-zeta) / (2.0 * std::sqrt(k_pi));
        const double q = std::sqrt(std::sqrt(x));
        return {x, e / q * su, -e * q * sv};
    }
    const double z = -x;
    const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
    double pe = 0.0, po = 0.0, qe = 0.0, qo = 0.0;  // even/odd parts for Ai and Ai'
    double u = 1.0, zpow = 1.0, prev = 2.0;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
            zpow *= zeta;
        }
        const double v = k == 0 ? 1.0 : -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u;
        const double tu = u / zpow, tv = v / zpow;
        if (std::abs(tu) > prev) break;
        prev = std::abs(tu);
        const double sgn = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        if (k % 2 == 0) {
            pe += sgn * tu;
            qe += sgn * tv;
        } else {
            po += sgn * tu;
            qo += sgn * tv;
        }
        if (prev < 1e-18) break;
    }
    const double th = zeta - k_pi / 4.0;
    const double q = std::sqrt(std::sqrt(z));
    const double sp = 1.0 / std::sqrt(k_pi);
    return {x, sp / q * (std::cos(th) * pe + std::sin(th) * po),
            sp * q * (std::sin(th) * qe - std::cos(th) * qo)};
}

AiryValue airy_ai(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("airy_ai: argument must be finite");
    if (x > k_series_hi || x < k_series_lo) return airy_asymptotic(x);
    return airy_series(x);
}

double airy_first_zero() {
    static const double c1 = [] {
        double lo = -2.4, hi = -2.3;  // Ai(lo) < 0 < Ai(hi)
        for (int i = 0; i < 30; ++i) {
            const double mid = 0.5 * (lo + hi);
            (airy_series(mid).ai > 0.0 ? hi : lo) = mid;
        }
        double x = 0.5 * (lo + hi);
        for (int i = 0; i < 8; ++i) {
            const AiryValue v = airy_series(x);
            const double dx = v.ai / v.aip;
            x -= dx;
            if (std::abs(dx) < 1e-17) break;
        }
        return x;
    }();
    return c1;
}

}  // namespace growdiff
