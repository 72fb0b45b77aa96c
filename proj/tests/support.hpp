#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "growdiff/motion.hpp"

namespace growdiff::testing {

inline constexpr double pi = 3.14159265358979323846;

struct NamedParams {
    std::string name;
    SeparableParams p;
};

// one parameter set per separable family, both signs where the family has two branches
inline std::vector<NamedParams> family_params(double L0 = pi) {
    return {
        {"fixed c=1 gamma1=0.5", SeparableParams::fixed(L0, 0.5, 1.0)},
        {"linear alpha=0.5", SeparableParams::linear(L0, 0.5)},
        {"linear alpha=-0.3", SeparableParams::linear(L0, -0.3)},
        {"sqrt rho=1", SeparableParams::sqrt_length(L0, 1.0)},
        {"sqrt rho=-0.5", SeparableParams::sqrt_length(L0, -0.5)},
        {"quadneg a=-0.1 b=0.2", SeparableParams{-0.1, 0.2, L0, 0.0, 0.0, 0.0}},
        {"quadpos a=0.5 b=0.3", SeparableParams{0.5, 0.3, L0, 0.0, 0.0, 0.0}},
    };
}

// the same families with nonzero gamma1, c and d
inline std::vector<NamedParams> family_params_full(double L0 = pi) {
    return {
        {"fixed", SeparableParams::fixed(L0, 0.7, -0.4, 0.3)},
        {"linear+", SeparableParams::linear(L0, 0.6, 0.3, 0.2, -0.1)},
        {"linear-", SeparableParams::linear(L0, -0.25, -0.4, 0.5, 0.2)},
        {"sqrt+", SeparableParams::sqrt_length(L0, 0.8, 0.5, -0.3, 0.1)},
        {"sqrt-", SeparableParams::sqrt_length(L0, -0.6, -0.2, 0.4, 0.0)},
        {"quadneg", SeparableParams{-0.1, 0.2, L0, 0.3, -0.2, 0.4}},
        {"quadneg b<0", SeparableParams{0.05, -0.9, L0, -0.3, 0.1, 0.0}},
        {"quadpos", SeparableParams{0.5, 0.3, L0, -0.6, 0.3, -0.2}},
    };
}

inline double end_time(const BoundaryMotion& m, double cap = 5.0) {
    return std::isfinite(m.horizon()) ? std::min(cap, 0.8 * m.horizon()) : cap;
}

// L = L0 + t + sin(t)/10, A = c t, sampled every h on [0, T]
inline BoundaryMotion perturbed_motion(double L0, double c, double T, double h = 0.01) {
    TabulatedParams p;
    const int n = static_cast<int>(std::round(T / h));
    for (int j = 0; j <= n; ++j) {
        const double t = T * j / n;
        p.t.push_back(t);
        p.L.push_back(L0 + t + 0.1 * std::sin(t));
        p.Ldot.push_back(1.0 + 0.1 * std::cos(t));
        p.Lddot.push_back(-0.1 * std::sin(t));
        p.A.push_back(c * t);
        p.Adot.push_back(c);
        p.Addot.push_back(0.0);
    }
    return BoundaryMotion::tabulated(p);
}

inline bool close_rel(double a, double b, double tol, double floor = 0.0) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace growdiff::testing
