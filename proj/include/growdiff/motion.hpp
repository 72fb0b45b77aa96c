#pragma once

#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "growdiff/physics.hpp"

namespace growdiff {

enum class CaseKind { FixedLength, LinearLength, SqrtLength, QuadNeg, QuadPos, CriticalCase, General };

const char* case_name(CaseKind k);

struct CaseTag {
    CaseKind kind = CaseKind::General;
    double gamma0 = std::numeric_limits<double>::quiet_NaN();  // a L0^2 - b^2, separable only
};

// L^2 = a t^2 + 2 b t + L0^2, A from the per-case antiderivative of Addot = gamma1 / L^3
struct SeparableParams {
    double a = 0.0;
    double b = 0.0;
    double L0 = 1.0;
    double gamma1 = 0.0;
    double c = 0.0;
    double d = 0.0;

    static SeparableParams fixed(double L0, double gamma1 = 0.0, double c = 0.0, double d = 0.0);
    static SeparableParams linear(double L0, double alpha, double gamma1 = 0.0, double c = 0.0,
                                  double d = 0.0);
    static SeparableParams sqrt_length(double L0, double rho, double gamma1 = 0.0, double c = 0.0,
                                       double d = 0.0);
};

// eta(t) = eta0 + k (1+t)^p, p < 0
struct EtaSpec {
    double eta0 = 0.0;
    double k = 0.0;
    double p = -1.0;

    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;
    double d3(double t) const;
};

// symmetric interval of length L(t) = L0_offset + 2 (c* t - alpha log(1+t) - (eta(t) - eta(0))),
// A = -L/2
struct CriticalParams {
    double alpha = 0.0;
    EtaSpec eta;
    double L0_offset = 1.0;
};

struct TabulatedParams {
    std::vector<double> t;
    std::vector<double> A, Adot, Addot;
    std::vector<double> L, Ldot, Lddot;
};

struct MotionState {
    double t = 0.0;
    double L = 0.0, Ldot = 0.0, Lddot = 0.0;
    double A = 0.0, Adot = 0.0, Addot = 0.0;
    double s = std::numeric_limits<double>::quiet_NaN();
};

enum class Family { Separable, Critical, Tabulated };

class BoundaryMotion {
public:
    static BoundaryMotion separable(const SeparableParams& p);
    static BoundaryMotion critical(const CriticalParams& p, const PhysicsParams& phys);
    static BoundaryMotion tabulated(const TabulatedParams& p);

    Family family() const;
    const SeparableParams& separable_params() const;
    const CriticalParams& critical_params() const;
    const TabulatedParams& tabulated_params() const;
    double critical_c_star() const;

    double L0() const;
    double horizon() const { return horizon_; }
    // case of a separable/critical motion; General for tabulated
    CaseTag tag() const { return tag_; }

    // kinematics without s
    MotionState kinematics(double t) const;
    double Ldddot(double t) const;
    // s(t) = int_0^t L0^2/L^2
    double s(double t) const;
    // int_0^t Adot^2
    double adot_sq_integral(double t) const;
    // int_0^t Ldot^2
    double ldot_sq_integral(double t) const;
    // f0 t - int_0^t Adot^2 / (4D)
    double log_growth(double t, const PhysicsParams& phys) const;

    bool is_symmetric(double tol = 1e-12) const;

private:
    struct Tab {
        TabulatedParams p;
        std::vector<double> cum_s, cum_adot2, cum_ldot2;
    };
    std::variant<SeparableParams, CriticalParams, Tab> data_;
    CaseTag tag_;
    double horizon_ = std::numeric_limits<double>::infinity();
    double c_star_ = 0.0;

    void check_time(double t) const;
    MotionState separable_state(double t) const;
    MotionState critical_state(double t) const;
    MotionState tabulated_state(double t, double* jerk = nullptr) const;
    double critical_g_integrals(double t, double* g2) const;
};

CaseTag classify(const BoundaryMotion& m);
MotionState eval_motion(const BoundaryMotion& m, double t);
double time_rescale(const BoundaryMotion& m, double t);
double validity_horizon(const BoundaryMotion& m);

// quadrature references for the closed forms
double time_rescale_quadrature(const BoundaryMotion& m, double t);
double adot_sq_integral_quadrature(const BoundaryMotion& m, double t);

}  // namespace growdiff
