#pragma once

#include <string>
#include <vector>

#include "growdiff/exact.hpp"
#include "growdiff/motion.hpp"
#include "growdiff/numeric.hpp"
#include "growdiff/physics.hpp"

namespace growdiff {

// Ai(0)/Ai'(0) + first zero of Ai, about -3.7098
double subsolution_rate_constant();

// P = Lddot L^3 / 4D^2, or for a ball (m the diameter motion) Q = Rddot R^3 / 4D^2 = P/16
struct PotentialTrace {
    double t = 0.0;
    double P = 0.0;
    double Pdot = 0.0;
};

PotentialTrace potential(const BoundaryMotion& m, const PhysicsParams& phys, double t, bool radial = false);

// first time after which Pdot >= 0 on [.., t_max], found by sampling then bisection
double pdot_onset(const BoundaryMotion& m, const PhysicsParams& phys, double t_max);

// sin(pi xi/L0) exp(-D pi^2 s(t)/L0^2); needs P >= 0 on [0, t]
double supersolution(const BoundaryMotion& m, const PhysicsParams& phys, double xi, double t);

// three-region Airy profile without the a(t) factor
double subsolution_profile(double P, double xi, double L0);

// log a(t) = K int_{t_ref}^t D P^{2/3} / L^2
double subsolution_log_a(const BoundaryMotion& m, const PhysicsParams& phys, double t_ref, double t);

// profile times a(t); needs P > 0 and Pdot >= 0 at t
double subsolution(const BoundaryMotion& m, const PhysicsParams& phys, double xi, double t, double t_ref = 0.0);

// true when the support of the subsolution lies inside the domain (1D: [0, L0], ball: [0, R0])
bool subsolution_support_fits(const BoundaryMotion& m, const PhysicsParams& phys, double t, bool radial = false);

// h0(r/R0) exp(-D lambda0 s/R0^2); m is the diameter motion
double radial_supersolution(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim, double r, double t);

// 1D subsolution at xi = R0 - r with L = 2R, L0 = 2R0, over r^{(n-1)/2}; n_dim <= 3
double radial_subsolution(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim, double r, double t,
                          double t_ref = 0.0);

struct EnvelopeRow {
    double t = 0.0, xi = 0.0;
    double sub = 0.0, w = 0.0, super = 0.0;
    double slack = 0.0;  // min(w - C1 sub, C2 super - w) / max|w(., t)|
};

struct EnvelopePair {
    int n_dim = 1;
    double onset = 0.0;
    double t_cal = 0.0;
    double C1 = 0.0, C2 = 0.0;
    double worst_slack = 0.0;
    double worst_xi = 0.0, worst_t = 0.0;
    std::vector<EnvelopeRow> rows;
    bool ok(double tol = 1e-8) const { return worst_slack >= -tol; }
};

struct EnvelopeOptions {
    double tol = 1e-8;
    bool throw_on_violation = true;
    bool keep_rows = true;
    bool check_sub = true;
};

// w (or radial W) from solve_w / solve_radial on the same motion
EnvelopePair verify_envelope(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w,
                             const EnvelopeOptions& opts = {});

struct CriticalRunOptions {
    int grid_size = 1024;
    StepControl step{1e-4, 1e-3};
    double T = 1e3;
    double t_first = 1.0;     // first logarithmic output time
    int outputs_per_decade = 20;
};

// transformed numeric solution from the positive principal-mode shape
GridSolution run_critical(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim,
                          const CriticalRunOptions& opts = {});

// psi at distance y inside the boundary at output index k
double critical_psi(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w, std::size_t k,
                    double y);

// derivative of psi along the inward normal at the boundary
double boundary_gradient(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w, std::size_t k);

struct GradientBand {
    double t_lo = 0.0, t_hi = 0.0;
    double g_min = 0.0, g_max = 0.0;
    double ratio() const { return g_max / g_min; }
};

GradientBand gradient_band(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w, double t_lo,
                           double t_hi);

struct CriticalFitReport {
    double alpha = 0.0;
    int n_dim = 1;
    double c_star = 0.0;
    double predicted_exponent = 0.0;
    double fitted_exponent = 0.0;
    double t_lo = 0.0, t_hi = 0.0;
    double residual = 0.0;  // largest rms residual of the per-probe fits
    std::vector<double> y_probes;
    std::vector<double> probe_slopes;
    bool experimental = false;  // alpha <= 0
};

double predicted_exponent(double alpha, double c_star, double D, int n_dim);

// least squares slope of log psi(A + y) against log t over the window, averaged over probes
CriticalFitReport fit_exponent_from(const BoundaryMotion& m, const PhysicsParams& phys, const GridSolution& w,
                                    const std::vector<double>& y_probes, double t_lo, double t_hi);

CriticalFitReport fit_exponent(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim,
                               const std::vector<double>& y_probes, double t_lo, double t_hi,
                               const CriticalRunOptions& opts = {});

// slope of log y against log x (ordinary least squares), rms residual in *rms
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, double* rms = nullptr);

struct GammaBounds {
    double gamma0_lo = 0.0, gamma0_hi = 0.0;
    double gamma1_lo = 0.0, gamma1_hi = 0.0;
};

// extremes of Lddot L^3 and Addot L^3 over [0, t_end] at the given number of samples
GammaBounds sampled_gamma_bounds(const BoundaryMotion& m, double t_end, int samples = 1000);

struct BoundPair {
    GammaBounds bounds;
    SeriesSolution upper;
    SeriesSolution lower;
};

// comparison series with (gamma0+, gamma1+) above and (gamma0-, gamma1-) below; u0 >= 0 on eigen nodes
BoundPair envelope_bounds_general(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& u0,
                                  const GammaBounds& bounds, double t_end, int grid_size, int num_modes);

}  // namespace growdiff
