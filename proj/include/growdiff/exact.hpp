#pragma once

#include <functional>
#include <string>
#include <vector>

#include "growdiff/eigensystem.hpp"
#include "growdiff/motion.hpp"
#include "growdiff/physics.hpp"

namespace growdiff {

enum class Representation { Psi, U, W };

struct FieldSample {
    double x = 0.0;
    double xi = 0.0;
    double t = 0.0;
    double value = 0.0;
    Representation rep = Representation::U;
};

struct FieldValue {
    double value = 0.0;
    bool truncation_warning = false;  // |last mode| > 1e-8 |sum|
};

// time-dependent pieces shared by every mode at a given t
struct TimeFactors {
    double t = 0.0;
    double s = 0.0;
    double L = 0.0, Ldot = 0.0, Adot = 0.0, A = 0.0;
    double log_growth = 0.0;  // f0 t - int Adot^2 / 4D
};

struct SeriesSolution {
    BoundaryMotion motion;
    PhysicsParams physics;
    EigenSystem eigen;
    std::vector<double> coeffs;
    bool matched = true;  // eigen built from the motion's own gamma0, gamma1

    std::size_t truncation() const { return coeffs.size(); }

    TimeFactors time_factors(double t) const;
    // log of the transform factor taking w to u at (xi, t)
    double log_w_to_u(double xi, const TimeFactors& tf) const;

    FieldValue eval(double xi, double t) const;
    FieldValue eval(double xi, const TimeFactors& tf) const;
    double w(double xi, double t) const;
    double psi(double x, double t) const;
    // sum over modes of |c_n g_n(xi) u_n(xi, t)/g_n|
    double magnitude(double xi, double t) const;

    // log(u_n / g_n) from the generic assembly
    double mode_log_factor(std::size_t n, double xi, double t) const;
    // same from the per-case closed forms; separable and matched only
    double mode_log_factor_closed_form(std::size_t n, double xi, double t) const;
    double eval_closed_form(double xi, double t) const;

    // with a truncated coefficient list
    SeriesSolution truncated(std::size_t modes) const;
};

EigenSystem eigen_for_motion(const BoundaryMotion& m, const PhysicsParams& phys, int grid_size, int num_modes);

std::vector<double> sample_on_grid(const std::function<double(double)>& f, const std::vector<double>& nodes);

// w0 from u0 at t = 0
std::vector<double> transform_ic(const std::vector<double>& u0, const std::vector<double>& nodes,
                                 const BoundaryMotion& m, const PhysicsParams& phys);

std::vector<double> expand(const std::vector<double>& w0, const EigenSystem& eigen);

// u0 sampled on eigen.nodes; eigen must carry the motion's gamma0, gamma1 (separable motions)
SeriesSolution build_series(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& u0,
                            const EigenSystem& eigen);

// any motion paired with any interval eigen system (comparison bounds)
SeriesSolution build_bound_series(const BoundaryMotion& m, const PhysicsParams& phys,
                                  const std::vector<double>& u0, const EigenSystem& eigen);

double eval_series(const SeriesSolution& sol, double xi, double t);
double eval_physical(const SeriesSolution& sol, double x, double t);

enum class GrowthVerdict { Growth, Decay, Collapse };

struct GrowthReport {
    GrowthVerdict verdict = GrowthVerdict::Decay;
    double xi_lo = 0.0, xi_hi = 0.0;  // open interval, empty when xi_lo >= xi_hi
    bool has_threshold = false;       // FixedLength with gamma1 = 0
    double threshold = 0.0;           // D pi^2/L0^2 + c^2/4D
    std::string note;

    bool empty() const { return !(xi_lo < xi_hi); }
};

const char* verdict_name(GrowthVerdict v);

GrowthReport growth_region(const BoundaryMotion& m, const PhysicsParams& phys);

// ball of radius R(t) = L(t)/2 with fixed centre; m is the diameter motion
struct RadialSeriesSolution {
    BoundaryMotion motion;
    PhysicsParams physics;
    EigenSystem eigen;
    std::vector<double> coeffs;
    int n_dim = 3;

    double R0() const { return 0.5 * motion.L0(); }
    // W on the fixed ball r in [0, R0]
    double W(double r, double t) const;
    // psi at distance rho in [0, R(t)] from the centre
    double psi(double rho, double t) const;
};

// diameter motion L = 2R for R^2 = a t^2 + 2 b t + R0^2 (the radial code ignores A)
BoundaryMotion ball_diameter_motion(double a, double b, double R0);

// log of the factor taking W(r, t) to psi
double ball_log_W_to_psi(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim, double r, double t);

// psi0 sampled on eigen.nodes (radial)
RadialSeriesSolution build_radial_series(const BoundaryMotion& m, const PhysicsParams& phys, int n_dim,
                                         const std::vector<double>& psi0, const EigenSystem& eigen);

}  // namespace growdiff
