#pragma once

#include <cstddef>
#include <vector>

namespace growdiff {

enum class Geometry { Interval, Ball };

struct EigenParams {
    Geometry geometry = Geometry::Interval;
    double D = 1.0;
    double L0 = 1.0;  // interval length, or ball radius R0
    double gamma0 = 0.0;
    double gamma1 = 0.0;  // interval only
    int n_dim = 1;        // ball only
};

struct EigenSystem {
    EigenParams params;
    int grid_size = 0;                        // number of cells; nodes = grid_size + 1
    std::vector<double> nodes;                // xi in [0, L0] or r in [0, R0]
    std::vector<double> weights;              // quadrature weights of the discrete inner product
    std::vector<double> sigma;                // descending
    std::vector<std::vector<double>> modes;   // node values, unit weighted norm

    std::size_t num_modes() const { return sigma.size(); }
    double spacing() const { return params.L0 / grid_size; }
    double inner(const std::vector<double>& f, const std::vector<double>& g) const;
    // potential q at x
    double potential(double x) const;
    // local cubic interpolation of mode n (0-based) at x
    double mode_value(std::size_t n, double x) const;
};

EigenSystem solve_sl(double D, double L0, double gamma0, double gamma1, int grid_size, int num_modes);

EigenSystem solve_radial(double D, double R0, double gamma0, int n_dim, int grid_size, int num_modes);

// -|rho|/(2 L0^2) + gamma1^2/(4 D rho^2 L0^2)
double principal_eigen_bound(double rho, double gamma1, double D, double L0);

// one Richardson step for a second-order quantity computed at h and h/2
inline double richardson(double coarse, double fine) { return fine + (fine - coarse) / 3.0; }

// ||A g - sigma M g||_inf on the interior, using the same discrete operator as the solver
double eigen_residual(const EigenSystem& es, std::size_t n);

// maximum |<g_m, g_n>| over m != n
double orthogonality_defect(const EigenSystem& es);

}  // namespace growdiff
