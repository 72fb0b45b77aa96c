#pragma once

#include <string>
#include <vector>

#include "growdiff/motion.hpp"
#include "growdiff/physics.hpp"

namespace growdiff {

// dt_eff = max(dt, dt_rel * (1 + t)), clipped to output times
struct StepControl {
    double dt = 1e-3;
    double dt_rel = 0.0;
};

enum class FieldKind { U, W, RadialW };

const char* field_name(FieldKind k);

struct SchemeInfo {
    double dt = 0.0;
    double dt_rel = 0.0;
    double theta = 0.5;
    int grid_size = 0;
    long steps = 0;
};

struct GridSolution {
    FieldKind field = FieldKind::U;
    int n_dim = 1;
    std::vector<double> nodes;
    std::vector<double> times;
    std::vector<std::vector<double>> values;  // values[k][i] at times[k], nodes[i]
    SchemeInfo scheme;

    double spacing() const { return nodes.back() / (nodes.size() - 1); }
    // local cubic interpolation at x for output index k
    double interpolate(std::size_t k, double x) const;
    // one-sided third-order derivative at node 0 (interval) for output index k
    double slope_at_zero(std::size_t k) const;
    // one-sided third-order derivative at the last node
    double slope_at_end(std::size_t k) const;
};

std::vector<double> uniform_nodes(double length, int grid_size);

// u_t = D L0^2/L^2 u_xixi + (Adot L0 + xi Ldot)/L u_xi + f0 u on [0, L0]
GridSolution solve_u(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& u0,
                     int grid_size, const StepControl& step, double T, std::vector<double> output_times);

// w_t = D L0^2/L^2 (w_xixi + P (xi/L0)(xi/L0 - 1) w / L0^2), P = Lddot L^3 / 4D^2; needs A = -L/2
GridSolution solve_w(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& w0,
                     int grid_size, const StepControl& step, double T, std::vector<double> output_times);

// W_t = D R0^2/R^2 (lap W + Q (r^2/R0^2 - 1) W / R0^2), R = L/2, Q = Rddot R^3 / 4D^2, r in [0, R0]
GridSolution solve_radial(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& W0,
                          int n_dim, int grid_size, const StepControl& step, double T,
                          std::vector<double> output_times);

// w from u at a single time (same grid), for cross-checks
std::vector<double> u_to_w(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& nodes,
                           const std::vector<double>& u, double t);

}  // namespace growdiff
