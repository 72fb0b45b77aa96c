#include "growdiff/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "growdiff/errors.hpp"
#include "growdiff/tridiag.hpp"

namespace growdiff {

const char* field_name(FieldKind k) {
    switch (k) {
        case FieldKind::U: return "u";
        case FieldKind::W: return "w";
        case FieldKind::RadialW: return "W";
    }
    return "u";
}

std::vector<double> uniform_nodes(double length, int grid_size) {
    std::vector<double> x(grid_size + 1);
    for (int i = 0; i <= grid_size; ++i) x[i] = length * i / grid_size;
    x[grid_size] = length;
    return x;
}

double GridSolution::interpolate(std::size_t k, double x) const {
    const auto& v = values.at(k);
    const int N = static_cast<int>(nodes.size()) - 1;
    const double h = spacing();
    if (x <= nodes.front()) return v.front();
    if (x >= nodes.back()) return v.back();
    int j = std::clamp(static_cast<int>(std::floor(x / h)), 0, N - 1);
    const int s = std::clamp(j - 1, 0, N - 3);
    double val = 0.0;
    for (int a = s; a < s + 4; ++a) {
        double w = 1.0;
        for (int b = s; b < s + 4; ++b)
            if (b != a) w *= (x - nodes[b]) / (nodes[a] - nodes[b]);
        val += w * v[a];
    }
    return val;
}

double GridSolution::slope_at_zero(std::size_t k) const {
    const auto& v = values.at(k);
    return (-11.0 * v[0] + 18.0 * v[1] - 9.0 * v[2] + 2.0 * v[3]) / (6.0 * spacing());
}

double GridSolution::slope_at_end(std::size_t k) const {
    const auto& v = values.at(k);
    const std::size_t N = v.size() - 1;
    return (11.0 * v[N] - 18.0 * v[N - 1] + 9.0 * v[N - 2] - 2.0 * v[N - 3]) / (6.0 * spacing());
}

namespace {

// fills the operator rows (lo, di, up) for the unknowns at time t
using OperatorFn = std::function<void(double t, std::vector<double>& lo, std::vector<double>& di,
                                      std::vector<double>& up)>;

void check_run(const BoundaryMotion& m, int grid_size, const StepControl& step, double T, std::size_t data_size) {
    if (grid_size < 4) throw InvalidArgument("numeric: grid_size must be at least 4");
    if (data_size != static_cast<std::size_t>(grid_size) + 1)
        throw InvalidArgument("numeric: initial data must have grid_size + 1 values");
    if (!(step.dt > 0.0) || !std::isfinite(step.dt)) throw InvalidArgument("numeric: dt must be positive");
    if (!(step.dt_rel >= 0.0)) throw InvalidArgument("numeric: dt_rel must be non-negative");
    if (!(T > 0.0) || !std::isfinite(T)) throw InvalidArgument("numeric: T must be positive and finite");
    if (m.family() == Family::Tabulated) {
        if (T > m.horizon()) throw InvalidArgument("numeric: T beyond the tabulated range");
    } else if (T >= m.horizon()) {
        throw DomainCollapsed(T, m.horizon());
    }
}

std::vector<double> prepare_outputs(std::vector<double> outs, double T) {
    for (double t : outs)
        if (!(t >= 0.0) || t > T * (1.0 + 1e-14)) throw InvalidArgument("numeric: output time outside [0, T]");
    if (outs.empty()) outs.push_back(T);
    std::sort(outs.begin(), outs.end());
    outs.erase(std::unique(outs.begin(), outs.end()), outs.end());
    return outs;
}

GridSolution run_theta(const std::vector<double>& init, std::size_t first, std::size_t last,
                       const StepControl& step, const std::vector<double>& outs, const OperatorFn& op) {
    const std::size_t m = last - first + 1;
    std::vector<double> lo(m), di(m), up(m), sub(m), diag(m), sup(m), rhs(m), work(m);
    std::vector<double> u(init);
    GridSolution gs;
    gs.scheme.dt = step.dt;
    gs.scheme.dt_rel = step.dt_rel;
    gs.scheme.theta = 0.5;
    gs.scheme.grid_size = static_cast<int>(init.size()) - 1;
    double t = 0.0;
    std::size_t k = 0;
    long steps = 0;
    while (k < outs.size() && outs[k] == 0.0) {
        gs.times.push_back(0.0);
        gs.values.push_back(u);
        ++k;
    }
    while (k < outs.size()) {
        const double target = outs[k];
        double dt = std::max(step.dt, step.dt_rel * (1.0 + t));
        bool hit = false;
        if (t + dt * (1.0 + 1e-9) >= target) {
            dt = target - t;
            hit = true;
        }
        op(t + 0.5 * dt, lo, di, up);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t g = first + i;
            const double left = g > 0 ? u[g - 1] : 0.0;
            const double right = g + 1 < u.size() ? u[g + 1] : 0.0;
            rhs[i] = u[g] + 0.5 * dt * (lo[i] * left + di[i] * u[g] + up[i] * right);
            sub[i] = -0.5 * dt * lo[i];
            diag[i] = 1.0 - 0.5 * dt * di[i];
            sup[i] = -0.5 * dt * up[i];
        }
        linalg::thomas_solve(sub, diag, sup, rhs, work);
        for (std::size_t i = 0; i < m; ++i) u[first + i] = rhs[i];
        ++steps;
        t = hit ? target : t + dt;
        if (hit) {
            for (double v : u)
                if (!std::isfinite(v)) throw NumericalFailure("numeric: non-finite value in the solution");
            gs.times.push_back(t);
            gs.values.push_back(u);
            ++k;
        }
    }
    gs.scheme.steps = steps;
    return gs;
}

}  // namespace

GridSolution solve_u(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& u0,
                     int grid_size, const StepControl& step, double T, std::vector<double> output_times) {
    check_run(m, grid_size, step, T, u0.size());
    const auto outs = prepare_outputs(std::move(output_times), T);
    const double L0 = m.L0(), D = phys.D, f0 = phys.f0;
    const auto nodes = uniform_nodes(L0, grid_size);
    const double h = L0 / grid_size;
    std::vector<double> init(u0);
    init.front() = init.back() = 0.0;
    auto op = [&](double t, std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up) {
        const MotionState st = m.kinematics(t);
        const double k = D * L0 * L0 / (st.L * st.L);
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double xi = nodes[i + 1];
            const double b = (st.Adot * L0 + xi * st.Ldot) / st.L;
            if (std::abs(b) * h / k > 2.0)
                throw NumericalFailure("numeric: cell Peclet number exceeds 2 at t = " + std::to_string(t) +
                                       "; refine the grid");
            lo[i] = k / (h * h) - b / (2.0 * h);
            di[i] = -2.0 * k / (h * h) + f0;
            up[i] = k / (h * h) + b / (2.0 * h);
        }
    };
    GridSolution gs = run_theta(init, 1, grid_size - 1, step, outs, op);
    gs.field = FieldKind::U;
    gs.nodes = nodes;
    return gs;
}

GridSolution solve_w(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& w0,
                     int grid_size, const StepControl& step, double T, std::vector<double> output_times) {
    check_run(m, grid_size, step, T, w0.size());
    if (!m.is_symmetric(1e-10)) throw InvalidArgument("solve_w: motion must satisfy A = -L/2");
    const auto outs = prepare_outputs(std::move(output_times), T);
    const double L0 = m.L0(), D = phys.D;
    const auto nodes = uniform_nodes(L0, grid_size);
    const double h = L0 / grid_size;
    std::vector<double> init(w0);
    init.front() = init.back() = 0.0;
    auto op = [&](double t, std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up) {
        const MotionState st = m.kinematics(t);
        const double k = D * L0 * L0 / (st.L * st.L);
        const double P = st.Lddot * st.L * st.L * st.L / (4.0 * D * D);
        for (std::size_t i = 0; i < lo.size(); ++i) {
            const double z = nodes[i + 1] / L0;
            lo[i] = k / (h * h);
            di[i] = k * (-2.0 / (h * h) + P * z * (z - 1.0) / (L0 * L0));
            up[i] = k / (h * h);
        }
    };
    GridSolution gs = run_theta(init, 1, grid_size - 1, step, outs, op);
    gs.field = FieldKind::W;
    gs.nodes = nodes;
    return gs;
}

GridSolution solve_radial(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& W0,
                          int n_dim, int grid_size, const StepControl& step, double T,
                          std::vector<double> output_times) {
    if (n_dim < 1 || n_dim > 3) throw InvalidArgument("solve_radial: n_dim must be 1, 2 or 3");
    check_run(m, grid_size, step, T, W0.size());
    const auto outs = prepare_outputs(std::move(output_times), T);
    const double R0 = 0.5 * m.L0(), D = phys.D;
    const auto nodes = uniform_nodes(R0, grid_size);
    const double h = R0 / grid_size;
    const double n = n_dim;
    const int N = grid_size;
    std::vector<double> vol(N), fr(N), fl(N);
    for (int i = 0; i < N; ++i) {
        const double lo = std::max(0.0, nodes[i] - 0.5 * h);
        const double hi = nodes[i] + 0.5 * h;
        vol[i] = (std::pow(hi, n) - std::pow(lo, n)) / n;
        fr[i] = std::pow(hi, n - 1.0);
        fl[i] = i > 0 ? std::pow(lo, n - 1.0) : 0.0;
    }
    std::vector<double> init(W0);
    init.back() = 0.0;
    auto op = [&](double t, std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up) {
        const MotionState st = m.kinematics(t);
        const double R = 0.5 * st.L, Rdd = 0.5 * st.Lddot;
        const double k = D * R0 * R0 / (R * R);
        const double Q = Rdd * R * R * R / (4.0 * D * D);
        for (int i = 0; i < N; ++i) {
            const double r = nodes[i];
            const double c = k / (h * vol[i]);
            lo[i] = c * fl[i];
            up[i] = c * fr[i];
            di[i] = -c * (fl[i] + fr[i]) + k * Q * (r * r / (R0 * R0) - 1.0) / (R0 * R0);
        }
    };
    GridSolution gs = run_theta(init, 0, N - 1, step, outs, op);
    gs.field = FieldKind::RadialW;
    gs.n_dim = n_dim;
    gs.nodes = nodes;
    return gs;
}

std::vector<double> u_to_w(const BoundaryMotion& m, const PhysicsParams& phys, const std::vector<double>& nodes,
                           const std::vector<double>& u, double t) {
    if (nodes.size() != u.size()) throw InvalidArgument("u_to_w: grid mismatch");
    const MotionState st = m.kinematics(t);
    const double L0 = m.L0(), D = phys.D;
    const double G = m.log_growth(t, phys);
    std::vector<double> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double xi = nodes[i];
        w[i] = u[i] * std::exp(0.5 * std::log(st.L / L0) - G + xi * xi * st.Ldot * st.L / (4.0 * D * L0 * L0) +
                               xi * st.Adot * st.L / (2.0 * D * L0));
    }
    return w;
}

}  // namespace growdiff
