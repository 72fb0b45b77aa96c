#include "growdiff/eigensystem.hpp"

#include <algorithm>
#include <cmath>

#include "growdiff/errors.hpp"
#include "growdiff/tridiag.hpp"

namespace growdiff {

namespace {

void check_common(double D, double L0, int grid_size, int num_modes) {
    if (!(D > 0.0) || !std::isfinite(D)) throw InvalidArgument("eigen: D must be positive");
    if (!(L0 > 0.0) || !std::isfinite(L0)) throw InvalidArgument("eigen: domain size must be positive");
    if (grid_size < 64) throw InvalidArgument("eigen: grid_size must be at least 64");
    if (num_modes < 1) throw InvalidArgument("eigen: need at least one mode");
    if (num_modes > grid_size / 4) throw InvalidArgument("eigen: num_modes must not exceed grid_size/4");
}

// symmetric problem S y = sigma y with S = M^{-1/2} K M^{-1/2}; modes returned as M^{-1/2} y
void extract(EigenSystem& es, const std::vector<double>& diag, const std::vector<double>& off,
             const std::vector<double>& mass, std::size_t first_node, int num_modes) {
    std::vector<double> ev = linalg::tridiag_eigenvalues(diag, off);
    std::vector<std::vector<double>> found;
    const std::size_t nn = es.nodes.size();
    for (int k = 0; k < num_modes; ++k) {
        const double lam = ev[ev.size() - 1 - k];
        std::vector<double> y = linalg::tridiag_eigenvector(diag, off, lam, found);
        found.push_back(y);
        std::vector<double> g(nn, 0.0);
        for (std::size_t i = 0; i < y.size(); ++i) g[first_node + i] = y[i] / std::sqrt(mass[i]);
        // sign: positive slope at 0 (interval) or positive centre value (ball)
        const double ref = g[first_node];
        if (ref < 0.0)
            for (double& v : g) v = -v;
        es.sigma.push_back(lam);
        es.modes.push_back(std::move(g));
    }
}

}  // namespace

double EigenSystem::inner(const std::vector<double>& f, const std::vector<double>& g) const {
    if (f.size() != nodes.size() || g.size() != nodes.size())
        throw InvalidArgument("eigen: grid function does not match the eigen grid");
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f[i] * g[i];
    return s;
}

double EigenSystem::potential(double x) const {
    const double L0 = params.L0, D = params.D;
    if (params.geometry == Geometry::Interval)
        return params.gamma0 * x * x / (4.0 * D * L0 * L0 * L0 * L0) + params.gamma1 * x / (2.0 * D * L0 * L0 * L0);
    return x * x * params.gamma0 / (4.0 * D * L0 * L0 * L0 * L0);
}

double EigenSystem::mode_value(std::size_t n, double x) const {
    const auto& g = modes.at(n);
    const double h = spacing();
    const int N = grid_size;
    if (x <= 0.0) return g[0];
    if (x >= params.L0) return g[N];
    int j = static_cast<int>(std::floor(x / h));
    j = std::clamp(j, 0, N - 1);
    const int s = std::clamp(j - 1, 0, N - 3);
    double val = 0.0;
    for (int a = s; a < s + 4; ++a) {
        double w = 1.0;
        for (int b = s; b < s + 4; ++b)
            if (b != a) w *= (x - nodes[b]) / (nodes[a] - nodes[b]);
        val += w * g[a];
    }
    return val;
}

EigenSystem solve_sl(double D, double L0, double gamma0, double gamma1, int grid_size, int num_modes) {
    check_common(D, L0, grid_size, num_modes);
    if (!std::isfinite(gamma0) || !std::isfinite(gamma1)) throw InvalidArgument("eigen: gamma must be finite");
    EigenSystem es;
    es.params = {Geometry::Interval, D, L0, gamma0, gamma1, 1};
    es.grid_size = grid_size;
    const int N = grid_size;
    const double h = L0 / N;
    es.nodes.resize(N + 1);
    es.weights.assign(N + 1, h);
    for (int i = 0; i <= N; ++i) es.nodes[i] = i * h;
    es.nodes[N] = L0;
    es.weights[0] = es.weights[N] = 0.5 * h;
    const int m = N - 1;
    std::vector<double> diag(m), off(m > 0 ? m - 1 : 0), mass(m, 1.0);
    const double kk = D / (h * h);
    for (int i = 0; i < m; ++i) diag[i] = -2.0 * kk + es.potential(es.nodes[i + 1]);
    for (int i = 0; i + 1 < m; ++i) off[i] = kk;
    // S = K with unit mass; rescale so modes have unit weighted norm (weight h)
    std::fill(mass.begin(), mass.end(), h);
    extract(es, diag, off, mass, 1, num_modes);
    return es;
}

EigenSystem solve_radial(double D, double R0, double gamma0, int n_dim, int grid_size, int num_modes) {
    if (n_dim < 1 || n_dim > 3) throw InvalidArgument("eigen: n_dim must be 1, 2 or 3");
    check_common(D, R0, grid_size, num_modes);
    if (!std::isfinite(gamma0)) throw InvalidArgument("eigen: gamma0 must be finite");
    EigenSystem es;
    es.params = {Geometry::Ball, D, R0, gamma0, 0.0, n_dim};
    es.grid_size = grid_size;
    const int N = grid_size;
    const double h = R0 / N;
    const double n = n_dim;
    es.nodes.resize(N + 1);
    es.weights.resize(N + 1);
    for (int i = 0; i <= N; ++i) es.nodes[i] = i * h;
    es.nodes[N] = R0;
    auto shell = [&](double lo, double hi) { return (std::pow(hi, n) - std::pow(lo, n)) / n; };
    for (int i = 0; i <= N; ++i) {
        const double lo = std::max(0.0, es.nodes[i] - 0.5 * h);
        const double hi = std::min(R0, es.nodes[i] + 0.5 * h);
        es.weights[i] = shell(lo, hi);
    }
    // unknowns at nodes 0..N-1
    std::vector<double> diag(N), off(N - 1), mass(N);
    auto face = [&](int i) { return std::pow(es.nodes[i] + 0.5 * h, n - 1.0); };  // between i and i+1
    for (int i = 0; i < N; ++i) {
        const double fr = face(i);
        const double fl = i > 0 ? face(i - 1) : 0.0;
        mass[i] = es.weights[i];
        const double kii = -D * (fr + fl) / h + mass[i] * es.potential(es.nodes[i]);
        diag[i] = kii / mass[i];
    }
    for (int i = 0; i + 1 < N; ++i) off[i] = D * face(i) / h / std::sqrt(mass[i] * mass[i + 1]);
    extract(es, diag, off, mass, 0, num_modes);
    return es;
}

double principal_eigen_bound(double rho, double gamma1, double D, double L0) {
    if (rho == 0.0 || !std::isfinite(rho)) throw InvalidArgument("principal_eigen_bound: rho must be non-zero");
    const double ar = std::abs(rho);
    return -ar / (2.0 * L0 * L0) + gamma1 * gamma1 / (4.0 * D * rho * rho * L0 * L0);
}

double eigen_residual(const EigenSystem& es, std::size_t n) {
    const auto& g = es.modes.at(n);
    const double sigma = es.sigma.at(n);
    const int N = es.grid_size;
    const double h = es.spacing(), D = es.params.D;
    double worst = 0.0;
    if (es.params.geometry == Geometry::Interval) {
        for (int i = 1; i < N; ++i) {
            const double lap = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (h * h);
            worst = std::max(worst, std::abs(D * lap + es.potential(es.nodes[i]) * g[i] - sigma * g[i]));
        }
        return worst;
    }
    const double nd = es.params.n_dim;
    for (int i = 0; i < N; ++i) {
        const double fr = std::pow(es.nodes[i] + 0.5 * h, nd - 1.0);
        const double fl = i > 0 ? std::pow(es.nodes[i] - 0.5 * h, nd - 1.0) : 0.0;
        const double lap = (fr * (g[i + 1] - g[i]) - fl * (i > 0 ? g[i] - g[i - 1] : 0.0)) / (h * es.weights[i]);
        worst = std::max(worst, std::abs(D * lap + es.potential(es.nodes[i]) * g[i] - sigma * g[i]));
    }
    return worst;
}

double orthogonality_defect(const EigenSystem& es) {
    double worst = 0.0;
    for (std::size_t a = 0; a < es.num_modes(); ++a)
        for (std::size_t b = a + 1; b < es.num_modes(); ++b)
            worst = std::max(worst, std::abs(es.inner(es.modes[a], es.modes[b])));
    return worst;
}

}  // namespace growdiff
