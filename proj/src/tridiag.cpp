#include "growdiff/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growdiff/errors.hpp"

namespace growdiff::linalg {

void thomas_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                  const std::vector<double>& sup, std::vector<double>& rhs, std::vector<double>& work) {
    const std::size_t n = diag.size();
    double beta = diag[0];
    if (beta == 0.0) throw NumericalFailure("thomas_solve: zero pivot");
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        work[i] = sup[i - 1] / beta;
        beta = diag[i] - sub[i] * work[i];
        if (beta == 0.0) throw NumericalFailure("thomas_solve: zero pivot");
        rhs[i] = (rhs[i] - sub[i] * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= work[i + 1] * rhs[i + 1];
}

TridiagonalLU::TridiagonalLU(const std::vector<double>& sub, const std::vector<double>& diag,
                             const std::vector<double>& sup)
    : n_(diag.size()), d_(diag), u1_(n_, 0.0), u2_(n_, 0.0), l_(n_, 0.0), swapped_(n_, 0) {
    // row i holds (d_[i], u1_[i], u2_[i]) for columns i, i+1, i+2 after elimination
    for (std::size_t i = 0; i + 1 < n_; ++i) u1_[i] = sup[i];
    std::vector<double> below(n_, 0.0);  // sub-diagonal entry of row i+1 in column i
    for (std::size_t i = 0; i + 1 < n_; ++i) below[i] = sub[i + 1];
    double scale = 0.0;
    for (double v : diag) scale = std::max(scale, std::abs(v));
    for (double v : sup) scale = std::max(scale, std::abs(v));
    const double tiny = std::max(scale, 1.0) * std::numeric_limits<double>::epsilon() * 1e-3;
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        // candidate rows: i (d_, u1_, u2_) and i+1 (below, d_[i+1], u1_[i+1])
        double r1_0 = below[i], r1_1 = d_[i + 1], r1_2 = i + 2 < n_ ? u1_[i + 1] : 0.0;
        if (std::abs(r1_0) > std::abs(d_[i])) {
            swapped_[i] = 1;
            std::swap(d_[i], r1_0);
            std::swap(u1_[i], r1_1);
            std::swap(u2_[i], r1_2);
        }
        if (d_[i] == 0.0) d_[i] = tiny;
        const double m = r1_0 / d_[i];
        l_[i] = m;
        d_[i + 1] = r1_1 - m * u1_[i];
        if (i + 2 < n_) u1_[i + 1] = r1_2 - m * u2_[i];
    }
    if (d_[n_ - 1] == 0.0) d_[n_ - 1] = tiny;
}

void TridiagonalLU::solve(std::vector<double>& b) const {
    for (std::size_t i = 0; i + 1 < n_; ++i) {
        if (swapped_[i]) std::swap(b[i], b[i + 1]);
        b[i + 1] -= l_[i] * b[i];
    }
    for (std::size_t i = n_; i-- > 0;) {
        double v = b[i];
        if (i + 1 < n_) v -= u1_[i] * b[i + 1];
        if (i + 2 < n_) v -= u2_[i] * b[i + 2];
        b[i] = v / d_[i];
    }
}

std::vector<double> tridiag_eigenvalues(std::vector<double> d, std::vector<double> e) {
    // implicit QL with Wilkinson-type shift
    const std::size_t n = d.size();
    e.resize(n, 0.0);
    if (n > 0) e[n - 1] = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (++iter > 60) throw NumericalFailure("tridiagonal QL did not converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i;
                bool early = false;
                for (i = m; i-- > l;) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        early = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (early) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> tridiag_eigenvector(const std::vector<double>& diag, const std::vector<double>& off,
                                        double lambda, const std::vector<std::vector<double>>& prior) {
    const std::size_t n = diag.size();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(diag[i]));
    for (double v : off) scale = std::max(scale, std::abs(v));
    // perturb the shift slightly so the shifted matrix is not exactly singular
    const double shift = lambda + 4.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
    std::vector<double> sub(n, 0.0), dd(n), sup(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) dd[i] = diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        sup[i] = off[i];
        sub[i + 1] = off[i];
    }
    TridiagonalLU lu(sub, dd, sup);
    std::vector<double> x(n);
    // deterministic start vector with components in every mode
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.37 * std::sin(1.7 * static_cast<double>(i) + 0.3);
    auto project_normalize = [&]() {
        for (const auto& q : prior) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += q[i] * x[i];
            for (std::size_t i = 0; i < n; ++i) x[i] -= dot * q[i];
        }
        double nrm = 0.0;
        for (double v : x) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericalFailure("inverse iteration breakdown");
        for (double& v : x) v /= nrm;
    };
    project_normalize();
    for (int it = 0; it < 6; ++it) {
        lu.solve(x);
        project_normalize();
    }
    return x;
}

}  // namespace growdiff::linalg
