#pragma once

#include <vector>

namespace growdiff::linalg {

// Solve a tridiagonal system in place (no pivoting). sub[0] and sup[n-1] are ignored.
// work must have size n. rhs is overwritten with the solution.
void thomas_solve(const std::vector<double>& sub, const std::vector<double>& diag,
                  const std::vector<double>& sup, std::vector<double>& rhs, std::vector<double>& work);

// LU with partial pivoting of a tridiagonal matrix (one extra superdiagonal of fill-in)
class TridiagonalLU {
public:
    TridiagonalLU(const std::vector<double>& sub, const std::vector<double>& diag,
                  const std::vector<double>& sup);
    void solve(std::vector<double>& b) const;

private:
    std::size_t n_;
    std::vector<double> d_, u1_, u2_, l_;
    std::vector<char> swapped_;
};

// All eigenvalues of a symmetric tridiagonal matrix, ascending. off[i] couples i and i+1.
std::vector<double> tridiag_eigenvalues(std::vector<double> diag, std::vector<double> off);

// Eigenvector for an eigenvalue estimate via inverse iteration. prior vectors are projected out.
std::vector<double> tridiag_eigenvector(const std::vector<double>& diag, const std::vector<double>& off,
                                        double lambda, const std::vector<std::vector<double>>& prior);

}  // namespace growdiff::linalg
