#pragma once

#include <complex>
#include <vector>

namespace dimcert {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major; just enough linear algebra for
/// the quantum layer.
struct CMatrix {
    int n = 0;
    std::vector<Complex> a;

    CMatrix() = default;
    explicit CMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}

    Complex& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Complex& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

    static CMatrix identity(int size);
};

CMatrix operator+(const CMatrix& x, const CMatrix& y);
CMatrix operator-(const CMatrix& x, const CMatrix& y);
CMatrix operator*(const CMatrix& x, const CMatrix& y);
CMatrix operator*(Complex alpha, const CMatrix& x);
CMatrix adjoint(const CMatrix& x);
Complex trace(const CMatrix& x);
Complex trace_product(const CMatrix& x, const CMatrix& y); // tr(x y) without forming the product

double hermiticity_defect(const CMatrix& x); // max |x_ij - conj(x_ji)|
double max_abs_diff(const CMatrix& x, const CMatrix& y);

/// v v^dagger.
CMatrix projector(const std::vector<Complex>& v);

struct EigenSystem {
    std::vector<double> values; // ascending
    CMatrix vectors;            // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix (sizes <= 16 by
/// guard).  The off-diagonal tolerance is relative to the Frobenius norm.
/// Throws SolverError when the sweep cap is hit before convergence.
EigenSystem hermitian_eigensystem(CMatrix h, double tol = 1e-12, int max_sweeps = 100);

} // namespace dimcert
