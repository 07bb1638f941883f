#include "dimcert/cmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dimcert/errors.hpp"

namespace dimcert {

CMatrix CMatrix::identity(int size) {
    CMatrix out(size);
    for (int i = 0; i < size; ++i) out(i, i) = 1.0;
    return out;
}

namespace {

void check_same_size(const CMatrix& x, const CMatrix& y, const char* op) {
    if (x.n != y.n)
        throw ValidationError(std::string(op) + ": size mismatch " + std::to_string(x.n) + " vs " +
                              std::to_string(y.n));
}

} // namespace

CMatrix operator+(const CMatrix& x, const CMatrix& y) {
    check_same_size(x, y, "matrix add");
    CMatrix out = x;
    for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] += y.a[k];
    return out;
}

CMatrix operator-(const CMatrix& x, const CMatrix& y) {
    check_same_size(x, y, "matrix subtract");
    CMatrix out = x;
    for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] -= y.a[k];
    return out;
}

CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    check_same_size(x, y, "matrix multiply");
    const int n = x.n;
    CMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex xik = x(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < n; ++j) out(i, j) += xik * y(k, j);
        }
    return out;
}

CMatrix operator*(Complex alpha, const CMatrix& x) {
    CMatrix out = x;
    for (auto& v : out.a) v *= alpha;
    return out;
}

CMatrix adjoint(const CMatrix& x) {
    CMatrix out(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) out(i, j) = std::conj(x(j, i));
    return out;
}

Complex trace(const CMatrix& x) {
    Complex t = 0.0;
    for (int i = 0; i < x.n; ++i) t += x(i, i);
    return t;
}

Complex trace_product(const CMatrix& x, const CMatrix& y) {
    check_same_size(x, y, "trace product");
    Complex t = 0.0;
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) t += x(i, k) * y(k, i);
    return t;
}

double hermiticity_defect(const CMatrix& x) {
    double worst = 0.0;
    for (int i = 0; i < x.n; ++i)
        for (int j = i; j < x.n; ++j) worst = std::max(worst, std::abs(x(i, j) - std::conj(x(j, i))));
    return worst;
}

double max_abs_diff(const CMatrix& x, const CMatrix& y) {
    check_same_size(x, y, "matrix compare");
    double worst = 0.0;
    for (std::size_t k = 0; k < x.a.size(); ++k) worst = std::max(worst, std::abs(x.a[k] - y.a[k]));
    return worst;
}

CMatrix projector(const std::vector<Complex>& v) {
    CMatrix out(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            out(static_cast<int>(i), static_cast<int>(j)) = v[i] * std::conj(v[j]);
    return out;
}

EigenSystem hermitian_eigensystem(CMatrix h, double tol, int max_sweeps) {
    constexpr int kMaxJacobiSize = 16;
    const int n = h.n;
    if (n < 1 || n > kMaxJacobiSize)
        throw ValidationError("eigensolver: size " + std::to_string(n) + " outside [1, " +
                              std::to_string(kMaxJacobiSize) + "]");
    if (hermiticity_defect(h) > 1e-9)
        throw ValidationError("eigensolver: matrix is not Hermitian (defect " +
                              std::to_string(hermiticity_defect(h)) + ")");
    // Work on the exact Hermitian average so rotations preserve symmetry.
    for (int i = 0; i < n; ++i) {
        h(i, i) = Complex(h(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    }

    double frob = 0.0;
    for (const auto& v : h.a) frob += std::norm(v);
    frob = std::sqrt(frob);
    const double stop = tol * std::max(frob, 1.0);

    CMatrix vecs = CMatrix::identity(n);
    auto off_norm = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(h(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > stop) {
        if (++sweep > max_sweeps)
            throw SolverError("eigensolver: no convergence after " + std::to_string(max_sweeps) + " sweeps");
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = h(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop / (static_cast<double>(n) * n)) continue;

                // Phase-reduce h_pq to |h_pq|, then apply the real Jacobi
                // rotation of [[a_pp, |h_pq|], [|h_pq|, a_qq]].
                const Complex phase = apq / mag; // e^{i phi}
                const double app = h(p, p).real(), aqq = h(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U restricted to the (p,q) plane: [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
                const Complex upp = c, upq = s;
                const Complex uqp = -s * std::conj(phase), uqq = c * std::conj(phase);

                for (int i = 0; i < n; ++i) { // h <- h U
                    const Complex hip = h(i, p), hiq = h(i, q);
                    h(i, p) = hip * upp + hiq * uqp;
                    h(i, q) = hip * upq + hiq * uqq;
                }
                for (int j = 0; j < n; ++j) { // h <- U^dagger h
                    const Complex hpj = h(p, j), hqj = h(q, j);
                    h(p, j) = std::conj(upp) * hpj + std::conj(uqp) * hqj;
                    h(q, j) = std::conj(upq) * hpj + std::conj(uqq) * hqj;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = Complex(h(p, p).real(), 0.0);
                h(q, q) = Complex(h(q, q).real(), 0.0);

                for (int i = 0; i < n; ++i) { // vecs <- vecs U
                    const Complex vip = vecs(i, p), viq = vecs(i, q);
                    vecs(i, p) = vip * upp + viq * uqp;
                    vecs(i, q) = vip * upq + viq * uqq;
                }
            }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return h(i, i).real() < h(j, j).real(); });

    EigenSystem out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors = CMatrix(n);
    for (int k = 0; k < n; ++k) {
        out.values[static_cast<std::size_t>(k)] = h(order[static_cast<std::size_t>(k)],
                                                    order[static_cast<std::size_t>(k)])
                                                      .real();
        for (int i = 0; i < n; ++i) out.vectors(i, k) = vecs(i, order[static_cast<std::size_t>(k)]);
    }
    return out;
}

} // namespace dimcert
