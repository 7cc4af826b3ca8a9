#include "qi/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qi {

Mat SpectralDecomposition::reconstruct() const {
    const Index n = unitary.rows();
    Eigen::VectorXcd d(n);
    for (Index i = 0; i < n; ++i) d(i) = Complex(eigenvalues[static_cast<size_t>(i)], 0.0);
    return unitary * d.asDiagonal() * unitary.adjoint();
}

bool is_hermitian(const Mat& a, double tol) {
    if (a.rows() != a.cols())
        throw DimensionError("is_hermitian: matrix is not square");
    return max_abs_diff(a, a.adjoint()) <= tol;
}

bool is_unitary(const Mat& u, double tol) {
    if (u.rows() != u.cols())
        throw DimensionError("is_unitary: matrix is not square");
    const Mat id = identity(u.rows());
    return max_abs_diff(u.adjoint() * u, id) <= tol &&
           max_abs_diff(u * u.adjoint(), id) <= tol;
}

bool is_positive_semidefinite(const Mat& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    const auto dec = real_diag_decomp(a, tol);
    const double lo = *std::min_element(dec.eigenvalues.begin(), dec.eigenvalues.end());
    return lo >= -tol;
}

SpectralDecomposition real_diag_decomp(const Mat& a, double tol) {
    if (!is_hermitian(a, tol))
        throw PreconditionError("real_diag_decomp: input is not Hermitian");
    // Work on the exactly Hermitian average so the solver never sees
    // the (tolerated) asymmetric rounding of the input.
    const Mat sym = 0.5 * (a + Mat(a.adjoint()));
    Eigen::SelfAdjointEigenSolver<Mat> solver(sym);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("real_diag_decomp: eigensolver did not converge");
    SpectralDecomposition out;
    out.unitary = solver.eigenvectors();
    const auto& evals = solver.eigenvalues();
    out.eigenvalues.assign(evals.data(), evals.data() + evals.size());
    return out;
}

Spectrum spectrum(const Mat& a, double tol) {
    const auto dec = real_diag_decomp(a, tol);
    const Index n = a.rows();

    // Column indices sorted by eigenvalue descending.
    std::vector<Index> order(static_cast<size_t>(n));
    for (Index i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Index i, Index j) {
        return dec.eigenvalues[static_cast<size_t>(i)] > dec.eigenvalues[static_cast<size_t>(j)];
    });

    double max_abs = 0.0;
    for (double v : dec.eigenvalues) max_abs = std::max(max_abs, std::abs(v));
    const double group_tol = 1e-8 * std::max(1.0, max_abs);

    Spectrum out;
    size_t k = 0;
    while (k < order.size()) {
        const double lead = dec.eigenvalues[static_cast<size_t>(order[k])];
        Mat proj = zeros(n, n);
        double sum = 0.0;
        int mult = 0;
        size_t j = k;
        for (; j < order.size(); ++j) {
            const double v = dec.eigenvalues[static_cast<size_t>(order[j])];
            if (std::abs(v - lead) > group_tol) break;
            const Vec col = dec.unitary.col(order[j]);
            proj += col * col.adjoint();
            sum += v;
            ++mult;
        }
        out.push_back({sum / mult, std::move(proj), mult});
        k = j;
    }
    return out;
}

std::vector<double> singular_values(const Mat& a) {
    if (a.rows() != a.cols())
        throw DimensionError("singular_values: matrix is not square");
    const Mat gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Mat> solver(gram);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("singular_values: eigensolver did not converge");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(a.rows()));
    for (Index i = 0; i < a.rows(); ++i)
        out.push_back(std::sqrt(std::max(0.0, solver.eigenvalues()(i))));
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

double l2_op_norm(const Mat& a) {
    const auto sv = singular_values(a);
    return sv.empty() ? 0.0 : sv.front();
}

} // namespace qi
