#include "qi/state.hpp"

#include <cmath>

#include "qi/spectral.hpp"

namespace qi {

namespace {
constexpr double kEigClip = 1e-10;   // accepted negative eigenvalue slack
constexpr double kTraceSlack = 1e-10;
} // namespace

DensityMatrix tag_separable(DensityMatrix dm) {
    dm.separable_ = true;
    return dm;
}

DensityMatrix DensityMatrix::from_matrix(const Mat& m, double tol) {
    if (m.rows() != m.cols())
        throw DimensionError("density matrix must be square");
    require_finite(m, "density matrix");
    if (!is_hermitian(m, tol))
        throw NotPositiveError("density matrix is not Hermitian");
    const auto dec = real_diag_decomp(m, tol);
    for (double v : dec.eigenvalues)
        if (v < -kEigClip)
            throw NotPositiveError("density matrix has a negative eigenvalue");
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > kTraceSlack)
        throw TraceError("density matrix trace differs from 1");
    // Renormalize away the accepted rounding in the trace.
    Mat normalized = m / tr.real();
    return DensityMatrix(std::move(normalized), false);
}

DensityMatrix density_from_matrix(const Mat& m, double tol) {
    return DensityMatrix::from_matrix(m, tol);
}

DensityMatrix density_from_ensemble(const Ensemble& e, double tol) {
    if (e.empty()) throw EnsembleError("ensemble is empty");
    const Index n = e.front().state.size();
    double total = 0.0;
    Mat acc = zeros(n, n);
    for (const auto& entry : e) {
        if (entry.state.size() != n)
            throw EnsembleError("ensemble states have mixed dimensions");
        if (entry.weight < -tol || entry.weight > 1.0 + tol)
            throw EnsembleError("ensemble weight outside [0,1]");
        if (std::abs(vec_norm(entry.state) - 1.0) > tol)
            throw EnsembleError("ensemble state is not normalized");
        total += entry.weight;
        acc += entry.weight * (entry.state * entry.state.adjoint());
    }
    if (std::abs(total - 1.0) > tol)
        throw EnsembleError("ensemble weights do not sum to 1");
    return density_from_matrix(acc);
}

DensityMatrix density_from_separable(const SeparableDecomposition& s, double tol) {
    if (s.empty()) throw SeparableError("separable decomposition is empty");
    const Index n = s.front().left.dim();
    const Index m = s.front().right.dim();
    double total = 0.0;
    Mat acc = zeros(n * m, n * m);
    for (const auto& entry : s) {
        if (entry.left.dim() != n || entry.right.dim() != m)
            throw SeparableError("separable terms have mixed dimensions");
        if (entry.weight < -tol || entry.weight > 1.0 + tol)
            throw SeparableError("separable weight outside [0,1]");
        total += entry.weight;
        acc += entry.weight * tensor(entry.left.mat(), entry.right.mat());
    }
    if (std::abs(total - 1.0) > tol)
        throw SeparableError("separable weights do not sum to 1");
    return tag_separable(density_from_matrix(acc));
}

bool is_pure(const DensityMatrix& rho, double tol) {
    const Mat& m = rho.mat();
    const Mat sq = m * m;
    const bool idempotent = max_abs_diff(sq, m) <= tol;
    const bool unit_purity = std::abs(sq.trace().real() - 1.0) <= tol;
    if (idempotent != unit_purity)
        throw InternalInvariantError("purity characterizations disagree");
    return idempotent;
}

DensityMatrix max_mixed(Index n) {
    if (n < 1) throw DimensionError("max_mixed: dimension must be >= 1");
    return density_from_matrix(identity(n) / static_cast<double>(n));
}

DensityMatrix evolve(const Mat& u, const DensityMatrix& rho, double tol) {
    if (u.rows() != rho.dim())
        throw DimensionError("evolve: dimensions disagree");
    if (!is_unitary(u, tol))
        throw PreconditionError("evolve: operator is not unitary");
    return density_from_matrix(u * rho.mat() * u.adjoint());
}

Vec ket0() {
    Vec v(2);
    v << 1, 0;
    return v;
}

Vec ket1() {
    Vec v(2);
    v << 0, 1;
    return v;
}

Vec ket_plus() { return (ket0() + ket1()) / std::sqrt(2.0); }
Vec ket_minus() { return (ket0() - ket1()) / std::sqrt(2.0); }

Mat hadamard() {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

Mat cnot() {
    Mat c = zeros(4, 4);
    c(0, 0) = 1;
    c(1, 1) = 1;
    c(2, 3) = 1;
    c(3, 2) = 1;
    return c;
}

namespace {
Vec two_qubit(Index i, Index j) {
    Vec v = Vec::Zero(4);
    v(2 * i + j) = 1;
    return v;
}
} // namespace

Vec bell_phi_plus() { return (two_qubit(0, 0) + two_qubit(1, 1)) / std::sqrt(2.0); }
Vec bell_phi_minus() { return (two_qubit(0, 0) - two_qubit(1, 1)) / std::sqrt(2.0); }
Vec bell_psi_plus() { return (two_qubit(0, 1) + two_qubit(1, 0)) / std::sqrt(2.0); }
Vec bell_psi_minus() { return (two_qubit(0, 1) - two_qubit(1, 0)) / std::sqrt(2.0); }

namespace {
DensityMatrix pure_density(const Vec& psi) {
    return density_from_matrix(psi * psi.adjoint());
}
} // namespace

DensityMatrix rho_phi_plus() { return pure_density(bell_phi_plus()); }
DensityMatrix rho_phi_minus() { return pure_density(bell_phi_minus()); }
DensityMatrix rho_psi_plus() { return pure_density(bell_psi_plus()); }
DensityMatrix rho_psi_minus() { return pure_density(bell_psi_minus()); }

std::optional<DensityMatrix> named_state(const std::string& name) {
    if (name == "ket0") return pure_density(ket0());
    if (name == "ket1") return pure_density(ket1());
    if (name == "plus") return pure_density(ket_plus());
    if (name == "minus") return pure_density(ket_minus());
    if (name == "phi+") return rho_phi_plus();
    if (name == "phi-") return rho_phi_minus();
    if (name == "psi+") return rho_psi_plus();
    if (name == "psi-") return rho_psi_minus();
    if (name.rfind("maxmix:", 0) == 0) {
        try {
            const long n = std::stol(name.substr(7));
            if (n >= 1) return max_mixed(static_cast<Index>(n));
        } catch (const std::exception&) {
        }
        return std::nullopt;
    }
    return std::nullopt;
}

} // namespace qi
