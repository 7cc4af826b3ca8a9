#ifndef QI_SPECTRAL_HPP
#define QI_SPECTRAL_HPP

#include <vector>

#include "qi/mat.hpp"

namespace qi {

/// Unitary diagonalization A = U diag(d) U^dagger of a Hermitian matrix.
struct SpectralDecomposition {
    Mat unitary;                    // columns are orthonormal eigenvectors
    std::vector<double> eigenvalues; // real, in the column order of `unitary`

    /// Rebuilds U diag(d) U^dagger.
    Mat reconstruct() const;
};

/// One eigenvalue of a Hermitian matrix together with the orthogonal
/// projector onto its eigenspace.
struct SpectrumEntry {
    double eigenvalue;
    Mat projector;
    int multiplicity;
};

/// Distinct eigenvalues in descending order; projectors are mutually
/// orthogonal, idempotent, and sum to the identity.
using Spectrum = std::vector<SpectrumEntry>;

bool is_hermitian(const Mat& a, double tol = kDefaultTol);
bool is_unitary(const Mat& u, double tol = kDefaultTol);
bool is_positive_semidefinite(const Mat& a, double tol = kDefaultTol);

/// Diagonalizes a Hermitian matrix. Throws PreconditionError if the input
/// is not Hermitian within tolerance, ConvergenceError if the solver fails.
SpectralDecomposition real_diag_decomp(const Mat& a, double tol = kDefaultTol);

/// Eigenvalues of real_diag_decomp grouped at relative tolerance
/// 1e-8 * max(1, max |eigenvalue|), with eigenspace projectors.
Spectrum spectrum(const Mat& a, double tol = kDefaultTol);

/// Square roots of the eigenvalues of A^dagger A, descending.
std::vector<double> singular_values(const Mat& a);

/// L2 operator norm: the maximum singular value.
double l2_op_norm(const Mat& a);

} // namespace qi

#endif
