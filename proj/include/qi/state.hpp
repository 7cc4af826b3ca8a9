#ifndef QI_STATE_HPP
#define QI_STATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qi/mat.hpp"

namespace qi {

/// Positive-semidefinite, trace-1 operator. Validated at construction;
/// eigenvalues down to -1e-10 are accepted and the trace is renormalized
/// when it is within 1e-10 of 1.
class DensityMatrix {
  public:
    static DensityMatrix from_matrix(const Mat& m, double tol = kDefaultTol);

    const Mat& mat() const { return mat_; }
    Index dim() const { return mat_.rows(); }

    /// True only for states built by density_from_separable (or trivially
    /// one-sided constructions); no separability *test* is attempted.
    bool separable_by_construction() const { return separable_; }

  private:
    DensityMatrix(Mat m, bool separable) : mat_(std::move(m)), separable_(separable) {}
    friend DensityMatrix tag_separable(DensityMatrix dm);

    Mat mat_;
    bool separable_ = false;
};

struct EnsembleEntry {
    double weight;     // in [0,1]
    Vec state;         // normalized ket
};
using Ensemble = std::vector<EnsembleEntry>;

struct SeparableEntry {
    double weight;
    DensityMatrix left;
    DensityMatrix right;
};
using SeparableDecomposition = std::vector<SeparableEntry>;

DensityMatrix density_from_matrix(const Mat& m, double tol = kDefaultTol);

/// rho = sum w_i |psi_i><psi_i|. Throws EnsembleError when weights are
/// negative, do not sum to 1, or a state is not normalized.
DensityMatrix density_from_ensemble(const Ensemble& e, double tol = 1e-8);

/// rho = sum w_i (left_i tensor right_i); result is tagged separable.
DensityMatrix density_from_separable(const SeparableDecomposition& s, double tol = 1e-8);

/// rho is pure iff rho^2 = rho, equivalently trace(rho^2) = 1. The two
/// characterizations are cross-checked.
bool is_pure(const DensityMatrix& rho, double tol = 1e-8);

/// (1/n) identity.
DensityMatrix max_mixed(Index n);

/// U rho U^dagger for unitary U.
DensityMatrix evolve(const Mat& u, const DensityMatrix& rho, double tol = 1e-8);

// Standard kets and gates.
Vec ket0();
Vec ket1();
Vec ket_plus();
Vec ket_minus();
Mat hadamard();
Mat cnot();

// Bell states |Phi+->, |Psi+->.
Vec bell_phi_plus();
Vec bell_phi_minus();
Vec bell_psi_plus();
Vec bell_psi_minus();

DensityMatrix rho_phi_plus();
DensityMatrix rho_phi_minus();
DensityMatrix rho_psi_plus();
DensityMatrix rho_psi_minus();

/// Resolves "ket0","ket1","plus","minus","phi+","phi-","psi+","psi-",
/// "maxmix:n" to a density matrix; nullopt for unknown names.
std::optional<DensityMatrix> named_state(const std::string& name);

} // namespace qi

#endif
