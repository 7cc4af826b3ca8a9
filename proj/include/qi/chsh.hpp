#ifndef QI_CHSH_HPP
#define QI_CHSH_HPP

#include <string>

#include "qi/mat.hpp"
#include "qi/state.hpp"

namespace qi {

/// A B - B A.
Mat commutator(const Mat& a, const Mat& b);

enum class ChshMode {
    /// Four same-dimension observables with A_i B_j = B_j A_i.
    commuting_pairs,
    /// Observables built as a_i tensor 1 and 1 tensor b_j from local
    /// factors; cross-commutation holds by construction.
    local_tensor,
};

/// Two +-1-valued observables per party. In local_tensor mode the local
/// factors are retained for per-party sampling.
struct ChshConfig {
    Mat a0, a1, b0, b1; // full-dimension observables
    ChshMode mode = ChshMode::commuting_pairs;

    // Populated only in local_tensor mode.
    Mat left0, left1, right0, right1;

    /// Throws ConfigError unless all observables are Hermitian, square to
    /// the identity, and (in commuting_pairs mode) cross-commute.
    void validate(double tol = 1e-8) const;

    static ChshConfig commuting(Mat a0, Mat a1, Mat b0, Mat b1);
    static ChshConfig local(Mat left0, Mat left1, Mat right0, Mat right1);
};

enum class BoundContext { lhv_free, separable, commuting, general };

struct ChshReport {
    double expectation;
    double abs_expectation;
    double applicable_bound;   // 2 or 2*sqrt(2)
    bool bound_satisfied;
    double margin;             // applicable_bound - abs_expectation
};

/// A0 B1 - A0 B0 + A1 B0 + A1 B1.
Mat chsh_op(const ChshConfig& cfg);

/// Re trace(chsh_op(cfg) rho); the imaginary part must vanish.
double chsh_expect(const ChshConfig& cfg, const DensityMatrix& rho);

/// Returns S^2 after checking S^2 = 4*1 - [A0,A1][B0,B1] (commuting mode).
Mat chsh_square(const ChshConfig& cfg, double tol = 1e-8);

/// (|trace(A rho)|, l2_op_norm(A)); checks value <= bound.
std::pair<double, double> expect_abs_bound(const Mat& a, const DensityMatrix& rho,
                                           double tol = 1e-8);

/// The tight 2*sqrt(2) configuration: A0 = Z tensor 1, A1 = X tensor 1,
/// B0 = 1 tensor (Z-X)/sqrt(2), B1 = 1 tensor -(X+Z)/sqrt(2), on the
/// singlet state.
std::pair<ChshConfig, DensityMatrix> canonical_config();

/// Verifies the context's hypotheses, computes the expectation, and
/// checks it against the applicable bound (2, or 2*sqrt(2) for general).
ChshReport check_bound(const ChshConfig& cfg, const DensityMatrix& rho, BoundContext context);

std::string to_string(BoundContext context);

} // namespace qi

#endif
