#include "qi/chsh.hpp"

#include <cmath>

#include "qi/spectral.hpp"

namespace qi {

namespace {
constexpr double kCommuteTol = 1e-10;

void require_square_root_of_identity(const Mat& a, double tol, const char* name) {
    if (a.rows() != a.cols())
        throw ConfigError(std::string(name) + " is not square");
    if (!is_hermitian(a, tol))
        throw ConfigError(std::string(name) + " is not Hermitian");
    if (max_abs_diff(a * a, identity(a.rows())) > tol)
        throw ConfigError(std::string(name) + " does not square to the identity");
}
} // namespace

Mat commutator(const Mat& a, const Mat& b) {
    if (a.rows() != a.cols() || a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("commutator: operands must be square of equal dimension");
    return a * b - b * a;
}

void ChshConfig::validate(double tol) const {
    require_square_root_of_identity(a0, tol, "A0");
    require_square_root_of_identity(a1, tol, "A1");
    require_square_root_of_identity(b0, tol, "B0");
    require_square_root_of_identity(b1, tol, "B1");
    const Index n = a0.rows();
    if (a1.rows() != n || b0.rows() != n || b1.rows() != n)
        throw ConfigError("observables have mixed dimensions");
    if (mode == ChshMode::commuting_pairs) {
        for (const Mat* a : {&a0, &a1})
            for (const Mat* b : {&b0, &b1})
                if (max_abs_diff(commutator(*a, *b), zeros(n, n)) > tol)
                    throw ConfigError("an A observable fails to commute with a B observable");
    } else {
        if (left0.size() == 0 || right0.size() == 0)
            throw ConfigError("local_tensor config is missing its local factors");
        if (max_abs_diff(a0, tensor(left0, identity(right0.rows()))) > tol ||
            max_abs_diff(b0, tensor(identity(left0.rows()), right0)) > tol)
            throw ConfigError("local factors disagree with the tensored observables");
    }
}

ChshConfig ChshConfig::commuting(Mat a0, Mat a1, Mat b0, Mat b1) {
    ChshConfig cfg;
    cfg.a0 = std::move(a0);
    cfg.a1 = std::move(a1);
    cfg.b0 = std::move(b0);
    cfg.b1 = std::move(b1);
    cfg.mode = ChshMode::commuting_pairs;
    cfg.validate();
    return cfg;
}

ChshConfig ChshConfig::local(Mat left0, Mat left1, Mat right0, Mat right1) {
    ChshConfig cfg;
    const Mat idl = identity(left0.rows());
    const Mat idr = identity(right0.rows());
    cfg.a0 = tensor(left0, idr);
    cfg.a1 = tensor(left1, idr);
    cfg.b0 = tensor(idl, right0);
    cfg.b1 = tensor(idl, right1);
    cfg.left0 = std::move(left0);
    cfg.left1 = std::move(left1);
    cfg.right0 = std::move(right0);
    cfg.right1 = std::move(right1);
    cfg.mode = ChshMode::local_tensor;
    cfg.validate();
    return cfg;
}

Mat chsh_op(const ChshConfig& cfg) {
    cfg.validate();
    return cfg.a0 * cfg.b1 - cfg.a0 * cfg.b0 + cfg.a1 * cfg.b0 + cfg.a1 * cfg.b1;
}

double chsh_expect(const ChshConfig& cfg, const DensityMatrix& rho) {
    const Mat op = chsh_op(cfg);
    if (op.rows() != rho.dim())
        throw DimensionError("chsh_expect: state dimension disagrees with observables");
    const Complex tr = (op * rho.mat()).trace();
    if (std::abs(tr.imag()) > kDefaultTol)
        throw InternalInvariantError("CHSH expectation has a non-real trace");
    return tr.real();
}

Mat chsh_square(const ChshConfig& cfg, double tol) {
    const Mat s = chsh_op(cfg);
    const Mat sq = s * s;
    const Mat rhs = 4.0 * identity(s.rows()) -
                    commutator(cfg.a0, cfg.a1) * commutator(cfg.b0, cfg.b1);
    if (max_abs_diff(sq, rhs) > tol)
        throw InternalInvariantError("CHSH square identity violated");
    return sq;
}

std::pair<double, double> expect_abs_bound(const Mat& a, const DensityMatrix& rho, double tol) {
    if (!is_hermitian(a, tol))
        throw PreconditionError("expect_abs_bound: observable is not Hermitian");
    if (a.rows() != rho.dim())
        throw DimensionError("expect_abs_bound: dimensions disagree");
    const double value = std::abs((a * rho.mat()).trace().real());
    const double bound = l2_op_norm(a);
    if (value > bound + tol)
        throw InternalInvariantError("|trace(A rho)| exceeded ||A||");
    return {value, bound};
}

std::pair<ChshConfig, DensityMatrix> canonical_config() {
    Mat z(2, 2), x(2, 2);
    z << 1, 0, 0, -1;
    x << 0, 1, 1, 0;
    const double s = 1.0 / std::sqrt(2.0);
    const Mat zmx = s * (z - x);
    const Mat xpz = -s * (x + z);
    return {ChshConfig::local(z, x, zmx, xpz), rho_psi_minus()};
}

ChshReport check_bound(const ChshConfig& cfg, const DensityMatrix& rho, BoundContext context) {
    cfg.validate();
    double bound = 2.0;
    switch (context) {
        case BoundContext::general:
            bound = 2.0 * std::sqrt(2.0);
            break;
        case BoundContext::separable:
            if (cfg.mode != ChshMode::local_tensor)
                throw ContextError("separable context needs a local-tensor config");
            if (!rho.separable_by_construction())
                throw ContextError("separable context needs a separable-by-construction state");
            break;
        case BoundContext::commuting: {
            const Index n = cfg.a0.rows();
            const bool a_commute =
                max_abs_diff(commutator(cfg.a0, cfg.a1), zeros(n, n)) <= kCommuteTol;
            const bool b_commute =
                max_abs_diff(commutator(cfg.b0, cfg.b1), zeros(n, n)) <= kCommuteTol;
            if (!a_commute && !b_commute)
                throw ContextError("commuting context needs one commuting observable pair");
            break;
        }
        case BoundContext::lhv_free:
            break;
    }
    ChshReport report;
    report.expectation = chsh_expect(cfg, rho);
    report.abs_expectation = std::abs(report.expectation);
    report.applicable_bound = bound;
    report.bound_satisfied = report.abs_expectation <= bound + 1e-9;
    report.margin = bound - report.abs_expectation;
    return report;
}

std::string to_string(BoundContext context) {
    switch (context) {
        case BoundContext::lhv_free: return "lhv-free";
        case BoundContext::separable: return "separable";
        case BoundContext::commuting: return "commuting";
        case BoundContext::general: return "general";
    }
    return "?";
}

} // namespace qi
