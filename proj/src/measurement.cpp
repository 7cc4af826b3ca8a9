#include "qi/measurement.hpp"

#include <cmath>

#include "qi/spectral.hpp"

namespace qi {

namespace {
constexpr double kProbClamp = 1e-10;   // slack clamped to [0,1]
constexpr double kZeroProb = 1e-12;    // collapse zero-probability threshold

bool is_projector(const Mat& p, double tol) {
    return p.rows() == p.cols() && max_abs_diff(p, p.adjoint()) <= tol &&
           max_abs_diff(p * p, p) <= tol;
}

double clamp_prob(double p) {
    if (p < -kProbClamp || p > 1.0 + kProbClamp)
        throw InternalInvariantError("probability outside [0,1] beyond clamping slack");
    return std::min(1.0, std::max(0.0, p));
}
} // namespace

bool is_proj_measurement(const ProjectiveMeasurement& pm, double tol) {
    const Index n = pm.dim;
    Mat sum = zeros(n, n);
    for (std::size_t i = 0; i < pm.outcomes.size(); ++i) {
        const Mat& p = pm.outcomes[i].projector;
        if (p.rows() != n || p.cols() != n) return false;
        if (!is_projector(p, tol)) return false;
        for (std::size_t j = 0; j < i; ++j) {
            if (pm.outcomes[i].value == pm.outcomes[j].value) return false;
            if (max_abs_diff(p * pm.outcomes[j].projector, zeros(n, n)) > tol) return false;
        }
        sum += p;
    }
    return max_abs_diff(sum, identity(n)) <= tol;
}

ProjectiveMeasurement make_pm(const Mat& a, double tol) {
    if (!is_hermitian(a, tol))
        throw PreconditionError("make_pm: observable is not Hermitian");
    ProjectiveMeasurement pm;
    pm.dim = a.rows();
    for (auto& entry : spectrum(a, tol))
        pm.outcomes.push_back({entry.eigenvalue, std::move(entry.projector)});
    return pm;
}

double outcome_prob(const DensityMatrix& rho, const ProjectiveMeasurement& pm, std::size_t i) {
    if (i >= pm.outcomes.size())
        throw IndexError("outcome_prob: outcome index out of range");
    if (pm.dim != rho.dim())
        throw DimensionError("outcome_prob: measurement and state dimensions disagree");
    const Complex tr = (rho.mat() * pm.outcomes[i].projector).trace();
    if (std::abs(tr.imag()) > kDefaultTol)
        throw InternalInvariantError("outcome probability has a non-real trace");
    return clamp_prob(tr.real());
}

DensityMatrix collapse(const DensityMatrix& rho, const Mat& projector, double tol) {
    if (projector.rows() != rho.dim() || projector.cols() != rho.dim())
        throw DimensionError("collapse: projector dimension disagrees with state");
    if (!is_projector(projector, tol))
        throw PreconditionError("collapse: operator is not an orthogonal projector");
    const double p = (rho.mat() * projector).trace().real();
    if (p < kZeroProb) return max_mixed(rho.dim());
    return density_from_matrix(projector * rho.mat() * projector / p);
}

double expect_value(const DensityMatrix& rho, const ProjectiveMeasurement& pm) {
    if (pm.dim != rho.dim())
        throw DimensionError("expect_value: measurement and state dimensions disagree");
    double acc = 0.0;
    for (std::size_t i = 0; i < pm.outcomes.size(); ++i)
        acc += outcome_prob(rho, pm, i) * pm.outcomes[i].value;
    return acc;
}

JointOutcomeDistribution joint_distribution(const DensityMatrix& rho,
                                            const ProjectiveMeasurement& left,
                                            const ProjectiveMeasurement& right) {
    if (left.dim * right.dim != rho.dim())
        throw DimensionError("joint_distribution: state dimension is not the product of factors");
    JointOutcomeDistribution dist;
    double total = 0.0;
    for (const auto& lo : left.outcomes)
        for (const auto& ro : right.outcomes) {
            const Complex tr = (tensor(lo.projector, ro.projector) * rho.mat()).trace();
            if (std::abs(tr.imag()) > kDefaultTol)
                throw InternalInvariantError("joint probability has a non-real trace");
            const double p = clamp_prob(tr.real());
            total += p;
            dist.entries.push_back({lo.value, ro.value, p});
        }
    if (std::abs(total - 1.0) > 1e-9)
        throw InternalInvariantError("joint probabilities do not sum to 1");
    return dist;
}

std::vector<std::pair<double, double>> merged_by_product(const JointOutcomeDistribution& dist) {
    std::vector<std::pair<double, double>> merged;
    for (const auto& e : dist.entries) {
        const double product = e.left_value * e.right_value;
        bool found = false;
        for (auto& m : merged)
            if (m.first == product) {
                m.second += e.probability;
                found = true;
                break;
            }
        if (!found) merged.emplace_back(product, e.probability);
    }
    return merged;
}

const JointEntry& sample_outcome(const JointOutcomeDistribution& dist, Rng& rng) {
    const double u = rng.next_double();
    double cdf = 0.0;
    for (const auto& e : dist.entries) {
        cdf += e.probability;
        if (u < cdf) return e;
    }
    return dist.entries.back();
}

double sample_outcome(const DensityMatrix& rho, const ProjectiveMeasurement& pm, Rng& rng) {
    const double u = rng.next_double();
    double cdf = 0.0;
    for (std::size_t i = 0; i < pm.outcomes.size(); ++i) {
        cdf += outcome_prob(rho, pm, i);
        if (u < cdf) return pm.outcomes[i].value;
    }
    return pm.outcomes.back().value;
}

} // namespace qi
