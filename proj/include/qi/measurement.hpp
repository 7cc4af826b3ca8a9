#ifndef QI_MEASUREMENT_HPP
#define QI_MEASUREMENT_HPP

#include <cstddef>
#include <vector>

#include "qi/mat.hpp"
#include "qi/rng.hpp"
#include "qi/state.hpp"

namespace qi {

/// One measurement outcome: a real value tagged with the orthogonal
/// projector onto the corresponding eigenspace.
struct MeasOutcome {
    double value;
    Mat projector;
};

/// Projection-valued measure: pairwise-distinct outcome values with
/// mutually orthogonal projectors summing to the identity.
struct ProjectiveMeasurement {
    std::vector<MeasOutcome> outcomes;
    Index dim;
};

bool is_proj_measurement(const ProjectiveMeasurement& pm, double tol = kDefaultTol);

/// Builds the PVM of a Hermitian observable from its spectrum; outcomes
/// come out in descending eigenvalue order. Consumers must identify
/// outcomes by value, not index.
ProjectiveMeasurement make_pm(const Mat& a, double tol = kDefaultTol);

/// trace(rho * P_i), clamped to [0,1]; the trace must be real within
/// tolerance or InternalInvariantError is thrown.
double outcome_prob(const DensityMatrix& rho, const ProjectiveMeasurement& pm, std::size_t i);

/// Post-measurement state P rho P / trace(rho P); the maximally mixed
/// state when trace(rho P) vanishes (below 1e-12).
DensityMatrix collapse(const DensityMatrix& rho, const Mat& projector, double tol = 1e-8);

/// sum_i prob_i * value_i; equals Re trace(A rho) when pm = make_pm(A).
double expect_value(const DensityMatrix& rho, const ProjectiveMeasurement& pm);

struct JointEntry {
    double left_value;
    double right_value;
    double probability;
};

/// Distribution over outcome pairs of a joint (tensor) measurement:
/// p(i,j) = trace((P_i tensor Q_j) rho). Entries keep (i,j) pairs
/// separate even when the value products collide.
struct JointOutcomeDistribution {
    std::vector<JointEntry> entries;
};

JointOutcomeDistribution joint_distribution(const DensityMatrix& rho,
                                            const ProjectiveMeasurement& left,
                                            const ProjectiveMeasurement& right);

/// Reporting view merging entries whose value products coincide.
std::vector<std::pair<double, double>> merged_by_product(const JointOutcomeDistribution& dist);

/// Inverse-CDF draw over the entries in stored order.
const JointEntry& sample_outcome(const JointOutcomeDistribution& dist, Rng& rng);

/// Single-observable sampling: draws an outcome value of pm on rho.
double sample_outcome(const DensityMatrix& rho, const ProjectiveMeasurement& pm, Rng& rng);

} // namespace qi

#endif
