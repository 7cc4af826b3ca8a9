#ifndef QI_RANDOM_GEN_HPP
#define QI_RANDOM_GEN_HPP

#include "qi/chsh.hpp"
#include "qi/mat.hpp"
#include "qi/rng.hpp"
#include "qi/state.hpp"

namespace qi {

// Samplers for property tests and the verify command. All randomness
// comes from the library Rng so runs are reproducible from a seed alone.

/// Standard complex Gaussian entries (Box-Muller).
Complex random_gaussian(Rng& rng);
Mat random_complex(Index rows, Index cols, Rng& rng);

/// (M + M^dagger)/2 of a random complex matrix.
Mat random_hermitian(Index n, Rng& rng);

/// Q factor of a random complex matrix; Haar-like.
Mat random_unitary(Index n, Rng& rng);

/// U diag(+-1) U^dagger: a random Hermitian square root of the identity.
Mat random_pm_one_observable(Index n, Rng& rng);

/// G G^dagger normalized to unit trace.
DensityMatrix random_density(Index n, Rng& rng);

Vec random_unit_vector(Index n, Rng& rng);

/// Tensor-structured config a_i tensor 1, 1 tensor b_j on dims (n, m).
ChshConfig random_local_config(Index n, Index m, Rng& rng);

/// Random convex mixture of product densities on dims (n, m); tagged
/// separable by construction.
DensityMatrix random_separable_density(Index n, Index m, Rng& rng, int terms = 3);

} // namespace qi

#endif
