#include "qi/random_gen.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qi {

Complex random_gaussian(Rng& rng) {
    // Box-Muller; u clamped away from 0.
    const double u = std::max(rng.next_double(), 0x1.0p-53);
    const double v = rng.next_double();
    const double r = std::sqrt(-2.0 * std::log(u));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return {r * std::cos(two_pi * v), r * std::sin(two_pi * v)};
}

Mat random_complex(Index rows, Index cols, Rng& rng) {
    Mat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = random_gaussian(rng);
    return m;
}

Mat random_hermitian(Index n, Rng& rng) {
    const Mat m = random_complex(n, n, rng);
    return 0.5 * (m + Mat(m.adjoint()));
}

Mat random_unitary(Index n, Rng& rng) {
    const Mat m = random_complex(n, n, rng);
    Eigen::HouseholderQR<Mat> qr(m);
    return qr.householderQ() * Mat::Identity(n, n);
}

Mat random_pm_one_observable(Index n, Rng& rng) {
    const Mat u = random_unitary(n, rng);
    Eigen::VectorXcd signs(n);
    for (Index i = 0; i < n; ++i) signs(i) = rng.next_bit() ? 1.0 : -1.0;
    return u * signs.asDiagonal() * u.adjoint();
}

DensityMatrix random_density(Index n, Rng& rng) {
    const Mat g = random_complex(n, n, rng);
    Mat p = g * g.adjoint();
    p /= p.trace().real();
    return density_from_matrix(p);
}

Vec random_unit_vector(Index n, Rng& rng) {
    Vec v(n);
    for (Index i = 0; i < n; ++i) v(i) = random_gaussian(rng);
    return v / v.norm();
}

ChshConfig random_local_config(Index n, Index m, Rng& rng) {
    return ChshConfig::local(random_pm_one_observable(n, rng),
                             random_pm_one_observable(n, rng),
                             random_pm_one_observable(m, rng),
                             random_pm_one_observable(m, rng));
}

DensityMatrix random_separable_density(Index n, Index m, Rng& rng, int terms) {
    SeparableDecomposition dec;
    double total = 0.0;
    std::vector<double> weights;
    for (int t = 0; t < terms; ++t) {
        weights.push_back(rng.next_double() + 1e-3);
        total += weights.back();
    }
    for (int t = 0; t < terms; ++t)
        dec.push_back({weights[static_cast<size_t>(t)] / total,
                       random_density(n, rng), random_density(m, rng)});
    return density_from_separable(dec);
}

} // namespace qi
