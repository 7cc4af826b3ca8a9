#include <doctest.h>

#include <cmath>

#include "qi/random_gen.hpp"
#include "qi/spectral.hpp"
#include "qi/state.hpp"

using namespace qi;

TEST_CASE("density_from_matrix validation") {
    CHECK_NOTHROW(density_from_matrix(outer(ket0(), ket0())));
    CHECK_NOTHROW(density_from_matrix(0.5 * identity(2)));

    Mat bad(2, 2);
    bad << 2, 0, 0, -1;
    CHECK_THROWS_AS(density_from_matrix(bad), NotPositiveError);

    CHECK_THROWS_AS(density_from_matrix(identity(2)), TraceError);
}

TEST_CASE("density_from_ensemble") {
    const DensityMatrix singleton = density_from_ensemble({{1.0, ket0()}});
    CHECK(approx_equal(singleton.mat(), outer(ket0(), ket0()), 1e-12));

    // Indistinguishable ensembles give the same density.
    const DensityMatrix basis = density_from_ensemble({{0.5, ket0()}, {0.5, ket1()}});
    const DensityMatrix diag = density_from_ensemble({{0.5, ket_plus()}, {0.5, ket_minus()}});
    CHECK(approx_equal(basis.mat(), 0.5 * identity(2), 1e-12));
    CHECK(approx_equal(diag.mat(), 0.5 * identity(2), 1e-12));

    CHECK_THROWS_AS(density_from_ensemble({{0.9, ket0()}}), EnsembleError);
    CHECK_THROWS_AS(density_from_ensemble({{1.0, 2.0 * ket0()}}), EnsembleError);
}

TEST_CASE("is_pure") {
    CHECK(is_pure(density_from_matrix(outer(ket_plus(), ket_plus()))));
    CHECK_FALSE(is_pure(max_mixed(2)));
    CHECK(is_pure(rho_phi_plus()));
    CHECK_FALSE(is_pure(max_mixed(4)));
}

TEST_CASE("max_mixed") {
    CHECK(approx_equal(max_mixed(2).mat(), 0.5 * identity(2)));
    CHECK(approx_equal(max_mixed(1).mat(), identity(1)));
    CHECK_THROWS_AS(max_mixed(0), DimensionError);
}

TEST_CASE("density_from_separable") {
    const DensityMatrix plus = density_from_matrix(outer(ket_plus(), ket_plus()));
    const DensityMatrix rho_s = density_from_separable({{1.0, plus, plus}});
    CHECK(rho_s.separable_by_construction());
    CHECK(approx_equal(rho_s.mat(),
                       tensor(outer(ket_plus(), ket_plus()), outer(ket_plus(), ket_plus())),
                       1e-12));

    const DensityMatrix k0 = density_from_matrix(outer(ket0(), ket0()));
    const DensityMatrix k1 = density_from_matrix(outer(ket1(), ket1()));
    const DensityMatrix classical = density_from_separable({{0.5, k0, k0}, {0.5, k1, k1}});
    Mat expected = zeros(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = 0.5;
    CHECK(approx_equal(classical.mat(), expected, 1e-12));

    const DensityMatrix mm = density_from_separable({{1.0, max_mixed(2), max_mixed(2)}});
    CHECK(approx_equal(mm.mat(), 0.25 * identity(4), 1e-12));

    CHECK_THROWS_AS(density_from_separable({{0.5, k0, k0}}), SeparableError);
}

TEST_CASE("bell states") {
    Vec psi_minus(4);
    psi_minus << 0, 1, -1, 0;
    psi_minus /= std::sqrt(2.0);
    CHECK(approx_equal(bell_psi_minus(), psi_minus, 1e-15));

    for (const Vec& ket : {bell_phi_plus(), bell_phi_minus(), bell_psi_plus(), bell_psi_minus()})
        CHECK(vec_norm(ket) == doctest::Approx(1.0));

    const Mat rho = rho_psi_minus().mat();
    CHECK(rho(1, 1).real() == doctest::Approx(0.5));
    CHECK(rho(1, 2).real() == doctest::Approx(-0.5));
    CHECK(rho(2, 1).real() == doctest::Approx(-0.5));
    CHECK(rho(2, 2).real() == doctest::Approx(0.5));
    CHECK(std::abs(rho(0, 0)) < 1e-15);
}

TEST_CASE("evolve") {
    const DensityMatrix rho0 = density_from_matrix(outer(ket0(), ket0()));
    CHECK(approx_equal(evolve(hadamard(), rho0).mat(), outer(ket_plus(), ket_plus()), 1e-12));

    Vec ket00 = Vec::Zero(4);
    ket00(0) = 1;
    const DensityMatrix rho00 = density_from_matrix(outer(ket00, ket00));
    const Mat circuit = cnot() * tensor(hadamard(), identity(2));
    CHECK(approx_equal(evolve(circuit, rho00).mat(), rho_phi_plus().mat(), 1e-12));

    Rng rng(8);
    const DensityMatrix rho = random_density(3, rng);
    CHECK(approx_equal(evolve(identity(3), rho).mat(), rho.mat(), 1e-12));

    CHECK_THROWS_AS(evolve(2.0 * identity(2), rho0), PreconditionError);
}

TEST_CASE("named state registry") {
    CHECK(named_state("ket0").has_value());
    CHECK(named_state("phi+").has_value());
    CHECK(approx_equal(named_state("psi-")->mat(), rho_psi_minus().mat(), 1e-15));
    CHECK(approx_equal(named_state("maxmix:4")->mat(), max_mixed(4).mat(), 1e-15));
    CHECK_FALSE(named_state("nope").has_value());
    CHECK_FALSE(named_state("maxmix:x").has_value());
}

TEST_CASE("purity characterizations agree on random mixtures") {
    Rng rng(123);
    for (int c = 0; c < 1000; ++c) {
        const Index n = 2 + static_cast<Index>(rng.next_u64() % 3);
        const DensityMatrix rho = random_density(n, rng);
        const Mat sq = rho.mat() * rho.mat();
        const bool by_square = max_abs_diff(sq, rho.mat()) <= 1e-8;
        const bool by_trace = std::abs(sq.trace().real() - 1.0) <= 1e-8;
        CHECK(by_square == by_trace);
        CHECK(is_pure(rho) == by_square);
    }
}
