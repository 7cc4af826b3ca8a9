#include "qi/verify.hpp"

#include <cmath>
#include <functional>

#include "qi/chsh.hpp"
#include "qi/lhv.hpp"
#include "qi/mat.hpp"
#include "qi/measurement.hpp"
#include "qi/random_gen.hpp"
#include "qi/rng.hpp"
#include "qi/spectral.hpp"
#include "qi/state.hpp"

namespace qi {

namespace {

struct Suite {
    SuiteResult result;
    Rng rng;

    Suite(std::string name, std::uint64_t seed) : rng(mix64(seed, 1, 0)) {
        result.name = std::move(name);
    }

    void check(bool ok, const std::string& what) {
        ++result.cases;
        if (!ok) {
            ++result.failures;
            if (result.first_failure.empty()) result.first_failure = what;
        }
    }

    Index small_dim() { return 2 + static_cast<Index>(rng.next_u64() % 7); } // 2..8
};

SuiteResult mat_core_suite(std::uint64_t seed, int cases) {
    Suite s("mat-core", seed);
    for (int c = 0; c < cases; ++c) {
        const Index n = s.small_dim();
        const Mat a = random_complex(n, n, s.rng);
        const Mat b = random_complex(n, n, s.rng);
        s.check(approx_equal(adjoint(mul(a, b)), mul(adjoint(b), adjoint(a)), 1e-12 * 100),
                "(AB)^dagger = B^dagger A^dagger");
        s.check(std::abs(trace(mul(a, b)) - trace(mul(b, a))) < 1e-10,
                "trace(AB) = trace(BA)");
        s.check(std::abs(trace(tensor(a, b)) - trace(a) * trace(b)) < 1e-8,
                "trace(A tensor B) = trace(A) trace(B)");
        const Vec u = random_unit_vector(n, s.rng);
        const Vec v = random_unit_vector(n, s.rng);
        const Vec w = random_unit_vector(n, s.rng);
        const Vec x = random_unit_vector(n, s.rng);
        s.check(approx_equal(mul(outer(u, v), outer(w, x)), scale(inner(v, w), outer(u, x)), 1e-10),
                "|u><v| |w><x| = <v|w> |u><x|");
        s.check(std::abs(inner(u, v) - std::conj(inner(v, u))) < 1e-12,
                "conjugate symmetry of the inner product");
        const Mat c2 = random_complex(n, n, s.rng);
        const Mat d2 = random_complex(n, n, s.rng);
        s.check(approx_equal(mul(tensor(a, b), tensor(c2, d2)), tensor(mul(a, c2), mul(b, d2)), 1e-7),
                "(A tensor B)(C tensor D) = AC tensor BD");
    }
    return s.result;
}

SuiteResult spectral_suite(std::uint64_t seed, int cases) {
    Suite s("spectral", seed);
    for (int c = 0; c < cases; ++c) {
        const Index n = s.small_dim();
        const Mat a = random_hermitian(n, s.rng);
        const auto dec = real_diag_decomp(a);
        s.check(is_unitary(dec.unitary, 1e-9), "decomposition unitary");
        s.check(approx_equal(dec.reconstruct(), a, 1e-9), "reconstruction A = U d U^dagger");

        const auto spec = spectrum(a);
        Mat proj_sum = zeros(n, n);
        Mat weighted = zeros(n, n);
        bool ortho = true;
        for (std::size_t i = 0; i < spec.size(); ++i) {
            proj_sum += spec[i].projector;
            weighted += spec[i].eigenvalue * spec[i].projector;
            for (std::size_t j = 0; j < i; ++j)
                ortho = ortho && max_abs_diff(spec[i].projector * spec[j].projector,
                                              zeros(n, n)) < 1e-8;
        }
        s.check(ortho, "eigenspace projectors pairwise orthogonal");
        s.check(approx_equal(proj_sum, identity(n), 1e-8), "projectors sum to identity");
        s.check(approx_equal(weighted, a, 1e-8), "A = sum a P_a");

        const Mat b = random_hermitian(n, s.rng);
        s.check(l2_op_norm(a + b) <= l2_op_norm(a) + l2_op_norm(b) + 1e-8, "triangle inequality");
        s.check(l2_op_norm(a * b) <= l2_op_norm(a) * l2_op_norm(b) + 1e-8, "submultiplicativity");
        s.check(l2_op_norm(commutator(a, b)) <= 2.0 * l2_op_norm(a) * l2_op_norm(b) + 1e-8,
                "commutator norm bound");
        s.check(std::abs(l2_op_norm(a) - std::sqrt(l2_op_norm(a * a))) < 1e-8,
                "||S|| = sqrt(||S^2||) for Hermitian S");
    }
    return s.result;
}

SuiteResult state_suite(std::uint64_t seed, int cases) {
    Suite s("quantum-state", seed);
    for (int c = 0; c < cases; ++c) {
        const Index n = s.small_dim();
        const DensityMatrix rho = random_density(n, s.rng);

        // Eigendecompose back into an ensemble and rebuild.
        const auto dec = real_diag_decomp(rho.mat());
        Ensemble ensemble;
        for (Index i = 0; i < n; ++i) {
            const double w = std::max(0.0, dec.eigenvalues[static_cast<size_t>(i)]);
            if (w > 1e-14) ensemble.push_back({w, dec.unitary.col(i)});
        }
        const DensityMatrix rebuilt = density_from_ensemble(ensemble);
        s.check(approx_equal(rebuilt.mat(), rho.mat(), 1e-8), "ensemble round trip");

        const bool pure_sq = max_abs_diff(rho.mat() * rho.mat(), rho.mat()) <= 1e-8;
        const bool pure_tr = std::abs((rho.mat() * rho.mat()).trace().real() - 1.0) <= 1e-8;
        s.check(pure_sq == pure_tr && pure_sq == is_pure(rho), "purity characterizations agree");

        const Mat u = random_unitary(n, s.rng);
        const DensityMatrix evolved = evolve(u, rho);
        s.check(std::abs(evolved.mat().trace().real() - 1.0) < 1e-10, "evolve preserves trace");
        auto ev_before = real_diag_decomp(rho.mat()).eigenvalues;
        auto ev_after = real_diag_decomp(evolved.mat()).eigenvalues;
        double diff = 0.0;
        for (std::size_t i = 0; i < ev_before.size(); ++i)
            diff = std::max(diff, std::abs(ev_before[i] - ev_after[i]));
        s.check(diff < 1e-8, "evolve preserves the spectrum");
    }
    return s.result;
}

SuiteResult measurement_suite(std::uint64_t seed, int cases) {
    Suite s("measurement", seed);
    for (int c = 0; c < cases; ++c) {
        const Index n = s.small_dim();
        const Mat a = random_hermitian(n, s.rng);
        const auto pm = make_pm(a);
        s.check(is_proj_measurement(pm, 1e-8), "make_pm yields a projective measurement");
        Mat rebuilt = zeros(n, n);
        for (const auto& o : pm.outcomes) rebuilt += o.value * o.projector;
        s.check(approx_equal(rebuilt, a, 1e-8), "A = sum value projector");

        const DensityMatrix rho = random_density(n, s.rng);
        double total = 0.0;
        for (std::size_t i = 0; i < pm.outcomes.size(); ++i) {
            const double p = outcome_prob(rho, pm, i);
            s.check(p >= 0.0 && p <= 1.0, "probability in [0,1]");
            total += p;
        }
        s.check(std::abs(total - 1.0) < 1e-9, "probabilities sum to 1");
        s.check(std::abs(expect_value(rho, pm) - (a * rho.mat()).trace().real()) < 1e-8,
                "expect_value = Re trace(A rho)");

        // Collapse on the first outcome, and the zero-probability branch.
        const DensityMatrix collapsed = collapse(rho, pm.outcomes.front().projector);
        s.check(std::abs(collapsed.mat().trace().real() - 1.0) < 1e-9, "collapse is a density");
        const DensityMatrix fallback =
            collapse(density_from_matrix(outer(ket0(), ket0())), outer(ket1(), ket1()));
        s.check(approx_equal(fallback.mat(), max_mixed(2).mat(), 1e-12),
                "zero-probability collapse is maximally mixed");
    }
    return s.result;
}

SuiteResult chsh_suite(std::uint64_t seed, int cases) {
    Suite s("chsh", seed);
    const double tsirelson = 2.0 * std::sqrt(2.0);
    for (int c = 0; c < cases; ++c) {
        const Index n = 2 + static_cast<Index>(s.rng.next_u64() % 3); // 2..4
        const Index m = 2 + static_cast<Index>(s.rng.next_u64() % 3);
        const ChshConfig cfg = random_local_config(n, m, s.rng);
        const Mat op = chsh_op(cfg);
        s.check(is_hermitian(op, 1e-8), "CHSH operator Hermitian");
        try {
            chsh_square(cfg, 1e-8);
            s.check(true, "square identity");
        } catch (const InternalInvariantError&) {
            s.check(false, "square identity");
        }
        const double norm = l2_op_norm(op);
        const double comm_bound =
            4.0 + l2_op_norm(commutator(cfg.a0, cfg.a1)) * l2_op_norm(commutator(cfg.b0, cfg.b1));
        s.check(norm * norm <= comm_bound + 1e-8, "norm chain first step");
        s.check(norm <= tsirelson + 1e-8, "||S|| <= 2 sqrt(2)");

        const DensityMatrix rho = random_density(n * m, s.rng);
        const double value = chsh_expect(cfg, rho);
        s.check(std::abs(value) <= norm + 1e-8, "|expectation| <= ||S||");
        s.check(std::abs(value) <= tsirelson + 1e-8, "general bound");

        const DensityMatrix sep = random_separable_density(n, m, s.rng);
        s.check(std::abs(chsh_expect(cfg, sep)) <= 2.0 + 1e-8, "separable bound");
    }
    const auto [cfg, rho] = canonical_config();
    s.check(std::abs(std::abs(chsh_expect(cfg, rho)) - tsirelson) < 1e-9,
            "canonical configuration attains 2 sqrt(2)");
    return s.result;
}

SuiteResult lhv_suite(std::uint64_t seed, int cases) {
    Suite s("lhv-game", seed);
    const auto table = classical_strategy_table();
    s.check(table.size() == 16, "16 deterministic strategies");
    for (const auto& [st, c] : table) s.check(std::abs(c) <= 2.0, "deterministic |C| <= 2");
    s.check(classical_max() == 2.0, "classical max C = 2");

    for (int c = 0; c < cases; ++c) {
        // Random mixture of deterministic strategies stays within |C| <= 2.
        MixedClassicalStrategy mixed;
        double total = 0.0;
        for (const auto& [st, cv] : table) {
            const double w = s.rng.next_double();
            mixed.emplace_back(w, st);
            total += w;
        }
        for (auto& [w, st] : mixed) w /= total;
        double mixed_c = 0.0;
        for (const auto& [w, st] : mixed) mixed_c += w * chsh_value(st);
        s.check(std::abs(mixed_c) <= 2.0 + 1e-12, "mixed |C| <= 2");

        // Product-state LHV model: atoms are outcome pairs.
        const DensityMatrix rho_a = random_density(2, s.rng);
        const DensityMatrix rho_b = random_density(2, s.rng);
        const Mat a_local = random_pm_one_observable(2, s.rng);
        const Mat b_local = random_pm_one_observable(2, s.rng);
        const Mat a = tensor(a_local, identity(2));
        const Mat b = tensor(identity(2), b_local);
        SeparableDecomposition sep{{1.0, rho_a, rho_b}};
        const DensityMatrix rho = density_from_separable(sep);

        const auto pa = make_pm(a_local);
        const auto pb = make_pm(b_local);
        LhvModel model{{}, a, b, rho, {}, {}};
        for (std::size_t i = 0; i < pa.outcomes.size(); ++i)
            for (std::size_t j = 0; j < pb.outcomes.size(); ++j)
                model.space.atoms.push_back(
                    {"", outcome_prob(rho_a, pa, i) * outcome_prob(rho_b, pb, j)});
        for (std::size_t i = 0; i < pa.outcomes.size(); ++i) {
            RvTable t{pa.outcomes[i].value, {}};
            for (std::size_t i2 = 0; i2 < pa.outcomes.size(); ++i2)
                for (std::size_t j2 = 0; j2 < pb.outcomes.size(); ++j2)
                    t.values.push_back(i2 == i ? 1.0 : 0.0);
            model.x.push_back(std::move(t));
        }
        for (std::size_t j = 0; j < pb.outcomes.size(); ++j) {
            RvTable t{pb.outcomes[j].value, {}};
            for (std::size_t i2 = 0; i2 < pa.outcomes.size(); ++i2)
                for (std::size_t j2 = 0; j2 < pb.outcomes.size(); ++j2)
                    t.values.push_back(j2 == j ? 1.0 : 0.0);
            model.y.push_back(std::move(t));
        }
        s.check(lhv_check(model), "product-state model passes lhv_check");
        const double pe = lhv_product_expect(model);
        s.check(std::abs(pe - (a * b * rho.mat()).trace().real()) < 1e-8,
                "product expectation matches trace(A B rho)");
    }

    // Monte Carlo consistency at a modest round count.
    const DeterministicStrategy st{1, 1, 1, 1};
    const auto result = play_game(GameStrategy(st), 10000, mix64(seed, 2, 0));
    s.check(std::abs(result.c_estimate - 2.0) <= 4.0 * result.std_error + 1e-12,
            "Monte Carlo matches exact classical C");
    return s.result;
}

} // namespace

std::vector<SuiteResult> run_property_suites(std::uint64_t seed, int cases) {
    return {mat_core_suite(seed, cases),    spectral_suite(seed, cases),
            state_suite(seed, cases),       measurement_suite(seed, cases),
            chsh_suite(seed, cases),        lhv_suite(seed, cases)};
}

} // namespace qi
