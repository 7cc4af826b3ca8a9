// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qi/chsh.hpp"
#include "qi/lhv.hpp"
#include "qi/mat.hpp"
#include "qi/measurement.hpp"
#include "qi/random_gen.hpp"
#include "qi/spectral.hpp"
#include "qi/state.hpp"

using namespace qi;

namespace {

int g_failures = 0;
const double kTsirelson = 2.0 * std::sqrt(2.0);

double run_timed(const std::function<bool()>& body, double* elapsed_ms) {
    const auto start = std::chrono::steady_clock::now();
    const bool ok = body();
    const auto stop = std::chrono::steady_clock::now();
    *elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return ok;
}

void criterion(int number, const std::string& name, const std::function<bool()>& body,
               double budget_ms = 0.0) {
    double elapsed_ms = 0.0;
    bool ok = false;
    std::string detail;
    try {
        ok = run_timed(body, &elapsed_ms);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string(" (") + e.what() + ")";
    }
    if (budget_ms > 0.0 && elapsed_ms > budget_ms) {
        ok = false;
        detail += " (over time budget)";
    }
    std::printf("%s criterion %2d: %s [%.1f ms]%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                elapsed_ms, detail.c_str());
    if (!ok) ++g_failures;
}

// 2 <= n used by several corpora.
Index dim_2_to_8(Rng& rng) { return 2 + static_cast<Index>(rng.next_u64() % 7); }

} // namespace

int main() {
    criterion(1, "Tsirelson tightness: canonical |CHSH| = 2*sqrt(2) within 1e-9", [] {
        const auto [cfg, rho] = canonical_config();
        return std::abs(std::abs(chsh_expect(cfg, rho)) - kTsirelson) < 1e-9;
    }, 10.0);

    criterion(2, "general bound <= 2*sqrt(2) + 1e-8 on 100 random configs x densities", [] {
        Rng rng(1001);
        for (int c = 0; c < 100; ++c) {
            const Index n = 2 + static_cast<Index>(rng.next_u64() % 3);
            const Index m = 2 + static_cast<Index>(rng.next_u64() % (8 / n - 1));
            const ChshConfig cfg = random_local_config(n, m, rng);
            const DensityMatrix rho = random_density(n * m, rng);
            if (std::abs(chsh_expect(cfg, rho)) > kTsirelson + 1e-8) return false;
        }
        return true;
    }, 10000.0);

    criterion(3, "separable bound <= 2 + 1e-8 on 100 random separable densities", [] {
        Rng rng(1002);
        for (int c = 0; c < 100; ++c) {
            const Index n = 2 + static_cast<Index>(rng.next_u64() % 3);
            const Index m = 2 + static_cast<Index>(rng.next_u64() % (8 / n - 1));
            const ChshConfig cfg = random_local_config(n, m, rng);
            const DensityMatrix rho = random_separable_density(n, m, rng);
            if (std::abs(chsh_expect(cfg, rho)) > 2.0 + 1e-8) return false;
        }
        return true;
    }, 10000.0);

    criterion(4, "commuting bound <= 2 + 1e-8 on 100 configs with a commuting pair", [] {
        Rng rng(1003);
        for (int c = 0; c < 100; ++c) {
            const Index n = 2 + static_cast<Index>(rng.next_u64() % 3);
            const Index m = 2 + static_cast<Index>(rng.next_u64() % 3);
            // Alice reuses one observable, so [A0, A1] = 0.
            const Mat a = random_pm_one_observable(n, rng);
            const ChshConfig cfg = ChshConfig::local(a, a, random_pm_one_observable(m, rng),
                                                     random_pm_one_observable(m, rng));
            const DensityMatrix rho = random_density(n * m, rng);
            if (std::abs(chsh_expect(cfg, rho)) > 2.0 + 1e-8) return false;
        }
        return true;
    });

    criterion(5, "classical: max C over 16 strategies = 2; 100 mixed |C| <= 2 + 1e-12", [] {
        const auto table = classical_strategy_table();
        if (table.size() != 16 || classical_max() != 2.0) return false;
        Rng rng(1004);
        for (int c = 0; c < 100; ++c) {
            double total = 0.0, value = 0.0;
            std::vector<double> w(16);
            for (auto& x : w) {
                x = rng.next_double();
                total += x;
            }
            for (int i = 0; i < 16; ++i)
                value += (w[static_cast<size_t>(i)] / total) * table[static_cast<size_t>(i)].second;
            if (std::abs(value) > 2.0 + 1e-12) return false;
        }
        return true;
    });

    criterion(6, "square identity S^2 = 4 - [A0,A1][B0,B1] within 1e-8 on 100 configs", [] {
        Rng rng(1005);
        for (int c = 0; c < 100; ++c) {
            const Index n = 2 + static_cast<Index>(rng.next_u64() % 3);
            const Index m = 2 + static_cast<Index>(rng.next_u64() % 3);
            const ChshConfig cfg = random_local_config(n, m, rng);
            const Mat s = chsh_op(cfg);
            const Mat rhs = 4.0 * identity(s.rows()) -
                            commutator(cfg.a0, cfg.a1) * commutator(cfg.b0, cfg.b1);
            if (max_abs_diff(s * s, rhs) > 1e-8) return false;
        }
        return true;
    });

    criterion(7, "PVM soundness on 200 random Hermitian observables and densities", [] {
        Rng rng(1006);
        for (int c = 0; c < 200; ++c) {
            const Index n = dim_2_to_8(rng);
            const Mat a = random_hermitian(n, rng);
            const auto pm = make_pm(a);
            if (!is_proj_measurement(pm, 1e-8)) return false;
            Mat rebuilt = zeros(n, n);
            for (const auto& o : pm.outcomes) rebuilt += o.value * o.projector;
            if (max_abs_diff(rebuilt, a) > 1e-8) return false;
            const DensityMatrix rho = random_density(n, rng);
            double total = 0.0;
            for (std::size_t i = 0; i < pm.outcomes.size(); ++i) {
                const double p = outcome_prob(rho, pm, i); // throws if not real
                if (p < 0.0) return false;
                total += p;
            }
            if (std::abs(total - 1.0) > 1e-9) return false;
        }
        return true;
    });

    criterion(8, "expect_value = Re trace(A rho); joint product mean = trace((A x B) rho)", [] {
        Rng rng(1007);
        for (int c = 0; c < 200; ++c) {
            const Index n = dim_2_to_8(rng);
            const Mat a = random_hermitian(n, rng);
            const DensityMatrix rho = random_density(n, rng);
            if (std::abs(expect_value(rho, make_pm(a)) - (a * rho.mat()).trace().real()) > 1e-8)
                return false;
        }
        for (int c = 0; c < 50; ++c) {
            const Index n = 2 + static_cast<Index>(rng.next_u64() % 3);
            const Index m = 2 + static_cast<Index>(rng.next_u64() % 3);
            const Mat a = random_hermitian(n, rng);
            const Mat b = random_hermitian(m, rng);
            const DensityMatrix rho = random_density(n * m, rng);
            const auto dist = joint_distribution(rho, make_pm(a), make_pm(b));
            double mean = 0.0;
            for (const auto& e : dist.entries) mean += e.left_value * e.right_value * e.probability;
            if (std::abs(mean - (tensor(a, b) * rho.mat()).trace().real()) > 1e-8) return false;
        }
        return true;
    });

    criterion(9, "collapse always yields a valid density, including zero-probability branch", [] {
        Rng rng(1008);
        for (int c = 0; c < 100; ++c) {
            const Index n = dim_2_to_8(rng);
            const auto pm = make_pm(random_hermitian(n, rng));
            const DensityMatrix rho = random_density(n, rng);
            for (const auto& o : pm.outcomes) {
                const DensityMatrix after = collapse(rho, o.projector); // validates internally
                if (std::abs(after.mat().trace().real() - 1.0) > 1e-9) return false;
            }
        }
        // Zero-probability branch returns the maximally mixed state.
        const DensityMatrix rho0 = density_from_matrix(outer(ket0(), ket0()));
        return approx_equal(collapse(rho0, outer(ket1(), ket1())).mat(), max_mixed(2).mat(),
                            1e-12);
    });

    criterion(10, "operator norm = max singular value; norm inequalities on 200 instances", [] {
        Rng rng(1009);
        for (int c = 0; c < 200; ++c) {
            const Index n = dim_2_to_8(rng);
            const Mat a = random_complex(n, n, rng);
            const Mat b = random_complex(n, n, rng);
            const auto sv = singular_values(a);
            if (std::abs(l2_op_norm(a) - sv.front()) > 1e-8) return false;
            if (l2_op_norm(a + b) > l2_op_norm(a) + l2_op_norm(b) + 1e-8) return false;
            if (l2_op_norm(a * b) > l2_op_norm(a) * l2_op_norm(b) + 1e-8) return false;
            if (l2_op_norm(commutator(a, b)) > 2.0 * l2_op_norm(a) * l2_op_norm(b) + 1e-8)
                return false;
            const Mat h = random_hermitian(n, rng);
            if (std::abs(l2_op_norm(h) - std::sqrt(l2_op_norm(h * h))) > 1e-8) return false;
        }
        return true;
    });

    criterion(11, "Monte Carlo game: quantum ~2*sqrt(2), classical ~2, bit-stable in workers", [] {
        const auto [cfg, rho] = canonical_config();
        const GameStrategy quantum = QuantumStrategy{cfg, rho};
        const auto q = play_game(quantum, 100000, 20260823);
        if (std::abs(std::abs(q.c_estimate) - kTsirelson) > 4.0 * q.std_error) return false;
        if (std::abs(std::abs(q.score_estimate) - std::sqrt(2.0) / 2.0) > q.std_error)
            return false;

        const GameStrategy classical = DeterministicStrategy{1, 1, 1, 1};
        const auto cl = play_game(classical, 100000, 20260823);
        if (std::abs(cl.c_estimate - 2.0) > 4.0 * cl.std_error + 1e-12) return false;
        if (std::abs(cl.score_estimate - 0.5) > cl.std_error + 1e-12) return false;

        const auto w1 = play_game(quantum, 100000, 7, 1);
        const auto w2 = play_game(quantum, 100000, 7, 2);
        const auto w8 = play_game(quantum, 100000, 7, 8);
        return game_result_to_json(w1) == game_result_to_json(w2) &&
               game_result_to_json(w1) == game_result_to_json(w8);
    }, 25000.0);

    criterion(12, "LHV models: product expectation matches trace; composed |C| <= 2 + 1e-6", [] {
        Rng rng(1010);
        for (int rep = 0; rep < 50; ++rep) {
            const DensityMatrix rho_a = random_density(2, rng);
            const DensityMatrix rho_b = random_density(2, rng);
            const Mat a0 = random_pm_one_observable(2, rng);
            const Mat a1 = random_pm_one_observable(2, rng);
            const Mat b0 = random_pm_one_observable(2, rng);
            const Mat b1 = random_pm_one_observable(2, rng);
            const DensityMatrix rho = density_from_separable({{1.0, rho_a, rho_b}});

            double c_value = 0.0;
            int idx = 0;
            for (const auto& [al, bl] :
                 {std::pair{&a0, &b1}, {&a0, &b0}, {&a1, &b0}, {&a1, &b1}}) {
                const Mat a = tensor(*al, identity(2));
                const Mat b = tensor(identity(2), *bl);
                const auto pa = make_pm(*al);
                const auto pb = make_pm(*bl);
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
                if (!lhv_check(model)) return false;
                const double pe = lhv_product_expect(model); // checks the trace identity at 1e-8
                c_value += (idx == 1) ? -pe : pe;
                ++idx;
            }
            if (std::abs(c_value) > 2.0 + 1e-6) return false;
        }
        return true;
    });

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", g_failures);
    return 1;
}
