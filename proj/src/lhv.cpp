#include "qi/lhv.hpp"

#include <cmath>
#include <thread>

#include <nlohmann/json.hpp>

#include "qi/measurement.hpp"
#include "qi/rng.hpp"
#include "qi/spectral.hpp"

namespace qi {

void DiscreteProbabilitySpace::validate(double tol) const {
    double total = 0.0;
    for (const auto& atom : atoms) {
        if (atom.weight < -tol)
            throw ModelError("probability space has a negative weight");
        total += atom.weight;
    }
    if (std::abs(total - 1.0) > tol)
        throw ModelError("probability space weights do not sum to 1");
}

namespace {

const RvTable& table_for(const RvFamily& family, double eigenvalue, double tol) {
    for (const auto& t : family)
        if (std::abs(t.eigenvalue - eigenvalue) <= tol) return t;
    throw ModelError("no random variable for eigenvalue " + std::to_string(eigenvalue));
}

} // namespace

bool lhv_check(const LhvModel& m, double tol) {
    m.space.validate(tol);
    const Spectrum spec_a = spectrum(m.observable_a);
    const Spectrum spec_b = spectrum(m.observable_b);
    const std::size_t n_atoms = m.space.atoms.size();

    for (const auto& family : {std::cref(m.x), std::cref(m.y)})
        for (const auto& t : family.get())
            if (t.values.size() != n_atoms)
                throw ModelError("random variable table length disagrees with atom count");

    for (std::size_t w = 0; w < n_atoms; ++w) {
        if (m.space.atoms[w].weight <= 0.0) continue; // AE holds trivially here
        double sum_x = 0.0, sum_y = 0.0;
        for (const auto& ea : spec_a) {
            const double v = table_for(m.x, ea.eigenvalue, tol).values[w];
            if (v < -tol) return false;
            sum_x += v;
        }
        for (const auto& eb : spec_b) {
            const double v = table_for(m.y, eb.eigenvalue, tol).values[w];
            if (v < -tol) return false;
            sum_y += v;
        }
        if (std::abs(sum_x - 1.0) > tol || std::abs(sum_y - 1.0) > tol) return false;
    }

    // E[X_a Y_b] = trace(P_a P_b rho) for every outcome pair.
    for (const auto& ea : spec_a)
        for (const auto& eb : spec_b) {
            const auto& xt = table_for(m.x, ea.eigenvalue, tol);
            const auto& yt = table_for(m.y, eb.eigenvalue, tol);
            double expect = 0.0;
            for (std::size_t w = 0; w < n_atoms; ++w)
                expect += m.space.atoms[w].weight * xt.values[w] * yt.values[w];
            const Complex tr = (ea.projector * eb.projector * m.rho.mat()).trace();
            if (std::abs(expect - tr.real()) > tol || std::abs(tr.imag()) > tol) return false;
        }
    return true;
}

double qt_expect(const Mat& observable, const RvFamily& x, std::size_t atom_index) {
    double acc = 0.0;
    for (const auto& entry : spectrum(observable)) {
        const auto& t = table_for(x, entry.eigenvalue, 1e-8);
        if (atom_index >= t.values.size())
            throw ModelError("qt_expect: atom index out of range");
        acc += entry.eigenvalue * t.values[atom_index];
    }
    return acc;
}

double lhv_product_expect(const LhvModel& m, double tol) {
    double acc = 0.0;
    for (std::size_t w = 0; w < m.space.atoms.size(); ++w)
        acc += m.space.atoms[w].weight *
               qt_expect(m.observable_a, m.x, w) * qt_expect(m.observable_b, m.y, w);
    const Complex tr = (m.observable_a * m.observable_b * m.rho.mat()).trace();
    if (std::abs(acc - tr.real()) > tol)
        throw InternalInvariantError("lhv_product_expect disagrees with trace(A B rho)");
    return acc;
}

double chsh_value(const DeterministicStrategy& s) {
    return static_cast<double>(s.a0 * s.b1 - s.a0 * s.b0 + s.a1 * s.b0 + s.a1 * s.b1);
}

std::vector<std::pair<DeterministicStrategy, double>> classical_strategy_table() {
    std::vector<std::pair<DeterministicStrategy, double>> table;
    for (int a0 : {-1, 1})
        for (int a1 : {-1, 1})
            for (int b0 : {-1, 1})
                for (int b1 : {-1, 1}) {
                    const DeterministicStrategy s{a0, a1, b0, b1};
                    table.emplace_back(s, chsh_value(s));
                }
    return table;
}

double classical_max() {
    double best = -4.0;
    for (const auto& [s, c] : classical_strategy_table()) best = std::max(best, c);
    return best;
}

namespace {

struct Tallies {
    std::array<long, 4> counts{};
    std::array<long, 4> product_sums{};

    void merge(const Tallies& other) {
        for (int k = 0; k < 4; ++k) {
            counts[k] += other.counts[k];
            product_sums[k] += other.product_sums[k];
        }
    }
};

// Per-round outputs for input pair (x, y), given the round generator.
struct RoundPlayer {
    // Joint distributions per input pair for quantum play; empty otherwise.
    std::array<JointOutcomeDistribution, 4> joint;
    const DeterministicStrategy* det = nullptr;
    const MixedClassicalStrategy* mixed = nullptr;
    bool quantum = false;

    std::pair<int, int> play(int x, int y, Rng& rng) const {
        if (det) {
            return {x == 0 ? det->a0 : det->a1, y == 0 ? det->b0 : det->b1};
        }
        if (mixed) {
            const double u = rng.next_double();
            double cdf = 0.0;
            const DeterministicStrategy* chosen = &mixed->back().second;
            for (const auto& [w, s] : *mixed) {
                cdf += w;
                if (u < cdf) {
                    chosen = &s;
                    break;
                }
            }
            return {x == 0 ? chosen->a0 : chosen->a1, y == 0 ? chosen->b0 : chosen->b1};
        }
        const auto& e = sample_outcome(joint[static_cast<size_t>(2 * x + y)], rng);
        return {e.left_value > 0 ? 1 : -1, e.right_value > 0 ? 1 : -1};
    }
};

Tallies run_rounds(const RoundPlayer& player, long begin, long end, std::uint64_t seed) {
    Tallies t;
    for (long r = begin; r < end; ++r) {
        Rng rng = Rng::for_round(seed, 0, static_cast<std::uint64_t>(r));
        const int x = rng.next_bit() ? 1 : 0;
        const int y = rng.next_bit() ? 1 : 0;
        const auto [a, b] = player.play(x, y, rng);
        const int k = 2 * x + y;
        const int product = a * b;
        t.counts[static_cast<size_t>(k)] += 1;
        t.product_sums[static_cast<size_t>(k)] += product;
    }
    return t;
}

std::string describe(const GameStrategy& strategy) {
    if (const auto* det = std::get_if<DeterministicStrategy>(&strategy))
        return "classical:" + std::to_string(det->a0) + "," + std::to_string(det->a1) + "," +
               std::to_string(det->b0) + "," + std::to_string(det->b1);
    if (std::holds_alternative<MixedClassicalStrategy>(strategy)) return "classical-mixed";
    return "quantum";
}

} // namespace

GameResult play_game(const GameStrategy& strategy, long rounds, std::uint64_t seed, int workers) {
    if (rounds < 1) throw RangeError("play_game: rounds must be >= 1");
    if (workers < 1) throw RangeError("play_game: workers must be >= 1");

    RoundPlayer player;
    if (const auto* det = std::get_if<DeterministicStrategy>(&strategy)) {
        player.det = det;
    } else if (const auto* mixed = std::get_if<MixedClassicalStrategy>(&strategy)) {
        if (mixed->empty()) throw ConfigError("mixed strategy is empty");
        double total = 0.0;
        for (const auto& [w, s] : *mixed) {
            if (w < 0.0) throw ConfigError("mixed strategy has a negative weight");
            total += w;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw ConfigError("mixed strategy weights do not sum to 1");
        player.mixed = mixed;
    } else {
        const auto& q = std::get<QuantumStrategy>(strategy);
        q.cfg.validate();
        if (q.cfg.mode != ChshMode::local_tensor)
            throw ConfigError("quantum game strategy needs a local-tensor config");
        if (q.cfg.a0.rows() != q.rho.dim())
            throw ConfigError("quantum strategy state dimension disagrees with observables");
        const std::array<const Mat*, 2> lefts{&q.cfg.left0, &q.cfg.left1};
        const std::array<const Mat*, 2> rights{&q.cfg.right0, &q.cfg.right1};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                player.joint[static_cast<size_t>(2 * x + y)] = joint_distribution(
                    q.rho, make_pm(*lefts[static_cast<size_t>(x)]),
                    make_pm(*rights[static_cast<size_t>(y)]));
        player.quantum = true;
    }

    Tallies total;
    if (workers == 1) {
        total = run_rounds(player, 0, rounds, seed);
    } else {
        std::vector<Tallies> parts(static_cast<size_t>(workers));
        std::vector<std::thread> threads;
        const long chunk = (rounds + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long begin = w * chunk;
            const long end = std::min(rounds, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back([&, w, begin, end] {
                parts[static_cast<size_t>(w)] = run_rounds(player, begin, end, seed);
            });
        }
        for (auto& th : threads) th.join();
        for (const auto& p : parts) total.merge(p); // deterministic merge order
    }

    GameResult result;
    result.rounds = rounds;
    result.seed = seed;
    result.strategy = describe(strategy);
    result.counts = total.counts;
    result.product_sums = total.product_sums;
    double var = 0.0;
    for (int k = 0; k < 4; ++k) {
        const long n = total.counts[static_cast<size_t>(k)];
        const double e =
            n > 0 ? static_cast<double>(total.product_sums[static_cast<size_t>(k)]) / n : 0.0;
        result.expectations[static_cast<size_t>(k)] = e;
        if (n > 0) var += (1.0 - e * e) / static_cast<double>(n);
    }
    result.c_estimate = result.expectations[1] - result.expectations[0] +
                        result.expectations[2] + result.expectations[3];
    result.score_estimate = result.c_estimate / 4.0;
    result.std_error = std::sqrt(var);
    return result;
}

std::array<double, 4> analytic_expectations(const GameStrategy& strategy) {
    std::array<double, 4> e{};
    if (const auto* det = std::get_if<DeterministicStrategy>(&strategy)) {
        const std::array<int, 2> a{det->a0, det->a1};
        const std::array<int, 2> b{det->b0, det->b1};
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                e[static_cast<size_t>(2 * x + y)] =
                    static_cast<double>(a[static_cast<size_t>(x)] * b[static_cast<size_t>(y)]);
        return e;
    }
    if (const auto* mixed = std::get_if<MixedClassicalStrategy>(&strategy)) {
        for (const auto& [w, s] : *mixed) {
            const auto part = analytic_expectations(GameStrategy(s));
            for (int k = 0; k < 4; ++k) e[static_cast<size_t>(k)] += w * part[static_cast<size_t>(k)];
        }
        return e;
    }
    const auto& q = std::get<QuantumStrategy>(strategy);
    const std::array<const Mat*, 2> as{&q.cfg.a0, &q.cfg.a1};
    const std::array<const Mat*, 2> bs{&q.cfg.b0, &q.cfg.b1};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            e[static_cast<size_t>(2 * x + y)] =
                ((*as[static_cast<size_t>(x)]) * (*bs[static_cast<size_t>(y)]) * q.rho.mat())
                    .trace()
                    .real();
    return e;
}

std::pair<double, double> score_from_expectations(double e00, double e01, double e10, double e11) {
    constexpr double slack = 1e-9;
    for (double e : {e00, e01, e10, e11})
        if (e < -1.0 - slack || e > 1.0 + slack)
            throw RangeError("expectation outside [-1, 1]");
    const double c = e01 - e00 + e10 + e11;
    return {c, c / 4.0};
}

std::string game_result_to_json(const GameResult& r) {
    nlohmann::json per_input = nlohmann::json::array();
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const auto k = static_cast<size_t>(2 * x + y);
            per_input.push_back({{"x", x},
                                 {"y", y},
                                 {"count", r.counts[k]},
                                 {"product_sum", r.product_sums[k]},
                                 {"expectation", r.expectations[k]}});
        }
    nlohmann::json j{{"rounds", r.rounds},
                     {"seed", r.seed},
                     {"strategy", r.strategy},
                     {"per_input", std::move(per_input)},
                     {"score_estimate", r.score_estimate},
                     {"c_estimate", r.c_estimate},
                     {"std_error", r.std_error}};
    return j.dump(2);
}

} // namespace qi
