#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qi/chsh.hpp"
#include "qi/lhv.hpp"
#include "qi/mat.hpp"
#include "qi/measurement.hpp"
#include "qi/random_gen.hpp"
#include "qi/spectral.hpp"
#include "qi/state.hpp"
#include "qi/verify.hpp"

namespace {

// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 precondition violation on user data.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

std::string fmt(double v) {
    std::ostringstream ss;
    ss << std::setprecision(9) << v;
    return ss.str();
}

int cmd_bounds(bool json_out) {
    using namespace qi;
    struct Row {
        std::string scenario;
        double value;
        double bound;
        bool pass;
    };
    std::vector<Row> rows;

    rows.push_back({"classical deterministic max", classical_max(), 2.0, classical_max() <= 2.0});

    const auto [canon, rho_singlet] = canonical_config();
    const DensityMatrix rho_sep = density_from_separable(
        {{1.0, *named_state("plus"), *named_state("plus")}});
    const auto sep_report = check_bound(canon, rho_sep, BoundContext::separable);
    rows.push_back({"separable state, canonical observables", sep_report.abs_expectation,
                    sep_report.applicable_bound, sep_report.bound_satisfied});

    // A commuting pair: Alice reuses the same observable for both inputs.
    const ChshConfig commuting_cfg =
        ChshConfig::local(canon.left0, canon.left0, canon.right0, canon.right1);
    const auto comm_report = check_bound(commuting_cfg, rho_singlet, BoundContext::commuting);
    rows.push_back({"commuting pair, singlet state", comm_report.abs_expectation,
                    comm_report.applicable_bound, comm_report.bound_satisfied});

    const auto gen_report = check_bound(canon, rho_singlet, BoundContext::general);
    rows.push_back({"general bound, canonical config", gen_report.abs_expectation,
                    gen_report.applicable_bound, gen_report.bound_satisfied});

    const double attained = std::abs(chsh_expect(canon, rho_singlet));
    rows.push_back({"canonical attained value", attained, 2.0 * std::sqrt(2.0),
                    std::abs(attained - 2.0 * std::sqrt(2.0)) < 1e-9});

    bool all_pass = true;
    if (json_out) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : rows) {
            out.push_back({{"scenario", r.scenario},
                           {"value", r.value},
                           {"bound", r.bound},
                           {"pass", r.pass}});
            all_pass = all_pass && r.pass;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << std::left << std::setw(42) << "scenario" << std::setw(14) << "value"
                  << std::setw(14) << "bound" << "status\n";
        for (const auto& r : rows) {
            std::cout << std::left << std::setw(42) << r.scenario << std::setw(14) << fmt(r.value)
                      << std::setw(14) << fmt(r.bound) << (r.pass ? "PASS" : "FAIL") << "\n";
            all_pass = all_pass && r.pass;
        }
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

qi::GameStrategy parse_strategy(const std::string& spec) {
    using namespace qi;
    if (spec.rfind("classical:", 0) == 0) {
        const std::string body = spec.substr(10);
        std::istringstream ss(body);
        std::array<int, 4> v{};
        char comma = ',';
        for (int i = 0; i < 4; ++i) {
            if (i > 0 && (!(ss >> comma) || comma != ','))
                throw UsageError("classical strategy needs four comma-separated values");
            if (!(ss >> v[static_cast<size_t>(i)]))
                throw UsageError("classical strategy needs four comma-separated values");
            if (v[static_cast<size_t>(i)] != 1 && v[static_cast<size_t>(i)] != -1)
                throw UsageError("classical strategy values must be 1 or -1");
        }
        std::string rest;
        if (ss >> rest) throw UsageError("trailing characters in classical strategy");
        return DeterministicStrategy{v[0], v[1], v[2], v[3]};
    }
    if (spec == "quantum:canonical") {
        auto [cfg, rho] = canonical_config();
        return QuantumStrategy{std::move(cfg), std::move(rho)};
    }
    if (spec.rfind("quantum:@", 0) == 0) {
        const std::string path = spec.substr(9);
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open strategy file " + path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("strategy file: ") + e.what());
        }
        for (const char* key : {"a0", "a1", "b0", "b1", "rho"})
            if (!j.contains(key))
                throw UsageError(std::string("strategy file is missing field ") + key);
        auto load = [&](const char* key) { return mat_from_json_text(j[key].dump()); };
        ChshConfig cfg = ChshConfig::local(load("a0"), load("a1"), load("b0"), load("b1"));
        DensityMatrix rho = density_from_matrix(load("rho"));
        return QuantumStrategy{std::move(cfg), std::move(rho)};
    }
    throw UsageError("strategy must be classical:a0,a1,b0,b1, quantum:canonical, or quantum:@file");
}

int cmd_game(const std::string& spec, long rounds, std::uint64_t seed, int workers,
             bool json_out) {
    using namespace qi;
    const GameStrategy strategy = parse_strategy(spec);
    const GameResult result = play_game(strategy, rounds, seed, workers);
    const auto exact = analytic_expectations(strategy);
    const auto [c_exact, score_exact] = score_from_expectations(exact[0], exact[1], exact[2],
                                                                exact[3]);
    if (json_out) {
        nlohmann::json j = nlohmann::json::parse(game_result_to_json(result));
        j["c_exact"] = c_exact;
        j["score_exact"] = score_exact;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "strategy       " << result.strategy << "\n"
                  << "rounds         " << result.rounds << " (seed " << result.seed << ")\n"
                  << "c estimate     " << fmt(result.c_estimate) << " +- "
                  << fmt(result.std_error) << "\n"
                  << "c exact        " << fmt(c_exact) << "\n"
                  << "score estimate " << fmt(result.score_estimate) << "\n"
                  << "score exact    " << fmt(score_exact) << "\n";
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                const auto k = static_cast<size_t>(2 * x + y);
                std::cout << "E[" << x << "," << y << "]         est "
                          << fmt(result.expectations[k]) << "  exact " << fmt(exact[k])
                          << "  (" << result.counts[k] << " rounds)\n";
            }
    }
    return kExitOk;
}

int cmd_decompose(const std::string& path, double tol, bool json_out) {
    using namespace qi;
    const Mat a = mat_from_file(path); // ParseError -> exit 2 at the call site
    if (a.rows() != a.cols() || !is_hermitian(a, tol)) {
        std::cerr << "error: matrix is not Hermitian\n";
        return kExitPrecondition;
    }
    const auto dec = real_diag_decomp(a, tol);
    const double recon_err = max_abs_diff(dec.reconstruct(), a);
    const auto pm = make_pm(a, tol);

    if (json_out) {
        nlohmann::json outcomes = nlohmann::json::array();
        for (const auto& o : pm.outcomes) {
            const int rank = static_cast<int>(std::lround(o.projector.trace().real()));
            outcomes.push_back({{"value", o.value}, {"projector_rank", rank}});
        }
        nlohmann::json j{{"eigenvalues", dec.eigenvalues},
                         {"reconstruction_error", recon_err},
                         {"pvm", std::move(outcomes)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "eigenvalues:";
        for (double v : dec.eigenvalues) std::cout << " " << fmt(v);
        std::cout << "\nreconstruction error: " << recon_err << "\npvm outcomes:\n";
        for (const auto& o : pm.outcomes) {
            const int rank = static_cast<int>(std::lround(o.projector.trace().real()));
            std::cout << "  value " << fmt(o.value) << "  projector rank " << rank << "\n";
        }
    }
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, int cases, bool json_out) {
    const auto suites = qi::run_property_suites(seed, cases);
    bool all_pass = true;
    if (json_out) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& s : suites) {
            out.push_back({{"suite", s.name},
                           {"cases", s.cases},
                           {"failures", s.failures},
                           {"first_failure", s.first_failure}});
            all_pass = all_pass && s.failures == 0;
        }
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& s : suites) {
            std::cout << std::left << std::setw(16) << s.name << s.cases << " checks, "
                      << s.failures << " failures"
                      << (s.failures ? "  [" + s.first_failure + "]" : "")
                      << (s.failures ? "  FAIL" : "  PASS") << "\n";
            all_pass = all_pass && s.failures == 0;
        }
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CHSH inequality toolkit: density matrices, projective measurements, "
                 "Bell-game simulation"};
    app.require_subcommand(1);

    bool json_out = false;
    app.add_flag("--json", json_out, "machine-readable JSON output");

    auto* bounds = app.add_subcommand("bounds", "verify every CHSH bound analytically");

    std::string strategy_spec = "quantum:canonical";
    long rounds = 100000;
    std::uint64_t seed = 0;
    int workers = 1;
    auto* game = app.add_subcommand("game", "Monte Carlo CHSH game");
    game->add_option("--strategy", strategy_spec,
                     "classical:a0,a1,b0,b1 | quantum:canonical | quantum:@file");
    game->add_option("--rounds", rounds, "number of rounds")->check(CLI::PositiveNumber);
    game->add_option("--seed", seed, "RNG seed");
    game->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

    std::string matrix_path;
    double tolerance = qi::kDefaultTol;
    auto* decompose = app.add_subcommand("decompose", "spectral decomposition of a Hermitian matrix");
    decompose->add_option("path", matrix_path, "matrix JSON file")->required();
    decompose->add_option("--tolerance", tolerance, "hermiticity tolerance")
        ->check(CLI::PositiveNumber);

    std::uint64_t verify_seed = 20260823;
    int cases = 100;
    auto* verify = app.add_subcommand("verify", "run every module property suite");
    verify->add_option("--seed", verify_seed, "RNG seed");
    verify->add_option("--cases", cases, "random cases per property")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(json_out);
        if (game->parsed()) return cmd_game(strategy_spec, rounds, seed, workers, json_out);
        if (decompose->parsed()) return cmd_decompose(matrix_path, tolerance, json_out);
        if (verify->parsed()) return cmd_verify(verify_seed, cases, json_out);
    } catch (const qi::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qi::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qi::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitUsage;
}
