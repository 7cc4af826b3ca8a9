#ifndef QI_LHV_HPP
#define QI_LHV_HPP

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qi/chsh.hpp"
#include "qi/mat.hpp"
#include "qi/state.hpp"

namespace qi {

struct Atom {
    std::string label;
    double weight; // in [0,1]
};

/// Finite probability space: labelled atoms with weights summing to 1.
struct DiscreteProbabilitySpace {
    std::vector<Atom> atoms;

    /// Throws ModelError unless weights are nonnegative and sum to 1.
    void validate(double tol = 1e-8) const;
};

/// Values of one outcome-indexed random variable: values[i] is the value
/// at atom i of the ambient space.
struct RvTable {
    double eigenvalue;
    std::vector<double> values;
};
using RvFamily = std::vector<RvTable>;

/// Local hidden-variable model for a pair of observables on a shared
/// state: per-eigenvalue random variables X (for A) and Y (for B) whose
/// product expectations reproduce trace(P_a P_b rho).
struct LhvModel {
    DiscreteProbabilitySpace space;
    Mat observable_a;
    Mat observable_b;
    DensityMatrix rho;
    RvFamily x; // indexed by the eigenvalues of observable_a
    RvFamily y; // indexed by the eigenvalues of observable_b
};

/// Checks positivity and normalization of the variable families on every
/// positive-weight atom, and the correlation-matching condition, all at
/// tolerance 1e-8.
bool lhv_check(const LhvModel& m, double tol = 1e-8);

/// sum over the spectrum of A of a * X_a(atom).
double qt_expect(const Mat& observable, const RvFamily& x, std::size_t atom_index);

/// E[(qt_expect A X)(qt_expect B Y)]; checked against Re trace(A B rho).
double lhv_product_expect(const LhvModel& m, double tol = 1e-8);

// --- CHSH game -----------------------------------------------------------

struct DeterministicStrategy {
    int a0, a1, b0, b1; // each -1 or +1
};

/// Mixture of deterministic strategies; weights must sum to 1.
using MixedClassicalStrategy = std::vector<std::pair<double, DeterministicStrategy>>;

/// Quantum strategy: local observables (local_tensor config) plus the
/// shared bipartite state.
struct QuantumStrategy {
    ChshConfig cfg;
    DensityMatrix rho;
};

using GameStrategy = std::variant<DeterministicStrategy, MixedClassicalStrategy, QuantumStrategy>;

/// C = a0 b1 - a0 b0 + a1 b0 + a1 b1 for a deterministic strategy.
double chsh_value(const DeterministicStrategy& s);

/// All 16 deterministic strategies with their C values.
std::vector<std::pair<DeterministicStrategy, double>> classical_strategy_table();

/// max C over the table (= 2).
double classical_max();

struct GameResult {
    long rounds = 0;
    std::uint64_t seed = 0;
    std::string strategy;
    std::array<long, 4> counts{};        // rounds per input pair, index 2x+y
    std::array<long, 4> product_sums{};  // integer sums of a*b per input pair
    std::array<double, 4> expectations{}; // E_{x,y}[a b], index 2x+y
    double score_estimate = 0.0;          // estimated average score, C/4
    double c_estimate = 0.0;
    double std_error = 0.0;               // standard error of c_estimate
};

/// Plays `rounds` rounds of the CHSH game. Round r draws everything from
/// a generator state derived as mix64(seed, 0, r), so the result is
/// bit-identical for any worker count.
GameResult play_game(const GameStrategy& strategy, long rounds, std::uint64_t seed,
                     int workers = 1);

/// Exact E_{x,y} per input pair: strategy products for classical play,
/// Re trace(A_x B_y rho) for quantum play.
std::array<double, 4> analytic_expectations(const GameStrategy& strategy);

/// c = E01 - E00 + E10 + E11 and the average score c/4.
std::pair<double, double> score_from_expectations(double e00, double e01, double e10,
                                                  double e11);

std::string game_result_to_json(const GameResult& r);

} // namespace qi

#endif
