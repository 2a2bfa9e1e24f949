#pragma once

#include <optional>
#include <random>

#include "polycomm/conic.hpp"
#include "polycomm/scenario.hpp"

namespace polycomm {

struct InvalidState : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidPOVM : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check_density_matrix(const CMat& rho);
void check_povm(const std::vector<CMat>& elements);

Eigen::VectorXcd haar_state(std::mt19937_64& rng, int dim);

// 1/2 (1 + sqrt(1 - |<psi0|psi1>|^2)) for equal priors.
double helstrom_antidist_two(const Eigen::VectorXcd& psi0, const Eigen::VectorXcd& psi1);

struct MeasurementOptimum {
    double value = 0;
    std::vector<CMat> povm;
    double rel_gap = 0;
    double primal_obj = 0, dual_obj = 0;
};

// max_POVM sum_x q_x Tr(rho_x M_x)
MeasurementOptimum distinguishability(const std::vector<CMat>& states,
                                      const std::vector<double>& priors);

// 1 - min_POVM sum_x q_x Tr(rho_x M_x)
MeasurementOptimum antidistinguishability(const std::vector<CMat>& states,
                                          const std::vector<double>& priors);

// ---------------------------------------------------------------------------
// SeeSaw machinery over a scenario with fixed receiver input structure.
// ---------------------------------------------------------------------------

struct QuantumScenario {
    BehaviorIndex index;                      // n_z, n_x per sender, n_y
    std::vector<std::vector<double>> priors;  // per sender
    ConstraintKind kind = ConstraintKind::Distinguishability;
    std::vector<double> coeffs;               // flat, indexed by BehaviorIndex
    double offset = 0;                        // value = offset + sum c * p

    int n_senders() const { return static_cast<int>(index.n_x.size()); }
};

QuantumScenario make_quantum_scenario(const ScenarioSpec& spec, const FigureOfMerit& fom);

struct Strategy {
    std::vector<std::vector<CMat>> states;  // [sender][input]
    std::vector<CMat> povm;                 // [z * n_y + y] over the product space
};

struct SeeSawOptions {
    int dim = 4;
    int restarts = 200;
    std::uint64_t seed = 42;
    double tol = 1e-7;
    int max_sweeps = 500;
    int threads = 0;  // 0: POLYCOMM_THREADS or hardware
    double pin_slack = 1e-6;
};

struct SeeSawResult {
    double value = 0;
    Strategy strategy;
    std::vector<double> audited_resources;
    std::vector<double> trace;  // per-sweep values of the winning restart
    std::uint64_t seed = 0;     // master seed
    int winning_restart = -1;   // -1: a supplied deterministic initializer
    int failures = 0;
};

// Lower bound on the quantum value at fixed resources. Alternates the POVM
// step with per-sender state steps through the auxiliary-operator
// constraints; best over Haar restarts plus any supplied initial strategies.
SeeSawResult seesaw(const QuantumScenario& qs, const std::vector<double>& resources,
                    const SeeSawOptions& opt, const std::vector<Strategy>& extra_inits = {});

struct TotalResourceQ {
    std::vector<double> per_sender;  // Tr(sigma_i) or 1 - Tr(omega_i)
    double product = 0;
    double sum = 0;
    double achieved_value = 0;
    Strategy strategy;
    std::vector<double> audited_resources;
    std::vector<double> trace;  // per-sweep objective of the winning restart
    int failures = 0;
};

// SeeSaw minimization of the total auxiliary resource with the figure of
// merit pinned to s_target (two-sided slack opt.pin_slack). select_by_product
// switches the across-restart selection from the paper's sum objective to the
// reported product.
TotalResourceQ min_total_resource(const QuantumScenario& qs, double s_target,
                                  const SeeSawOptions& opt, bool select_by_product = false,
                                  const std::vector<Strategy>& extra_inits = {});

struct VerifyResult {
    double value = 0;
    std::vector<double> audited_resources;
};

VerifyResult verify_strategy(const QuantumScenario& qs, const Strategy& st);

// Classical strategy embedded in orthogonal quantum states: message basis
// states with the decoder as a projective measurement. dim must be at least
// every sender's message count.
Strategy classical_embedding_strategy(const ScenarioSpec& spec, const ExtendedVertexSet& ext,
                                      const ExtendedVertex& vertex, int dim);

// Best extended vertex with pointwise-feasible resources, or null.
const ExtendedVertex* best_feasible_vertex(const ExtendedVertexSet& ext, const FigureOfMerit& fom,
                                           const VecQ& resources);

// Strategy JSON: states as nested [re, im] pairs per sender per input, POVM
// likewise, plus optional declared resources.
std::string strategy_to_json(const Strategy& st, const std::vector<double>& declared = {});
Strategy strategy_from_json(const std::string& text, std::vector<double>* declared = nullptr);

int env_thread_count(int requested);

}  // namespace polycomm
