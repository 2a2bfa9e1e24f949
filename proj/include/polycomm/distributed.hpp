#pragma once

#include "polycomm/quantum.hpp"
#include "polycomm/scenario.hpp"

namespace polycomm {

struct OutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ThetaOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Anti-distinguishing the joint input string: N senders, n inputs each, one
// receiver outcome per input string.
struct DistributedTask {
    int n_senders = 2;
    int n_inputs = 2;
    std::vector<VecQ> priors;  // per sender; empty means uniform

    VecQ prior(int sender) const;
    ScenarioSpec scenario() const;  // kind A, n_z = n_inputs^n_senders
};

// 1 - prod_i (1 - A_i); each A_i must lie in its admissible interval.
Rat classical_bound(const DistributedTask& task, const VecQ& A);
double classical_bound(int N, const std::vector<double>& A);

// Exact optimum of the success metric over per-sender encoding-polytope
// vertices with pointwise-feasible resources; the receiver's decoding is the
// pointwise-optimal deterministic excluder, which is exact.
Rat brute_force_distributed(const DistributedTask& task, const VecQ& A);

// Same maximization with explicit decoder enumeration (test oracle; small
// tasks only).
Rat brute_force_distributed_decoders(const DistributedTask& task, const VecQ& A);

double pbr_theta_min(int N);
std::pair<double, double> pbr_theta_range(int N);  // [theta_min, pi/2)

// (2 / (1 + sin theta))^N for theta in the admissible range.
double pbr_ratio(double theta, int N);

// 2^N (1 + 2^{1-2/N} - 2^{1-1/N})^N, the ratio at theta_min.
double pbr_optimal_ratio(int N);

// The two-state family cos(theta/2)|0> +/- sin(theta/2)|1>.
std::vector<Eigen::VectorXcd> pbr_state_pair(double theta);

struct ExclusionCertificate {
    double theta = 0;
    int n_senders = 0;
    double sdp_value = 0;
    bool excluded = false;
};

// Builds the 2^N product states of the pair family and checks perfect
// exclusion by SDP.
ExclusionCertificate certify_perfect_exclusion(double theta, int N);

struct GramSummary {
    double alpha = 0;    // sum over ordered pairs of squared overlaps
    double beta = 0;     // sum over ordered pairs of overlaps
    double frob_sq = 0;  // (n + alpha)^N
};

struct SufficientCondition {
    bool cond1 = false;  // n(n-2) < beta
    bool cond2 = false;  // alpha <= n^2 / 2^(1/N) - n
    GramSummary gram;
};

SufficientCondition sufficient_condition(const std::vector<Eigen::VectorXcd>& states, int N);

// Direct assembly of the product Gram Frobenius norm (identity oracle).
double product_gram_frobenius_sq(const std::vector<Eigen::VectorXcd>& states, int N);

// Three qubit states with imperfect single-copy exclusion whose pairwise
// products are perfectly excludable.
std::vector<Eigen::VectorXcd> three_state_example();

// Quantum scenario of the distributed task (value = success metric).
QuantumScenario distributed_quantum_scenario(const DistributedTask& task);

// Smallest common anti-distinguishability bound A with SeeSaw-reachable
// success >= s_target, by bisection to tol_a.
double min_common_antidist(const DistributedTask& task, double s_target, const SeeSawOptions& opt,
                           double tol_a = 1e-4);

struct CurvePoint {
    double s = 0;
    double a_q = 0;
    double a_c = 0;
    double ratio = 0;
};

std::vector<CurvePoint> advantage_curve(const DistributedTask& task,
                                        const std::vector<double>& s_grid,
                                        const SeeSawOptions& opt);

}  // namespace polycomm
