#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace polycomm {

struct ConicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConicInfeasible : ConicError {
    using ConicError::ConicError;
};
struct NumericalFailure : ConicError {
    using ConicError::ConicError;
};

// ---------------------------------------------------------------------------
// Low level: min sum_b <C_b, X_b> s.t. sum_b <A_kb, X_b> = rhs_k, X_b PSD,
// over dense real symmetric blocks. Solved by an infeasible-start primal-dual
// interior-point method (HKM direction, Mehrotra predictor-corrector).
// ---------------------------------------------------------------------------

struct SymEntry {
    int block, row, col;  // row <= col; off-diagonal entries mean the symmetric pair
    double value;
};

struct SdpCoreProblem {
    std::vector<int> block_sizes;
    std::vector<std::vector<SymEntry>> constraints;  // one entry list per row
    std::vector<double> rhs;
    std::vector<SymEntry> objective;  // minimized
};

struct SdpCoreOptions {
    double gap_tol = 1e-9;
    double feas_tol = 1e-9;
    int max_iter = 120;
};

struct SdpCoreSolution {
    std::vector<Eigen::MatrixXd> X;
    std::vector<Eigen::MatrixXd> Z;
    std::vector<double> y;
    double primal_obj = 0, dual_obj = 0;
    double rel_gap = 0, primal_infeas = 0, dual_infeas = 0;
    int iterations = 0;
};

SdpCoreSolution solve_sdp_core(const SdpCoreProblem& p, const SdpCoreOptions& opt = {});

// ---------------------------------------------------------------------------
// Builder over complex Hermitian variable blocks. Hermitian data is realized
// through the standard real symmetric embedding [[Re, -Im], [Im, Re]]; the
// solver never sees complex numbers.
// ---------------------------------------------------------------------------

using CMat = Eigen::MatrixXcd;

struct LinTerm {
    int var;
    CMat coef;  // Hermitian; contributes Tr(coef * X_var)
};

struct LinExpr {
    std::vector<LinTerm> terms;
    double constant = 0;

    LinExpr& add(int var, CMat coef) {
        terms.push_back({var, std::move(coef)});
        return *this;
    }
};

// constant + sum_i scale_i * X_{var_i}  (square matrices of equal dimension)
struct MatExpr {
    std::vector<std::pair<int, double>> terms;
    CMat constant;  // zero matrix if absent

    static MatExpr of(int var, double scale = 1.0) {
        MatExpr e;
        e.terms.emplace_back(var, scale);
        return e;
    }
    MatExpr& plus(int var, double scale) {
        terms.emplace_back(var, scale);
        return *this;
    }
    MatExpr& plus_const(CMat k) {
        constant = std::move(k);
        return *this;
    }
};

enum class ConicStatus { Optimal, Infeasible, NumericalFailure };

struct ConicOutcome {
    ConicStatus status = ConicStatus::NumericalFailure;
    double value = 0;      // objective in the caller's sense (max or min)
    double primal_obj = 0; // minimization form
    double dual_obj = 0;
    double rel_gap = 0;
    int iterations = 0;
    std::vector<CMat> vars;
    std::string message;
};

class SdpProblem {
  public:
    // Hermitian PSD variable of the given complex dimension. free_sign makes
    // it an unconstrained Hermitian variable (split internally).
    int add_var(int dim, bool free_sign = false);

    void add_eq(const LinExpr& e, double rhs);
    void add_le(const LinExpr& e, double rhs);
    void add_ge(const LinExpr& e, double rhs);
    void add_psd(const MatExpr& e);                       // e >= 0 (Loewner)
    void add_eq_matrix(const MatExpr& e, const CMat& rhs);

    void maximize(const LinExpr& e);
    void minimize(const LinExpr& e);

    // Throws ConicInfeasible / NumericalFailure on hard failures when
    // `throwing`; otherwise reports through the outcome status.
    ConicOutcome solve(const SdpCoreOptions& opt = {}, bool throwing = true) const;

  private:
    struct Var {
        int dim;
        bool free_sign;
        int block_pos, block_neg;  // low-level block ids
    };
    struct ScalarRow {
        LinExpr expr;
        double rhs;
        int kind;  // -1 le, 0 eq, +1 ge
    };
    struct PsdRow {
        MatExpr expr;
        CMat rhs;   // zero for add_psd
        bool slack; // true: expr - slack = rhs; false: pure equality
    };

    std::vector<Var> vars_;
    std::vector<ScalarRow> scalars_;
    std::vector<PsdRow> psd_rows_;
    LinExpr objective_;
    bool maximize_ = false;
};

// Hermitian basis element k of a d-dimensional space (k < d*d), scaled so
// that Tr(E_k X) enumerates d real diagonal values, then sqrt2-free real and
// imaginary parts of the upper triangle.
CMat hermitian_basis_element(int d, int k);

}  // namespace polycomm
