#include "polycomm/conic.hpp"

#include <cmath>

namespace polycomm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

double inner(const std::vector<SymEntry>& a, const MatrixXd& x) {
    double acc = 0;
    for (const auto& e : a)
        acc += e.row == e.col ? e.value * x(e.row, e.col) : e.value * (x(e.row, e.col) + x(e.col, e.row));
    return acc;
}

void accumulate(MatrixXd& target, const std::vector<SymEntry>& a, double scale) {
    for (const auto& e : a) {
        target(e.row, e.col) += scale * e.value;
        if (e.row != e.col) target(e.col, e.row) += scale * e.value;
    }
}

// Largest alpha in (0, 1] keeping X + alpha * D positive semidefinite.
double max_step(const MatrixXd& x, const MatrixXd& d) {
    Eigen::LLT<MatrixXd> llt(x);
    MatrixXd xr = x;
    double jitter = 1e-14 * (1.0 + x.diagonal().cwiseAbs().maxCoeff());
    while (llt.info() != Eigen::Success) {
        xr.diagonal().array() += jitter;
        jitter *= 10;
        llt.compute(xr);
        if (jitter > 1e-4) return 0.0;
    }
    MatrixXd l = llt.matrixL();
    MatrixXd m = l.triangularView<Eigen::Lower>().solve(d);
    m = l.triangularView<Eigen::Lower>().solve(m.transpose()).transpose();
    double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(0.5 * (m + m.transpose()),
                                                          Eigen::EigenvaluesOnly)
                      .eigenvalues()
                      .minCoeff();
    if (lmin >= -1e-16) return 1.0;
    return std::min(1.0, -1.0 / lmin);
}

}  // namespace

SdpCoreSolution solve_sdp_core(const SdpCoreProblem& p, const SdpCoreOptions& opt) {
    int nb = static_cast<int>(p.block_sizes.size());
    int m = static_cast<int>(p.rhs.size());
    int ntot = 0;
    for (int s : p.block_sizes) ntot += s;

    std::vector<MatrixXd> C(nb);
    for (int b = 0; b < nb; ++b) C[b] = MatrixXd::Zero(p.block_sizes[b], p.block_sizes[b]);
    for (const auto& e : p.objective) {
        C[e.block](e.row, e.col) += e.value;
        if (e.row != e.col) C[e.block](e.col, e.row) += e.value;
    }

    std::vector<std::vector<std::vector<SymEntry>>> A(nb, std::vector<std::vector<SymEntry>>(m));
    for (int k = 0; k < m; ++k)
        for (const auto& e : p.constraints[k]) A[e.block][k].push_back(e);

    double rhs_scale = 1.0, c_scale = 1.0;
    for (double v : p.rhs) rhs_scale = std::max(rhs_scale, std::abs(v));
    for (const auto& e : p.objective) c_scale = std::max(c_scale, std::abs(e.value));

    std::vector<MatrixXd> X(nb), Z(nb);
    for (int b = 0; b < nb; ++b) {
        X[b] = MatrixXd::Identity(p.block_sizes[b], p.block_sizes[b]) * std::max(1.0, rhs_scale);
        Z[b] = MatrixXd::Identity(p.block_sizes[b], p.block_sizes[b]) * std::max(1.0, c_scale);
    }
    VectorXd y = VectorXd::Zero(m);
    VectorXd rhs_vec = Eigen::Map<const VectorXd>(p.rhs.data(), m);

    SdpCoreSolution sol;
    std::vector<MatrixXd> Zinv(nb), Rd(nb), dX(nb), dZ(nb);
    int stalls = 0;

    for (int iter = 0; iter <= opt.max_iter; ++iter) {
        VectorXd rp(m);
        for (int k = 0; k < m; ++k) {
            double ax = 0;
            for (int b = 0; b < nb; ++b)
                if (!A[b][k].empty()) ax += inner(A[b][k], X[b]);
            rp(k) = p.rhs[k] - ax;
        }
        double pobj = 0, gap = 0, dinf = 0;
        for (int b = 0; b < nb; ++b) {
            pobj += (C[b].array() * X[b].array()).sum();
            gap += (X[b].array() * Z[b].array()).sum();
            Rd[b] = C[b] - Z[b];
            for (int k = 0; k < m; ++k)
                if (!A[b][k].empty()) accumulate(Rd[b], A[b][k], -y(k));
            dinf = std::max(dinf, Rd[b].cwiseAbs().maxCoeff());
        }
        double dobj = y.dot(rhs_vec);
        double mu = gap / ntot;

        sol.primal_obj = pobj;
        sol.dual_obj = dobj;
        sol.rel_gap = std::abs(gap) / std::max(1.0, 0.5 * (std::abs(pobj) + std::abs(dobj)));
        sol.primal_infeas = (m ? rp.cwiseAbs().maxCoeff() : 0.0) / (1.0 + rhs_scale);
        sol.dual_infeas = dinf / (1.0 + c_scale);
        sol.iterations = iter;
        if (sol.rel_gap < opt.gap_tol && sol.primal_infeas < opt.feas_tol &&
            sol.dual_infeas < opt.feas_tol) {
            sol.X = X;
            sol.Z = Z;
            sol.y.assign(y.data(), y.data() + m);
            return sol;
        }
        if (iter == opt.max_iter) break;

        // Approximate Farkas certificates.
        double ynorm = m ? y.cwiseAbs().maxCoeff() : 0.0;
        if (ynorm > 1e7 * (1.0 + rhs_scale) && dobj / ynorm > 1e-7 && dinf / ynorm < 1e-9)
            throw ConicInfeasible("primal problem appears infeasible");
        double xnorm = 0;
        for (int b = 0; b < nb; ++b) xnorm = std::max(xnorm, X[b].cwiseAbs().maxCoeff());
        if (xnorm > 1e9 * (1.0 + rhs_scale) && pobj / xnorm < -1e-7 &&
            sol.primal_infeas / xnorm < 1e-9)
            throw NumericalFailure("primal problem appears unbounded below");

        for (int b = 0; b < nb; ++b) {
            Eigen::LLT<MatrixXd> llt(Z[b]);
            MatrixXd zreg = Z[b];
            double jitter = 1e-14 * (1.0 + Z[b].diagonal().cwiseAbs().maxCoeff());
            while (llt.info() != Eigen::Success) {
                zreg.diagonal().array() += jitter;
                jitter *= 10;
                llt.compute(zreg);
                if (jitter > 1e-2) throw NumericalFailure("Z lost positive definiteness");
            }
            Zinv[b] = llt.solve(MatrixXd::Identity(Z[b].rows(), Z[b].cols()));
            Zinv[b] = 0.5 * (Zinv[b] + Zinv[b].transpose());
        }

        // Schur complement M_kl = sum_b Tr(A_k X A_l Zinv), symmetric PD.
        MatrixXd M = MatrixXd::Zero(m, m);
        for (int b = 0; b < nb; ++b) {
            int n = p.block_sizes[b];
            MatrixXd S(n, n);
            for (int l = 0; l < m; ++l) {
                if (A[b][l].empty()) continue;
                S.setZero();
                for (const auto& e : A[b][l]) {
                    S.noalias() += e.value * X[b].col(e.row) * Zinv[b].row(e.col);
                    if (e.row != e.col)
                        S.noalias() += e.value * X[b].col(e.col) * Zinv[b].row(e.row);
                }
                for (int k = 0; k <= l; ++k)
                    if (!A[b][k].empty()) M(k, l) += inner(A[b][k], S);
            }
        }
        M = MatrixXd(M.selfadjointView<Eigen::Upper>());

        Eigen::LDLT<MatrixXd> mf(M);
        double mjitter = 1e-13 * (1.0 + M.diagonal().cwiseAbs().maxCoeff());
        while (mf.info() != Eigen::Success && mjitter < 1e-4) {
            MatrixXd Mr = M;
            Mr.diagonal().array() += mjitter;
            mf.compute(Mr);
            mjitter *= 100;
        }
        if (mf.info() != Eigen::Success) throw NumericalFailure("Schur factorization failed");

        auto solve_direction = [&](double sigma_mu, const std::vector<MatrixXd>* corrector) {
            VectorXd rhs_y = rp;
            std::vector<MatrixXd> R3(nb);
            for (int b = 0; b < nb; ++b) {
                R3[b] = sigma_mu * Zinv[b] - X[b];
                if (corrector) R3[b] -= (*corrector)[b];
                MatrixXd XRZ = X[b] * Rd[b] * Zinv[b];
                for (int k = 0; k < m; ++k) {
                    if (A[b][k].empty()) continue;
                    rhs_y(k) += inner(A[b][k], XRZ) - inner(A[b][k], R3[b]);
                }
            }
            VectorXd dy = mf.solve(rhs_y);
            for (int b = 0; b < nb; ++b) {
                dZ[b] = Rd[b];
                for (int k = 0; k < m; ++k)
                    if (!A[b][k].empty()) accumulate(dZ[b], A[b][k], -dy(k));
                MatrixXd raw = R3[b] - X[b] * dZ[b] * Zinv[b];
                dX[b] = 0.5 * (raw + raw.transpose());
            }
            return dy;
        };

        solve_direction(0.0, nullptr);
        double ap = 1.0, ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(X[b], dX[b]));
            ad = std::min(ad, max_step(Z[b], dZ[b]));
        }
        double gap_aff = 0;
        for (int b = 0; b < nb; ++b)
            gap_aff +=
                ((X[b] + 0.99 * ap * dX[b]).array() * (Z[b] + 0.99 * ad * dZ[b]).array()).sum();
        double sigma = std::pow(std::max(gap_aff, 0.0) / gap, 3.0);
        sigma = std::min(1.0, std::max(sigma, 1e-10));

        std::vector<MatrixXd> corr(nb);
        for (int b = 0; b < nb; ++b) corr[b] = dX[b] * dZ[b] * Zinv[b];
        VectorXd dy = solve_direction(sigma * mu, &corr);

        ap = 1.0;
        ad = 1.0;
        for (int b = 0; b < nb; ++b) {
            ap = std::min(ap, max_step(X[b], dX[b]));
            ad = std::min(ad, max_step(Z[b], dZ[b]));
        }
        ap = std::min(1.0, 0.99 * ap);
        ad = std::min(1.0, 0.99 * ad);
        if (ap < 1e-10 && ad < 1e-10) {
            if (++stalls >= 3) throw NumericalFailure("interior-point steps collapsed");
        } else {
            stalls = 0;
        }
        for (int b = 0; b < nb; ++b) {
            X[b].noalias() += ap * dX[b];
            Z[b].noalias() += ad * dZ[b];
        }
        y += ad * dy;
    }
    throw NumericalFailure("interior-point iteration limit reached (gap " +
                           std::to_string(sol.rel_gap) + ")");
}

// ---------------------------------------------------------------------------
// Hermitian builder
// ---------------------------------------------------------------------------

CMat hermitian_basis_element(int d, int k) {
    CMat e = CMat::Zero(d, d);
    if (k < d) {
        e(k, k) = 1;
        return e;
    }
    int p = (k - d) / 2, which = (k - d) % 2;
    int i = 0, j = 1, count = 0;
    for (i = 0; i < d; ++i) {
        for (j = i + 1; j < d; ++j) {
            if (count == p) {
                if (which == 0) {
                    e(i, j) = 1;
                    e(j, i) = 1;
                } else {
                    e(i, j) = std::complex<double>(0, 1);
                    e(j, i) = std::complex<double>(0, -1);
                }
                return e;
            }
            ++count;
        }
    }
    throw std::out_of_range("hermitian basis index");
}

namespace {

// Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix.
Eigen::MatrixXd embed(const CMat& h) {
    int d = static_cast<int>(h.rows());
    Eigen::MatrixXd r(2 * d, 2 * d);
    r.topLeftCorner(d, d) = h.real();
    r.bottomRightCorner(d, d) = h.real();
    r.topRightCorner(d, d) = -h.imag();
    r.bottomLeftCorner(d, d) = h.imag();
    return r;
}

CMat unembed(const Eigen::MatrixXd& y) {
    int d = static_cast<int>(y.rows()) / 2;
    CMat x(d, d);
    x.real() = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d));
    x.imag() = 0.5 * (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d));
    return 0.5 * (x + x.adjoint()).eval();
}

// Entries of emb(H)/2 so that <entries, emb(X)> = Tr(H X).
void push_coef(std::vector<SymEntry>& out, int block, const CMat& h_in, double scale) {
    CMat h = 0.5 * (h_in + h_in.adjoint());
    Eigen::MatrixXd e = embed(h);
    int n = static_cast<int>(e.rows());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (e(i, j) != 0.0) out.push_back({block, i, j, 0.5 * scale * e(i, j)});
}

}  // namespace

int SdpProblem::add_var(int dim, bool free_sign) {
    Var v;
    v.dim = dim;
    v.free_sign = free_sign;
    v.block_pos = -1;
    v.block_neg = -1;
    vars_.push_back(v);
    return static_cast<int>(vars_.size()) - 1;
}

void SdpProblem::add_eq(const LinExpr& e, double rhs) { scalars_.push_back({e, rhs, 0}); }
void SdpProblem::add_le(const LinExpr& e, double rhs) { scalars_.push_back({e, rhs, -1}); }
void SdpProblem::add_ge(const LinExpr& e, double rhs) { scalars_.push_back({e, rhs, 1}); }

void SdpProblem::add_psd(const MatExpr& e) { psd_rows_.push_back({e, CMat(), true}); }

void SdpProblem::add_eq_matrix(const MatExpr& e, const CMat& rhs) {
    psd_rows_.push_back({e, rhs, false});
}

void SdpProblem::maximize(const LinExpr& e) {
    objective_ = e;
    maximize_ = true;
}
void SdpProblem::minimize(const LinExpr& e) {
    objective_ = e;
    maximize_ = false;
}

ConicOutcome SdpProblem::solve(const SdpCoreOptions& opt, bool throwing) const {
    SdpCoreProblem core;
    std::vector<Var> vars = vars_;

    auto new_block = [&](int size) {
        core.block_sizes.push_back(size);
        return static_cast<int>(core.block_sizes.size()) - 1;
    };
    for (auto& v : vars) {
        v.block_pos = new_block(2 * v.dim);
        if (v.free_sign) v.block_neg = new_block(2 * v.dim);
    }

    auto expr_dim = [&](const MatExpr& e) {
        if (!e.terms.empty()) return vars[e.terms.front().first].dim;
        return static_cast<int>(e.constant.rows());
    };

    // var coefficient -> core entries (split free variables)
    auto push_var_coef = [&](std::vector<SymEntry>& row, int var, const CMat& coef, double scale) {
        push_coef(row, vars[var].block_pos, coef, scale);
        if (vars[var].free_sign) push_coef(row, vars[var].block_neg, coef, -scale);
    };

    for (const auto& sc : scalars_) {
        std::vector<SymEntry> row;
        for (const auto& t : sc.expr.terms) push_var_coef(row, t.var, t.coef, 1.0);
        double rhs = sc.rhs - sc.expr.constant;
        if (sc.kind != 0) {
            int slack = new_block(1);
            row.push_back({slack, 0, 0, sc.kind == -1 ? 1.0 : -1.0});
        }
        core.constraints.push_back(std::move(row));
        core.rhs.push_back(rhs);
    }

    for (const auto& pr : psd_rows_) {
        int d = expr_dim(pr.expr);
        int slack = pr.slack ? new_block(2 * d) : -1;
        CMat target = pr.rhs.size() ? pr.rhs : CMat::Zero(d, d);
        if (pr.expr.constant.size()) target -= pr.expr.constant;
        for (int k = 0; k < d * d; ++k) {
            CMat e = hermitian_basis_element(d, k);
            std::vector<SymEntry> row;
            for (const auto& [var, scale] : pr.expr.terms) push_var_coef(row, var, e, scale);
            if (pr.slack) push_coef(row, slack, e, -1.0);
            core.constraints.push_back(std::move(row));
            core.rhs.push_back((e.adjoint() * target).trace().real());
        }
    }

    for (const auto& t : objective_.terms) {
        std::vector<SymEntry> tmp;
        push_var_coef(tmp, t.var, t.coef, maximize_ ? -1.0 : 1.0);
        for (const auto& e : tmp) core.objective.push_back(e);
    }

    ConicOutcome out;
    try {
        SdpCoreSolution sol = solve_sdp_core(core, opt);
        out.status = ConicStatus::Optimal;
        out.primal_obj = sol.primal_obj;
        out.dual_obj = sol.dual_obj;
        out.rel_gap = sol.rel_gap;
        out.iterations = sol.iterations;
        double obj = 0.5 * (sol.primal_obj + sol.dual_obj);
        out.value = (maximize_ ? -obj : obj) + objective_.constant;
        out.vars.reserve(vars.size());
        for (const auto& v : vars) {
            CMat x = unembed(sol.X[v.block_pos]);
            if (v.free_sign) x -= unembed(sol.X[v.block_neg]);
            out.vars.push_back(std::move(x));
        }
    } catch (const ConicInfeasible& e) {
        if (throwing) throw;
        out.status = ConicStatus::Infeasible;
        out.message = e.what();
    } catch (const NumericalFailure& e) {
        if (throwing) throw;
        out.status = ConicStatus::NumericalFailure;
        out.message = e.what();
    }
    return out;
}

}  // namespace polycomm
