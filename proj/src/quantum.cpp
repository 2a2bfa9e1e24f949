#include "polycomm/quantum.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include <nlohmann/json.hpp>

namespace polycomm {

using nlohmann::json;

void check_density_matrix(const CMat& rho) {
    if (rho.rows() != rho.cols()) throw InvalidState("state is not square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw InvalidState("state is not Hermitian");
    double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-9) throw InvalidState("state trace differs from 1");
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9) throw InvalidState("state has a negative eigenvalue");
}

void check_povm(const std::vector<CMat>& elements) {
    if (elements.empty()) throw InvalidPOVM("empty POVM");
    int d = static_cast<int>(elements.front().rows());
    CMat sum = CMat::Zero(d, d);
    for (const CMat& m : elements) {
        if (m.rows() != d || m.cols() != d) throw InvalidPOVM("POVM element dimension mismatch");
        if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
            throw InvalidPOVM("POVM element is not Hermitian");
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-9)
            throw InvalidPOVM("POVM element has a negative eigenvalue");
        sum += m;
    }
    if ((sum - CMat::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-8)
        throw InvalidPOVM("POVM elements do not sum to the identity");
}

Eigen::VectorXcd haar_state(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = std::complex<double>(g(rng), g(rng));
    v.normalize();
    return v;
}

double helstrom_antidist_two(const Eigen::VectorXcd& psi0, const Eigen::VectorXcd& psi1) {
    if (std::abs(psi0.norm() - 1.0) > 1e-9 || std::abs(psi1.norm() - 1.0) > 1e-9)
        throw InvalidState("helstrom inputs must be unit vectors");
    double ov = std::norm(psi0.dot(psi1));
    return 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - ov)));
}

namespace {

MeasurementOptimum guessing_optimum(const std::vector<CMat>& states,
                                    const std::vector<double>& priors, bool maximize) {
    if (states.size() < 2) throw InvalidState("need at least two states");
    if (priors.size() != states.size()) throw InvalidState("priors length mismatch");
    int d = static_cast<int>(states.front().rows());
    for (const CMat& s : states) check_density_matrix(s);

    SdpProblem p;
    std::vector<int> vars;
    for (std::size_t x = 0; x < states.size(); ++x) vars.push_back(p.add_var(d));
    MatExpr sum = MatExpr::of(vars[0]);
    for (std::size_t x = 1; x < states.size(); ++x) sum.plus(vars[x], 1.0);
    p.add_eq_matrix(sum, CMat::Identity(d, d));
    LinExpr obj;
    for (std::size_t x = 0; x < states.size(); ++x) obj.add(vars[x], priors[x] * states[x]);
    if (maximize)
        p.maximize(obj);
    else
        p.minimize(obj);
    auto out = p.solve();
    MeasurementOptimum res;
    res.value = out.value;
    res.rel_gap = out.rel_gap;
    res.primal_obj = out.primal_obj;
    res.dual_obj = out.dual_obj;
    res.povm = out.vars;
    return res;
}

}  // namespace

MeasurementOptimum distinguishability(const std::vector<CMat>& states,
                                      const std::vector<double>& priors) {
    return guessing_optimum(states, priors, true);
}

MeasurementOptimum antidistinguishability(const std::vector<CMat>& states,
                                          const std::vector<double>& priors) {
    MeasurementOptimum r = guessing_optimum(states, priors, false);
    r.value = 1.0 - r.value;
    return r;
}

QuantumScenario make_quantum_scenario(const ScenarioSpec& spec, const FigureOfMerit& fom) {
    QuantumScenario qs;
    qs.index = BehaviorIndex(spec);
    qs.kind = spec.kind;
    for (const auto& s : spec.senders) {
        std::vector<double> q;
        for (const Rat& v : s.prior) q.push_back(rat_double(v));
        qs.priors.push_back(std::move(q));
    }
    qs.coeffs.resize(fom.coeffs.size());
    for (std::size_t i = 0; i < fom.coeffs.size(); ++i) qs.coeffs[i] = rat_double(fom.coeffs[i]);
    return qs;
}

namespace {

CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

struct SweepContext {
    const QuantumScenario* qs;
    int dim;
    int prod_dim;
    std::vector<std::vector<int>> xs_of;
};

SweepContext make_context(const QuantumScenario& qs, int dim) {
    SweepContext c;
    c.qs = &qs;
    c.dim = dim;
    int N = qs.n_senders();
    c.prod_dim = 1;
    for (int i = 0; i < N; ++i) c.prod_dim *= dim;
    int n_inputs = qs.index.n_inputs();
    c.xs_of.assign(n_inputs, std::vector<int>(N));
    for (int xf = 0; xf < n_inputs; ++xf) {
        int t = xf;
        for (int i = N - 1; i >= 0; --i) {
            c.xs_of[xf][i] = t % qs.index.n_x[i];
            t /= qs.index.n_x[i];
        }
    }
    return c;
}

double strategy_value(const SweepContext& c, const Strategy& st) {
    const QuantumScenario& qs = *c.qs;
    double acc = qs.offset;
    int n_inputs = qs.index.n_inputs();
    for (int xf = 0; xf < n_inputs; ++xf) {
        CMat prod = st.states[0][c.xs_of[xf][0]];
        for (int i = 1; i < qs.n_senders(); ++i) prod = kron(prod, st.states[i][c.xs_of[xf][i]]);
        for (int z = 0; z < qs.index.n_z; ++z)
            for (int y = 0; y < qs.index.n_y; ++y) {
                double cv = qs.coeffs[qs.index.index(z, c.xs_of[xf], y)];
                if (cv != 0.0) acc += cv * (prod * st.povm[z * qs.index.n_y + y]).trace().real();
            }
    }
    return acc;
}

double povm_step(const SweepContext& c, Strategy& st, std::optional<double> cap) {
    const QuantumScenario& qs = *c.qs;
    int n_z = qs.index.n_z, n_y = qs.index.n_y;
    int D = c.prod_dim;
    int n_inputs = qs.index.n_inputs();

    std::vector<CMat> F(n_z * n_y, CMat::Zero(D, D));
    for (int xf = 0; xf < n_inputs; ++xf) {
        CMat prod = st.states[0][c.xs_of[xf][0]];
        for (int i = 1; i < qs.n_senders(); ++i) prod = kron(prod, st.states[i][c.xs_of[xf][i]]);
        for (int z = 0; z < n_z; ++z)
            for (int y = 0; y < n_y; ++y) {
                double cv = qs.coeffs[qs.index.index(z, c.xs_of[xf], y)];
                if (cv != 0.0) F[z * n_y + y] += cv * prod;
            }
    }

    SdpProblem p;
    std::vector<int> vars(n_z * n_y);
    for (int k = 0; k < n_z * n_y; ++k) vars[k] = p.add_var(D);
    for (int y = 0; y < n_y; ++y) {
        MatExpr sum = MatExpr::of(vars[0 * n_y + y]);
        for (int z = 1; z < n_z; ++z) sum.plus(vars[z * n_y + y], 1.0);
        p.add_eq_matrix(sum, CMat::Identity(D, D));
    }
    LinExpr obj;
    for (int k = 0; k < n_z * n_y; ++k) obj.add(vars[k], F[k]);
    obj.constant = qs.offset;
    if (cap) p.add_le(obj, *cap);
    p.maximize(obj);
    auto out = p.solve();
    for (int k = 0; k < n_z * n_y; ++k) st.povm[k] = out.vars[k];
    return out.value;
}

// Effective operator on the sender's slot, one per input value.
std::vector<CMat> sender_operators(const SweepContext& c, const Strategy& st, int sender) {
    const QuantumScenario& qs = *c.qs;
    int N = qs.n_senders(), d = c.dim, D = c.prod_dim;
    int n_x = qs.index.n_x[sender];
    int n_inputs = qs.index.n_inputs();

    std::vector<CMat> G(n_x, CMat::Zero(d, d));
    std::vector<int> ai(N), bi(N);
    auto decompose = [&](int flat, std::vector<int>& out) {
        for (int i = N - 1; i >= 0; --i) {
            out[i] = flat % d;
            flat /= d;
        }
    };
    for (int xf = 0; xf < n_inputs; ++xf) {
        CMat K = CMat::Zero(D, D);
        bool any = false;
        for (int z = 0; z < qs.index.n_z; ++z)
            for (int y = 0; y < qs.index.n_y; ++y) {
                double cv = qs.coeffs[qs.index.index(z, c.xs_of[xf], y)];
                if (cv != 0.0) {
                    K += cv * st.povm[z * qs.index.n_y + y];
                    any = true;
                }
            }
        if (!any) continue;
        int x_i = c.xs_of[xf][sender];
        for (int a = 0; a < D; ++a) {
            decompose(a, ai);
            for (int b = 0; b < D; ++b) {
                decompose(b, bi);
                // The trace pairs the other senders' states with swapped
                // indices: Tr[(rho_1 x rho_2) K] sums rho_j(b_j, a_j) K(a, b).
                std::complex<double> w(1, 0);
                for (int j = 0; j < N && w != std::complex<double>(0, 0); ++j) {
                    if (j == sender) continue;
                    w *= st.states[j][c.xs_of[xf][j]](bi[j], ai[j]);
                }
                if (w != std::complex<double>(0, 0)) G[x_i](ai[sender], bi[sender]) += w * K(a, b);
            }
        }
    }
    for (CMat& g : G) g = 0.5 * (g + g.adjoint()).eval();
    return G;
}

struct StateStepResult {
    double value = 0;
    double aux_trace = 0;
};

StateStepResult state_step(const SweepContext& c, Strategy& st, int sender, bool min_resource,
                           double resource_bound, double pin_lo, double pin_hi) {
    const QuantumScenario& qs = *c.qs;
    int d = c.dim;
    int n_x = qs.index.n_x[sender];
    bool dist = qs.kind == ConstraintKind::Distinguishability;

    std::vector<CMat> G = sender_operators(c, st, sender);

    SdpProblem p;
    std::vector<int> rho(n_x);
    for (int x = 0; x < n_x; ++x) rho[x] = p.add_var(d);
    int aux = p.add_var(d, /*free_sign=*/!dist);  // sigma is PSD, omega is free

    for (int x = 0; x < n_x; ++x) {
        LinExpr tr;
        tr.add(rho[x], CMat::Identity(d, d));
        p.add_eq(tr, 1.0);
        MatExpr cone = dist ? MatExpr::of(aux).plus(rho[x], -qs.priors[sender][x])
                            : MatExpr::of(rho[x], qs.priors[sender][x]).plus(aux, -1.0);
        p.add_psd(cone);
    }

    LinExpr aux_tr;
    aux_tr.add(aux, CMat::Identity(d, d));
    LinExpr value;
    for (int x = 0; x < n_x; ++x) value.add(rho[x], G[x]);
    value.constant = qs.offset;

    if (min_resource) {
        p.add_ge(value, pin_lo);
        p.add_le(value, pin_hi);
        if (dist)
            p.minimize(aux_tr);
        else
            p.maximize(aux_tr);
    } else {
        if (dist)
            p.add_le(aux_tr, resource_bound);
        else
            p.add_ge(aux_tr, 1.0 - resource_bound);
        p.maximize(value);
    }
    auto out = p.solve();
    for (int x = 0; x < n_x; ++x) st.states[sender][x] = out.vars[rho[x]];

    StateStepResult r;
    r.aux_trace = out.vars[aux].trace().real();
    r.value = min_resource ? 0.0 : out.value;
    return r;
}

Strategy random_strategy(const QuantumScenario& qs, int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Strategy st;
    st.states.resize(qs.n_senders());
    for (int i = 0; i < qs.n_senders(); ++i)
        for (int x = 0; x < qs.index.n_x[i]; ++x) {
            Eigen::VectorXcd v = haar_state(rng, dim);
            st.states[i].push_back(v * v.adjoint());
        }
    int D = 1;
    for (int i = 0; i < qs.n_senders(); ++i) D *= dim;
    st.povm.assign(qs.index.n_z * qs.index.n_y,
                   CMat::Identity(D, D) / static_cast<double>(qs.index.n_z));
    return st;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::vector<double> audit(const QuantumScenario& qs, const Strategy& st) {
    std::vector<double> out;
    for (int i = 0; i < qs.n_senders(); ++i) {
        if (qs.kind == ConstraintKind::Distinguishability)
            out.push_back(distinguishability(st.states[i], qs.priors[i]).value);
        else
            out.push_back(antidistinguishability(st.states[i], qs.priors[i]).value);
    }
    return out;
}

template <typename Outcome, typename Fn>
std::vector<Outcome> run_restarts(int total, int threads, Fn&& make_and_run) {
    std::vector<Outcome> results(total);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= total) return;
            results[k] = make_and_run(k);
        }
    };
    int nthreads = std::min(threads, total);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return results;
}

}  // namespace

int env_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("POLYCOMM_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

SeeSawResult seesaw(const QuantumScenario& qs, const std::vector<double>& resources,
                    const SeeSawOptions& opt, const std::vector<Strategy>& extra_inits) {
    SweepContext ctx = make_context(qs, opt.dim);
    int N = qs.n_senders();

    struct RunOutcome {
        bool ok = false;
        double value = -1e300;
        Strategy st;
        std::vector<double> trace;
    };

    auto run_one = [&](Strategy st) {
        RunOutcome out;
        try {
            double prev = -1e300;
            for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
                povm_step(ctx, st, std::nullopt);
                double val = 0;
                for (int i = 0; i < N; ++i)
                    val = state_step(ctx, st, i, false, resources[i], 0, 0).value;
                out.trace.push_back(val);
                if (sweep > 0 && val - prev < opt.tol) break;
                prev = val;
            }
            out.value = out.trace.back();
            out.st = std::move(st);
            out.ok = true;
        } catch (const ConicError& e) {
            if (std::getenv("POLYCOMM_DEBUG"))
                std::fprintf(stderr, "seesaw restart failed: %s\n", e.what());
            out.ok = false;
        }
        return out;
    };

    int total = static_cast<int>(extra_inits.size()) + opt.restarts;
    auto results = run_restarts<RunOutcome>(total, env_thread_count(opt.threads), [&](int k) {
        Strategy init =
            k < static_cast<int>(extra_inits.size())
                ? extra_inits[k]
                : random_strategy(qs, opt.dim,
                                  splitmix64(opt.seed + 0x1000ull * (k - extra_inits.size())));
        return run_one(std::move(init));
    });

    SeeSawResult best;
    best.seed = opt.seed;
    bool found = false;
    for (int k = 0; k < total; ++k) {
        if (!results[k].ok) {
            ++best.failures;
            continue;
        }
        if (!found || results[k].value > best.value) {
            best.value = results[k].value;
            best.strategy = results[k].st;
            best.trace = results[k].trace;
            best.winning_restart = k - static_cast<int>(extra_inits.size());
            found = true;
        }
    }
    if (!found) throw NumericalFailure("every SeeSaw restart failed");
    best.audited_resources = audit(qs, best.strategy);
    return best;
}

TotalResourceQ min_total_resource(const QuantumScenario& qs, double s_target,
                                  const SeeSawOptions& opt, bool select_by_product,
                                  const std::vector<Strategy>& extra_inits) {
    SweepContext ctx = make_context(qs, opt.dim);
    int N = qs.n_senders();
    double lo = s_target - opt.pin_slack, hi = s_target + opt.pin_slack;

    struct RunOutcome {
        bool ok = false;
        std::vector<double> per_sender;
        double sum = 1e300, product = 1e300, value = 0;
        Strategy st;
        std::vector<double> trace;
    };

    auto run_one = [&](Strategy st) {
        RunOutcome out;
        try {
            // Climb to the target with full resources first.
            double val = strategy_value(ctx, st);
            for (int sweep = 0; sweep < 100 && val < lo; ++sweep) {
                povm_step(ctx, st, std::nullopt);
                for (int i = 0; i < N; ++i) val = state_step(ctx, st, i, false, 1.0, 0, 0).value;
                if (sweep > 2 && val < lo && sweep == 99)
                    throw NumericalFailure("cannot reach target");
            }
            if (val < lo) throw NumericalFailure("cannot reach target value");

            double prev = 1e300;
            std::vector<double> aux(N, 1.0);
            for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
                double reached = povm_step(ctx, st, hi);
                if (reached < lo) throw NumericalFailure("target lost in POVM step");
                for (int i = 0; i < N; ++i) {
                    auto sr = state_step(ctx, st, i, true, 0, lo, hi);
                    aux[i] = qs.kind == ConstraintKind::Distinguishability ? sr.aux_trace
                                                                           : 1.0 - sr.aux_trace;
                }
                double obj = 0;
                for (int i = 0; i < N; ++i) obj += aux[i];
                out.trace.push_back(obj);
                if (sweep > 0 && prev - obj < opt.tol) break;
                prev = obj;
            }
            out.value = strategy_value(ctx, st);
            if (out.value < lo - 1e-5 || out.value > hi + 1e-5)
                throw NumericalFailure("pinned value drifted");
            out.per_sender = aux;
            out.sum = 0;
            out.product = 1;
            for (int i = 0; i < N; ++i) {
                out.sum += aux[i];
                out.product *= aux[i];
            }
            out.st = std::move(st);
            out.ok = true;
        } catch (const ConicError&) {
            out.ok = false;
        }
        return out;
    };

    int total = static_cast<int>(extra_inits.size()) + opt.restarts;
    auto results = run_restarts<RunOutcome>(total, env_thread_count(opt.threads), [&](int k) {
        Strategy init =
            k < static_cast<int>(extra_inits.size())
                ? extra_inits[k]
                : random_strategy(qs, opt.dim,
                                  splitmix64(opt.seed + 0x2000ull * (k - extra_inits.size())));
        return run_one(std::move(init));
    });

    TotalResourceQ best;
    bool found = false;
    for (int k = 0; k < total; ++k) {
        if (!results[k].ok) {
            ++best.failures;
            continue;
        }
        double key = select_by_product ? results[k].product : results[k].sum;
        double cur = select_by_product ? best.product : best.sum;
        if (!found || key < cur) {
            best.per_sender = results[k].per_sender;
            best.sum = results[k].sum;
            best.product = results[k].product;
            best.achieved_value = results[k].value;
            best.strategy = results[k].st;
            best.trace = results[k].trace;
            found = true;
        }
    }
    if (!found) throw Unachievable("no SeeSaw restart reached the target value");
    best.audited_resources = audit(qs, best.strategy);
    return best;
}

VerifyResult verify_strategy(const QuantumScenario& qs, const Strategy& st) {
    for (const auto& sender : st.states)
        for (const auto& rho : sender) check_density_matrix(rho);
    check_povm(st.povm);
    int d = static_cast<int>(st.states[0][0].rows());
    SweepContext ctx = make_context(qs, d);
    VerifyResult r;
    r.value = strategy_value(ctx, st);
    r.audited_resources = audit(qs, st);
    return r;
}

Strategy classical_embedding_strategy(const ScenarioSpec& spec, const ExtendedVertexSet& ext,
                                      const ExtendedVertex& vertex, int dim) {
    int N = spec.n_senders();
    Strategy st;
    st.states.resize(N);
    for (int i = 0; i < N; ++i) {
        auto enc = encoding_vertices(spec, i);
        const EncodingVertex& ev = enc[vertex.encoding_index[i]];
        int n_m = spec.senders[i].messages();
        if (dim < n_m) throw InvalidState("embedding dimension below the message count");
        for (int x = 0; x < spec.senders[i].n_x; ++x) {
            CMat rho = CMat::Zero(dim, dim);
            for (int m = 0; m < n_m; ++m) rho(m, m) = rat_double(ev.p[m][x]);
            st.states[i].push_back(rho);
        }
    }
    auto decoders = enumerate_decoders(spec);
    const auto& g = decoders[vertex.decoder_index];
    long n_msgs = 1;
    for (const auto& s : spec.senders) n_msgs *= s.messages();
    int D = 1;
    for (int i = 0; i < N; ++i) D *= dim;
    st.povm.assign(spec.n_z * spec.n_y, CMat::Zero(D, D));
    for (long mf = 0; mf < n_msgs; ++mf) {
        std::vector<int> ms(N);
        long t = mf;
        for (int i = N - 1; i >= 0; --i) {
            ms[i] = static_cast<int>(t % spec.senders[i].messages());
            t /= spec.senders[i].messages();
        }
        int flat = 0;
        for (int i = 0; i < N; ++i) flat = flat * dim + ms[i];
        for (int y = 0; y < spec.n_y; ++y) {
            int z = g[mf * spec.n_y + y];
            st.povm[z * spec.n_y + y](flat, flat) += 1.0;
        }
    }
    // Complete each receiver setting on the uncovered subspace.
    for (int y = 0; y < spec.n_y; ++y) {
        CMat sum = CMat::Zero(D, D);
        for (int z = 0; z < spec.n_z; ++z) sum += st.povm[z * spec.n_y + y];
        st.povm[0 * spec.n_y + y] += CMat::Identity(D, D) - sum;
    }
    return st;
}

const ExtendedVertex* best_feasible_vertex(const ExtendedVertexSet& ext, const FigureOfMerit& fom,
                                           const VecQ& resources) {
    const ExtendedVertex* best = nullptr;
    Rat best_val;
    for (const auto& v : ext.vertices) {
        bool ok = true;
        for (std::size_t i = 0; i < resources.size(); ++i)
            if (v.resources[i] > resources[i]) ok = false;
        if (!ok) continue;
        Rat val = dot(fom.coeffs, v.behavior);
        if (!best || val > best_val) {
            best = &v;
            best_val = val;
        }
    }
    return best;
}

namespace {

json cmat_to_json(const CMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMat cmat_from_json(const json& rows) {
    int n = static_cast<int>(rows.size());
    int m = n ? static_cast<int>(rows[0].size()) : 0;
    CMat out(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            out(i, j) =
                std::complex<double>(rows[i][j][0].get<double>(), rows[i][j][1].get<double>());
    return out;
}

}  // namespace

std::string strategy_to_json(const Strategy& st, const std::vector<double>& declared) {
    json j;
    j["states"] = json::array();
    for (const auto& sender : st.states) {
        json arr = json::array();
        for (const auto& rho : sender) arr.push_back(cmat_to_json(rho));
        j["states"].push_back(std::move(arr));
    }
    j["povm"] = json::array();
    for (const auto& m : st.povm) j["povm"].push_back(cmat_to_json(m));
    if (!declared.empty()) j["declared_resources"] = declared;
    return j.dump(2);
}

Strategy strategy_from_json(const std::string& text, std::vector<double>* declared) {
    json j = json::parse(text);
    Strategy st;
    for (const json& sender : j.at("states")) {
        std::vector<CMat> states;
        for (const json& rho : sender) states.push_back(cmat_from_json(rho));
        st.states.push_back(std::move(states));
    }
    for (const json& m : j.at("povm")) st.povm.push_back(cmat_from_json(m));
    if (declared && j.contains("declared_resources"))
        *declared = j["declared_resources"].get<std::vector<double>>();
    return st;
}

}  // namespace polycomm
