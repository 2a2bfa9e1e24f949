#include "polycomm/distributed.hpp"

#include <cmath>

namespace polycomm {

VecQ DistributedTask::prior(int sender) const {
    if (!priors.empty()) return priors[sender];
    return VecQ(n_inputs, Rat(1, n_inputs));
}

ScenarioSpec DistributedTask::scenario() const {
    ScenarioSpec spec;
    for (int i = 0; i < n_senders; ++i) {
        SenderSpec s;
        s.n_x = n_inputs;
        s.prior = prior(i);
        spec.senders.push_back(std::move(s));
    }
    spec.n_y = 1;
    long nz = 1;
    for (int i = 0; i < n_senders; ++i) nz *= n_inputs;
    spec.n_z = static_cast<int>(nz);
    spec.kind = ConstraintKind::AntiDistinguishability;
    spec.validate();
    return spec;
}

namespace {

void check_resource_range(const DistributedTask& task, const VecQ& A) {
    if (static_cast<int>(A.size()) != task.n_senders)
        throw OutOfRange("resource vector length != sender count");
    for (int i = 0; i < task.n_senders; ++i) {
        VecQ q = task.prior(i);
        Rat mn = q[0];
        for (const Rat& v : q) mn = std::min(mn, v);
        if (A[i] < Rat(1) - mn || A[i] > 1)
            throw OutOfRange("anti-distinguishability " + std::to_string(i + 1) +
                             " outside its admissible interval");
    }
}

}  // namespace

Rat classical_bound(const DistributedTask& task, const VecQ& A) {
    check_resource_range(task, A);
    Rat prod(1);
    for (const Rat& a : A) prod *= Rat(1) - a;
    return Rat(1) - prod;
}

double classical_bound(int N, const std::vector<double>& A) {
    double prod = 1;
    for (int i = 0; i < N; ++i) {
        if (A[i] < 0 || A[i] > 1) throw OutOfRange("anti-distinguishability outside [0,1]");
        prod *= 1.0 - A[i];
    }
    return 1.0 - prod;
}

Rat brute_force_distributed(const DistributedTask& task, const VecQ& A) {
    check_resource_range(task, A);
    ScenarioSpec spec = task.scenario();
    int N = task.n_senders, n = task.n_inputs;

    std::vector<std::vector<EncodingVertex>> enc(N);
    for (int i = 0; i < N; ++i) {
        for (auto& ev : encoding_vertices(spec, i))
            if (ev.resource <= A[i]) enc[i].push_back(std::move(ev));
        if (enc[i].empty()) throw OutOfRange("no feasible encodings for a sender");
    }

    long n_msgs = 1;
    for (int i = 0; i < N; ++i) n_msgs *= spec.senders[i].messages();
    long n_inputs_flat = 1;
    for (int i = 0; i < N; ++i) n_inputs_flat *= n;

    Rat best(0);
    bool first = true;
    std::vector<int> tuple(N, 0);
    std::vector<int> ms(N), xs(N);
    bool more = true;
    while (more) {
        // error = sum over messages of the minimal joint prior-weighted
        // probability; success = 1 - error (optimal deterministic excluder).
        Rat error(0);
        for (long mf = 0; mf < n_msgs; ++mf) {
            long t = mf;
            for (int i = N - 1; i >= 0; --i) {
                ms[i] = static_cast<int>(t % spec.senders[i].messages());
                t /= spec.senders[i].messages();
            }
            Rat mn;
            bool have = false;
            for (long xf = 0; xf < n_inputs_flat; ++xf) {
                long u = xf;
                for (int i = N - 1; i >= 0; --i) {
                    xs[i] = static_cast<int>(u % n);
                    u /= n;
                }
                Rat prod(1);
                for (int i = 0; i < N; ++i) {
                    prod *= task.prior(i)[xs[i]] * enc[i][tuple[i]].p[ms[i]][xs[i]];
                    if (prod == 0) break;
                }
                if (!have || prod < mn) {
                    mn = prod;
                    have = true;
                }
                if (mn == 0) break;
            }
            error += mn;
        }
        Rat s = Rat(1) - error;
        if (first || s > best) {
            best = s;
            first = false;
        }
        more = false;
        for (int i = N - 1; i >= 0; --i) {
            if (++tuple[i] < static_cast<int>(enc[i].size())) {
                more = true;
                break;
            }
            tuple[i] = 0;
        }
    }
    return best;
}

Rat brute_force_distributed_decoders(const DistributedTask& task, const VecQ& A) {
    check_resource_range(task, A);
    ScenarioSpec spec = task.scenario();
    int N = task.n_senders, n = task.n_inputs;
    auto ext = extended_vertices(spec);
    BehaviorIndex idx(spec);

    // success = 1 - sum_x q_x p(z = flat(x) | x)
    Rat best(0);
    bool first = true;
    for (const auto& v : ext.vertices) {
        bool ok = true;
        for (int i = 0; i < N; ++i)
            if (v.resources[i] > A[i]) ok = false;
        if (!ok) continue;
        Rat err(0);
        std::vector<int> xs(N);
        for (int xf = 0; xf < idx.n_inputs(); ++xf) {
            int t = xf;
            for (int i = N - 1; i >= 0; --i) {
                xs[i] = t % n;
                t /= n;
            }
            Rat q(1);
            for (int i = 0; i < N; ++i) q *= task.prior(i)[xs[i]];
            err += q * v.behavior[idx.index(xf, xs, 0)];
        }
        Rat s = Rat(1) - err;
        if (first || s > best) {
            best = s;
            first = false;
        }
    }
    if (first) throw OutOfRange("no feasible vertex");
    return best;
}

double pbr_theta_min(int N) {
    if (N < 1) throw OutOfRange("need at least one sender");
    return 2.0 * std::atan(std::pow(2.0, 1.0 / N) - 1.0);
}

std::pair<double, double> pbr_theta_range(int N) {
    if (N < 2) throw OutOfRange("the construction needs at least two senders");
    return {pbr_theta_min(N), M_PI / 2};
}

double pbr_ratio(double theta, int N) {
    auto [lo, hi] = pbr_theta_range(N);
    if (theta < lo - 1e-12 || theta >= hi)
        throw ThetaOutOfRange("theta outside [2 atan(2^{1/N} - 1), pi/2)");
    return std::pow(2.0 / (1.0 + std::sin(theta)), N);
}

double pbr_optimal_ratio(int N) {
    if (N < 2) throw OutOfRange("the construction needs at least two senders");
    double inner = 1.0 + std::pow(2.0, 1.0 - 2.0 / N) - std::pow(2.0, 1.0 - 1.0 / N);
    return std::pow(2.0, N) * std::pow(inner, N);
}

std::vector<Eigen::VectorXcd> pbr_state_pair(double theta) {
    Eigen::VectorXcd a(2), b(2);
    a << std::cos(theta / 2), std::sin(theta / 2);
    b << std::cos(theta / 2), -std::sin(theta / 2);
    return {a, b};
}

namespace {

Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd r(a.size() * b.size());
    for (int i = 0; i < a.size(); ++i) r.segment(i * b.size(), b.size()) = a(i) * b;
    return r;
}

}  // namespace

ExclusionCertificate certify_perfect_exclusion(double theta, int N) {
    if (N < 1 || N > 3) throw OutOfRange("certification supports 1 <= N <= 3");
    auto pair = pbr_state_pair(theta);
    long count = 1l << N;
    std::vector<CMat> states;
    std::vector<double> priors(count, 1.0 / count);
    for (long bits = 0; bits < count; ++bits) {
        Eigen::VectorXcd v = pair[(bits >> (N - 1)) & 1];
        for (int i = N - 2; i >= 0; --i) v = kron_vec(v, pair[(bits >> i) & 1]);
        states.push_back(v * v.adjoint());
    }
    ExclusionCertificate cert;
    cert.theta = theta;
    cert.n_senders = N;
    cert.sdp_value = antidistinguishability(states, priors).value;
    cert.excluded = cert.sdp_value >= 1.0 - 1e-7;
    return cert;
}

SufficientCondition sufficient_condition(const std::vector<Eigen::VectorXcd>& states, int N) {
    int n = static_cast<int>(states.size());
    for (const auto& s : states)
        if (std::abs(s.norm() - 1.0) > 1e-9) throw InvalidState("states must be unit vectors");
    SufficientCondition out;
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            if (j == l) continue;
            double ov = std::abs(states[j].dot(states[l]));
            out.gram.beta += ov;
            out.gram.alpha += ov * ov;
        }
    out.gram.frob_sq = std::pow(n + out.gram.alpha, N);
    double direct = product_gram_frobenius_sq(states, N);
    if (std::abs(direct - out.gram.frob_sq) > 1e-9 * std::max(1.0, std::abs(direct)))
        throw NumericalFailure("product Gram identity violated beyond tolerance");
    out.cond1 = static_cast<double>(n) * (n - 2) < out.gram.beta;
    out.cond2 = out.gram.alpha <= n * n / std::pow(2.0, 1.0 / N) - n;
    return out;
}

double product_gram_frobenius_sq(const std::vector<Eigen::VectorXcd>& states, int N) {
    int n = static_cast<int>(states.size());
    long total = 1;
    for (int i = 0; i < N; ++i) total *= n;
    double acc = 0;
    std::vector<int> xs(N), ys(N);
    for (long a = 0; a < total; ++a) {
        long t = a;
        for (int i = N - 1; i >= 0; --i) {
            xs[i] = static_cast<int>(t % n);
            t /= n;
        }
        for (long b = 0; b < total; ++b) {
            long u = b;
            for (int i = N - 1; i >= 0; --i) {
                ys[i] = static_cast<int>(u % n);
                u /= n;
            }
            std::complex<double> ov(1, 0);
            for (int i = 0; i < N; ++i) ov *= states[xs[i]].dot(states[ys[i]]);
            acc += std::norm(ov);
        }
    }
    return acc;
}

std::vector<Eigen::VectorXcd> three_state_example() {
    Eigen::VectorXcd a(2), b(2), c(2);
    a << 1, 0;
    b << std::cos(5 * M_PI / 18), std::sin(5 * M_PI / 18);
    c << std::cos(19 * M_PI / 60),
        std::polar(std::sin(19 * M_PI / 60), 2 * M_PI / 3);
    return {a, b, c};
}

QuantumScenario distributed_quantum_scenario(const DistributedTask& task) {
    ScenarioSpec spec = task.scenario();
    BehaviorIndex idx(spec);
    QuantumScenario qs;
    qs.index = idx;
    qs.kind = ConstraintKind::AntiDistinguishability;
    for (int i = 0; i < task.n_senders; ++i) {
        std::vector<double> q;
        for (const Rat& v : task.prior(i)) q.push_back(rat_double(v));
        qs.priors.push_back(std::move(q));
    }
    qs.coeffs.assign(idx.n_behavior(), 0.0);
    qs.offset = 1.0;
    std::vector<int> xs(task.n_senders);
    for (int xf = 0; xf < idx.n_inputs(); ++xf) {
        int t = xf;
        double q = 1;
        for (int i = task.n_senders - 1; i >= 0; --i) {
            xs[i] = t % task.n_inputs;
            t /= task.n_inputs;
        }
        for (int i = 0; i < task.n_senders; ++i) q *= rat_double(task.prior(i)[xs[i]]);
        qs.coeffs[idx.index(xf, xs, 0)] = -q;  // success = 1 - sum_x q_x p(z = x | x)
    }
    return qs;
}

double min_common_antidist(const DistributedTask& task, double s_target, const SeeSawOptions& opt,
                           double tol_a) {
    QuantumScenario qs = distributed_quantum_scenario(task);
    double floor_a = 1.0 - 1.0 / task.n_inputs;

    std::vector<Strategy> warm;
    auto feasible = [&](double a) {
        std::vector<double> res(task.n_senders, a);
        SeeSawOptions o = opt;
        SeeSawResult r = seesaw(qs, res, o, warm);
        warm.assign(1, r.strategy);
        return std::make_pair(r.value >= s_target - 1e-6, r);
    };

    auto [ok_hi, best_hi] = feasible(1.0);
    if (!ok_hi) throw Unachievable("target success not reachable at full anti-distinguishability");
    // The zero-information floor is reachable classically.
    double floor_success = 1.0;
    for (int i = 0; i < task.n_senders; ++i) {
        double mn = 1.0;
        for (const Rat& v : task.prior(i)) mn = std::min(mn, rat_double(v));
        floor_success *= mn;
    }
    floor_success = 1.0 - floor_success;
    if (s_target <= floor_success + 1e-9) return floor_a;

    double lo = floor_a, hi = 1.0;
    while (hi - lo > tol_a) {
        double mid = 0.5 * (lo + hi);
        if (feasible(mid).first)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

std::vector<CurvePoint> advantage_curve(const DistributedTask& task,
                                        const std::vector<double>& s_grid,
                                        const SeeSawOptions& opt) {
    std::vector<CurvePoint> out;
    for (double s : s_grid) {
        CurvePoint p;
        p.s = s;
        p.a_q = min_common_antidist(task, s, opt);
        double formula = 1.0 - std::pow(std::max(0.0, 1.0 - s), 1.0 / task.n_senders);
        p.a_c = std::max(formula, 1.0 - 1.0 / task.n_inputs);
        p.ratio = std::pow(p.a_c / p.a_q, task.n_senders);
        out.push_back(p);
    }
    return out;
}

}  // namespace polycomm
