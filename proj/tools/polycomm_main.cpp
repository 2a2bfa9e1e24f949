#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "polycomm/distributed.hpp"
#include "polycomm/quantum.hpp"
#include "polycomm/report.hpp"
#include "polycomm/scenario.hpp"

using namespace polycomm;
using nlohmann::json;

namespace {

struct CommonOpts {
    std::string scenario_path, fom_path, out_path;
    std::string resources_text;
    int dim = 4;
    int restarts = 200;
    std::uint64_t seed = 42;
    double tol = 1e-7;
    long cap_decoders = 1000000;
    long cap_vertices = 5000000;
};

VecQ parse_resource_list(const std::string& text, int expected) {
    VecQ out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rat(tok));
    if (expected > 0 && static_cast<int>(out.size()) != expected)
        throw std::invalid_argument("expected " + std::to_string(expected) + " resource values");
    return out;
}

std::vector<double> to_doubles(const VecQ& v) {
    std::vector<double> out;
    for (const Rat& r : v) out.push_back(rat_double(r));
    return out;
}

ScenarioSpec load_scenario(const CommonOpts& c, std::vector<std::pair<std::string, std::string>>& inputs) {
    std::string text = read_file(c.scenario_path);
    inputs.emplace_back(c.scenario_path, text);
    ScenarioSpec spec = scenario_from_json(text);
    spec.caps.decoder_cap = c.cap_decoders;
    spec.caps.vertex_cap = c.cap_vertices;
    return spec;
}

FigureOfMerit load_fom(const CommonOpts& c, const BehaviorIndex& idx,
                       std::vector<std::pair<std::string, std::string>>& inputs) {
    std::string text = read_file(c.fom_path);
    inputs.emplace_back(c.fom_path, text);
    return fom_from_json(text, idx);
}

std::vector<CMat> load_states(const std::string& path,
                              std::vector<std::pair<std::string, std::string>>& inputs,
                              std::vector<Eigen::VectorXcd>* pure_out = nullptr) {
    std::string text = read_file(path);
    inputs.emplace_back(path, text);
    json j = json::parse(text);
    std::vector<CMat> out;
    for (const json& st : j.at("states")) {
        if (st.empty()) throw std::invalid_argument("empty state entry");
        if (st[0].size() == 2 && st[0][0].is_number()) {
            // vector of [re, im] pairs: a pure state
            Eigen::VectorXcd v(st.size());
            for (std::size_t i = 0; i < st.size(); ++i)
                v(static_cast<int>(i)) = std::complex<double>(st[i][0], st[i][1]);
            v.normalize();
            if (pure_out) pure_out->push_back(v);
            out.push_back(v * v.adjoint());
        } else {
            CMat m(st.size(), st[0].size());
            for (std::size_t i = 0; i < st.size(); ++i)
                for (std::size_t k = 0; k < st[i].size(); ++k)
                    m(static_cast<int>(i), static_cast<int>(k)) =
                        std::complex<double>(st[i][k][0], st[i][k][1]);
            out.push_back(std::move(m));
            if (pure_out) throw std::invalid_argument("expected pure-state vectors");
        }
    }
    return out;
}

void emit(const std::string& command, const json& config,
          const std::vector<std::pair<std::string, std::string>>& inputs, const json& results,
          double wall_ms, const std::string& out_path, const std::string& human) {
    json report = make_report(command, config, inputs, results, wall_ms);
    std::string path = out_path.empty() ? command + "_report.json" : out_path;
    write_file(path, report.dump(2) + "\n");
    std::cout << human;
    std::cout << "report written to " << path << "\n";
}

std::vector<Strategy> classical_inits(const ScenarioSpec& spec, const ExtendedVertexSet& ext,
                                      const FigureOfMerit& fom, const VecQ& resources, int dim) {
    int max_nm = 0;
    for (const auto& s : spec.senders) max_nm = std::max(max_nm, s.messages());
    if (dim < max_nm) return {};
    const ExtendedVertex* v = best_feasible_vertex(ext, fom, resources);
    if (!v) return {};
    return {classical_embedding_strategy(spec, ext, *v, dim)};
}

double now_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "polycomm: classical correlation polytopes and quantum advantages under\n"
        "distinguishability / anti-distinguishability constraints"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string s_target_text = "1", strategy_path, states_path, priors_text;
    int task_senders = 2, task_inputs = 3, n_min = 2, n_max = 10;
    double theta = -1, s_point = 1.0;
    int s_points = 21;
    double s_min = -1;
    bool discrimination = false, select_product = false;

    auto add_common = [&](CLI::App* cmd, bool needs_scenario, bool needs_fom) {
        if (needs_scenario)
            cmd->add_option("--scenario", c.scenario_path, "scenario JSON file")->required();
        if (needs_fom)
            cmd->add_option("--fom", c.fom_path, "figure-of-merit JSON file")->required();
        cmd->add_option("--out", c.out_path, "report output path");
        cmd->add_option("--dim", c.dim, "Hilbert space dimension per sender");
        cmd->add_option("--restarts", c.restarts, "SeeSaw restarts");
        cmd->add_option("--seed", c.seed, "master seed");
        cmd->add_option("--tol", c.tol, "SeeSaw convergence tolerance");
        cmd->add_option("--cap-decoders", c.cap_decoders, "decoder enumeration cap");
        cmd->add_option("--cap-vertices", c.cap_vertices, "extended vertex cap");
    };

    auto* facets_cmd = app.add_subcommand("facets", "facet table of the extended classical polytope");
    add_common(facets_cmd, true, false);

    auto* cval_cmd = app.add_subcommand("classical-value", "exact best classical value at fixed resources");
    add_common(cval_cmd, true, true);
    cval_cmd->add_option("--resources", c.resources_text, "per-sender resource values")->required();

    auto* ctot_cmd = app.add_subcommand("classical-total", "minimal resource product at a target value");
    add_common(ctot_cmd, true, true);
    ctot_cmd->add_option("--s-target", s_target_text, "target figure-of-merit value")->required();

    auto* seesaw_cmd = app.add_subcommand("seesaw", "SeeSaw lower bound on the quantum value");
    add_common(seesaw_cmd, true, true);
    seesaw_cmd->add_option("--resources", c.resources_text, "per-sender resource values")->required();

    auto* total_cmd = app.add_subcommand("total", "SeeSaw upper bound on the total quantum resource");
    add_common(total_cmd, true, true);
    total_cmd->add_option("--s-target", s_target_text, "target figure-of-merit value")->required();
    total_cmd->add_flag("--select-product", select_product,
                        "select restarts by product instead of sum");

    auto* verify_cmd = app.add_subcommand("verify", "evaluate and audit an explicit strategy");
    add_common(verify_cmd, true, true);
    verify_cmd->add_option("--strategy", strategy_path, "strategy JSON file")->required();

    auto* anti_cmd = app.add_subcommand("antidist", "state exclusion / discrimination SDP");
    anti_cmd->add_option("--states", states_path, "states JSON file")->required();
    anti_cmd->add_option("--priors", priors_text, "prior probabilities (default uniform)");
    anti_cmd->add_flag("--discrimination", discrimination, "maximize guessing instead of exclusion");
    anti_cmd->add_option("--out", c.out_path, "report output path");

    auto* dist_cmd = app.add_subcommand("distributed", "anti-distinguishing distributed inputs");
    dist_cmd->add_option("--N", task_senders, "number of senders");
    dist_cmd->add_option("--n", task_inputs, "inputs per sender");
    dist_cmd->add_option("--s", s_point, "target success metric");
    dist_cmd->add_option("--states", states_path, "per-sender pure states (skips the SeeSaw search)");
    dist_cmd->add_option("--out", c.out_path, "report output path");
    dist_cmd->add_option("--dim", c.dim, "Hilbert space dimension per sender")->default_val(2);
    dist_cmd->add_option("--restarts", c.restarts, "SeeSaw restarts");
    dist_cmd->add_option("--seed", c.seed, "master seed");

    auto* pbr_cmd = app.add_subcommand("pbr", "binary-input product-state exclusion formulas");
    pbr_cmd->add_option("--n-min", n_min, "first sender count");
    pbr_cmd->add_option("--n-max", n_max, "last sender count");
    pbr_cmd->add_option("--N", task_senders, "sender count for a certificate");
    pbr_cmd->add_option("--theta", theta, "run an exclusion certificate at this angle");
    pbr_cmd->add_option("--out", c.out_path, "report output path");

    auto* curve_cmd = app.add_subcommand("curve", "advantage curve for the distributed task");
    curve_cmd->add_option("--N", task_senders, "number of senders");
    curve_cmd->add_option("--n", task_inputs, "inputs per sender");
    curve_cmd->add_option("--s-points", s_points, "grid size");
    curve_cmd->add_option("--s-min", s_min, "grid start (default: the zero-information floor)");
    curve_cmd->add_option("--out", c.out_path, "CSV output path");
    curve_cmd->add_option("--dim", c.dim, "Hilbert space dimension per sender")->default_val(2);
    curve_cmd->add_option("--restarts", c.restarts, "SeeSaw restarts");
    curve_cmd->add_option("--seed", c.seed, "master seed");

    CLI11_PARSE(app, argc, argv);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<std::string, std::string>> inputs;

    try {
        if (facets_cmd->parsed()) {
            ScenarioSpec spec = load_scenario(c, inputs);
            auto ext = extended_vertices(spec);
            auto table = facet_table(ext, standard_generators(spec));
            json results = json::parse(facet_table_to_json(table, ext.index, spec.kind));
            results["vertex_count"] = static_cast<int>(ext.vertices.size());
            emit("facets", {{"scenario", c.scenario_path}}, inputs, results, now_ms(t0), c.out_path,
                 facet_table_to_text(table, ext.index, spec.kind));
        } else if (cval_cmd->parsed()) {
            ScenarioSpec spec = load_scenario(c, inputs);
            auto ext = extended_vertices(spec);
            FigureOfMerit fom = load_fom(c, ext.index, inputs);
            VecQ res = parse_resource_list(c.resources_text, spec.n_senders());
            Rat value = classical_value(ext, fom, res);
            Rat upper = operational_relaxation(spec, fom, res);
            json results;
            results["classical_value"] = rat_str(value);
            results["classical_value_double"] = rat_double(value);
            results["operational_upper_bound"] = rat_str(upper);
            std::ostringstream os;
            os << "classical value = " << rat_str(value) << " (" << rat_double(value) << ")\n"
               << "operational upper bound = " << rat_double(upper) << "\n";
            emit("classical-value",
                 {{"scenario", c.scenario_path}, {"fom", c.fom_path}, {"resources", c.resources_text}},
                 inputs, results, now_ms(t0), c.out_path, os.str());
        } else if (ctot_cmd->parsed()) {
            ScenarioSpec spec = load_scenario(c, inputs);
            auto ext = extended_vertices(spec);
            FigureOfMerit fom = load_fom(c, ext.index, inputs);
            Rat target = parse_rat(s_target_text);
            auto res = classical_total(ext, fom, target);
            json results;
            results["resources"] = json::array();
            for (const Rat& r : res.resources) results["resources"].push_back(rat_double(r));
            results["product"] = res.product;
            std::ostringstream os;
            os << "classical total resource product = " << res.product << "\n";
            emit("classical-total", {{"scenario", c.scenario_path}, {"fom", c.fom_path}, {"s", s_target_text}},
                 inputs, results, now_ms(t0), c.out_path, os.str());
        } else if (seesaw_cmd->parsed()) {
            ScenarioSpec spec = load_scenario(c, inputs);
            auto ext = extended_vertices(spec);
            FigureOfMerit fom = load_fom(c, ext.index, inputs);
            VecQ res = parse_resource_list(c.resources_text, spec.n_senders());
            QuantumScenario qs = make_quantum_scenario(spec, fom);
            SeeSawOptions opt;
            opt.dim = c.dim;
            opt.restarts = c.restarts;
            opt.seed = c.seed;
            opt.tol = c.tol;
            auto inits = classical_inits(spec, ext, fom, res, c.dim);
            SeeSawResult r = seesaw(qs, to_doubles(res), opt, inits);
            Rat cval = classical_value(ext, fom, res);
            json results;
            results["value"] = r.value;
            results["classical_value"] = rat_double(cval);
            results["ratio"] = rat_double(cval) != 0 ? r.value / rat_double(cval) : 0.0;
            results["audited_resources"] = r.audited_resources;
            results["trace"] = r.trace;
            results["winning_restart"] = r.winning_restart;
            results["failures"] = r.failures;
            results["seed"] = r.seed;
            results["strategy"] = json::parse(strategy_to_json(r.strategy, to_doubles(res)));
            std::ostringstream os;
            os << "seesaw value = " << r.value << "  classical = " << rat_double(cval)
               << "  ratio = " << results["ratio"].get<double>() << "\n"
               << "audited resources:";
            for (double a : r.audited_resources) os << " " << a;
            os << "\n";
            emit("seesaw",
                 {{"scenario", c.scenario_path},
                  {"fom", c.fom_path},
                  {"resources", c.resources_text},
                  {"dim", c.dim},
                  {"restarts", c.restarts},
                  {"seed", c.seed},
                  {"tol", c.tol}},
                 inputs, results, now_ms(t0), c.out_path, os.str());
        } else if (total_cmd->parsed()) {
            ScenarioSpec spec = load_scenario(c, inputs);
            auto ext = extended_vertices(spec);
            FigureOfMerit fom = load_fom(c, ext.index, inputs);
            Rat target = parse_rat(s_target_text);
            QuantumScenario qs = make_quantum_scenario(spec, fom);
            SeeSawOptions opt;
            opt.dim = c.dim;
            opt.restarts = c.restarts;
            opt.seed = c.seed;
            opt.tol = c.tol;
            VecQ full(spec.n_senders(), Rat(1));
            auto inits = classical_inits(spec, ext, fom, full, c.dim);
            auto q = min_total_resource(qs, rat_double(target), opt, select_product, inits);
            auto cl = classical_total(ext, fom, target);
            json results;
            results["quantum_resources"] = q.per_sender;
            results["quantum_product"] = q.product;
            results["quantum_sum"] = q.sum;
            results["achieved_value"] = q.achieved_value;
            results["audited_resources"] = q.audited_resources;
            results["classical_resources"] = json::array();
            for (const Rat& r : cl.resources) results["classical_resources"].push_back(rat_double(r));
            results["classical_product"] = cl.product;
            results["ratio"] = q.product > 0 ? cl.product / q.product : 0.0;
            results["failures"] = q.failures;
            std::ostringstream os;
            os << "quantum total product <= " << q.product << ", classical = " << cl.product
               << ", ratio = " << results["ratio"].get<double>() << "\n";
            emit("total",
                 {{"scenario", c.scenario_path},
                  {"fom", c.fom_path},
                  {"s", s_target_text},
                  {"dim", c.dim},
                  {"restarts", c.restarts},
                  {"seed", c.seed},
                  {"select_product", select_product}},
                 inputs, results, now_ms(t0), c.out_path, os.str());
        } else if (verify_cmd->parsed()) {
            ScenarioSpec spec = load_scenario(c, inputs);
            auto ext = extended_vertices(spec);
            FigureOfMerit fom = load_fom(c, ext.index, inputs);
            std::string text = read_file(strategy_path);
            inputs.emplace_back(strategy_path, text);
            std::vector<double> declared;
            Strategy st = strategy_from_json(text, &declared);
            QuantumScenario qs = make_quantum_scenario(spec, fom);
            auto r = verify_strategy(qs, st);
            json results;
            results["value"] = r.value;
            results["audited_resources"] = r.audited_resources;
            if (!declared.empty()) {
                VecQ res;
                for (double d : declared) {
                    Rat rr;
                    mpq_set_d(rr.get_mpq_t(), d);
                    res.push_back(rr);
                }
                Rat cval = classical_value(ext, fom, res);
                results["declared_resources"] = declared;
                results["classical_value"] = rat_double(cval);
                results["ratio"] = rat_double(cval) != 0 ? r.value / rat_double(cval) : 0.0;
            }
            std::ostringstream os;
            os << "strategy value = " << r.value << "\naudited resources:";
            for (double a : r.audited_resources) os << " " << a;
            os << "\n";
            if (results.contains("ratio"))
                os << "classical value at declared resources = " << results["classical_value"].get<double>()
                   << ", ratio = " << results["ratio"].get<double>() << "\n";
            emit("verify", {{"scenario", c.scenario_path}, {"fom", c.fom_path}, {"strategy", strategy_path}},
                 inputs, results, now_ms(t0), c.out_path, os.str());
        } else if (anti_cmd->parsed()) {
            std::vector<CMat> states = load_states(states_path, inputs);
            std::vector<double> priors(states.size(), 1.0 / states.size());
            if (!priors_text.empty()) {
                VecQ parsed = parse_resource_list(priors_text, static_cast<int>(states.size()));
                priors = to_doubles(parsed);
            }
            MeasurementOptimum r =
                discrimination ? distinguishability(states, priors) : antidistinguishability(states, priors);
            json results;
            results["value"] = r.value;
            results["rel_gap"] = r.rel_gap;
            results["primal_obj"] = r.primal_obj;
            results["dual_obj"] = r.dual_obj;
            results["povm"] = json::array();
            for (const CMat& mel : r.povm) {
                json rows = json::array();
                for (int i = 0; i < mel.rows(); ++i) {
                    json row = json::array();
                    for (int j2 = 0; j2 < mel.cols(); ++j2)
                        row.push_back({mel(i, j2).real(), mel(i, j2).imag()});
                    rows.push_back(std::move(row));
                }
                results["povm"].push_back(std::move(rows));
            }
            std::ostringstream os;
            os << (discrimination ? "distinguishability" : "anti-distinguishability") << " = " << r.value
               << " (gap " << r.rel_gap << ")\n";
            emit("antidist", {{"states", states_path}, {"discrimination", discrimination}}, inputs,
                 results, now_ms(t0), c.out_path, os.str());
        } else if (dist_cmd->parsed()) {
            DistributedTask task;
            task.n_senders = task_senders;
            task.n_inputs = task_inputs;
            json results;
            std::ostringstream os;
            if (!states_path.empty()) {
                std::vector<Eigen::VectorXcd> pure;
                std::vector<CMat> dms = load_states(states_path, inputs, &pure);
                std::vector<double> priors(dms.size(), 1.0 / dms.size());
                double a_q = antidistinguishability(dms, priors).value;
                // product states across all senders
                std::vector<CMat> prods;
                long total = 1;
                for (int i = 0; i < task.n_senders; ++i) total *= task.n_inputs;
                for (long f = 0; f < total; ++f) {
                    long t = f;
                    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
                    std::vector<int> xs(task.n_senders);
                    for (int i = task.n_senders - 1; i >= 0; --i) {
                        xs[i] = static_cast<int>(t % task.n_inputs);
                        t /= task.n_inputs;
                    }
                    for (int i = 0; i < task.n_senders; ++i) {
                        Eigen::VectorXcd next(v.size() * pure[xs[i]].size());
                        for (int a = 0; a < v.size(); ++a)
                            next.segment(a * pure[xs[i]].size(), pure[xs[i]].size()) = v(a) * pure[xs[i]];
                        v = next;
                    }
                    prods.push_back(v * v.adjoint());
                }
                std::vector<double> prod_priors(prods.size(), 1.0 / prods.size());
                double s_q = antidistinguishability(prods, prod_priors).value;
                double a_c = 1.0 - std::pow(std::max(0.0, 1.0 - s_q), 1.0 / task.n_senders);
                a_c = std::max(a_c, 1.0 - 1.0 / task.n_inputs);
                results["per_sender_antidist"] = a_q;
                results["product_exclusion_value"] = s_q;
                results["classical_required"] = a_c;
                results["ratio"] = std::pow(a_c / a_q, task.n_senders);
                os << "A_Q = " << a_q << ", product exclusion = " << s_q << ", ratio = "
                   << results["ratio"].get<double>() << "\n";
            } else {
                SeeSawOptions opt;
                opt.dim = c.dim;
                opt.restarts = c.restarts;
                opt.seed = c.seed;
                double a_q = min_common_antidist(task, s_point, opt);
                double a_c = 1.0 - std::pow(std::max(0.0, 1.0 - s_point), 1.0 / task.n_senders);
                a_c = std::max(a_c, 1.0 - 1.0 / task.n_inputs);
                results["s"] = s_point;
                results["a_q"] = a_q;
                results["a_c"] = a_c;
                results["ratio"] = std::pow(a_c / a_q, task.n_senders);
                os << "S = " << s_point << ": A_Q = " << a_q << ", A_C = " << a_c
                   << ", ratio = " << results["ratio"].get<double>() << "\n";
            }
            emit("distributed",
                 {{"N", task.n_senders}, {"n", task.n_inputs}, {"s", s_point}, {"states", states_path},
                  {"dim", c.dim}, {"restarts", c.restarts}, {"seed", c.seed}},
                 inputs, results, now_ms(t0), c.out_path, os.str());
        } else if (pbr_cmd->parsed()) {
            json results;
            std::ostringstream os;
            if (theta >= 0) {
                auto cert = certify_perfect_exclusion(theta, task_senders);
                results["theta"] = cert.theta;
                results["N"] = cert.n_senders;
                results["excluded"] = cert.excluded;
                results["sdp_value"] = cert.sdp_value;
                os << "theta = " << theta << ", N = " << task_senders << ": exclusion value "
                   << cert.sdp_value << (cert.excluded ? " (perfect)" : " (imperfect)") << "\n";
            } else {
                results["table"] = json::array();
                os << "N   theta_min    optimal ratio\n";
                for (int N = n_min; N <= n_max; ++N) {
                    json row;
                    row["N"] = N;
                    row["theta_min"] = pbr_theta_min(N);
                    row["optimal_ratio"] = pbr_optimal_ratio(N);
                    results["table"].push_back(row);
                    os << N << "   " << pbr_theta_min(N) << "   " << pbr_optimal_ratio(N) << "\n";
                }
            }
            emit("pbr", {{"n_min", n_min}, {"n_max", n_max}, {"N", task_senders}, {"theta", theta}},
                 inputs, results, now_ms(t0), c.out_path, os.str());
        } else if (curve_cmd->parsed()) {
            DistributedTask task;
            task.n_senders = task_senders;
            task.n_inputs = task_inputs;
            double floor_success = 1.0 - std::pow(1.0 / task.n_inputs, task.n_senders);
            double lo = s_min >= 0 ? s_min : floor_success;
            std::vector<double> grid;
            for (int k = 0; k < s_points; ++k)
                grid.push_back(lo + (1.0 - lo) * k / std::max(1, s_points - 1));
            SeeSawOptions opt;
            opt.dim = c.dim;
            opt.restarts = c.restarts;
            opt.seed = c.seed;
            auto pts = advantage_curve(task, grid, opt);
            std::ostringstream csv;
            csv << "S,A_Q,A_C,ratio\n";
            for (const auto& p : pts)
                csv << p.s << "," << p.a_q << "," << p.a_c << "," << p.ratio << "\n";
            std::string path = c.out_path.empty() ? "curve.csv" : c.out_path;
            write_file(path, csv.str());
            std::cout << csv.str() << "curve written to " << path << "\n";
        }
    } catch (const SizeOverflow& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 4;
    } catch (const InfeasibleResources& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const Unachievable& e) {
        std::cerr << "unachievable: " << e.what() << "\n";
        return 2;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const ConicInfeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const OutOfRange& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const ThetaOutOfRange& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
