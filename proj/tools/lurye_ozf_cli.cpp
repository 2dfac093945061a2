// lurye-ozf: multiplier searches, relation-set checks, horizon certificates
// and Lurye-loop simulation behind one file-driven command line.
//
// Exit codes: 0 success/feasible/member, 3 infeasible/non-member/not found,
// 2 usage or configuration errors, 1 internal errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ozf/errors.hpp"
#include "ozf/json_io.hpp"
#include "ozf/multiplier.hpp"
#include "ozf/periodic_banded.hpp"
#include "ozf/plant.hpp"
#include "ozf/simulator.hpp"
#include "ozf/sprocedure.hpp"

namespace {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kNegative = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("LURYE_OZF_LOG");
        const std::string v = env ? env : "warn";
        if (v == "debug") return 3;
        if (v == "info") return 2;
        if (v == "error") return 0;
        return 1;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "[lurye-ozf] " << msg << "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::filesystem::create_directories(path.parent_path().empty() ? "."
                                                                   : path.parent_path().string());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

/// A config field that is either an inline object or a path to a JSON file.
json inline_or_file(const json& node, const std::string& what) {
    if (node.is_string()) return parse_json(read_file(node.get<std::string>()), what);
    return node;
}

ozf::RationalPlant plant_from(const json& cfg) {
    const json j = inline_or_file(cfg.at("plant"), "plant");
    return ozf::RationalPlant(j.at("num").get<std::vector<double>>(),
                              j.at("den").get<std::vector<double>>());
}

ozf::FrequencyGrid grid_from(const json& cfg, std::size_t bandwidth) {
    ozf::FrequencyGrid grid = ozf::FrequencyGrid::for_bandwidth(bandwidth);
    if (cfg.contains("grid")) {
        const json& g = cfg.at("grid");
        grid.n_points = g.value("n_points", grid.n_points);
        grid.margin = g.value("margin", grid.margin);
    }
    return grid;
}

ozf::MultiplierMode mode_from(const std::string& name) {
    if (name == "hyperdominant") return ozf::MultiplierMode::hyperdominant;
    if (name == "zero_excess") return ozf::MultiplierMode::zero_excess;
    throw ConfigError("unknown multiplier mode '" + name + "'");
}

json grid_echo(const ozf::FrequencyGrid& grid) {
    return json{{"n_points", grid.n_points}, {"margin", grid.margin}};
}

struct Global {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;

    json load_config() const {
        if (config_path.empty()) throw ConfigError("--config is required");
        return parse_json(read_file(config_path), "config");
    }
    std::filesystem::path out(const std::string& name) const {
        return std::filesystem::path(out_dir) / name;
    }
    // Analysis inputs only: the output directory and worker cap must not
    // change report bytes.
    json echo_base() const { return json::object(); }
};

void attach_common(CLI::App* cmd, Global& g, bool with_config = true) {
    if (with_config) cmd->add_option("--config", g.config_path, "JSON configuration file");
    cmd->add_option("--out", g.out_dir, "Report output directory")->capture_default_str();
    cmd->add_option("--seed", g.seed, "Seed override for randomized operations");
    cmd->add_option("--jobs", g.jobs, "Worker cap for parallel-capable operations")
        ->capture_default_str();
}

int run_search(const Global& g) {
    const json cfg = g.load_config();
    const ozf::RationalPlant plant = plant_from(cfg);
    const auto bandwidth = cfg.value("bandwidth", std::size_t{1});
    const ozf::MultiplierMode mode = mode_from(cfg.value("mode", std::string("hyperdominant")));
    const ozf::FrequencyGrid grid = grid_from(cfg, bandwidth);

    log_info("searching bandwidth " + std::to_string(bandwidth));
    const ozf::SearchReport report = ozf::search_fir(plant, bandwidth, grid, mode);

    json out = json::parse(ozf::to_json(report));
    out["config"] = g.echo_base();
    out["config"]["plant"] = json::parse(ozf::to_json(plant));
    out["config"]["bandwidth"] = bandwidth;
    out["config"]["mode"] = cfg.value("mode", std::string("hyperdominant"));
    out["config"]["grid"] = grid_echo(grid);
    write_file(g.out("search_report.json"), out.dump(2) + "\n");
    std::cout << (report.feasible ? "feasible" : "infeasible") << "\n";
    return report.feasible ? kOk : kNegative;
}

int run_verify(const Global& g) {
    const json cfg = g.load_config();
    const ozf::RationalPlant plant = plant_from(cfg);
    const ozf::FirMultiplier m =
        ozf::multiplier_from_json(inline_or_file(cfg.at("multiplier"), "multiplier").dump());
    const ozf::FrequencyGrid grid = grid_from(cfg, m.bandwidth());

    const ozf::FdiCheck check = ozf::verify_fdi(m, plant, grid);
    json out{{"pass", check.pass},
             {"worst_omega", check.worst_omega},
             {"worst_value", check.worst_value},
             {"certified_margin", check.certified_margin},
             {"points_used", check.points_used}};
    out["config"] = g.echo_base();
    out["config"]["plant"] = json::parse(ozf::to_json(plant));
    out["config"]["multiplier"] = json::parse(ozf::to_json(m));
    out["config"]["grid"] = grid_echo(grid);
    write_file(g.out("verify_report.json"), out.dump(2) + "\n");
    std::cout << (check.pass ? "pass" : "fail") << "\n";
    return check.pass ? kOk : kNegative;
}

int run_decompose(const Global& g, const std::string& input_path) {
    const json j = parse_json(read_file(input_path), "decompose input");
    json out;
    double residual = 0.0;
    try {
        if (j.contains("rows")) {
            const auto op = ozf::periodic_operator_from_json(j.dump());
            const auto terms = ozf::conic_decompose_periodic(op);
            residual = ozf::max_band_abs_diff(
                op, ozf::conic_sum_periodic(terms, op.period(), op.bandwidth()));
            out["kind"] = "periodic_conic";
            out["terms"] = json::parse(ozf::to_json(terms));
        } else {
            const ozf::Matrix m = ozf::matrix_from_json(j.dump());
            const auto cls = ozf::classify(m);
            if (cls.doubly_stochastic && !cls.zero_excess) {
                const auto combo = ozf::birkhoff_decompose(m);
                residual = ozf::max_abs_diff(m, ozf::combo_sum(combo, m.rows()));
                out["kind"] = "birkhoff";
                out["terms"] = json::parse(ozf::to_json(combo));
            } else {
                const auto combo = ozf::conic_decompose(m);
                residual = ozf::max_abs_diff(m, ozf::combo_conic_sum(combo, m.rows()));
                out["kind"] = "conic";
                out["terms"] = json::parse(ozf::to_json(combo));
            }
        }
    } catch (const ozf::NotHyperdominant& e) {
        throw ConfigError(e.what());
    } catch (const ozf::NotZeroExcess& e) {
        throw ConfigError(e.what());
    }
    out["residual"] = residual;
    out["config"] = g.echo_base();
    out["config"]["input"] = input_path;
    write_file(g.out("decomposition.json"), out.dump(2) + "\n");
    std::cout << "residual " << residual << "\n";
    return kOk;
}

int run_check_pair(const Global& g, const std::string& v_path, const std::string& w_path,
                   std::size_t period, std::size_t bandwidth) {
    const ozf::SequencePair pair{ozf::signal_from_json(read_file(v_path)),
                                 ozf::signal_from_json(read_file(w_path))};
    const ozf::PairMembership res = ozf::check_pair(pair, period, bandwidth);
    json out{{"member", res.member}, {"worst_value", res.worst_value}};
    if (res.witness) out["witness"] = json::parse(ozf::to_json(*res.witness));
    out["config"] = g.echo_base();
    out["config"]["v"] = v_path;
    out["config"]["w"] = w_path;
    out["config"]["period"] = period;
    out["config"]["bandwidth"] = bandwidth;
    write_file(g.out("check_pair_report.json"), out.dump(2) + "\n");
    std::cout << (res.member ? "member" : "non-member") << "\n";
    return res.member ? kOk : kNegative;
}

int run_certificate(const Global& g) {
    const json cfg = g.load_config();
    const ozf::RationalPlant plant = plant_from(cfg);
    const double gamma = cfg.value("gamma", 10.0);
    const auto period = cfg.value("period", std::size_t{3});
    const auto bandwidth = cfg.value("bandwidth", std::size_t{1});
    const auto horizon = cfg.value("horizon", 4 * period);
    if (horizon % period != 0)
        throw ConfigError("horizon must be a multiple of the period");

    const auto sigma0 = ozf::build_sigma0(plant, gamma, horizon);
    std::vector<ozf::QuadraticForm> sigmas;
    for (const auto& p : ozf::enumerate_basis(period, bandwidth))
        if (!p.is_identity()) sigmas.push_back(ozf::build_sigmak(p, horizon));

    ozf::CertificateSearchConfig scfg;
    scfg.max_iterations = cfg.value("max_iterations", std::size_t{500});
    scfg.eig_tol = cfg.value("eig_tol", 1e-8);
    const ozf::SequencePair wit = ozf::witness_signal(period);
    scfg.slater_point.assign(2 * horizon, 0.0);
    for (std::size_t k = 0; k < period; ++k) {
        scfg.slater_point[k] = wit.v[static_cast<std::int64_t>(k)];
        scfg.slater_point[horizon + k] = wit.w[static_cast<std::int64_t>(k)];
    }

    log_info("certificate search over " + std::to_string(sigmas.size()) + " forms");
    const auto res = ozf::certificate_search(sigma0, sigmas, scfg);

    json out{{"found", res.found},
             {"status", res.status == ozf::CertificateStatus::certified ? "certified"
                        : res.status == ozf::CertificateStatus::infeasible_at_horizon
                            ? "infeasible_at_horizon"
                            : "max_iterations"},
             {"last_max_eig", res.last_max_eig},
             {"iterations", res.iterations}};
    if (res.certificate) out["certificate"] = json::parse(ozf::to_json(*res.certificate));
    out["config"] = g.echo_base();
    out["config"]["plant"] = json::parse(ozf::to_json(plant));
    out["config"]["gamma"] = gamma;
    out["config"]["period"] = period;
    out["config"]["bandwidth"] = bandwidth;
    out["config"]["horizon"] = horizon;
    out["config"]["max_iterations"] = scfg.max_iterations;
    out["config"]["eig_tol"] = scfg.eig_tol;
    write_file(g.out("certificate_report.json"), out.dump(2) + "\n");
    std::cout << (res.found ? "certified" : "not-found") << "\n";
    return res.found ? kOk : kNegative;
}

ozf::Signal input_from(const json& cfg, std::size_t horizon) {
    const json j = inline_or_file(cfg.at("input"), "input");
    if (j.contains("type")) {
        const auto type = j.at("type").get<std::string>();
        const double amp = j.value("amplitude", 1.0);
        if (type == "impulse") return ozf::Signal::impulse(j.value("at", std::int64_t{0}), amp);
        if (type == "step")
            return ozf::Signal(0, std::vector<double>(j.value("length", horizon), amp));
        throw ConfigError("unknown input type '" + type + "'");
    }
    return ozf::signal_from_json(j.dump());
}

int run_simulate(const Global& g) {
    const json cfg = g.load_config();
    ozf::SimConfig sim{plant_from(cfg),
                       ozf::monotone_from_json(
                           inline_or_file(cfg.at("nonlinearity"), "nonlinearity").dump()),
                       ozf::Signal::zero(), cfg.value("horizon", std::size_t{64})};
    sim.input = input_from(cfg, sim.horizon);
    sim.allow_unstable = cfg.value("allow_unstable", false);
    if (cfg.value("feedthrough", std::string("solve_implicit")) == "reject")
        sim.feedthrough = ozf::FeedthroughPolicy::reject;

    const ozf::SimResult res = ozf::simulate(sim);
    write_file(g.out("simulate_trace.csv"), ozf::sim_result_csv(sim.input, res));
    json out = json::parse(ozf::to_json(res));
    out["config"] = g.echo_base();
    out["config"]["plant"] = json::parse(ozf::to_json(sim.plant));
    out["config"]["nonlinearity"] = json::parse(ozf::to_json(sim.nonlinearity));
    out["config"]["input"] = json::parse(ozf::to_json(sim.input));
    out["config"]["horizon"] = sim.horizon;
    out["config"]["allow_unstable"] = sim.allow_unstable;
    write_file(g.out("simulate_report.json"), out.dump(2) + "\n");
    std::cout << "peak_gain " << res.peak_gain << "\n";
    return kOk;
}

int run_hunt(const Global& g) {
    const json cfg = g.load_config();
    const ozf::RationalPlant plant = plant_from(cfg);

    ozf::ProbeBudget budget;
    if (cfg.contains("budget")) {
        const json& b = cfg.at("budget");
        budget.candidates = b.value("candidates", budget.candidates);
        budget.refinement_rounds = b.value("refinement_rounds", budget.refinement_rounds);
        budget.horizon = b.value("horizon", budget.horizon);
        budget.seed = b.value("seed", budget.seed);
        budget.allow_unstable = b.value("allow_unstable", budget.allow_unstable);
        budget.nonlinearity.slope_cap = b.value("slope_cap", budget.nonlinearity.slope_cap);
    }
    budget.inputs.horizon = budget.horizon;
    if (g.seed) budget.seed = *g.seed;
    budget.inputs.seed = budget.seed + 1;

    log_info("destabilization probe over " + std::to_string(budget.candidates) + " candidates");
    const ozf::ProbeResult probe = ozf::destabilization_probe(plant, budget);

    json out{{"gamma_hat", probe.gamma_hat},
             {"diverged", probe.diverged},
             {"worst_nonlinearity", json::parse(ozf::to_json(probe.worst_nonlinearity))},
             {"worst_input", json::parse(ozf::to_json(probe.worst_input))}};

    if (cfg.contains("certificate_probe")) {
        const json& cp = cfg.at("certificate_probe");
        ozf::ProbeConfig pc;
        pc.horizon = cp.value("horizon", pc.horizon);
        pc.n_random = cp.value("n_random", pc.n_random);
        pc.amplitude = cp.value("amplitude", pc.amplitude);
        pc.seed = g.seed ? *g.seed : cp.value("seed", pc.seed);
        const double eps = cp.value("epsilon", 0.01);
        const auto phi0 = cp.contains("phi0")
                              ? ozf::monotone_from_json(inline_or_file(cp.at("phi0"), "phi0").dump())
                              : ozf::PiecewiseLinearMonotone::linear(1.0);
        const auto psi = cp.contains("psi")
                             ? ozf::sector_from_json(inline_or_file(cp.at("psi"), "psi").dump())
                             : ozf::SectorNonlinearity::zero();

        ozf::CertificateProbe eval;
        json mult_echo;
        const json mj = inline_or_file(cp.at("multiplier"), "multiplier");
        if (mj.contains("rows")) {
            const auto op = ozf::periodic_operator_from_json(mj.dump());
            eval = ozf::nonlinear_certificate(op, phi0, psi, plant, eps, pc);
            mult_echo = mj;
        } else {
            const auto m = ozf::multiplier_from_json(mj.dump());
            eval = ozf::nonlinear_certificate(m, phi0, psi, plant, eps, pc);
            mult_echo = json::parse(ozf::to_json(m));
        }
        out["certificate_probe"] = json{{"max_value", eval.max_value},
                                        {"violated", eval.violated},
                                        {"probes", eval.probes},
                                        {"worst_input", json::parse(ozf::to_json(eval.worst_input))},
                                        {"multiplier", mult_echo},
                                        {"epsilon", eps}};
    }

    out["config"] = g.echo_base();
    out["config"]["plant"] = json::parse(ozf::to_json(plant));
    out["config"]["budget"] = json{{"candidates", budget.candidates},
                                   {"refinement_rounds", budget.refinement_rounds},
                                   {"horizon", budget.horizon},
                                   {"seed", budget.seed},
                                   {"slope_cap", budget.nonlinearity.slope_cap},
                                   {"allow_unstable", budget.allow_unstable}};
    write_file(g.out("hunt_report.json"), out.dump(2) + "\n");
    std::cout << "gamma_hat " << probe.gamma_hat << (probe.diverged ? " (diverged)" : "") << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time Lurye analysis: FIR multiplier search, relation-set checks, "
                 "horizon certificates and loop simulation"};
    app.require_subcommand(1);

    Global g_search, g_verify, g_decompose, g_pair, g_cert, g_sim, g_hunt;
    std::string decompose_input, pair_v, pair_w;
    std::size_t pair_period = 3, pair_bandwidth = 1;

    attach_common(app.add_subcommand("search", "LP multiplier feasibility search"), g_search);
    attach_common(app.add_subcommand("verify", "Frequency-domain check of a given multiplier"),
                  g_verify);

    CLI::App* dec = app.add_subcommand("decompose", "Permutation decomposition of a matrix or "
                                                    "periodic banded operator");
    dec->add_option("input", decompose_input, "Matrix or operator JSON file")->required();
    attach_common(dec, g_decompose, /*with_config=*/false);

    CLI::App* pair = app.add_subcommand("check-pair", "Relation-set membership of a pair");
    pair->add_option("v", pair_v, "Signal JSON file")->required();
    pair->add_option("w", pair_w, "Signal JSON file")->required();
    pair->add_option("--period,-T", pair_period, "Permutation period")->capture_default_str();
    pair->add_option("--bandwidth,-B", pair_bandwidth, "Permutation bandwidth")
        ->capture_default_str();
    attach_common(pair, g_pair, /*with_config=*/false);

    attach_common(app.add_subcommand("certificate", "Cutting-plane horizon certificate search"),
                  g_cert);
    attach_common(app.add_subcommand("simulate", "Step the closed loop and trace gains"), g_sim);
    attach_common(app.add_subcommand("hunt", "Destabilization probe and nonlinear-multiplier "
                                             "falsification"),
                  g_hunt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand("search")) return run_search(g_search);
        if (app.got_subcommand("verify")) return run_verify(g_verify);
        if (app.got_subcommand("decompose")) return run_decompose(g_decompose, decompose_input);
        if (app.got_subcommand("check-pair"))
            return run_check_pair(g_pair, pair_v, pair_w, pair_period, pair_bandwidth);
        if (app.got_subcommand("certificate")) return run_certificate(g_cert);
        if (app.got_subcommand("simulate")) return run_simulate(g_sim);
        if (app.got_subcommand("hunt")) return run_hunt(g_hunt);
        return kUsage;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const ozf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
