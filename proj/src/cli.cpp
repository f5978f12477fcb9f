#include "tbell/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tbell/analysis.hpp"
#include "tbell/io.hpp"
#include "tbell/log.hpp"

namespace tbell::cli {

using nlohmann::json;

namespace {

Direction direction_from_components(const std::array<double, 3>& v, const char* what) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(n - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << what << " [" << v[0] << ", " << v[1] << ", " << v[2]
            << "] renormalized (norm " << n << ")";
        log_warn(msg.str());
    }
    return unit_vector(v[0], v[1], v[2]);
}

SettingTriple triple_from_config(const SimulateConfig& config) {
    if (!config.triple) return search::analytic_optimum().triple;
    const auto& t = *config.triple;
    const SettingTriple triple{direction_from_components(t[0], "triple direction a"),
                               direction_from_components(t[1], "triple direction b"),
                               direction_from_components(t[2], "triple direction c")};
    if (triple.degenerate()) log_warn("setting triple has collinear directions");
    return triple;
}

json model_meta(const SimulateConfig& config, const engine::ExperimentPlan& plan) {
    json model{{"kind", config.model}};
    if (std::holds_alternative<engine::QuantumModel>(plan.model)) {
        const Vec3 r = std::get<engine::QuantumModel>(plan.model).state.bloch();
        model["bloch"] = json::array({r.x, r.y, r.z});
        model["s"] = config.s;
        model["phi"] = config.phi;
        model["e"] = json::array({config.e[0], config.e[1], config.e[2]});
    } else {
        json weights = json::array();
        const auto& dist = std::holds_alternative<engine::RealistModel>(plan.model)
                               ? std::get<engine::RealistModel>(plan.model).dist
                               : std::get<engine::InvasiveModel>(plan.model).dist;
        for (double w : dist.weights()) weights.push_back(w);
        model["weights"] = std::move(weights);
    }
    return model;
}

void write_text_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace

engine::ExperimentPlan plan_from_config(const SimulateConfig& config) {
    const SettingTriple triple = triple_from_config(config);
    engine::ModelSpec model = [&]() -> engine::ModelSpec {
        if (config.model == "quantum") {
            if (!(config.s >= 0.0 && config.s <= 1.0)) {
                throw InvalidConfigError("--s must lie in [0, 1]");
            }
            const Direction e = direction_from_components(config.e, "reference direction e");
            return engine::QuantumModel{quantum::state_from_amplitudes(config.s, config.phi, e)};
        }
        if (config.model == "realist") {
            return engine::RealistModel{realist::RealityDist::from_weights(config.weights)};
        }
        if (config.model == "invasive") {
            return engine::InvasiveModel{realist::RealityDist::from_weights(config.weights),
                                         realist::Disturbance::quantum_mimicking(triple)};
        }
        throw InvalidConfigError("unknown model '" + config.model +
                                 "' (expected quantum, realist, or invasive)");
    }();
    engine::ExperimentPlan plan{std::move(model), triple, config.n_throws, config.seed};
    plan.validate();
    return plan;
}

int cmd_simulate(const SimulateConfig& config_in) {
    SimulateConfig config = config_in;
    if (config.entropy_seed) {
        std::random_device rd;
        config.seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
        log_info("entropy seed: " + std::to_string(config.seed));
    }
    const engine::ExperimentPlan plan = plan_from_config(config);
    const std::vector<ThrowRecord> records = engine::run_experiment(plan, config.workers);

    json meta{{"format", "tbell-throws-v1"},
              {"seed", plan.seed},
              {"n_throws", plan.n_throws},
              {"triple", io::triple_to_json(plan.triple)},
              {"model", model_meta(config, plan)}};
    if (config.out.empty() || config.out == "-") {
        io::write_records(std::cout, meta, records);
    } else {
        io::write_records_file(config.out, meta, records);
        log_info("wrote " + std::to_string(records.size()) + " records to " + config.out);
    }
    return kExitOk;
}

int cmd_analyze(const AnalyzeConfig& config) {
    io::RecordFile file;
    if (config.in == "-") {
        file = io::read_records(std::cin);
    } else {
        file = io::read_records_file(config.in);
    }
    const json report = io::build_report(file);
    write_text_output(config.out, report.dump(2));
    return kExitOk;
}

int cmd_optimize(const OptimizeConfig& config) {
    const search::Family family = search::family_from_name(config.family);
    const search::SearchResult result =
        search::maximize_violation(config.grid_step_deg, config.refine_tol, family);
    json out = io::search_result_to_json(result);
    out["grid_step_deg"] = config.grid_step_deg;
    out["refine_tol"] = config.refine_tol;
    if (config.refine_tol > 1e-4) {
        out["warning"] = "refine tolerance above 1e-4; objective is coarse";
    }
    write_text_output(config.out, out.dump(2));
    return kExitOk;
}

int cmd_sweep(const SweepConfig& config) {
    const std::vector<search::SweepRow> rows =
        search::noise_sweep(config.etas, config.n_throws, config.seed);
    if (config.csv) {
        write_text_output(config.out, io::sweep_to_csv(rows));
    } else {
        json out = io::sweep_to_json(rows);
        out["n_throws"] = config.n_throws;
        out["seed"] = config.seed;
        write_text_output(config.out, out.dump(2));
    }
    return kExitOk;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) != nullptr) return kExitParse;
    if (dynamic_cast<const InsufficientDataError*>(&e) != nullptr) return kExitInsufficientData;
    if (dynamic_cast<const IoError*>(&e) != nullptr) return kExitIo;
    if (dynamic_cast<const Error*>(&e) != nullptr) return kExitConfig;
    return kExitFailure;
}

}  // namespace tbell::cli
