#include <array>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tbell/cli.hpp"
#include "tbell/errors.hpp"

namespace {

// "x,y,z" -> three doubles
std::array<double, 3> parse_vec3(const std::string& text) {
    std::array<double, 3> v{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t next = i < 2 ? text.find(',', pos) : text.size();
        if (next == std::string::npos) {
            throw tbell::InvalidConfigError("expected x,y,z components, got '" + text + "'");
        }
        try {
            v[i] = std::stod(text.substr(pos, next - pos));
        } catch (const std::exception&) {
            throw tbell::InvalidConfigError("bad number in vector '" + text + "'");
        }
        pos = next + 1;
    }
    return v;
}

// "ax,ay,az:bx,by,bz:cx,cy,cz" -> three 3-vectors
std::array<std::array<double, 3>, 3> parse_triple(const std::string& text) {
    std::array<std::array<double, 3>, 3> t{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
        const std::size_t next = i < 2 ? text.find(':', pos) : text.size();
        if (next == std::string::npos) {
            throw tbell::InvalidConfigError("expected three ':'-separated vectors in '" + text +
                                            "'");
        }
        t[i] = parse_vec3(text.substr(pos, next - pos));
        pos = next + 1;
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential-measurement test bench for temporal Bell inequalities"};
    app.require_subcommand(1);

    tbell::cli::SimulateConfig sim;
    std::string sim_triple_text;
    std::string sim_e_text;
    std::vector<double> sim_weights;
    auto* simulate = app.add_subcommand("simulate", "Generate a throw record file");
    simulate->add_option("--model", sim.model, "Model: quantum, realist, or invasive")
        ->default_val("quantum");
    simulate->add_option("--s", sim.s, "Quantum amplitude on |e+>, in [0, 1]");
    simulate->add_option("--phi", sim.phi, "Quantum relative phase, radians");
    simulate->add_option("--e", sim_e_text, "Quantum reference direction x,y,z");
    simulate->add_option("--weights", sim_weights,
                         "8 reality weights in index order (+++, ++-, +-+, +--, -++, -+-, --+, ---)")
        ->expected(8);
    simulate->add_option("--triple", sim_triple_text,
                         "Setting directions ax,ay,az:bx,by,bz:cx,cy,cz (default: the canonical "
                         "optimal triple)");
    simulate->add_option("--throws", sim.n_throws, "Number of throws");
    simulate->add_option("--seed", sim.seed, "RNG seed (fixed default for reproducibility)");
    simulate->add_flag("--entropy-seed", sim.entropy_seed, "Draw the seed from system entropy");
    simulate->add_option("--workers", sim.workers, "Worker threads (output is identical for any count)");
    simulate->add_option("--out", sim.out, "Output record file (default: stdout)");

    tbell::cli::AnalyzeConfig ana;
    auto* analyze = app.add_subcommand("analyze", "Evaluate inequalities and diagnostics on a record file");
    analyze->add_option("--in", ana.in, "Input record file ('-' for stdin)")->required();
    analyze->add_option("--out", ana.out, "Report path (default: stdout)");

    tbell::cli::OptimizeConfig opt;
    auto* optimize = app.add_subcommand("optimize", "Search for the maximal violation triple");
    optimize->add_option("--grid-step", opt.grid_step_deg, "Coarse grid step, degrees (0, 30]");
    optimize->add_option("--tol", opt.refine_tol, "Refinement tolerance");
    optimize->add_option("--family", opt.family,
                         "Search family: orthogonal (ceiling sqrt(2)), unconstrained (global "
                         "maximum 3/2), or anti-collinear (diagnostic)");
    optimize->add_option("--out", opt.out, "Report path (default: stdout)");

    tbell::cli::SweepConfig swp;
    auto* sweep = app.add_subcommand("sweep", "Flip-noise sweep at the optimal triple");
    sweep->add_option("--eta", swp.etas, "Flip probabilities in [0, 1/2]")->expected(-1);
    sweep->add_option("--throws", swp.n_throws, "Throws per eta");
    sweep->add_option("--seed", swp.seed, "RNG seed");
    sweep->add_flag("--csv", swp.csv, "Emit CSV instead of JSON");
    sweep->add_option("--out", swp.out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tbell::cli::kExitConfig;
    }

    return tbell::cli::guarded([&]() -> int {
        if (simulate->parsed()) {
            if (!sim_e_text.empty()) sim.e = parse_vec3(sim_e_text);
            if (!sim_weights.empty()) {
                for (std::size_t i = 0; i < 8; ++i) sim.weights[i] = sim_weights[i];
            }
            if (!sim_triple_text.empty()) sim.triple = parse_triple(sim_triple_text);
            return tbell::cli::cmd_simulate(sim);
        }
        if (analyze->parsed()) return tbell::cli::cmd_analyze(ana);
        if (optimize->parsed()) return tbell::cli::cmd_optimize(opt);
        return tbell::cli::cmd_sweep(swp);
    });
}
