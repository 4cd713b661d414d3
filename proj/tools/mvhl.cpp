#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mvhl/experiments.hpp"

namespace {

struct SubcommandState {
    CLI::App* app = nullptr;
    mvhl::ExperimentConfig config;
    std::string model_tag = "dft-rows";
};

// Options shared by every subcommand; config-file keys match the long flag
// names and CLI flags win over file values.
void add_common_options(SubcommandState& state) {
    CLI::App* sub = state.app;
    mvhl::ExperimentConfig& cfg = state.config;
    sub->set_config("--config", "", "read options from a key=value file");
    sub->add_option("--n", cfg.n, "number of samples per channel")->capture_default_str();
    sub->add_option("--k", cfg.K, "number of channels")->capture_default_str();
    sub->add_option("--s", cfg.s_values, "subspace dimension(s)")->capture_default_str();
    sub->add_option("--r", cfg.r_values, "point sources per channel")->capture_default_str();
    sub->add_option("--trials", cfg.trials, "trials per cell")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "base seed for all derived streams")
        ->capture_default_str();
    sub->add_option("--eps", cfg.eps_values, "noise levels")->capture_default_str();
    sub->add_option("--n-values", cfg.n_values, "sample counts for the noise sweep")
        ->capture_default_str();
    sub->add_option("--model", state.model_tag, "subspace model")
        ->check(CLI::IsMember({"dft-rows", "rademacher", "fourier-steering"}))
        ->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (0 = all cores)")
        ->capture_default_str();
    sub->add_flag("--svg,!--no-svg", cfg.svg, "emit SVG plots")->capture_default_str();
    sub->add_option("--success-threshold", cfg.success_threshold,
                    "relative error bound counted as success")
        ->capture_default_str();
    sub->add_option("--min-separation", cfg.min_separation,
                    "minimum wrap-around gap between drawn locations")
        ->capture_default_str();
    sub->add_option("--music-grid", cfg.music_grid, "pseudospectrum grid size")
        ->capture_default_str();
    sub->add_option("--grid-tau", cfg.grid_tau, "delay grid for the two-level demo")
        ->capture_default_str();
    sub->add_option("--grid-nu", cfg.grid_nu, "Doppler grid for the two-level demo")
        ->capture_default_str();
    sub->add_option("--nn", cfg.N, "fast dimension of the two-level demo")
        ->capture_default_str();
    sub->add_option("--np", cfg.P, "slow dimension of the two-level demo")
        ->capture_default_str();
    sub->add_option("--rho", cfg.solver.rho, "initial penalty parameter")
        ->capture_default_str();
    sub->add_option("--max-iter", cfg.solver.max_iter, "iteration cap")->capture_default_str();
    sub->add_option("--tol-primal", cfg.solver.tol_primal, "primal residual tolerance")
        ->capture_default_str();
    sub->add_option("--tol-dual", cfg.solver.tol_dual, "dual residual tolerance")
        ->capture_default_str();
    sub->add_option("--tol-feas", cfg.solver.tol_feas, "measurement residual tolerance")
        ->capture_default_str();
    sub->add_option("--alpha", cfg.solver.over_relaxation, "over-relaxation factor")
        ->capture_default_str();
    sub->add_flag("--adaptive-rho,!--no-adaptive-rho", cfg.solver.adaptive_rho,
                  "rescale rho when the residuals drift apart")
        ->capture_default_str();
    sub->add_option("--delta", cfg.solver.noise_delta,
                    "data-fit ball radius (0 = exact equality)")
        ->capture_default_str();
}

void report_result(const mvhl::ExperimentResult& result) {
    if (!result.records.empty())
        std::cout << result.records.size() << " trial record(s)\n";
    if (!result.certificates.empty())
        std::cout << result.certificates.size() << " certificate row(s)\n";
    for (const auto& path : result.artifacts) std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blind demixing and super-resolution of point sources via the multiple "
                 "vectorized Hankel lift"};
    app.set_version_flag("--version", mvhl::kToolVersion);
    app.require_subcommand(1);

    std::vector<SubcommandState> states(5);

    states[0].app = app.add_subcommand(
        "phase-transition", "success-rate sweep over the (r, s) grid");
    states[0].config.kind = mvhl::ExperimentKind::PhaseTransition;
    states[0].config.out_dir = "out/phase-transition";

    states[1].app = app.add_subcommand(
        "noise-sweep", "mean relative error across noise levels");
    states[1].config.kind = mvhl::ExperimentKind::NoiseSweep;
    states[1].config.s_values = {2};
    states[1].config.r_values = {2};
    states[1].config.trials = 10;
    states[1].config.out_dir = "out/noise-sweep";

    states[2].app = app.add_subcommand(
        "channel-demo", "two-level delay-Doppler recovery demo");
    states[2].config.kind = mvhl::ExperimentKind::ChannelDemo;
    states[2].config.s_values = {2};
    states[2].config.r_values = {2};
    states[2].config.trials = 1;
    states[2].config.out_dir = "out/channel-demo";
    states[2].model_tag = "fourier-steering";

    states[3].app = app.add_subcommand(
        "recover", "solve a single instance from a file");
    states[3].config.kind = mvhl::ExperimentKind::Recover;
    states[3].config.s_values = {2};
    states[3].config.r_values = {2};
    states[3].config.trials = 1;
    states[3].config.out_dir = "out/recover";

    states[4].app = app.add_subcommand(
        "diagnose", "incoherence and certificate diagnostics");
    states[4].config.kind = mvhl::ExperimentKind::Diagnose;
    states[4].config.s_values = {1};
    states[4].config.r_values = {1};
    states[4].config.trials = 3;
    states[4].config.out_dir = "out/diagnose";

    for (auto& state : states) add_common_options(state);
    states[3].app->add_option("input", states[3].config.input_path,
                              "instance file with [shape], [y] and [B_k] sections");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // help/version exit cleanly; bad flags are config errors
    }

    SubcommandState* chosen = nullptr;
    for (auto& state : states)
        if (state.app->parsed()) chosen = &state;
    if (chosen == nullptr) {
        std::cerr << "error: no subcommand selected\n";
        return 1;
    }

    try {
        chosen->config.model = mvhl::subspace_model_from_string(chosen->model_tag);
        chosen->config.validate();
        const mvhl::ExperimentResult result = mvhl::run_experiment(chosen->config);
        report_result(result);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const mvhl::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}
