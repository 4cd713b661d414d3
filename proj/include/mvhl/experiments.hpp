#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvhl/measurement.hpp"
#include "mvhl/report.hpp"
#include "mvhl/solver.hpp"
#include "mvhl/types.hpp"

namespace mvhl {

enum class ExperimentKind { PhaseTransition, NoiseSweep, ChannelDemo, Recover, Diagnose };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& tag);

// Full description of one harness invocation.  Scalar experiments (noise
// sweep, channel demo, recover, diagnose) use the front of s_values /
// r_values; the channel demo reads its path count from r_values and its
// ambient grid from N and P.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::PhaseTransition;
    Index n = 48;
    Index K = 2;
    std::vector<Index> s_values = {1, 2, 3, 4, 5, 6};
    std::vector<Index> r_values = {1, 2, 3, 4, 5, 6};
    SubspaceModel model = SubspaceModel::DftRows;
    Index trials = 20;
    std::vector<double> eps_values = {1e-3, 1e-2, 1e-1, 1.0};  // noise sweep levels
    std::vector<Index> n_values = {48, 64};                    // noise sweep dimensions
    std::uint64_t seed = 1;
    double success_threshold = 1e-3;
    double min_separation = 0.0;  // optional wrap-around gap enforced on drawn taus
    Index N = 10;                 // channel demo fast dimension
    Index P = 10;                 //   "      "   slow dimension
    Index music_grid = 4096;      // 1D pseudospectrum grid
    Index grid_tau = 256;         // 2D grids
    Index grid_nu = 256;
    int threads = 0;  // 0 = one worker per hardware thread
    bool svg = true;
    std::string out_dir = "out";
    std::string input_path;  // recover: instance file to load
    SolverConfig solver;

    void validate() const;  // throws std::invalid_argument
};

// Everything a run produced, already persisted under config.out_dir.
struct ExperimentResult {
    std::vector<TrialRecord> records;
    std::vector<SummaryRow> summary;
    std::vector<PairRecord> pairs;             // channel demo only
    std::vector<DiagnoseRecord> certificates;  // diagnose only
    std::vector<std::string> artifacts;        // paths written, in creation order
};

// Per-trial RNG stream: all randomness of trial `trial` in cell `cell` comes
// from derive_stream(seed, {kind tag, cell, trial}), so parallel and serial
// execution produce identical records.
std::uint64_t trial_stream(std::uint64_t seed, ExperimentKind kind, Index cell, Index trial);

// One synthetic trial at the given cell.  Draws sources and subspaces,
// synthesizes measurements (adding noise when eps > 0), solves the lifted
// program (ball-constrained with delta = eps * ||y_clean|| when eps > 0) and
// scores the estimate.  Failures are captured in the record's status, never
// thrown.
TrialRecord run_trial(const ExperimentConfig& config, Index n, Index s, Index r, double eps,
                      Index cell, Index trial);

// Success-rate sweep over the (r, s) grid; writes records.csv, summary.csv,
// timings.csv and optionally phase_transition.svg.
ExperimentResult run_phase_transition(const ExperimentConfig& config);

// Mean relative error across eps_values for each n in n_values; writes the
// CSV trio and optionally noise_sweep.svg (log-log error vs noise level).
ExperimentResult run_noise_sweep(const ExperimentConfig& config);

// Two-level delay-Doppler demo: radar + communication channels with
// Fourier-steering subspaces on an N x P grid; writes pairs.csv with true vs
// estimated (tau, nu) and optionally channel_demo.svg.
ExperimentResult run_channel_demo(const ExperimentConfig& config);

// Loads an instance file, solves it, and writes the recovered channel
// matrices (recovered.instance), delay estimates (taus.csv) and a one-row
// records.csv; r for the parameter extraction comes from r_values.
ExperimentResult run_recover(const ExperimentConfig& config);

// Computes incoherence and certificate diagnostics for seeded instances and
// writes certificates.csv, one row per instance.
ExperimentResult run_diagnose(const ExperimentConfig& config);

// Dispatch on config.kind.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace mvhl
