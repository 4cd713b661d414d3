#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mvhl/types.hpp"

namespace mvhl {

inline constexpr const char* kToolVersion = "mvhl 0.1.0";

// Pinned column set of records.csv; tests assert this exact header row.
inline constexpr const char* kRecordsHeader =
    "experiment,n,p,K,s,r,model,eps,trial,seed,rel_error,success,iterations,"
    "converged,max_tau_error,error_code";

// Per-trial failure taxonomy carried in the error_code column.
enum class TrialStatus : int {
    Ok = 0,
    SolverFailure = 1,
    ExtractionFailure = 2,
    GenerationFailure = 3,
};

// One row of records.csv. Wall time lives in timings.csv so records.csv is
// byte-identical across reruns of the same invocation.
struct TrialRecord {
    std::string experiment;
    Index n = 0;
    Index p = 0;  // second ambient dimension for two-level experiments, else 0
    Index K = 0;
    Index s = 0;
    Index r = 0;
    std::string model;
    double eps = 0.0;
    Index trial = 0;
    std::uint64_t seed = 0;
    double rel_error = 0.0;
    bool success = false;
    Index iterations = 0;
    bool converged = false;
    double max_tau_error = 0.0;
    TrialStatus status = TrialStatus::Ok;
    double wall_ms = 0.0;
};

// Per-cell aggregate for summary.csv. Means skip non-finite entries.
struct SummaryRow {
    std::string experiment;
    Index n = 0;
    Index p = 0;
    Index K = 0;
    Index s = 0;
    Index r = 0;
    std::string model;
    double eps = 0.0;
    Index trials = 0;
    Index successes = 0;
    double success_rate = 0.0;
    double mean_rel_error = 0.0;
    double mean_iterations = 0.0;
    double mean_max_tau_error = 0.0;
};

// True-vs-estimated delay/Doppler pair for the channel demo scatter data.
struct PairRecord {
    Index trial = 0;
    Index channel = 0;
    Index source = 0;
    double true_tau = 0.0;
    double true_nu = 0.0;
    double est_tau = 0.0;
    double est_nu = 0.0;
    double tau_error = 0.0;
    double nu_error = 0.0;
};

// One diagnostics row per instance for certificate.csv.
struct DiagnoseRecord {
    Index instance = 0;
    std::uint64_t seed = 0;
    Index n = 0;
    Index K = 0;
    Index s = 0;
    Index r = 0;
    std::string model;
    double mu0 = 0.0;
    double mu1 = 0.0;
    Index t0 = 0;
    double concentration_max = 0.0;
    double cross_mu = 0.0;
    double cond_F_max = 0.0;
    double cond_op_max = 0.0;
    double range_residual = 0.0;
    double recursion_consistency = 0.0;
    bool concentration_ok = false;
    bool cross_ok = false;
    bool cond_F_ok = false;
    bool cond_op_ok = false;
    bool range_ok = false;
};

// Round-trippable decimal form (17 significant digits); non-finite values
// become empty fields.
std::string format_float(double value);

// "# mvhl 0.1.0" plus one "# key = value" line per config entry.
void write_preamble(std::ostream& out, const std::vector<std::string>& config_lines);

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines);
void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines);

void write_timings_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines);
void write_timings_csv(const std::string& path, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines);

// Groups records by (experiment, n, p, K, s, r, model, eps) in first-appearance
// order and aggregates successes and mean errors.
std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows,
                       const std::vector<std::string>& config_lines);
void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows,
                       const std::vector<std::string>& config_lines);

void write_pairs_csv(std::ostream& out, const std::vector<PairRecord>& pairs,
                     const std::vector<std::string>& config_lines);
void write_pairs_csv(const std::string& path, const std::vector<PairRecord>& pairs,
                     const std::vector<std::string>& config_lines);

void write_certificates_csv(std::ostream& out, const std::vector<DiagnoseRecord>& rows,
                            const std::vector<std::string>& config_lines);
void write_certificates_csv(const std::string& path, const std::vector<DiagnoseRecord>& rows,
                            const std::vector<std::string>& config_lines);

// Native SVG emitters; plots are conveniences, the CSV files are the contract.

// Success-rate grid: columns indexed by s_values, rows by r_values;
// rate(i, j) is the rate at (r_values[i], s_values[j]).
void svg_heatmap(const std::string& path, const std::vector<Index>& s_values,
                 const std::vector<Index>& r_values, const RMat& rate,
                 const std::string& title);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

// Log-log line plot; points with nonpositive or non-finite coordinates are
// skipped.
void svg_loglog(const std::string& path, const std::vector<Series>& series,
                const std::string& title, const std::string& x_label,
                const std::string& y_label);

// True (circles) vs estimated (crosses) positions on the unit torus.
void svg_scatter_pairs(const std::string& path, const std::vector<PairRecord>& pairs,
                       const std::string& title);

}  // namespace mvhl
