#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mvhl/report.hpp"

using namespace mvhl;

namespace {

TrialRecord make_record(const std::string& experiment, Index s, Index r, Index trial,
                        double rel_error, bool success) {
    TrialRecord rec;
    rec.experiment = experiment;
    rec.n = 16;
    rec.K = 2;
    rec.s = s;
    rec.r = r;
    rec.model = "dft-rows";
    rec.trial = trial;
    rec.seed = 42 + static_cast<std::uint64_t>(trial);
    rec.rel_error = rel_error;
    rec.success = success;
    rec.iterations = 100 + trial;
    rec.converged = success;
    rec.max_tau_error = success ? rel_error / 2 : std::nan("");
    rec.status = success ? TrialStatus::Ok : TrialStatus::SolverFailure;
    rec.wall_ms = 12.5;
    return rec;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("report: format_float") {
    SUBCASE("round trips doubles exactly") {
        for (double v : {0.0, 1.0, -2.5, 1e-17, 0.1, 3.141592653589793, 1e300, -7e-300})
            CHECK(std::stod(format_float(v)) == v);
    }
    SUBCASE("non-finite values become empty fields") {
        CHECK(format_float(std::nan("")) == "");
        CHECK(format_float(std::numeric_limits<double>::infinity()) == "");
        CHECK(format_float(-std::numeric_limits<double>::infinity()) == "");
    }
}

TEST_CASE("report: records header is pinned") {
    CHECK(std::string(kRecordsHeader) ==
          "experiment,n,p,K,s,r,model,eps,trial,seed,rel_error,success,iterations,"
          "converged,max_tau_error,error_code");
}

TEST_CASE("report: records csv layout") {
    std::vector<TrialRecord> records = {
        make_record("phase-transition", 1, 1, 0, 0.5, false),
        make_record("phase-transition", 1, 1, 1, 1e-6, true),
    };
    std::ostringstream out;
    write_records_csv(out, records, {"n = 16", "trials = 2"});
    CHECK(out.str() ==
          "# mvhl 0.1.0\n"
          "# n = 16\n"
          "# trials = 2\n"
          "experiment,n,p,K,s,r,model,eps,trial,seed,rel_error,success,iterations,"
          "converged,max_tau_error,error_code\n"
          "phase-transition,16,0,2,1,1,dft-rows,0,0,42,0.5,0,100,0,,1\n"
          "phase-transition,16,0,2,1,1,dft-rows,0,1,43,9.9999999999999995e-07,1,101,1,"
          "4.9999999999999998e-07,0\n");
}

TEST_CASE("report: wall time lives in timings.csv only") {
    std::vector<TrialRecord> records = {make_record("recover", 1, 1, 0, 0.1, true)};
    std::ostringstream records_out, timings_out;
    write_records_csv(records_out, records, {});
    write_timings_csv(timings_out, records, {});
    CHECK(records_out.str().find("12.5") == std::string::npos);
    CHECK(timings_out.str().find("wall_ms") != std::string::npos);
    CHECK(timings_out.str().find("12.5") != std::string::npos);
}

TEST_CASE("report: summarize groups cells in first-appearance order") {
    std::vector<TrialRecord> records = {
        make_record("phase-transition", 2, 1, 0, 0.2, false),
        make_record("phase-transition", 1, 1, 0, 1e-5, true),
        make_record("phase-transition", 2, 1, 1, 0.4, false),
        make_record("phase-transition", 1, 1, 1, 3e-5, true),
    };
    const auto rows = summarize(records);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].s == 2);
    CHECK(rows[1].s == 1);
    CHECK(rows[0].trials == 2);
    CHECK(rows[0].successes == 0);
    CHECK(rows[0].success_rate == 0.0);
    CHECK(rows[0].mean_rel_error == doctest::Approx(0.3));
    CHECK(rows[1].success_rate == 1.0);
    CHECK(rows[1].mean_rel_error == doctest::Approx(2e-5));
    CHECK(rows[1].mean_iterations == doctest::Approx(100.5));
}

TEST_CASE("report: summarize means skip non-finite entries") {
    auto good = make_record("noise-sweep", 1, 1, 0, 0.25, true);
    auto bad = make_record("noise-sweep", 1, 1, 1, std::nan(""), false);
    const auto rows = summarize({good, bad});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].trials == 2);
    CHECK(rows[0].mean_rel_error == doctest::Approx(0.25));  // finite entry only

    const auto all_bad = summarize({bad});
    REQUIRE(all_bad.size() == 1);
    CHECK(std::isnan(all_bad[0].mean_rel_error));
    std::ostringstream out;
    write_summary_csv(out, all_bad, {});
    const std::string text = out.str();
    const auto line_start = text.rfind("noise-sweep");
    REQUIRE(line_start != std::string::npos);
    CHECK(text.substr(line_start).find(",,") != std::string::npos);  // NaN mean prints empty
}

TEST_CASE("report: svg emitters produce well-formed documents") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mvhl_report_test";
    fs::create_directories(dir);

    auto check_svg = [&](const std::string& path) {
        const std::string text = slurp(path);
        CHECK(text.rfind("<svg", 0) == 0);
        CHECK(text.find("</svg>") != std::string::npos);
    };

    SUBCASE("heatmap") {
        RMat rate(2, 3);
        rate << 0.0, 0.5, 1.0, 0.25, 0.75, 1.0;
        const std::string path = (dir / "heat.svg").string();
        svg_heatmap(path, {1, 2, 4}, {1, 2}, rate, "success rate");
        check_svg(path);
        CHECK_THROWS_AS(svg_heatmap(path, {1, 2}, {1, 2}, rate, "bad"), std::invalid_argument);
    }
    SUBCASE("log-log line skips unusable points") {
        Series series;
        series.label = "n=48";
        series.x = {1e-3, 1e-2, 0.0, 1e-1};
        series.y = {2e-3, 3e-2, 4e-2, std::nan("")};
        const std::string path = (dir / "line.svg").string();
        svg_loglog(path, {series}, "error vs noise", "eps", "rel error");
        check_svg(path);
    }
    SUBCASE("scatter of true vs estimated pairs") {
        PairRecord pair;
        pair.true_tau = 0.3;
        pair.true_nu = 0.6;
        pair.est_tau = 0.31;
        pair.est_nu = 0.59;
        const std::string path = (dir / "scatter.svg").string();
        svg_scatter_pairs(path, {pair}, "channel estimates");
        check_svg(path);
    }
    fs::remove_all(dir);
}
