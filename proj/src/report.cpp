#include "mvhl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mvhl {

std::string format_float(double value) {
    if (!std::isfinite(value)) return {};
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_preamble(std::ostream& out, const std::vector<std::string>& config_lines) {
    out << "# " << kToolVersion << "\n";
    for (const auto& line : config_lines) out << "# " << line << "\n";
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError(path + ": write failed");
}

void write_record_row(std::ostream& out, const TrialRecord& rec) {
    out << rec.experiment << ',' << rec.n << ',' << rec.p << ',' << rec.K << ',' << rec.s << ','
        << rec.r << ',' << rec.model << ',' << format_float(rec.eps) << ',' << rec.trial << ','
        << rec.seed << ',' << format_float(rec.rel_error) << ',' << (rec.success ? 1 : 0) << ','
        << rec.iterations << ',' << (rec.converged ? 1 : 0) << ','
        << format_float(rec.max_tau_error) << ',' << static_cast<int>(rec.status) << "\n";
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::ofstream open_svg(const std::string& path, int width, int height) {
    std::ofstream out = open_out(path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n"
        << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    return out;
}

void close_svg(std::ofstream& out, const std::string& path) {
    out << "</g>\n</svg>\n";
    finish(out, path);
}

void svg_text(std::ostream& out, double x, double y, const std::string& text,
              const char* anchor = "middle", int size = 12, const std::string& extra = "") {
    out << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" text-anchor=\"" << anchor
        << "\" font-size=\"" << size << "\"" << extra << ">" << xml_escape(text) << "</text>\n";
}

void svg_line(std::ostream& out, double x1, double y1, double x2, double y2, const char* stroke,
              const char* extra = "") {
    out << "<line x1=\"" << fmt2(x1) << "\" y1=\"" << fmt2(y1) << "\" x2=\"" << fmt2(x2)
        << "\" y2=\"" << fmt2(y2) << "\" stroke=\"" << stroke << "\"" << extra << "/>\n";
}

}  // namespace

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines) {
    write_preamble(out, config_lines);
    out << kRecordsHeader << "\n";
    for (const auto& rec : records) write_record_row(out, rec);
}

void write_records_csv(const std::string& path, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines) {
    auto out = open_out(path);
    write_records_csv(out, records, config_lines);
    finish(out, path);
}

void write_timings_csv(std::ostream& out, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines) {
    write_preamble(out, config_lines);
    out << "experiment,n,p,K,s,r,model,eps,trial,seed,wall_ms\n";
    for (const auto& rec : records)
        out << rec.experiment << ',' << rec.n << ',' << rec.p << ',' << rec.K << ',' << rec.s
            << ',' << rec.r << ',' << rec.model << ',' << format_float(rec.eps) << ','
            << rec.trial << ',' << rec.seed << ',' << format_float(rec.wall_ms) << "\n";
}

void write_timings_csv(const std::string& path, const std::vector<TrialRecord>& records,
                       const std::vector<std::string>& config_lines) {
    auto out = open_out(path);
    write_timings_csv(out, records, config_lines);
    finish(out, path);
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    struct Accum {
        double rel_sum = 0.0;
        Index rel_count = 0;
        double tau_sum = 0.0;
        Index tau_count = 0;
        double iter_sum = 0.0;
    };
    std::vector<SummaryRow> rows;
    std::vector<Accum> accums;
    for (const auto& rec : records) {
        auto match = [&](const SummaryRow& row) {
            return row.experiment == rec.experiment && row.n == rec.n && row.p == rec.p &&
                   row.K == rec.K && row.s == rec.s && row.r == rec.r && row.model == rec.model &&
                   row.eps == rec.eps;
        };
        auto it = std::find_if(rows.begin(), rows.end(), match);
        if (it == rows.end()) {
            SummaryRow row;
            row.experiment = rec.experiment;
            row.n = rec.n;
            row.p = rec.p;
            row.K = rec.K;
            row.s = rec.s;
            row.r = rec.r;
            row.model = rec.model;
            row.eps = rec.eps;
            rows.push_back(row);
            accums.emplace_back();
            it = rows.end() - 1;
        }
        const auto idx = static_cast<std::size_t>(it - rows.begin());
        Accum& acc = accums[idx];
        it->trials += 1;
        if (rec.success) it->successes += 1;
        if (std::isfinite(rec.rel_error)) {
            acc.rel_sum += rec.rel_error;
            acc.rel_count += 1;
        }
        if (std::isfinite(rec.max_tau_error)) {
            acc.tau_sum += rec.max_tau_error;
            acc.tau_count += 1;
        }
        acc.iter_sum += static_cast<double>(rec.iterations);
    }
    const double nan = std::nan("");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        SummaryRow& row = rows[i];
        const Accum& acc = accums[i];
        row.success_rate = static_cast<double>(row.successes) / static_cast<double>(row.trials);
        row.mean_rel_error = acc.rel_count ? acc.rel_sum / static_cast<double>(acc.rel_count) : nan;
        row.mean_iterations = acc.iter_sum / static_cast<double>(row.trials);
        row.mean_max_tau_error =
            acc.tau_count ? acc.tau_sum / static_cast<double>(acc.tau_count) : nan;
    }
    return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows,
                       const std::vector<std::string>& config_lines) {
    write_preamble(out, config_lines);
    out << "experiment,n,p,K,s,r,model,eps,trials,successes,success_rate,mean_rel_error,"
           "mean_iterations,mean_max_tau_error\n";
    for (const auto& row : rows)
        out << row.experiment << ',' << row.n << ',' << row.p << ',' << row.K << ',' << row.s
            << ',' << row.r << ',' << row.model << ',' << format_float(row.eps) << ','
            << row.trials << ',' << row.successes << ',' << format_float(row.success_rate) << ','
            << format_float(row.mean_rel_error) << ',' << format_float(row.mean_iterations) << ','
            << format_float(row.mean_max_tau_error) << "\n";
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows,
                       const std::vector<std::string>& config_lines) {
    auto out = open_out(path);
    write_summary_csv(out, rows, config_lines);
    finish(out, path);
}

void write_pairs_csv(std::ostream& out, const std::vector<PairRecord>& pairs,
                     const std::vector<std::string>& config_lines) {
    write_preamble(out, config_lines);
    out << "trial,channel,source,true_tau,true_nu,est_tau,est_nu,tau_error,nu_error\n";
    for (const auto& pair : pairs)
        out << pair.trial << ',' << pair.channel << ',' << pair.source << ','
            << format_float(pair.true_tau) << ','
            << format_float(pair.true_nu) << ',' << format_float(pair.est_tau) << ','
            << format_float(pair.est_nu) << ',' << format_float(pair.tau_error) << ','
            << format_float(pair.nu_error) << "\n";
}

void write_pairs_csv(const std::string& path, const std::vector<PairRecord>& pairs,
                     const std::vector<std::string>& config_lines) {
    auto out = open_out(path);
    write_pairs_csv(out, pairs, config_lines);
    finish(out, path);
}

void write_certificates_csv(std::ostream& out, const std::vector<DiagnoseRecord>& rows,
                            const std::vector<std::string>& config_lines) {
    write_preamble(out, config_lines);
    out << "instance,seed,n,K,s,r,model,mu0,mu1,t0,concentration_max,cross_mu,cond_F_max,"
           "cond_op_max,range_residual,recursion_consistency,concentration_ok,cross_ok,"
           "cond_F_ok,cond_op_ok,range_ok\n";
    for (const auto& row : rows)
        out << row.instance << ',' << row.seed << ',' << row.n << ',' << row.K << ',' << row.s
            << ',' << row.r << ',' << row.model << ',' << format_float(row.mu0) << ','
            << format_float(row.mu1) << ',' << row.t0 << ','
            << format_float(row.concentration_max) << ',' << format_float(row.cross_mu) << ','
            << format_float(row.cond_F_max) << ',' << format_float(row.cond_op_max) << ','
            << format_float(row.range_residual) << ','
            << format_float(row.recursion_consistency) << ',' << (row.concentration_ok ? 1 : 0)
            << ',' << (row.cross_ok ? 1 : 0) << ',' << (row.cond_F_ok ? 1 : 0) << ','
            << (row.cond_op_ok ? 1 : 0) << ',' << (row.range_ok ? 1 : 0) << "\n";
}

void write_certificates_csv(const std::string& path, const std::vector<DiagnoseRecord>& rows,
                            const std::vector<std::string>& config_lines) {
    auto out = open_out(path);
    write_certificates_csv(out, rows, config_lines);
    finish(out, path);
}

void svg_heatmap(const std::string& path, const std::vector<Index>& s_values,
                 const std::vector<Index>& r_values, const RMat& rate,
                 const std::string& title) {
    const auto cols = static_cast<Index>(s_values.size());
    const auto rows = static_cast<Index>(r_values.size());
    if (cols < 1 || rows < 1) throw std::invalid_argument("svg_heatmap: empty axes");
    if (rate.rows() != rows || rate.cols() != cols)
        throw std::invalid_argument("svg_heatmap: rate grid does not match axis lengths");

    const int cell = 48;
    const int left = 70, right = 40, top = 50, bottom = 70;
    const int width = left + right + static_cast<int>(cols) * cell;
    const int height = top + bottom + static_cast<int>(rows) * cell;
    auto out = open_svg(path, width, height);

    svg_text(out, width / 2.0, 24, title, "middle", 16);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            const double v = std::clamp(rate(i, j), 0.0, 1.0);
            const int lum = static_cast<int>(std::lround(255.0 * v));
            const double x = left + static_cast<double>(j) * cell;
            const double y = top + static_cast<double>(rows - 1 - i) * cell;
            out << "<rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"rgb(" << lum << ',' << lum << ',' << lum
                << ")\" stroke=\"#888888\"/>\n";
            const char* ink = v < 0.5 ? " fill=\"#ffffff\"" : " fill=\"#000000\"";
            svg_text(out, x + cell / 2.0, y + cell / 2.0 + 4, fmt2(v), "middle", 12, ink);
        }
    }
    for (Index j = 0; j < cols; ++j)
        svg_text(out, left + (static_cast<double>(j) + 0.5) * cell,
                 top + static_cast<double>(rows) * cell + 20, std::to_string(s_values[j]));
    for (Index i = 0; i < rows; ++i)
        svg_text(out, left - 10, top + (static_cast<double>(rows - 1 - i) + 0.5) * cell + 4,
                 std::to_string(r_values[i]), "end");
    svg_text(out, left + cols * cell / 2.0, top + rows * cell + 44, "sources per channel (s)");
    svg_text(out, 20, top + rows * cell / 2.0, "rank (r)", "middle", 12,
             " transform=\"rotate(-90 20 " + fmt2(top + rows * cell / 2.0) + ")\"");
    close_svg(out, path);
}

void svg_loglog(const std::string& path, const std::vector<Series>& series,
                const std::string& title, const std::string& x_label,
                const std::string& y_label) {
    const int width = 640, height = 480;
    const int left = 80, right = 160, top = 50, bottom = 70;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double lx_min = 0.0, lx_max = 1.0, ly_min = 0.0, ly_max = 1.0;
    bool any = false;
    auto usable = [](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && x > 0.0 && y > 0.0;
    };
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            const double lx = std::log10(s.x[i]);
            const double ly = std::log10(s.y[i]);
            if (!any) {
                lx_min = lx_max = lx;
                ly_min = ly_max = ly;
                any = true;
            } else {
                lx_min = std::min(lx_min, lx);
                lx_max = std::max(lx_max, lx);
                ly_min = std::min(ly_min, ly);
                ly_max = std::max(ly_max, ly);
            }
        }
    auto pad = [](double& lo, double& hi) {
        const double span = hi - lo;
        const double margin = span > 0.0 ? 0.05 * span : 0.5;
        lo -= margin;
        hi += margin;
    };
    pad(lx_min, lx_max);
    pad(ly_min, ly_max);

    auto map_x = [&](double lx) { return left + (lx - lx_min) / (lx_max - lx_min) * plot_w; };
    auto map_y = [&](double ly) { return top + (ly_max - ly) / (ly_max - ly_min) * plot_h; };

    auto out = open_svg(path, width, height);
    svg_text(out, (left + width - right) / 2.0, 24, title, "middle", 16);
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << fmt2(plot_w)
        << "\" height=\"" << fmt2(plot_h) << "\" fill=\"none\" stroke=\"#000000\"/>\n";

    for (int e = static_cast<int>(std::ceil(lx_min)); e <= static_cast<int>(std::floor(lx_max));
         ++e) {
        const double x = map_x(e);
        svg_line(out, x, top, x, top + plot_h, "#dddddd");
        svg_text(out, x, top + plot_h + 18, "1e" + std::to_string(e));
    }
    for (int e = static_cast<int>(std::ceil(ly_min)); e <= static_cast<int>(std::floor(ly_max));
         ++e) {
        const double y = map_y(e);
        svg_line(out, left, y, left + plot_w, y, "#dddddd");
        svg_text(out, left - 8, y + 4, "1e" + std::to_string(e), "end");
    }
    svg_text(out, (left + width - right) / 2.0, height - 20, x_label);
    svg_text(out, 20, top + plot_h / 2.0, y_label, "middle", 12,
             " transform=\"rotate(-90 20 " + fmt2(top + plot_h / 2.0) + ")\"");

    for (std::size_t k = 0; k < series.size(); ++k) {
        const char* color = kPalette[k % 6];
        std::string points;
        for (std::size_t i = 0; i < series[k].x.size() && i < series[k].y.size(); ++i) {
            if (!usable(series[k].x[i], series[k].y[i])) continue;
            const double x = map_x(std::log10(series[k].x[i]));
            const double y = map_y(std::log10(series[k].y[i]));
            points += fmt2(x) + "," + fmt2(y) + " ";
            out << "<circle cx=\"" << fmt2(x) << "\" cy=\"" << fmt2(y)
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        if (!points.empty())
            out << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\"/>\n";
        const double ly = top + 16.0 + 18.0 * static_cast<double>(k);
        svg_line(out, width - right + 12, ly - 4, width - right + 36, ly - 4, color,
                 " stroke-width=\"2\"");
        svg_text(out, width - right + 42, ly, series[k].label, "start");
    }
    close_svg(out, path);
}

void svg_scatter_pairs(const std::string& path, const std::vector<PairRecord>& pairs,
                       const std::string& title) {
    const int width = 640, height = 560;
    const int left = 70, right = 160, top = 50, bottom = 60;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    const double lo = -0.05, hi = 1.05;

    auto map_x = [&](double v) { return left + (v - lo) / (hi - lo) * plot_w; };
    auto map_y = [&](double v) { return top + (hi - v) / (hi - lo) * plot_h; };

    auto out = open_svg(path, width, height);
    svg_text(out, (left + width - right) / 2.0, 24, title, "middle", 16);
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << fmt2(plot_w)
        << "\" height=\"" << fmt2(plot_h) << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = 0.25 * t;
        svg_line(out, map_x(v), top, map_x(v), top + plot_h, "#dddddd");
        svg_line(out, left, map_y(v), left + plot_w, map_y(v), "#dddddd");
        svg_text(out, map_x(v), top + plot_h + 18, fmt2(v));
        svg_text(out, left - 8, map_y(v) + 4, fmt2(v), "end");
    }
    svg_text(out, (left + width - right) / 2.0, height - 16, "delay (tau)");
    svg_text(out, 20, top + plot_h / 2.0, "Doppler (nu)", "middle", 12,
             " transform=\"rotate(-90 20 " + fmt2(top + plot_h / 2.0) + ")\"");

    for (const auto& pair : pairs) {
        const double tx = map_x(pair.true_tau), ty = map_y(pair.true_nu);
        const double ex = map_x(pair.est_tau), ey = map_y(pair.est_nu);
        svg_line(out, tx, ty, ex, ey, "#999999", " stroke-dasharray=\"3,3\"");
        out << "<circle cx=\"" << fmt2(tx) << "\" cy=\"" << fmt2(ty)
            << "\" r=\"6\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
        svg_line(out, ex - 5, ey - 5, ex + 5, ey + 5, "#d62728", " stroke-width=\"2\"");
        svg_line(out, ex - 5, ey + 5, ex + 5, ey - 5, "#d62728", " stroke-width=\"2\"");
    }
    const double ly = top + 16.0;
    out << "<circle cx=\"" << fmt2(width - right + 20.0) << "\" cy=\"" << fmt2(ly - 4)
        << "\" r=\"6\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    svg_text(out, width - right + 34, ly, "true", "start");
    svg_line(out, width - right + 15, ly + 14 - 5, width - right + 25, ly + 14 + 5, "#d62728",
             " stroke-width=\"2\"");
    svg_line(out, width - right + 15, ly + 14 + 5, width - right + 25, ly + 14 - 5, "#d62728",
             " stroke-width=\"2\"");
    svg_text(out, width - right + 34, ly + 18, "estimated", "start");
    close_svg(out, path);
}

}  // namespace mvhl
