#include "mvhl/music.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvhl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Divergent peaks on exact data are reported as 1/kDenomFloor rather than inf.
constexpr double kDenomFloor = 1e-12;

double wrap01(double x) { return x - std::floor(x); }
}  // namespace

double wrap_distance(double a, double b) {
    const double d = std::abs(wrap01(a) - wrap01(b));
    return std::min(d, 1.0 - d);
}

CMat signal_subspace(const CMat& lifted, Index r) {
    if (r < 1) throw std::invalid_argument("signal_subspace: r must be positive");
    if (r > std::min(lifted.rows(), lifted.cols()))
        throw std::invalid_argument("signal_subspace: r exceeds matrix dimensions");
    Eigen::JacobiSVD<CMat> svd(lifted, Eigen::ComputeThinV);
    const RVec sv = svd.singularValues();
    if (!(sv(r - 1) > sv(0) * 1e-12))
        throw std::runtime_error("signal_subspace: numerical rank below requested order " +
                                 std::to_string(r));
    return svd.matrixV().leftCols(r);
}

namespace {

// Projection of the steering direction onto the estimated signal row space;
// A = V_rᴴ so the noise-space energy at τ is 1 − ‖A·v(τ)‖².
struct Kernel1D {
    CMat A;  // r × n2

    double denom(double tau) const {
        const Index n2 = A.cols();
        const double amp = 1.0 / std::sqrt(static_cast<double>(n2));
        CVec v(n2);
        for (Index j = 0; j < n2; ++j)
            v(j) = std::polar(amp, kTwoPi * static_cast<double>(j) * tau);
        return std::max(0.0, 1.0 - (A * v).squaredNorm());
    }
};

struct Kernel2D {
    CMat A;  // r × (N2·P2), delay index fastest
    Index N2 = 0, P2 = 0;

    double denom(double tau, double nu) const {
        const double amp = 1.0 / std::sqrt(static_cast<double>(N2 * P2));
        CVec v(N2 * P2);
        for (Index b = 0; b < P2; ++b)
            for (Index j = 0; j < N2; ++j)
                v(b * N2 + j) = std::polar(amp, kTwoPi * (static_cast<double>(b) * nu +
                                                          static_cast<double>(j) * tau));
        return std::max(0.0, 1.0 - (A * v).squaredNorm());
    }
};

Kernel1D make_kernel(const CMat& X, Index r, const LiftShape& shape) {
    if (r > std::min(shape.n1 - 1, shape.n2 - 1))
        throw std::invalid_argument("smoothing_music: model order too large for the pencil");
    return {signal_subspace(hankel_lift(X, shape), r).adjoint()};
}

Kernel2D make_kernel_2d(const CMat& X, Index r, const LiftShape2D& shape) {
    if (r > std::min(shape.N1 * shape.P1 * shape.s - 1, shape.N2 * shape.P2 - 1))
        throw std::invalid_argument("music_2d: model order too large for the pencil");
    return {signal_subspace(hankel_lift_2d(X, shape), r).adjoint(), shape.N2, shape.P2};
}

Pseudospectrum eval_grid(const Kernel1D& kernel, Index grid_size) {
    Pseudospectrum spec;
    spec.grid = RVec(grid_size);
    spec.values = RVec(grid_size);
    for (Index i = 0; i < grid_size; ++i) {
        const double tau = static_cast<double>(i) / static_cast<double>(grid_size);
        spec.grid(i) = tau;
        spec.values(i) = 1.0 / std::max(kernel.denom(tau), kDenomFloor);
    }
    return spec;
}

Pseudospectrum2D eval_grid_2d(const Kernel2D& kernel, Index grid_tau, Index grid_nu) {
    Pseudospectrum2D spec;
    spec.tau_grid = RVec(grid_tau);
    spec.nu_grid = RVec(grid_nu);
    spec.values = RMat(grid_nu, grid_tau);
    for (Index j = 0; j < grid_tau; ++j)
        spec.tau_grid(j) = static_cast<double>(j) / static_cast<double>(grid_tau);
    for (Index i = 0; i < grid_nu; ++i)
        spec.nu_grid(i) = static_cast<double>(i) / static_cast<double>(grid_nu);
    for (Index i = 0; i < grid_nu; ++i)
        for (Index j = 0; j < grid_tau; ++j)
            spec.values(i, j) =
                1.0 / std::max(kernel.denom(spec.tau_grid(j), spec.nu_grid(i)), kDenomFloor);
    return spec;
}

template <class Fn>
double golden_min(const Fn& f, double a, double b) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < 90 && (b - a) > 1e-13; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a); f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a); f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

void check_grid(Index grid_size, Index r, const char* who) {
    if (grid_size < 4 * r || grid_size < 3)
        throw std::invalid_argument(std::string(who) + ": grid too coarse for the model order");
}

}  // namespace

Pseudospectrum smoothing_music(const CMat& X, Index r, Index grid_size,
                               const LiftShape& shape) {
    check_grid(grid_size, r, "smoothing_music");
    require_data_shape(X, shape.s, shape.n, "smoothing_music");
    return eval_grid(make_kernel(X, r, shape), grid_size);
}

Pseudospectrum smoothing_music(const CMat& X, Index r, Index grid_size) {
    return smoothing_music(X, r, grid_size, LiftShape::balanced(X.rows(), X.cols()));
}

Pseudospectrum2D music_2d(const CMat& X, Index r, const LiftShape2D& shape,
                          Index grid_tau, Index grid_nu) {
    check_grid(grid_tau, r, "music_2d");
    check_grid(grid_nu, r, "music_2d");
    require_data_shape(X, shape.s, shape.data_cols(), "music_2d");
    return eval_grid_2d(make_kernel_2d(X, r, shape), grid_tau, grid_nu);
}

EstimatedSources peak_pick(const Pseudospectrum& spec, Index r) {
    const Index G = spec.values.size();
    if (r < 1) throw std::invalid_argument("peak_pick: r must be positive");
    if (G < 3) throw std::invalid_argument("peak_pick: spectrum too short");
    std::vector<Index> maxima;
    for (Index i = 0; i < G; ++i) {
        const double v = spec.values(i);
        if (v > spec.values((i + G - 1) % G) && v > spec.values((i + 1) % G))
            maxima.push_back(i);
    }
    if (static_cast<Index>(maxima.size()) < r)
        throw std::runtime_error("peak_pick: found " + std::to_string(maxima.size()) +
                                 " local maxima, need " + std::to_string(r));
    std::sort(maxima.begin(), maxima.end(),
              [&](Index a, Index b) { return spec.values(a) > spec.values(b); });
    maxima.resize(r);
    std::sort(maxima.begin(), maxima.end(),
              [&](Index a, Index b) { return spec.grid(a) < spec.grid(b); });
    EstimatedSources est;
    est.taus = RVec(r);
    est.peak_values = RVec(r);
    for (Index i = 0; i < r; ++i) {
        est.taus(i) = spec.grid(maxima[i]);
        est.peak_values(i) = spec.values(maxima[i]);
    }
    return est;
}

EstimatedSources2D peak_pick_2d(const Pseudospectrum2D& spec, Index r) {
    const Index Gn = spec.values.rows(), Gt = spec.values.cols();
    if (r < 1) throw std::invalid_argument("peak_pick_2d: r must be positive");
    if (Gn < 3 || Gt < 3) throw std::invalid_argument("peak_pick_2d: grid too small");
    std::vector<std::pair<Index, Index>> maxima;
    for (Index i = 0; i < Gn; ++i)
        for (Index j = 0; j < Gt; ++j) {
            const double v = spec.values(i, j);
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dj = -1; dj <= 1 && is_max; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    is_max = v > spec.values((i + Gn + di) % Gn, (j + Gt + dj) % Gt);
                }
            if (is_max) maxima.emplace_back(i, j);
        }
    if (static_cast<Index>(maxima.size()) < r)
        throw std::runtime_error("peak_pick_2d: found " + std::to_string(maxima.size()) +
                                 " local maxima, need " + std::to_string(r));
    std::sort(maxima.begin(), maxima.end(), [&](const auto& a, const auto& b) {
        return spec.values(a.first, a.second) > spec.values(b.first, b.second);
    });
    maxima.resize(r);
    std::sort(maxima.begin(), maxima.end(), [&](const auto& a, const auto& b) {
        return std::make_pair(spec.tau_grid(a.second), spec.nu_grid(a.first)) <
               std::make_pair(spec.tau_grid(b.second), spec.nu_grid(b.first));
    });
    EstimatedSources2D est;
    est.taus = RVec(r);
    est.nus = RVec(r);
    est.peak_values = RVec(r);
    for (Index i = 0; i < r; ++i) {
        est.taus(i) = spec.tau_grid(maxima[i].second);
        est.nus(i) = spec.nu_grid(maxima[i].first);
        est.peak_values(i) = spec.values(maxima[i].first, maxima[i].second);
    }
    return est;
}

namespace {

MatchReport match_with_metric(Index r, const std::function<double(Index, Index)>& dist,
                              double tol) {
    if (r > 8) throw std::invalid_argument("match_sources: exhaustive matching supports r <= 8");
    MatchReport report;
    report.errors = RVec::Zero(r);
    if (r == 0) {
        report.matched = true;
        return report;
    }
    report.assignment.resize(r);
    std::vector<Index> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Index> best = perm;
    double best_max = std::numeric_limits<double>::infinity();
    double best_sum = std::numeric_limits<double>::infinity();
    do {
        double max_err = 0.0, sum = 0.0;
        for (Index i = 0; i < r; ++i) {
            const double d = dist(perm[i], i);
            max_err = std::max(max_err, d);
            sum += d;
        }
        if (max_err < best_max || (max_err == best_max && sum < best_sum)) {
            best_max = max_err;
            best_sum = sum;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (Index i = 0; i < r; ++i) report.errors(i) = dist(best[i], i);
    report.assignment = best;
    report.max_error = best_max;
    report.matched = best_max <= tol;
    return report;
}

}  // namespace

MatchReport match_sources(const RVec& est, const RVec& truth, double tol) {
    if (est.size() != truth.size())
        throw std::invalid_argument("match_sources: length mismatch");
    return match_with_metric(
        est.size(), [&](Index e, Index t) { return wrap_distance(est(e), truth(t)); }, tol);
}

MatchReport match_sources_2d(const RVec& est_tau, const RVec& est_nu,
                             const RVec& truth_tau, const RVec& truth_nu, double tol) {
    if (est_tau.size() != est_nu.size() || truth_tau.size() != truth_nu.size() ||
        est_tau.size() != truth_tau.size())
        throw std::invalid_argument("match_sources_2d: length mismatch");
    return match_with_metric(
        est_tau.size(),
        [&](Index e, Index t) {
            return std::max(wrap_distance(est_tau(e), truth_tau(t)),
                            wrap_distance(est_nu(e), truth_nu(t)));
        },
        tol);
}

EstimatedSources estimate_taus(const CMat& X, Index r, Index grid_size,
                               const LiftShape& shape) {
    check_grid(grid_size, r, "estimate_taus");
    require_data_shape(X, shape.s, shape.n, "estimate_taus");
    const Kernel1D kernel = make_kernel(X, r, shape);
    EstimatedSources est = peak_pick(eval_grid(kernel, grid_size), r);
    const double h = 1.0 / static_cast<double>(grid_size);
    for (Index i = 0; i < r; ++i) {
        const double t0 = est.taus(i);
        const double refined = golden_min([&](double t) { return kernel.denom(t); },
                                          t0 - h, t0 + h);
        est.taus(i) = wrap01(refined);
        est.peak_values(i) = 1.0 / std::max(kernel.denom(refined), kDenomFloor);
    }
    std::vector<Index> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return est.taus(a) < est.taus(b); });
    EstimatedSources out;
    out.taus = RVec(r);
    out.peak_values = RVec(r);
    for (Index i = 0; i < r; ++i) {
        out.taus(i) = est.taus(order[i]);
        out.peak_values(i) = est.peak_values(order[i]);
    }
    return out;
}

EstimatedSources estimate_taus(const CMat& X, Index r, Index grid_size) {
    return estimate_taus(X, r, grid_size, LiftShape::balanced(X.rows(), X.cols()));
}

EstimatedSources2D estimate_delay_doppler(const CMat& X, Index r, const LiftShape2D& shape,
                                          Index grid_tau, Index grid_nu) {
    check_grid(grid_tau, r, "estimate_delay_doppler");
    check_grid(grid_nu, r, "estimate_delay_doppler");
    require_data_shape(X, shape.s, shape.data_cols(), "estimate_delay_doppler");
    const Kernel2D kernel = make_kernel_2d(X, r, shape);
    EstimatedSources2D est = peak_pick_2d(eval_grid_2d(kernel, grid_tau, grid_nu), r);
    const double ht = 1.0 / static_cast<double>(grid_tau);
    const double hn = 1.0 / static_cast<double>(grid_nu);
    for (Index i = 0; i < r; ++i) {
        double tau = est.taus(i), nu = est.nus(i);
        for (int round = 0; round < 2; ++round) {
            tau = golden_min([&](double t) { return kernel.denom(t, nu); }, tau - ht, tau + ht);
            nu = golden_min([&](double v) { return kernel.denom(tau, v); }, nu - hn, nu + hn);
        }
        est.taus(i) = wrap01(tau);
        est.nus(i) = wrap01(nu);
        est.peak_values(i) = 1.0 / std::max(kernel.denom(tau, nu), kDenomFloor);
    }
    std::vector<Index> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return std::make_pair(est.taus(a), est.nus(a)) < std::make_pair(est.taus(b), est.nus(b));
    });
    EstimatedSources2D out;
    out.taus = RVec(r);
    out.nus = RVec(r);
    out.peak_values = RVec(r);
    for (Index i = 0; i < r; ++i) {
        out.taus(i) = est.taus(order[i]);
        out.nus(i) = est.nus(order[i]);
        out.peak_values(i) = est.peak_values(order[i]);
    }
    return out;
}

}  // namespace mvhl
