#include "mvhl/solver.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mvhl {

void SolverConfig::validate() const {
    if (!(rho > 0.0)) throw std::invalid_argument("SolverConfig: rho must be positive");
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be at least 1");
    if (!(tol_primal > 0.0) || !(tol_dual > 0.0) || !(tol_feas > 0.0))
        throw std::invalid_argument("SolverConfig: tolerances must be positive");
    if (noise_delta < 0.0)
        throw std::invalid_argument("SolverConfig: noise_delta must be nonnegative");
    if (over_relaxation < 1.0 || over_relaxation > 1.9)
        throw std::invalid_argument("SolverConfig: over_relaxation must lie in [1, 1.9]");
}

double nuclear_norm(const CMat& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(M);
    return svd.singularValues().sum();
}

namespace {

template <class SvdType>
CMat shrink_singular_values(const SvdType& svd, double theta) {
    const RVec sv = (svd.singularValues().array() - theta).max(0.0).matrix();
    Index nnz = 0;
    while (nnz < sv.size() && sv(nnz) > 0.0) ++nnz;
    if (nnz == 0) return CMat::Zero(svd.matrixU().rows(), svd.matrixV().rows());
    return svd.matrixU().leftCols(nnz) * sv.head(nnz).asDiagonal() *
           svd.matrixV().leftCols(nnz).adjoint();
}

}  // namespace

CMat svt(const CMat& W, double theta) {
    if (theta < 0.0) throw std::invalid_argument("svt: threshold must be nonnegative");
    if (theta == 0.0) return W;
    Eigen::BDCSVD<CMat> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() == Eigen::Success && svd.singularValues().allFinite())
        return shrink_singular_values(svd, theta);
    // Divide-and-conquer occasionally stalls on degenerate spectra; one-sided
    // Jacobi is slower but does not.
    Eigen::JacobiSVD<CMat> fallback(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (fallback.info() != Eigen::Success || !fallback.singularValues().allFinite())
        throw std::runtime_error("svt: SVD did not converge");
    return shrink_singular_values(fallback, theta);
}

namespace {

void check_columns(const std::vector<CMat>& centers, const SubspaceEnsemble& subspaces,
                   const CVec& y, const char* who) {
    if (centers.size() != subspaces.mats.size())
        throw std::invalid_argument(std::string(who) + ": channel count mismatch");
    for (std::size_t k = 0; k < centers.size(); ++k)
        if (centers[k].cols() != y.size() || centers[k].rows() != subspaces.mats[k].cols() ||
            subspaces.mats[k].rows() != y.size())
            throw std::invalid_argument(std::string(who) + ": shape mismatch in channel " +
                                        std::to_string(k));
}

}  // namespace

std::vector<CMat> x_update(const std::vector<CMat>& centers,
                           const SubspaceEnsemble& subspaces, const CVec& y) {
    check_columns(centers, subspaces, y, "x_update");
    const std::size_t K = centers.size();
    std::vector<CMat> X = centers;
    for (Index j = 0; j < y.size(); ++j) {
        Complex resid = y(j);
        double beta = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            resid -= subspaces.mats[k].row(j).dot(centers[k].col(j));
            beta += subspaces.mats[k].row(j).squaredNorm();
        }
        if (beta == 0.0) {
            if (std::abs(y(j)) > 0.0)
                throw std::invalid_argument("x_update: column " + std::to_string(j) +
                                            " has no sensing energy but y is nonzero");
            continue;
        }
        const Complex step = resid / beta;
        for (std::size_t k = 0; k < K; ++k)
            X[k].col(j) += step * subspaces.mats[k].row(j).transpose();
    }
    return X;
}

std::vector<CMat> x_update_ball(const std::vector<CMat>& centers,
                                const SubspaceEnsemble& subspaces, const CVec& y,
                                const RVec& weights, double delta) {
    if (delta <= 0.0) return x_update(centers, subspaces, y);
    check_columns(centers, subspaces, y, "x_update_ball");
    if (weights.size() != y.size())
        throw std::invalid_argument("x_update_ball: weight length mismatch");

    const std::size_t K = centers.size();
    const Index n = y.size();
    CVec resid(n);
    RVec beta(n);
    for (Index j = 0; j < n; ++j) {
        Complex r = y(j);
        double b = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            r -= subspaces.mats[k].row(j).dot(centers[k].col(j));
            b += subspaces.mats[k].row(j).squaredNorm();
        }
        resid(j) = r;
        beta(j) = b;
    }
    if (resid.norm() <= delta) return centers;

    // Columns without sensing energy cannot change their residual.
    double forced_sq = 0.0;
    for (Index j = 0; j < n; ++j)
        if (beta(j) == 0.0) forced_sq += std::norm(resid(j));
    if (forced_sq > delta * delta)
        throw std::runtime_error("x_update_ball: unobserved residual already exceeds the ball");
    const double delta_free = std::sqrt(delta * delta - forced_sq);

    // Post-update residual targets t minimize Σ_j γ_j |t_j − r_j|² over
    // ‖t‖₂ ≤ δ with γ_j = w_j/β_j, giving t_j = γ_j r_j / (γ_j + λ); the norm
    // is strictly decreasing in λ ≥ 0, so bisect to hit the ball boundary.
    const auto target_norm = [&](double lambda) {
        double sq = 0.0;
        for (Index j = 0; j < n; ++j) {
            if (beta(j) == 0.0) continue;
            const double gamma = weights(j) / beta(j);
            const double t = gamma / (gamma + lambda) * std::abs(resid(j));
            sq += t * t;
        }
        return std::sqrt(sq);
    };
    double lo = 0.0, hi = 1.0;
    while (target_norm(hi) > delta_free) {
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("x_update_ball: multiplier search diverged");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (target_norm(mid) > delta_free ? lo : hi) = mid;
    }
    const double lambda = 0.5 * (lo + hi);

    std::vector<CMat> X = centers;
    for (Index j = 0; j < n; ++j) {
        if (beta(j) == 0.0) continue;
        const double gamma = weights(j) / beta(j);
        const Complex target = gamma / (gamma + lambda) * resid(j);
        const Complex step = (resid(j) - target) / beta(j);
        for (std::size_t k = 0; k < K; ++k)
            X[k].col(j) += step * subspaces.mats[k].row(j).transpose();
    }
    return X;
}

namespace {

CMat scaled_adjoint(const Lift& lift, const CMat& M, const RVec& w) {
    CMat C = lift.adjoint(M);
    for (Index j = 0; j < C.cols(); ++j) C.col(j) /= w(j);
    return C;
}

}  // namespace

SolverResult solve_mvhl(const SubspaceEnsemble& subspaces, const CVec& y,
                        const Lift& lift, const SolverConfig& config) {
    config.validate();
    const std::size_t K = subspaces.mats.size();
    if (K == 0) throw std::invalid_argument("solve_mvhl: no measurement channels");
    if (y.size() != lift.data_cols())
        throw std::invalid_argument("solve_mvhl: measurement length does not match the lift");
    for (const CMat& B : subspaces.mats)
        if (B.rows() != y.size() || B.cols() != lift.data_rows())
            throw std::invalid_argument("solve_mvhl: subspace shape does not match the lift");
    if (!y.allFinite()) throw std::invalid_argument("solve_mvhl: y must be finite");

    const Index s = lift.data_rows(), n = lift.data_cols();
    const Index L1 = lift.lifted_rows(), L2 = lift.lifted_cols();
    const RVec w = lift.weights();
    const double ynorm = y.norm();
    const double alpha = config.over_relaxation;
    double rho = config.rho;

    std::vector<CMat> X(K, CMat::Zero(s, n));
    std::vector<CMat> Z(K, CMat::Zero(L1, L2));
    std::vector<CMat> Lam(K, CMat::Zero(L1, L2));
    std::vector<CMat> HX(K, CMat::Zero(L1, L2));
    std::vector<CMat> centers(K), Zhat(K);

    SolverResult res;
    std::vector<CMat> best_X = X;
    double best_score = std::numeric_limits<double>::infinity();
    double best_feas = ynorm;

    for (int t = 1; t <= config.max_iter; ++t) {
        double znorm_max = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            Z[k] = svt(HX[k] + Lam[k] / rho, 1.0 / rho);
            znorm_max = std::max(znorm_max, Z[k].norm());
            Zhat[k] = alpha * Z[k] + (1.0 - alpha) * HX[k];
            centers[k] = scaled_adjoint(lift, Zhat[k] - Lam[k] / rho, w);
        }
        std::vector<CMat> X_new =
            config.noise_delta > 0.0
                ? x_update_ball(centers, subspaces, y, w, config.noise_delta)
                : x_update(centers, subspaces, y);

        double primal = 0.0, dual = 0.0;
        bool finite = true;
        for (std::size_t k = 0; k < K; ++k) {
            CMat HX_new = lift.apply(X_new[k]);
            dual = std::max(dual, rho * (HX_new - HX[k]).norm());
            primal = std::max(primal, (HX_new - Z[k]).norm());
            Lam[k] += rho * (HX_new - Zhat[k]);
            HX[k] = std::move(HX_new);
            finite = finite && X_new[k].allFinite();
        }
        X = std::move(X_new);
        const double feas = (forward(subspaces, X) - y).norm();
        res.residual_history.push_back({primal, dual, feas});
        res.iterations = t;
        if (!finite || !std::isfinite(primal) || !std::isfinite(dual) || !std::isfinite(feas))
            throw std::runtime_error("solve_mvhl: non-finite iterate at iteration " +
                                     std::to_string(t));

        const double feas_gap = std::max(0.0, feas - config.noise_delta);
        const double score = primal + dual + feas_gap;
        if (score < best_score) {
            best_score = score;
            best_X = X;
            best_feas = feas;
        }
        const double scale = std::max({ynorm, znorm_max, 1.0});
        if (primal <= config.tol_primal * scale && dual <= config.tol_dual * scale &&
            feas_gap <= config.tol_feas * ynorm) {
            res.converged = true;
            best_X = X;
            best_feas = feas;
            break;
        }
        if (config.adaptive_rho) {
            if (primal > 10.0 * dual)
                rho *= 2.0;
            else if (dual > 10.0 * primal)
                rho *= 0.5;
        }
    }

    res.estimates = std::move(best_X);
    res.feasibility = best_feas;
    res.objective = 0.0;
    for (const CMat& Xk : res.estimates) res.objective += nuclear_norm(lift.apply(Xk));
    return res;
}

SolverResult solve_mvhl(const SubspaceEnsemble& subspaces, const CVec& y,
                        const LiftShape& shape, const SolverConfig& config) {
    return solve_mvhl(subspaces, y, VectorHankelLift(shape), config);
}

SolverResult solve_mvhl_noisy(const SubspaceEnsemble& subspaces, const CVec& y,
                              const Lift& lift, const SolverConfig& config) {
    if (!(config.noise_delta > 0.0))
        throw std::invalid_argument("solve_mvhl_noisy: noise_delta must be positive");
    return solve_mvhl(subspaces, y, lift, config);
}

}  // namespace mvhl
