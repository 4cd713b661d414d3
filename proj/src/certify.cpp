#include "mvhl/certify.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mvhl/rng.hpp"

namespace mvhl {

namespace {

double spectral_norm(const CMat& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::JacobiSVD<CMat> svd(M);
    return svd.singularValues()(0);
}

// Single-channel measurement and its adjoint restricted to a column subset.
CVec apply_channel(const CMat& B, const CMat& X) {
    CVec y(B.rows());
    for (Index j = 0; j < B.rows(); ++j) y(j) = B.row(j).dot(X.col(j));
    return y;
}

CVec apply_channel_subset(const CMat& B, const CMat& X, const std::vector<Index>& omega) {
    CVec y(static_cast<Index>(omega.size()));
    for (std::size_t i = 0; i < omega.size(); ++i)
        y(static_cast<Index>(i)) = B.row(omega[i]).dot(X.col(omega[i]));
    return y;
}

CMat adjoint_channel_subset(const CMat& B, const CVec& lambda,
                            const std::vector<Index>& omega) {
    CMat X = CMat::Zero(B.cols(), B.rows());
    for (std::size_t i = 0; i < omega.size(); ++i)
        X.col(omega[i]) = lambda(static_cast<Index>(i)) * B.row(omega[i]).transpose();
    return X;
}

}  // namespace

TangentSpace tangent_space_from_lifted(const CMat& lifted, Index r) {
    if (r < 1) throw std::invalid_argument("tangent_space: r must be positive");
    if (r > std::min(lifted.rows(), lifted.cols()))
        throw std::invalid_argument("tangent_space: r exceeds matrix dimensions");
    Eigen::JacobiSVD<CMat> svd(lifted, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVec sv = svd.singularValues();
    if (!(sv(r - 1) > sv(0) * 1e-12))
        throw std::runtime_error("tangent_space: numerical rank below requested order " +
                                 std::to_string(r));
    return {svd.matrixU().leftCols(r), svd.matrixV().leftCols(r)};
}

TangentSpace tangent_space(const CMat& X, Index r, const LiftShape& shape) {
    require_data_shape(X, shape.s, shape.n, "tangent_space");
    return tangent_space_from_lifted(hankel_lift(X, shape), r);
}

CMat tangent_project(const TangentSpace& T, const CMat& M) {
    if (M.rows() != T.U.rows() || M.cols() != T.V.rows())
        throw std::invalid_argument("tangent_project: shape mismatch");
    const CMat UhM = T.U.adjoint() * M;   // r × n2
    const CMat MV = M * T.V;              // sn1 × r
    return T.U * UhM + (MV - T.U * (UhM * T.V)) * T.V.adjoint();
}

double incoherence_mu1(const CMat& X, Index r, const LiftShape& shape) {
    require_data_shape(X, shape.s, shape.n, "incoherence_mu1");
    const TangentSpace T = tangent_space(X, r, shape);
    double block_max = 0.0;
    for (Index l = 0; l < shape.n1; ++l)
        block_max = std::max(block_max, T.U.block(l * shape.s, 0, shape.s, r).squaredNorm());
    double row_max = 0.0;
    for (Index j = 0; j < shape.n2; ++j)
        row_max = std::max(row_max, T.V.row(j).squaredNorm());
    return static_cast<double>(shape.n) * std::max(block_max, row_max) /
           static_cast<double>(r);
}

double op_norm_self_adjoint(const LinearMap& L, Index rows, Index cols, int iters) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("op_norm: empty domain");
    if (iters < 1) throw std::invalid_argument("op_norm: iters must be positive");
    Rng rng(0x9d2c5680u);
    CMat v(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) v(i, j) = rng.complex_gaussian();
    v /= v.norm();
    double rayleigh = 0.0;
    for (int it = 0; it < iters; ++it) {
        const CMat Lv = L(v);
        if (!Lv.allFinite()) throw std::runtime_error("op_norm: non-finite application");
        const double current = std::abs((v.array().conjugate() * Lv.array()).sum());
        const double nrm = Lv.norm();
        if (nrm == 0.0) return 0.0;
        v = Lv / nrm;
        if (it > 0 && std::abs(current - rayleigh) <= 1e-6 * std::max(current, 1e-300)) {
            rayleigh = current;
            break;
        }
        rayleigh = current;
    }
    return rayleigh;
}

double op_norm(const LinearMap& L, const LinearMap& adjoint, Index rows, Index cols,
               int iters) {
    const LinearMap normal = [&](const CMat& M) { return adjoint(L(M)); };
    return std::sqrt(op_norm_self_adjoint(normal, rows, cols, iters));
}

double check_concentration(const TangentSpace& T, const SubspaceEnsemble& subspaces,
                           Index k, const LiftShape& shape, int iters) {
    const CMat& B = subspaces.mats.at(static_cast<std::size_t>(k));
    const LinearMap L = [&](const CMat& M) {
        const CMat X = normalized_lift_adjoint(tangent_project(T, M), shape);
        const CMat measured = measurement_adjoint(B, apply_channel(B, X));
        return tangent_project(T, normalized_lift(measured - X, shape));
    };
    return op_norm_self_adjoint(L, shape.lifted_rows(), shape.lifted_cols(), iters);
}

double check_cross_incoherence(const TangentSpace& Ti, const TangentSpace& Tj,
                               const SubspaceEnsemble& subspaces, Index i, Index j,
                               const LiftShape& shape, int iters) {
    if (i == j) throw std::invalid_argument("check_cross_incoherence: need distinct channels");
    const CMat& Bi = subspaces.mats.at(static_cast<std::size_t>(i));
    const CMat& Bj = subspaces.mats.at(static_cast<std::size_t>(j));
    const auto cross = [&shape](const TangentSpace& Tout, const CMat& Bout,
                                const TangentSpace& Tin, const CMat& Bin, const CMat& M) {
        const CMat X = normalized_lift_adjoint(tangent_project(Tin, M), shape);
        const CMat measured = measurement_adjoint(Bout, apply_channel(Bin, X));
        return tangent_project(Tout, normalized_lift(measured, shape));
    };
    const LinearMap fwd = [&](const CMat& M) { return cross(Ti, Bi, Tj, Bj, M); };
    const LinearMap adj = [&](const CMat& M) { return cross(Tj, Bj, Ti, Bi, M); };
    return op_norm(fwd, adj, shape.lifted_rows(), shape.lifted_cols(), iters);
}

double g_fro_norm(const CMat& M, const LiftShape& shape) {
    return normalized_lift_adjoint(M, shape).norm();
}

double g_inf_norm(const CMat& M, const LiftShape& shape) {
    const CMat X = normalized_lift_adjoint(M, shape);
    double best = 0.0;
    for (Index j = 0; j < X.cols(); ++j) best = std::max(best, X.col(j).norm());
    return best;
}

Index default_t0(Index K, Index r, Index s, double mu0) {
    if (K < 1 || r < 1 || s < 1 || !(mu0 > 0.0))
        throw std::invalid_argument("default_t0: arguments must be positive");
    const double depth = std::log2(48.0 * static_cast<double>(K) * static_cast<double>(r) *
                                   static_cast<double>(s) * mu0);
    return std::max<Index>(1, static_cast<Index>(std::ceil(depth)));
}

namespace {

std::vector<std::vector<Index>> make_partitions(Index n, Index t0, PartitionScheme scheme,
                                                std::uint64_t seed) {
    if (t0 < 1 || t0 > n)
        throw std::invalid_argument("golfing_certificate: need 1 <= t0 <= n partitions");
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    if (scheme == PartitionScheme::Random) {
        Rng rng(derive_stream(seed, {0x70a3d70a3d70a3d7ull}));
        for (Index i = 0; i < n - 1; ++i)
            std::swap(order[i], order[i + static_cast<Index>(rng.uniform_index(
                                              static_cast<std::uint64_t>(n - i)))]);
    }
    const Index base = n / t0;  // ≥ 1; last block absorbs the remainder
    std::vector<std::vector<Index>> parts(t0);
    Index pos = 0;
    for (Index t = 0; t < t0; ++t) {
        const Index len = (t + 1 == t0) ? n - pos : base;
        parts[t].assign(order.begin() + pos, order.begin() + pos + len);
        pos += len;
    }
    return parts;
}

}  // namespace

GolfingResult golfing_certificate(const std::vector<CMat>& targets,
                                  const SubspaceEnsemble& subspaces,
                                  const LiftShape& shape, Index r, Index t0,
                                  PartitionScheme scheme, std::uint64_t partition_seed) {
    const Index K = static_cast<Index>(targets.size());
    if (K < 1) throw std::invalid_argument("golfing_certificate: no channels");
    if (static_cast<Index>(subspaces.mats.size()) != K)
        throw std::invalid_argument("golfing_certificate: channel count mismatch");
    for (const CMat& X : targets) require_data_shape(X, shape.s, shape.n, "golfing_certificate");
    for (const CMat& B : subspaces.mats)
        if (B.rows() != shape.n || B.cols() != shape.s)
            throw std::invalid_argument("golfing_certificate: subspace shape mismatch");

    const double mu0 = empirical_mu0(subspaces);
    if (t0 < 0) t0 = default_t0(K, r, shape.s, mu0);

    std::vector<TangentSpace> T(K);
    std::vector<CMat> UV(K);
    for (Index k = 0; k < K; ++k) {
        T[k] = tangent_space(targets[k], r, shape);
        UV[k] = T[k].U * T[k].V.adjoint();
    }

    const Index n = shape.n;
    std::vector<CMat> Y(K, CMat::Zero(shape.lifted_rows(), shape.lifted_cols()));
    std::vector<CMat> E = UV;  // E_k = U_kV_kᴴ − P_{T_k}(Y_k); Y starts at 0
    CVec lambda_hat = CVec::Zero(n);

    GolfingResult out;
    out.report.t0 = t0;
    out.report.mu0 = mu0;
    out.report.cond_F_history = RMat::Zero(t0, K);
    double recursion_err = 0.0;

    if (t0 > 0) {
        const auto parts = make_partitions(n, t0, scheme, partition_seed);
        std::vector<CMat> GE(K), GGE(K), gal(K);
        for (Index t = 0; t < t0; ++t) {
            const std::vector<Index>& omega = parts[t];
            const double factor = static_cast<double>(n) / static_cast<double>(omega.size());
            for (Index k = 0; k < K; ++k) {
                GE[k] = normalized_lift_adjoint(E[k], shape);
                GGE[k] = normalized_lift(GE[k], shape);
            }
            CVec lam = CVec::Zero(static_cast<Index>(omega.size()));
            for (Index k = 0; k < K; ++k)
                lam += apply_channel_subset(subspaces.mats[k], GE[k], omega);
            for (Index k = 0; k < K; ++k) {
                gal[k] = normalized_lift(
                    adjoint_channel_subset(subspaces.mats[k], lam, omega), shape);
                Y[k] += factor * gal[k] + (E[k] - GGE[k]);
            }
            for (std::size_t i = 0; i < omega.size(); ++i)
                lambda_hat(omega[i]) += factor * lam(static_cast<Index>(i));
            for (Index k = 0; k < K; ++k) {
                const CMat E_recursive = tangent_project(T[k], GGE[k] - factor * gal[k]);
                E[k] = UV[k] - tangent_project(T[k], Y[k]);
                recursion_err = std::max(recursion_err, (E[k] - E_recursive).norm());
                out.report.cond_F_history(t, k) = E[k].norm();
            }
        }
    }

    CertificateReport& rep = out.report;
    rep.cond_F = RVec(K);
    rep.cond_op = RVec(K);
    double range_sq = 0.0, shadow_sq = 0.0;
    for (Index k = 0; k < K; ++k) {
        rep.cond_F(k) = E[k].norm();
        rep.cond_op(k) = spectral_norm(Y[k] - tangent_project(T[k], Y[k]));
        const CMat shadow = normalized_lift_adjoint(Y[k], shape);
        range_sq += (shadow - measurement_adjoint(subspaces.mats[k], lambda_hat)).squaredNorm();
        shadow_sq += shadow.squaredNorm();
    }
    rep.range_residual = std::sqrt(range_sq);
    rep.recursion_consistency = recursion_err;
    rep.cond_F_threshold = 1.0 / (48.0 * static_cast<double>(K) *
                                  static_cast<double>(shape.s) * mu0);
    rep.cross_threshold = 1.0 / (8.0 * static_cast<double>(K));
    rep.cond_F_ok = (rep.cond_F.array() <= rep.cond_F_threshold).all();
    rep.cond_op_ok = (rep.cond_op.array() <= 0.5).all();
    rep.range_ok = rep.range_residual <= 1e-8 * std::max(1.0, std::sqrt(shadow_sq));
    out.certificates = std::move(Y);
    return out;
}

}  // namespace mvhl
