#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mvhl/lifting.hpp"
#include "mvhl/measurement.hpp"
#include "mvhl/types.hpp"

namespace mvhl {

// Tangent space of the nuclear-norm ball at a rank-r lifted matrix UΣVᴴ:
// T = {UAᴴ + BVᴴ}.  U is (s·n1)×r, V is n2×r, both with orthonormal columns.
struct TangentSpace {
    CMat U;
    CMat V;
};

// Left-hand sides of the deterministic optimality conditions, plus the
// bookkeeping needed to judge them.  All norms are ≥ 0 and finite; the _ok
// flags compare against the thresholds recorded alongside.
struct CertificateReport {
    RVec concentration;          // ‖P_T G A*A G* P_T − P_T GG* P_T‖ per channel
    double cross_mu = 0.0;       // max_{i≠j} ‖P_{T_i} G A_i*A_j G* P_{T_j}‖
    RVec cond_F;                 // ‖U_kV_kᴴ − P_{T_k}(Y_k)‖_F per channel
    RVec cond_op;                // ‖P_{T_k}^⊥(Y_k)‖ per channel
    double range_residual = 0.0;          // distance of (G*(Y_k))_k from A*(λ̂)
    double recursion_consistency = 0.0;   // two-path residual agreement (≈ 0)
    Index t0 = 0;
    double mu0 = 1.0;
    double cond_F_threshold = 0.0;  // 1/(48Ksμ0)
    double cross_threshold = 0.0;   // 1/(8K)
    bool concentration_ok = false;  // all ≤ 1/4
    bool cross_ok = false;
    bool cond_F_ok = false;
    bool cond_op_ok = false;        // all ≤ 1/2
    bool range_ok = false;
    RMat cond_F_history;            // t0 × K; ‖E_{k,t}‖_F after each golfing step
};

enum class PartitionScheme { Contiguous, Random };

struct GolfingResult {
    std::vector<CMat> certificates;  // Y_k, (s·n1)×n2 per channel
    CertificateReport report;
};

using LinearMap = std::function<CMat(const CMat&)>;

// Tangent space of H(X) from its top-r singular pairs; throws on numerical
// rank below r.
TangentSpace tangent_space(const CMat& X, Index r, const LiftShape& shape);
TangentSpace tangent_space_from_lifted(const CMat& lifted, Index r);

// P_T(M) = UUᴴM + MVVᴴ − UUᴴMVVᴴ; orthogonal projection (idempotent,
// self-adjoint).
CMat tangent_project(const TangentSpace& T, const CMat& M);

// Smallest μ₁ for which the block/row energy bounds hold:
// n·max(max_ℓ ‖U_ℓ‖_F², max_j ‖e_jᵀV‖²)/r with U_ℓ the ℓ-th s-row block.
double incoherence_mu1(const CMat& X, Index r, const LiftShape& shape);

// Power-iteration spectral norm of a self-adjoint map on (rows×cols)
// matrices; fixed-seed random start, stops on relative Rayleigh change
// ≤ 1e-6 or after `iters` applications.  Throws on non-finite applications.
double op_norm_self_adjoint(const LinearMap& L, Index rows, Index cols, int iters = 200);
// Generic map: spectral norm via power iteration on L*∘L.
double op_norm(const LinearMap& L, const LinearMap& adjoint, Index rows, Index cols,
               int iters = 200);

// ‖P_{T_k} G A_k*A_k G* P_{T_k} − P_{T_k} G G* P_{T_k}‖ for channel k.
double check_concentration(const TangentSpace& T, const SubspaceEnsemble& subspaces,
                           Index k, const LiftShape& shape, int iters = 200);

// ‖P_{T_i} G A_i*A_j G* P_{T_j}‖ for a channel pair i ≠ j.
double check_cross_incoherence(const TangentSpace& Ti, const TangentSpace& Tj,
                               const SubspaceEnsemble& subspaces, Index i, Index j,
                               const LiftShape& shape, int iters = 200);

// Aggregate norms of the data-space shadow of a lifted matrix:
// ‖G*(M)‖_F and the largest column 2-norm of G*(M).
double g_fro_norm(const CMat& M, const LiftShape& shape);
double g_inf_norm(const CMat& M, const LiftShape& shape);

// Certificate depth ⌈log₂(48·K·r·s·μ₀)⌉ that drives the Frobenius condition
// below its threshold under the ideal geometric decay.
Index default_t0(Index K, Index r, Index s, double mu0);

// Golfing scheme: split the n measurement columns into t0 partitions Ω_t and
// iterate Y_k ← Y_k + (n/m_t)·G A*_{k,t}(λ) + (I − GG*)(E_k) with
// λ = Σ_j A_{j,t} G*(E_j) and E_k = U_kV_kᴴ − P_{T_k}(Y_k).  Reports the
// Frobenius and spectral certificate conditions, the per-step residual
// history, the range-membership residual of (G*(Y_k))_k against the
// accumulated multiplier, and the agreement between the recursive and
// from-scratch residual paths.  t0 < 0 selects default_t0; t0 must not
// exceed n (partitions would be empty).
//
// Partitions default to a seeded shuffle of the column indices: each group
// must sample anti-diagonal positions across the whole range for its sampled
// operator to contract the tangent-space residual, and contiguous bands
// (available as PartitionScheme::Contiguous) only touch their own band, which
// stalls the decay.
GolfingResult golfing_certificate(const std::vector<CMat>& targets,
                                  const SubspaceEnsemble& subspaces,
                                  const LiftShape& shape, Index r, Index t0 = -1,
                                  PartitionScheme scheme = PartitionScheme::Random,
                                  std::uint64_t partition_seed = 0);

}  // namespace mvhl
