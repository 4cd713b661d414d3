#pragma once

#include <vector>

#include "mvhl/lifting.hpp"
#include "mvhl/measurement.hpp"
#include "mvhl/types.hpp"

namespace mvhl {

// Knobs for the ADMM solve of  min Σ_k ‖H(X_k)‖_*  s.t.  Σ_k A_k(X_k) = y
// (equality constraint replaced by ‖Σ_k A_k(X_k) − y‖₂ ≤ noise_delta when
// noise_delta > 0).  Tolerances are relative; see solve_mvhl for the scale.
struct SolverConfig {
    double rho = 1.0;              // augmented-Lagrangian penalty (> 0)
    int max_iter = 5000;           // iteration budget (≥ 1)
    double tol_primal = 1e-8;      // ‖H(X_k) − Z_k‖_F threshold, relative
    double tol_dual = 1e-8;        // ρ‖H(X_k − X_k_prev)‖_F threshold, relative
    double tol_feas = 1e-8;        // measurement residual threshold, relative to ‖y‖₂
    double noise_delta = 0.0;      // data-fit ball radius; 0 = exact equality
    double over_relaxation = 1.6;  // α ∈ [1, 1.9]
    bool adaptive_rho = true;      // residual balancing (×2 when ratio exceeds 10)

    void validate() const;
};

struct ResidualTriple {
    double primal;  // max_k ‖H(X_k) − Z_k‖_F
    double dual;    // ρ · max_k ‖H(X_k − X_k_prev)‖_F
    double feas;    // ‖Σ_k A_k(X_k) − y‖₂
};

struct SolverResult {
    std::vector<CMat> estimates;                  // per-channel s×n data matrices
    double objective = 0.0;                       // Σ_k ‖H(X_k)‖_* at the final iterate
    double feasibility = 0.0;                     // ‖Σ_k A_k(X_k) − y‖₂ at the final iterate
    int iterations = 0;
    bool converged = false;
    std::vector<ResidualTriple> residual_history;  // one triple per iteration
};

// Sum of singular values.
double nuclear_norm(const CMat& M);

// Singular value thresholding: W = UΣVᴴ ↦ U·max(Σ−θ,0)·Vᴴ, the proximal map
// of θ‖·‖_*.  Throws std::runtime_error on SVD breakdown.
CMat svt(const CMat& W, double theta);

// Minimizer of Σ_k ‖x_k − c_k‖² per measurement column subject to the exact
// constraint Σ_k b_{k,j}ᴴ x_{k,j} = y[j].  `centers` holds the per-channel
// unconstrained minimizers C_k = D⁻²H*(M_k); the lift weights cancel inside
// each column, so the projection is plain Euclidean in the stacked channel
// space.  Throws if some column has all-zero sensing vectors but y[j] ≠ 0.
std::vector<CMat> x_update(const std::vector<CMat>& centers,
                           const SubspaceEnsemble& subspaces, const CVec& y);

// Ball-constrained variant: minimizes Σ_k Σ_j w_j‖x_{k,j} − c_{k,j}‖² subject
// to ‖Σ_k A_k(X_k) − y‖₂ ≤ delta.  The per-column residual targets solve a
// weighted least-norm problem over the residual ball, found by bisection on
// the Lagrange multiplier; the lift weights no longer cancel and enter
// through w.
std::vector<CMat> x_update_ball(const std::vector<CMat>& centers,
                                const SubspaceEnsemble& subspaces, const CVec& y,
                                const RVec& weights, double delta);

// ADMM on the splitting Z_k = H(X_k):
//   (i)  Z-step: Z_k ← svt(H(X_k) + Λ_k/ρ, 1/ρ)
//   (ii) X-step: x_update with M_k = Ẑ_k − Λ_k/ρ, Ẑ = αZ_k + (1−α)H(X_k_prev)
//   (iii) dual ascent: Λ_k += ρ(H(X_k) − Ẑ_k)
// Converges when primal ≤ tol_primal·scale, dual ≤ tol_dual·scale and the
// measurement residual is within tol_feas·‖y‖₂ of the constraint set, with
// scale = max(‖y‖₂, max_k ‖Z_k‖_F, 1).  Deterministic; exhausting max_iter
// returns the last iterate with converged = false; a non-finite iterate
// throws std::runtime_error.
SolverResult solve_mvhl(const SubspaceEnsemble& subspaces, const CVec& y,
                        const Lift& lift, const SolverConfig& config = {});

// Convenience overload for the plain vectorized Hankel lift.
SolverResult solve_mvhl(const SubspaceEnsemble& subspaces, const CVec& y,
                        const LiftShape& shape, const SolverConfig& config = {});

// Ball-constrained solve; requires config.noise_delta > 0.
SolverResult solve_mvhl_noisy(const SubspaceEnsemble& subspaces, const CVec& y,
                              const Lift& lift, const SolverConfig& config);

}  // namespace mvhl
