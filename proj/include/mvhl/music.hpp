#pragma once

#include <vector>

#include "mvhl/lifting.hpp"
#include "mvhl/types.hpp"

namespace mvhl {

// MUSIC pseudospectrum sampled on a uniform grid over [0,1).
struct Pseudospectrum {
    RVec grid;    // strictly increasing, grid(i) = i / grid_size
    RVec values;  // finite, nonnegative; large near true parameters
};

// 2D pseudospectrum on a (delay, Doppler) product grid.
struct Pseudospectrum2D {
    RVec tau_grid;  // delays, strictly increasing in [0,1)
    RVec nu_grid;   // Dopplers, strictly increasing in [0,1)
    RMat values;    // nu_grid.size() × tau_grid.size(); values(i,j) at (nu_i, tau_j)
};

struct EstimatedSources {
    RVec taus;         // length r, each in [0,1), sorted ascending
    RVec peak_values;  // pseudospectrum heights at the estimates
};

struct EstimatedSources2D {
    RVec taus;  // length r, paired with nus, sorted by (tau, nu)
    RVec nus;
    RVec peak_values;
};

struct MatchReport {
    RVec errors;             // per-source wrap-around distance after optimal assignment
    std::vector<Index> assignment;  // assignment[i] = estimate index paired with truth i
    double max_error = 0.0;
    bool matched = false;    // max_error ≤ tol
};

// Top-r right singular vectors of an already-lifted matrix (columns are an
// orthonormal basis of the estimated signal row space).  Throws when the
// numerical rank falls below r.
CMat signal_subspace(const CMat& lifted, Index r);

// Spatial-smoothing MUSIC: lifts X, extracts the r-dimensional signal row
// space V_r and evaluates 1/‖(I − V_rV_rᴴ)v(τ)‖² on the grid, where
// v(τ) = conj(a(τ))/√n2.  The conjugation matches the row space of the lifted
// matrix, which is spanned by transposed steering vectors.
Pseudospectrum smoothing_music(const CMat& X, Index r, Index grid_size,
                               const LiftShape& shape);
Pseudospectrum smoothing_music(const CMat& X, Index r, Index grid_size = 4096);

// 2D MUSIC on the two-level lift; v(τ,ν) = conj(a_ν ⊗ a_τ)/√(N2·P2) with the
// delay index fastest, matching the lifted column order.
Pseudospectrum2D music_2d(const CMat& X, Index r, const LiftShape2D& shape,
                          Index grid_tau = 256, Index grid_nu = 256);

// The r largest strict local maxima (cyclic neighborhoods), sorted by
// location.  Throws when fewer than r exist.
EstimatedSources peak_pick(const Pseudospectrum& spec, Index r);
EstimatedSources2D peak_pick_2d(const Pseudospectrum2D& spec, Index r);

// Wrap-around distance on the unit circle: min(|a−b|, 1−|a−b|).
double wrap_distance(double a, double b);

// Optimal assignment (exhaustive, r ≤ 8) minimizing the largest wrap-around
// error; matched when that error is ≤ tol.
MatchReport match_sources(const RVec& est, const RVec& truth, double tol);
// 2D variant; per-pair distance is the larger of the two coordinate errors.
MatchReport match_sources_2d(const RVec& est_tau, const RVec& est_nu,
                             const RVec& truth_tau, const RVec& truth_nu, double tol);

// Grid search + golden-section refinement of each peak on the continuous
// pseudospectrum.
EstimatedSources estimate_taus(const CMat& X, Index r, Index grid_size = 4096);
EstimatedSources estimate_taus(const CMat& X, Index r, Index grid_size,
                               const LiftShape& shape);
EstimatedSources2D estimate_delay_doppler(const CMat& X, Index r,
                                          const LiftShape2D& shape,
                                          Index grid_tau = 256, Index grid_nu = 256);

}  // namespace mvhl
