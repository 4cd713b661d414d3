#pragma once

#include <string>
#include <vector>

#include "mvhl/rng.hpp"
#include "mvhl/types.hpp"

namespace mvhl {

/// Point-source ground truth for one channel: r locations on the unit torus,
/// r complex amplitudes, and a unit-norm coefficient vector in C^s.
struct SourceChannel {
    RVec taus;
    CVec amps;
    CVec coeff;
};

struct SourceEnsemble {
    std::vector<SourceChannel> channels;

    Index num_channels() const { return static_cast<Index>(channels.size()); }
    Index num_sources() const { return channels.empty() ? 0 : channels.front().taus.size(); }
    Index subspace_dim() const { return channels.empty() ? 0 : channels.front().coeff.size(); }
};

/// Per-channel (tau, nu) pairs for the two-level model.
struct SourceChannel2D {
    RVec taus;
    RVec nus;
    CVec amps;
    CVec coeff;
};

struct SourceEnsemble2D {
    std::vector<SourceChannel2D> channels;
};

enum class SubspaceModel { DftRows, Rademacher, FourierSteering };

std::string to_string(SubspaceModel model);
SubspaceModel subspace_model_from_string(const std::string& tag);

/// The K known n x s matrices whose rows define the measurement functionals.
struct SubspaceEnsemble {
    std::vector<CMat> mats;
    SubspaceModel model = SubspaceModel::DftRows;

    Index num_channels() const { return static_cast<Index>(mats.size()); }
    Index samples() const { return mats.empty() ? 0 : mats.front().rows(); }
    Index subspace_dim() const { return mats.empty() ? 0 : mats.front().cols(); }
};

/// a_tau with entries e^{-i 2 pi j tau}, j = 0..n-1.
CVec steering_vector(double tau, Index n);

/// Raster-ordered 2D steering vector with entries e^{-i 2 pi (n tau + p nu)}
/// at index i = p*N + n.
CVec steering_vector_2d(double tau, double nu, Index N, Index P);

/// Amplitude law used by the synthetic experiments: (1 + 10^c) e^{-i psi}.
Complex amplitude_from(double c, double psi);

/// One row of a Fourier-steering subspace matrix: [1, e^{2 pi i f}, ...,
/// e^{2 pi i (s-1) f}].
CVec fourier_steering_row(double f, Index s);

/// Draws K channels of sources: taus uniform on [0,1) (rejection-resampled
/// until all pairwise wrap-around gaps reach min_separation when it is > 0),
/// amplitudes via amplitude_from with c ~ U[0,1) and psi ~ U[0,2pi), and
/// coefficients standard complex Gaussian normalized to unit 2-norm.
/// Throws if r * min_separation >= 1 (no feasible placement).
SourceEnsemble gen_sources(Index K, Index r, Index s, Rng& rng, double min_separation = 0.0);

/// 2D analogue: independent (tau, nu) pairs uniform on [0,1)^2.
SourceEnsemble2D gen_sources_2d(Index K, Index r, Index s, Rng& rng);

/// Draws one n x s subspace matrix whose rows are i.i.d. from an isotropic,
/// unit-coherence population (E[b bᴴ] = I, |entries| <= 1):
///  - DftRows: each row is a uniformly chosen row of the n x n DFT matrix
///    restricted to columns 1..s (the constant column is excluded so that
///    every subspace dimension, including s = 1, carries per-row phase
///    diversity across channels). Requires s < n.
///  - Rademacher: i.i.d. +-1 entries.
///  - FourierSteering: row j = fourier_steering_row(f_j, s), f_j ~ U[0,1).
CMat gen_subspace(Index n, Index s, SubspaceModel model, Rng& rng);

SubspaceEnsemble gen_subspaces(Index K, Index n, Index s, SubspaceModel model, Rng& rng);

/// Largest squared entry modulus over all rows of all channels.
double empirical_mu0(const SubspaceEnsemble& subspaces);

/// X_k = sum_l d_{k,l} h_k a_{tau_{k,l}}^T, one s x n matrix per channel.
std::vector<CMat> synthesize_target(const SourceEnsemble& sources, Index n);

/// Two-level targets, s x (N*P), columns raster ordered.
std::vector<CMat> synthesize_target_2d(const SourceEnsemble2D& sources, Index N, Index P);

/// y[j] = sum_k b_{k,j}^H x_{k,j}.
CVec forward(const SubspaceEnsemble& subspaces, const std::vector<CMat>& targets);

/// Adjoint of one channel's measurement map: column j is lambda[j] * b_{k,j}.
CMat measurement_adjoint(const CMat& subspace, const CVec& lambda);

/// Adds e = eps * ||y|| * w / ||w|| with w standard complex Gaussian, so the
/// perturbation norm is exactly eps * ||y||. Throws if y = 0 and eps > 0.
CVec add_noise(const CVec& y, double eps, Rng& rng);

/// sqrt( sum_k ||truth_k - est_k||_F^2 / sum_k ||truth_k||_F^2 ).
double relative_error(const std::vector<CMat>& estimates, const std::vector<CMat>& truth);

}  // namespace mvhl
