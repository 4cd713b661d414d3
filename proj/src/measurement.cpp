#include "mvhl/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mvhl {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string to_string(SubspaceModel model) {
    switch (model) {
        case SubspaceModel::DftRows: return "dft-rows";
        case SubspaceModel::Rademacher: return "rademacher";
        case SubspaceModel::FourierSteering: return "fourier-steering";
    }
    throw std::invalid_argument("to_string: unknown subspace model");
}

SubspaceModel subspace_model_from_string(const std::string& tag) {
    if (tag == "dft-rows") return SubspaceModel::DftRows;
    if (tag == "rademacher") return SubspaceModel::Rademacher;
    if (tag == "fourier-steering") return SubspaceModel::FourierSteering;
    throw std::invalid_argument("unknown subspace model tag: " + tag);
}

CVec steering_vector(double tau, Index n) {
    if (n < 1) throw std::invalid_argument("steering_vector: n must be positive");
    CVec a(n);
    for (Index j = 0; j < n; ++j) a(j) = std::polar(1.0, -kTwoPi * static_cast<double>(j) * tau);
    return a;
}

CVec steering_vector_2d(double tau, double nu, Index N, Index P) {
    if (N < 1 || P < 1) throw std::invalid_argument("steering_vector_2d: N, P must be positive");
    CVec a(N * P);
    for (Index p = 0; p < P; ++p)
        for (Index n = 0; n < N; ++n)
            a(p * N + n) = std::polar(1.0, -kTwoPi * (static_cast<double>(n) * tau +
                                                       static_cast<double>(p) * nu));
    return a;
}

Complex amplitude_from(double c, double psi) {
    return std::polar(1.0 + std::pow(10.0, c), -psi);
}

CVec fourier_steering_row(double f, Index s) {
    CVec row(s);
    for (Index t = 0; t < s; ++t) row(t) = std::polar(1.0, kTwoPi * static_cast<double>(t) * f);
    return row;
}

namespace {

double min_wrap_gap(const RVec& taus) {
    double best = 1.0;
    for (Index a = 0; a < taus.size(); ++a)
        for (Index b = a + 1; b < taus.size(); ++b) {
            const double d = std::abs(taus(a) - taus(b));
            best = std::min(best, std::min(d, 1.0 - d));
        }
    return best;
}

RVec draw_taus(Index r, double min_separation, Rng& rng) {
    constexpr int kMaxAttempts = 100000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        RVec taus(r);
        for (Index l = 0; l < r; ++l) taus(l) = rng.uniform();
        if (min_separation <= 0.0 || r < 2 || min_wrap_gap(taus) >= min_separation) return taus;
    }
    throw std::runtime_error("gen_sources: separation rejection sampling did not terminate");
}

CVec draw_amps(Index r, Rng& rng) {
    CVec amps(r);
    for (Index l = 0; l < r; ++l) {
        const double c = rng.uniform();
        const double psi = rng.uniform(0.0, kTwoPi);
        amps(l) = amplitude_from(c, psi);
    }
    return amps;
}

CVec draw_unit_coeff(Index s, Rng& rng) {
    CVec h(s);
    for (Index t = 0; t < s; ++t) h(t) = rng.complex_gaussian();
    const double norm = h.norm();
    if (norm == 0.0) { h.setZero(); h(0) = 1.0; return h; }
    return h / norm;
}

}  // namespace

SourceEnsemble gen_sources(Index K, Index r, Index s, Rng& rng, double min_separation) {
    if (K < 1 || r < 1 || s < 1)
        throw std::invalid_argument("gen_sources: K, r, s must be positive");
    if (min_separation > 0.0 && static_cast<double>(r) * min_separation >= 1.0)
        throw std::invalid_argument("gen_sources: infeasible separation (r * sep >= 1)");
    SourceEnsemble out;
    out.channels.reserve(K);
    for (Index k = 0; k < K; ++k) {
        SourceChannel ch;
        ch.taus = draw_taus(r, min_separation, rng);
        ch.amps = draw_amps(r, rng);
        ch.coeff = draw_unit_coeff(s, rng);
        out.channels.push_back(std::move(ch));
    }
    return out;
}

SourceEnsemble2D gen_sources_2d(Index K, Index r, Index s, Rng& rng) {
    if (K < 1 || r < 1 || s < 1)
        throw std::invalid_argument("gen_sources_2d: K, r, s must be positive");
    SourceEnsemble2D out;
    out.channels.reserve(K);
    for (Index k = 0; k < K; ++k) {
        SourceChannel2D ch;
        ch.taus = RVec(r);
        ch.nus = RVec(r);
        for (Index l = 0; l < r; ++l) ch.taus(l) = rng.uniform();
        for (Index l = 0; l < r; ++l) ch.nus(l) = rng.uniform();
        ch.amps = draw_amps(r, rng);
        ch.coeff = draw_unit_coeff(s, rng);
        out.channels.push_back(std::move(ch));
    }
    return out;
}

CMat gen_subspace(Index n, Index s, SubspaceModel model, Rng& rng) {
    if (n < 1 || s < 1) throw std::invalid_argument("gen_subspace: n, s must be positive");
    CMat B(n, s);
    switch (model) {
        case SubspaceModel::DftRows: {
            if (s + 1 > n) throw std::invalid_argument("gen_subspace: dft-rows needs s < n");
            // Row j is an independent, uniformly drawn row of the n x s
            // restriction of the n x n DFT matrix to columns 1..s.  The
            // constant column 0 is excluded: without per-row phase diversity
            // the channels would be mutually indistinguishable at s = 1.
            for (Index j = 0; j < n; ++j) {
                const auto omega = static_cast<double>(rng.uniform_index(n));
                for (Index t = 0; t < s; ++t)
                    B(j, t) = std::polar(1.0, -kTwoPi * omega * static_cast<double>(t + 1) /
                                                  static_cast<double>(n));
            }
            break;
        }
        case SubspaceModel::Rademacher:
            for (Index j = 0; j < n; ++j)
                for (Index t = 0; t < s; ++t) B(j, t) = (rng.raw() & 1u) ? 1.0 : -1.0;
            break;
        case SubspaceModel::FourierSteering:
            for (Index j = 0; j < n; ++j) B.row(j) = fourier_steering_row(rng.uniform(), s).transpose();
            break;
    }
    return B;
}

SubspaceEnsemble gen_subspaces(Index K, Index n, Index s, SubspaceModel model, Rng& rng) {
    SubspaceEnsemble out;
    out.model = model;
    out.mats.reserve(K);
    for (Index k = 0; k < K; ++k) out.mats.push_back(gen_subspace(n, s, model, rng));
    return out;
}

double empirical_mu0(const SubspaceEnsemble& subspaces) {
    double mu0 = 0.0;
    for (const CMat& B : subspaces.mats) mu0 = std::max(mu0, B.cwiseAbs2().maxCoeff());
    return mu0;
}

std::vector<CMat> synthesize_target(const SourceEnsemble& sources, Index n) {
    std::vector<CMat> targets;
    targets.reserve(sources.channels.size());
    for (const SourceChannel& ch : sources.channels) {
        CMat X = CMat::Zero(ch.coeff.size(), n);
        for (Index l = 0; l < ch.taus.size(); ++l)
            X += ch.amps(l) * ch.coeff * steering_vector(ch.taus(l), n).transpose();
        targets.push_back(std::move(X));
    }
    return targets;
}

std::vector<CMat> synthesize_target_2d(const SourceEnsemble2D& sources, Index N, Index P) {
    std::vector<CMat> targets;
    targets.reserve(sources.channels.size());
    for (const SourceChannel2D& ch : sources.channels) {
        CMat X = CMat::Zero(ch.coeff.size(), N * P);
        for (Index l = 0; l < ch.taus.size(); ++l)
            X += ch.amps(l) * ch.coeff *
                 steering_vector_2d(ch.taus(l), ch.nus(l), N, P).transpose();
        targets.push_back(std::move(X));
    }
    return targets;
}

CVec forward(const SubspaceEnsemble& subspaces, const std::vector<CMat>& targets) {
    if (subspaces.mats.size() != targets.size())
        throw std::invalid_argument("forward: channel count mismatch");
    const Index n = subspaces.samples();
    CVec y = CVec::Zero(n);
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const CMat& B = subspaces.mats[k];
        const CMat& X = targets[k];
        if (X.cols() != n || X.rows() != B.cols())
            throw std::invalid_argument("forward: target shape mismatch");
        for (Index j = 0; j < n; ++j) y(j) += B.row(j).dot(X.col(j));
    }
    return y;
}

CMat measurement_adjoint(const CMat& subspace, const CVec& lambda) {
    if (lambda.size() != subspace.rows())
        throw std::invalid_argument("measurement_adjoint: length mismatch");
    CMat X(subspace.cols(), subspace.rows());
    for (Index j = 0; j < subspace.rows(); ++j) X.col(j) = lambda(j) * subspace.row(j).transpose();
    return X;
}

CVec add_noise(const CVec& y, double eps, Rng& rng) {
    if (eps < 0.0) throw std::invalid_argument("add_noise: eps must be nonnegative");
    if (eps == 0.0) return y;
    const double ynorm = y.norm();
    if (ynorm == 0.0) throw std::invalid_argument("add_noise: cannot scale noise to a zero signal");
    CVec w(y.size());
    for (Index j = 0; j < y.size(); ++j) w(j) = rng.complex_gaussian();
    return y + (eps * ynorm / w.norm()) * w;
}

double relative_error(const std::vector<CMat>& estimates, const std::vector<CMat>& truth) {
    if (estimates.size() != truth.size())
        throw std::invalid_argument("relative_error: channel count mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        num += (truth[k] - estimates[k]).squaredNorm();
        den += truth[k].squaredNorm();
    }
    if (den == 0.0) throw std::invalid_argument("relative_error: all-zero ground truth");
    return std::sqrt(num / den);
}

}  // namespace mvhl
