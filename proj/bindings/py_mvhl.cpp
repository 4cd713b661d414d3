#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mvhl/instance_io.hpp"
#include "mvhl/lifting.hpp"
#include "mvhl/measurement.hpp"
#include "mvhl/music.hpp"
#include "mvhl/rng.hpp"
#include "mvhl/solver.hpp"

namespace py = pybind11;
using namespace mvhl;

namespace {

LiftShape make_shape(Index s, Index n, Index n1) {
    return n1 > 0 ? LiftShape(s, n, n1) : LiftShape::balanced(s, n);
}

SolverConfig make_config(double rho, int max_iter, double tol_primal, double tol_dual,
                         double tol_feas, double noise_delta, double over_relaxation,
                         bool adaptive_rho) {
    SolverConfig config;
    config.rho = rho;
    config.max_iter = max_iter;
    config.tol_primal = tol_primal;
    config.tol_dual = tol_dual;
    config.tol_feas = tol_feas;
    config.noise_delta = noise_delta;
    config.over_relaxation = over_relaxation;
    config.adaptive_rho = adaptive_rho;
    return config;
}

SubspaceEnsemble make_ensemble(const std::vector<CMat>& subspaces, const std::string& model) {
    SubspaceEnsemble ensemble;
    ensemble.mats = subspaces;
    ensemble.model = subspace_model_from_string(model);
    return ensemble;
}

py::dict result_to_dict(const SolverResult& res) {
    py::list estimates;
    for (const CMat& X : res.estimates) estimates.append(X);
    RMat history(static_cast<Index>(res.residual_history.size()), 3);
    for (Index i = 0; i < history.rows(); ++i) {
        const auto& tr = res.residual_history[static_cast<std::size_t>(i)];
        history(i, 0) = tr.primal;
        history(i, 1) = tr.dual;
        history(i, 2) = tr.feas;
    }
    py::dict out;
    out["estimates"] = estimates;
    out["objective"] = res.objective;
    out["feasibility"] = res.feasibility;
    out["iterations"] = res.iterations;
    out["converged"] = res.converged;
    out["residuals"] = history;
    return out;
}

}  // namespace

PYBIND11_MODULE(_mvhl, m) {
    m.doc() = "blind demixing and super-resolution of point sources via the multiple "
              "vectorized Hankel lift";
    m.attr("__version__") = "0.1.0";

    m.def(
        "hankel_weights",
        [](Index s, Index n, Index n1) { return hankel_weights(make_shape(s, n, n1)); },
        py::arg("s"), py::arg("n"), py::arg("n1") = -1,
        "anti-diagonal multiplicities of the (s*n1) x n2 lift");
    m.def(
        "hankel_lift",
        [](const CMat& X, Index n1) {
            return hankel_lift(X, make_shape(X.rows(), X.cols(), n1));
        },
        py::arg("X"), py::arg("n1") = -1, "block-Hankel lift of an s x n data matrix");
    m.def(
        "hankel_adjoint",
        [](const CMat& W, Index s, Index n, Index n1) {
            return hankel_adjoint(W, make_shape(s, n, n1));
        },
        py::arg("W"), py::arg("s"), py::arg("n"), py::arg("n1") = -1,
        "adjoint of the block-Hankel lift");
    m.def(
        "normalized_lift",
        [](const CMat& X, Index n1) {
            return normalized_lift(X, make_shape(X.rows(), X.cols(), n1));
        },
        py::arg("X"), py::arg("n1") = -1, "isometric (weight-normalized) lift");
    m.def(
        "normalized_lift_adjoint",
        [](const CMat& W, Index s, Index n, Index n1) {
            return normalized_lift_adjoint(W, make_shape(s, n, n1));
        },
        py::arg("W"), py::arg("s"), py::arg("n"), py::arg("n1") = -1,
        "left inverse of the isometric lift");

    m.def(
        "forward",
        [](const std::vector<CMat>& subspaces, const std::vector<CMat>& targets) {
            SubspaceEnsemble ensemble;
            ensemble.mats = subspaces;
            return forward(ensemble, targets);
        },
        py::arg("subspaces"), py::arg("targets"),
        "y[j] = sum_k b_{k,j}^H x_{k,j} for the channel matrices");
    m.def("steering_vector", &steering_vector, py::arg("tau"), py::arg("n"),
          "a_tau with entries e^{-i 2 pi j tau}");
    m.def("relative_error", &relative_error, py::arg("estimates"), py::arg("truth"),
          "aggregate relative Frobenius error across channels");

    m.def(
        "generate_instance",
        [](Index n, Index K, Index s, Index r, std::uint64_t seed, const std::string& model,
           double min_separation) {
            Rng rng(seed);
            const SourceEnsemble sources = gen_sources(K, r, s, rng, min_separation);
            const SubspaceEnsemble subspaces =
                gen_subspaces(K, n, s, subspace_model_from_string(model), rng);
            const std::vector<CMat> targets = synthesize_target(sources, n);
            py::list taus, subs, targs;
            for (const auto& ch : sources.channels) taus.append(ch.taus);
            for (const auto& B : subspaces.mats) subs.append(B);
            for (const auto& X : targets) targs.append(X);
            py::dict out;
            out["subspaces"] = subs;
            out["targets"] = targs;
            out["taus"] = taus;
            out["y"] = forward(subspaces, targets);
            return out;
        },
        py::arg("n"), py::arg("K"), py::arg("s"), py::arg("r"), py::arg("seed") = 1,
        py::arg("model") = "dft-rows", py::arg("min_separation") = 0.0,
        "draw a seeded synthetic instance (subspaces, targets, y, taus)");

    m.def(
        "solve",
        [](const std::vector<CMat>& subspaces, const CVec& y, const std::string& model,
           double rho, int max_iter, double tol_primal, double tol_dual, double tol_feas,
           double noise_delta, double over_relaxation, bool adaptive_rho) {
            const SubspaceEnsemble ensemble = make_ensemble(subspaces, model);
            const SolverConfig config =
                make_config(rho, max_iter, tol_primal, tol_dual, tol_feas, noise_delta,
                            over_relaxation, adaptive_rho);
            const Index s = ensemble.subspace_dim();
            const Index n = ensemble.samples();
            const LiftShape shape = LiftShape::balanced(s, n);
            SolverResult res;
            if (config.noise_delta > 0.0) {
                const VectorHankelLift lift(shape);
                res = solve_mvhl_noisy(ensemble, y, lift, config);
            } else {
                res = solve_mvhl(ensemble, y, shape, config);
            }
            return result_to_dict(res);
        },
        py::arg("subspaces"), py::arg("y"), py::arg("model") = "dft-rows",
        py::arg("rho") = 1.0, py::arg("max_iter") = 5000, py::arg("tol_primal") = 1e-8,
        py::arg("tol_dual") = 1e-8, py::arg("tol_feas") = 1e-8, py::arg("noise_delta") = 0.0,
        py::arg("over_relaxation") = 1.6, py::arg("adaptive_rho") = true,
        "ADMM solve of the lifted nuclear-norm program; returns estimates and diagnostics");

    m.def(
        "estimate_taus",
        [](const CMat& X, Index r, Index grid_size) {
            const EstimatedSources est = estimate_taus(X, r, grid_size);
            return py::make_tuple(est.taus, est.peak_values);
        },
        py::arg("X"), py::arg("r"), py::arg("grid_size") = 4096,
        "MUSIC delay estimates (locations, pseudospectrum peaks)");
    m.def(
        "match_sources",
        [](const RVec& est, const RVec& truth, double tol) {
            const MatchReport rep = match_sources(est, truth, tol);
            py::dict out;
            out["errors"] = rep.errors;
            out["assignment"] = rep.assignment;
            out["max_error"] = rep.max_error;
            out["matched"] = rep.matched;
            return out;
        },
        py::arg("est"), py::arg("truth"), py::arg("tol"),
        "optimal wrap-around assignment of estimates to true locations");
    m.def("wrap_distance", &wrap_distance, py::arg("a"), py::arg("b"),
          "distance on the unit circle");

    m.def(
        "read_instance",
        [](const std::string& path) {
            const Instance inst = read_instance(path);
            py::list subs, truth;
            for (const auto& B : inst.subspaces.mats) subs.append(B);
            for (const auto& X : inst.truth) truth.append(X);
            py::dict out;
            out["s"] = inst.s;
            out["n"] = inst.n;
            out["model"] = to_string(inst.subspaces.model);
            out["subspaces"] = subs;
            out["y"] = inst.y;
            out["truth"] = truth;
            return out;
        },
        py::arg("path"), "load a plain-text instance file");
    m.def(
        "write_instance",
        [](const std::string& path, Index s, Index n, const std::vector<CMat>& subspaces,
           const CVec& y, const std::vector<CMat>& truth, const std::string& model) {
            Instance inst;
            inst.s = s;
            inst.n = n;
            inst.subspaces = make_ensemble(subspaces, model);
            inst.y = y;
            inst.truth = truth;
            write_instance(path, inst);
        },
        py::arg("path"), py::arg("s"), py::arg("n"), py::arg("subspaces"), py::arg("y"),
        py::arg("truth") = std::vector<CMat>{}, py::arg("model") = "dft-rows",
        "write a plain-text instance file");
}
