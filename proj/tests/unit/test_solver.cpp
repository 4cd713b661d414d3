#include <Eigen/SVD>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mvhl/measurement.hpp"
#include "mvhl/rng.hpp"
#include "mvhl/solver.hpp"
#include "test_util.hpp"

using namespace mvhl;
using testutil::random_cmat;
using testutil::random_cvec;

namespace {

double prox_objective(const CMat& Z, const CMat& W, double theta) {
    return theta * nuclear_norm(Z) + 0.5 * (Z - W).squaredNorm();
}

}  // namespace

TEST_CASE("solver: svt") {
    SUBCASE("theta = 0 is the identity") {
        Rng rng(1);
        const CMat W = random_cmat(5, 4, rng);
        CHECK((svt(W, 0.0) - W).norm() <= 1e-12 * W.norm());
    }
    SUBCASE("diagonal thresholding") {
        CMat W = CMat::Zero(2, 2);
        W(0, 0) = 3.0;
        W(1, 1) = 1.0;
        const CMat Z = svt(W, 2.0);
        CHECK(std::abs(Z(0, 0) - Complex(1, 0)) <= 1e-12);
        CHECK(std::abs(Z(1, 1)) <= 1e-12);
        CHECK(std::abs(Z(0, 1)) <= 1e-12);
        CHECK(std::abs(Z(1, 0)) <= 1e-12);
    }
    SUBCASE("output minimizes the prox objective") {
        Rng rng(2);
        const CMat W = random_cmat(8, 6, rng);
        const double theta = 0.5;
        const CMat Z = svt(W, theta);
        const double best = prox_objective(Z, W, theta);
        for (int rep = 0; rep < 1000; ++rep) {
            const double scale = rep < 500 ? 0.01 : 1.0;  // local and global probes
            const CMat cand = Z + scale * random_cmat(8, 6, rng);
            CHECK(prox_objective(cand, W, theta) >= best - 1e-9);
        }
    }
    SUBCASE("negative threshold is rejected") {
        CHECK_THROWS_AS(svt(CMat::Zero(2, 2), -1.0), std::invalid_argument);
    }
}

TEST_CASE("solver: nuclear_norm matches the singular value sum") {
    Rng rng(3);
    const CMat M = random_cmat(6, 4, rng);
    const Eigen::JacobiSVD<CMat> svd(M);
    CHECK(nuclear_norm(M) == doctest::Approx(svd.singularValues().sum()).epsilon(1e-12));
}

TEST_CASE("solver: x_update") {
    SUBCASE("point constraint with one channel") {
        SubspaceEnsemble e;
        e.mats.push_back(CMat::Ones(1, 1));
        CVec y(1);
        y(0) = 2.0;
        const std::vector<CMat> X = x_update({CMat::Zero(1, 1)}, e, y);
        CHECK(std::abs(X[0](0, 0) - Complex(2, 0)) <= 1e-14);
    }
    SUBCASE("symmetric two-channel split") {
        SubspaceEnsemble e;
        e.mats.push_back(CMat::Ones(1, 1));
        e.mats.push_back(CMat::Ones(1, 1));
        CVec y(1);
        y(0) = 2.0;
        const std::vector<CMat> X = x_update({CMat::Zero(1, 1), CMat::Zero(1, 1)}, e, y);
        CHECK(std::abs(X[0](0, 0) - Complex(1, 0)) <= 1e-14);
        CHECK(std::abs(X[1](0, 0) - Complex(1, 0)) <= 1e-14);
    }
    SUBCASE("projection is feasible and optimal among feasible points") {
        Rng rng(4);
        const Index n = 7, s = 3, K = 2;
        SubspaceEnsemble e;
        for (Index k = 0; k < K; ++k) e.mats.push_back(random_cmat(n, s, rng));
        const CVec y = random_cvec(n, rng);
        const std::vector<CMat> centers = {random_cmat(s, n, rng), random_cmat(s, n, rng)};
        const std::vector<CMat> X = x_update(centers, e, y);

        CHECK((forward(e, X) - y).norm() <= 1e-12 * y.norm());

        double base = 0.0;
        for (Index k = 0; k < K; ++k) base += (X[k] - centers[k]).squaredNorm();
        for (int rep = 0; rep < 1000; ++rep) {
            // Feasible perturbations: project a random direction onto each
            // column's constraint tangent before adding it.
            std::vector<CMat> cand = X;
            std::vector<CMat> delta = {0.1 * random_cmat(s, n, rng),
                                       0.1 * random_cmat(s, n, rng)};
            for (Index j = 0; j < n; ++j) {
                Complex viol = 0.0;
                double norm2 = 0.0;
                for (Index k = 0; k < K; ++k) {
                    viol += e.mats[k].row(j).dot(delta[k].col(j));
                    norm2 += e.mats[k].row(j).squaredNorm();
                }
                for (Index k = 0; k < K; ++k)
                    delta[k].col(j) -= e.mats[k].row(j).transpose() * (viol / norm2);
            }
            double obj = 0.0;
            for (Index k = 0; k < K; ++k) {
                cand[k] += delta[k];
                obj += (cand[k] - centers[k]).squaredNorm();
            }
            CHECK((forward(e, cand) - y).norm() <= 1e-10 * y.norm());
            CHECK(obj >= base - 1e-9);
        }
    }
    SUBCASE("dead column with nonzero measurement throws") {
        SubspaceEnsemble e;
        e.mats.push_back(CMat::Zero(1, 1));
        CVec y(1);
        y(0) = 1.0;
        CHECK_THROWS_AS(x_update({CMat::Zero(1, 1)}, e, y), std::invalid_argument);
    }
}

TEST_CASE("solver: solve_mvhl trivial and degenerate instances") {
    SUBCASE("zero measurements give the zero solution in one iteration") {
        Rng rng(5);
        SubspaceEnsemble e;
        e.mats.push_back(random_cmat(8, 2, rng));
        const SolverResult res = solve_mvhl(e, CVec::Zero(8), LiftShape::balanced(2, 8));
        CHECK(res.converged);
        CHECK(res.iterations == 1);
        CHECK(res.objective == doctest::Approx(0.0));
        CHECK(res.estimates[0].norm() == 0.0);
    }
    SUBCASE("full observation pins the data matrix") {
        Rng rng(6);
        SubspaceEnsemble e;
        e.mats.push_back(CMat::Ones(12, 1));
        const CVec y = random_cvec(12, rng);
        const SolverResult res = solve_mvhl(e, y, LiftShape::balanced(1, 12));
        REQUIRE(res.estimates.size() == 1);
        CHECK((res.estimates[0].transpose() - y).norm() <= 1e-6 * y.norm());
    }
}

TEST_CASE("solver: exact recovery on a seeded easy instance") {
    Rng rng(1234);
    const Index n = 48, K = 2, s = 2, r = 2;
    const SourceEnsemble sources = gen_sources(K, r, s, rng);
    const SubspaceEnsemble subs = gen_subspaces(K, n, s, SubspaceModel::DftRows, rng);
    const std::vector<CMat> truth = synthesize_target(sources, n);
    const CVec y = forward(subs, truth);

    const SolverResult res = solve_mvhl(subs, y, LiftShape::balanced(s, n));
    CHECK(res.converged);
    CHECK(relative_error(res.estimates, truth) <= 1e-3);

    SUBCASE("feasibility invariant and history bookkeeping") {
        CHECK(res.feasibility <= 1e-10 * y.norm());
        CHECK(res.residual_history.size() == static_cast<std::size_t>(res.iterations));
        for (const auto& tr : res.residual_history) {
            CHECK(std::isfinite(tr.primal));
            CHECK(std::isfinite(tr.dual));
            CHECK(tr.feas <= 1e-10 * y.norm());
        }
    }
    SUBCASE("objective does not exceed the truth objective") {
        const LiftShape shape = LiftShape::balanced(s, n);
        double truth_obj = 0.0;
        for (const CMat& X : truth) truth_obj += nuclear_norm(hankel_lift(X, shape));
        CHECK(res.objective <= truth_obj * (1.0 + 1e-6));
    }
    SUBCASE("identical inputs solve identically") {
        const SolverResult again = solve_mvhl(subs, y, LiftShape::balanced(s, n));
        CHECK(again.iterations == res.iterations);
        for (Index k = 0; k < K; ++k)
            CHECK((again.estimates[k] - res.estimates[k]).norm() == 0.0);
    }
}

TEST_CASE("solver: ball-constrained variant") {
    Rng rng(7);
    const Index n = 16, K = 1, s = 1, r = 1;
    const SourceEnsemble sources = gen_sources(K, r, s, rng);
    const SubspaceEnsemble subs = gen_subspaces(K, n, s, SubspaceModel::DftRows, rng);
    const std::vector<CMat> truth = synthesize_target(sources, n);
    const CVec y = forward(subs, truth);
    const LiftShape shape = LiftShape::balanced(s, n);
    const VectorHankelLift lift(shape);

    SUBCASE("radius beyond the data admits the zero solution") {
        SolverConfig config;
        config.noise_delta = 2.0 * y.norm();
        const SolverResult res = solve_mvhl_noisy(subs, y, lift, config);
        CHECK(res.converged);
        CHECK(res.objective <= 1e-8);
        CHECK(res.estimates[0].norm() <= 1e-6);
    }
    SUBCASE("vanishing radius matches the equality solver") {
        SolverConfig config;
        config.noise_delta = 1e-12 * y.norm();
        const SolverResult ball = solve_mvhl_noisy(subs, y, lift, config);
        const SolverResult eq = solve_mvhl(subs, y, shape);
        CHECK(relative_error(ball.estimates, eq.estimates) <= 1e-6);
    }
    SUBCASE("noise_delta = 0 is rejected") {
        SolverConfig config;
        CHECK_THROWS_AS(solve_mvhl_noisy(subs, y, lift, config), std::invalid_argument);
    }
}

TEST_CASE("solver: config validation") {
    SolverConfig config;
    SUBCASE("defaults pass") { CHECK_NOTHROW(config.validate()); }
    SUBCASE("nonpositive rho") {
        config.rho = 0.0;
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SUBCASE("zero iteration budget") {
        config.max_iter = 0;
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SUBCASE("nonpositive tolerance") {
        config.tol_primal = 0.0;
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
    SUBCASE("over-relaxation out of range") {
        config.over_relaxation = 2.5;
        CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    }
}
