#include <Eigen/SVD>
#include <cmath>
#include <complex>

#include "doctest.h"
#include "mvhl/lifting.hpp"
#include "mvhl/measurement.hpp"
#include "mvhl/rng.hpp"
#include "test_util.hpp"

using namespace mvhl;
using testutil::frob_inner;
using testutil::random_cmat;

namespace {

Index numerical_rank(const CMat& M, double rel_tol = 1e-10) {
    const Eigen::JacobiSVD<CMat> svd(M);
    const RVec sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * sv(0)) ++rank;
    return rank;
}

}  // namespace

TEST_CASE("lifting: hankel_lift smallest nondegenerate case") {
    const LiftShape shape(1, 3, 2);
    CMat X(1, 3);
    X << Complex(1, 1), Complex(2, -1), Complex(0, 3);
    const CMat H = hankel_lift(X, shape);
    REQUIRE(H.rows() == 2);
    REQUIRE(H.cols() == 2);
    CHECK(H(0, 0) == X(0, 0));
    CHECK(H(0, 1) == X(0, 1));
    CHECK(H(1, 0) == X(0, 1));
    CHECK(H(1, 1) == X(0, 2));
}

TEST_CASE("lifting: n1 = 1 is the identity lift") {
    Rng rng(1);
    const CMat X = random_cmat(2, 2, rng);
    const CMat H = hankel_lift(X, LiftShape(2, 2, 1));
    CHECK((H - X).norm() == 0.0);
}

TEST_CASE("lifting: lift of a single spectral source has rank one") {
    Rng rng(5);
    const Index s = 3, n = 16;
    const LiftShape shape(s, n, 8);
    const double tau = rng.uniform();
    CMat h(s, 1);
    for (Index i = 0; i < s; ++i) h(i, 0) = rng.complex_gaussian();
    const CMat X = h * steering_vector(tau, n).transpose();
    CHECK(numerical_rank(hankel_lift(X, shape)) == 1);
}

TEST_CASE("lifting: hankel_adjoint sums anti-diagonals") {
    const LiftShape shape(1, 3, 2);
    CMat W(2, 2);
    W << 1.0, 2.0, 3.0, 4.0;
    const CMat A = hankel_adjoint(W, shape);
    REQUIRE(A.rows() == 1);
    REQUIRE(A.cols() == 3);
    CHECK(A(0, 0) == Complex(1, 0));
    CHECK(A(0, 1) == Complex(5, 0));
    CHECK(A(0, 2) == Complex(4, 0));
}

TEST_CASE("lifting: H*H equals the squared weight scaling") {
    Rng rng(2);
    const LiftShape shape(2, 12, 6);
    const CMat X = random_cmat(2, 12, rng);
    const CMat lhs = hankel_adjoint(hankel_lift(X, shape), shape);
    const CMat rhs = weight_scale(X, shape, +2);
    CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
}

TEST_CASE("lifting: adjoint identity on a fixed shape") {
    Rng rng(3);
    const LiftShape shape(2, 12, 6);
    const CMat X = random_cmat(2, 12, rng);
    const CMat W = random_cmat(shape.lifted_rows(), shape.lifted_cols(), rng);
    const Complex lhs = frob_inner(hankel_lift(X, shape), W);
    const Complex rhs = frob_inner(X, hankel_adjoint(W, shape));
    CHECK(std::abs(lhs - rhs) <= 1e-10 * X.norm() * W.norm());
}

TEST_CASE("lifting: adjoint identity across 100 random shapes") {
    Rng rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const Index s = 1 + rng.uniform_index(4);
        const Index n = 2 + rng.uniform_index(40);
        const Index n1 = 1 + rng.uniform_index(n);
        const LiftShape shape(s, n, n1);
        const CMat X = random_cmat(s, n, rng);
        const CMat W = random_cmat(shape.lifted_rows(), shape.lifted_cols(), rng);
        const Complex lhs = frob_inner(hankel_lift(X, shape), W);
        const Complex rhs = frob_inner(X, hankel_adjoint(W, shape));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * X.norm() * W.norm());
    }
}

TEST_CASE("lifting: weight vectors") {
    SUBCASE("n=4, n1=2") {
        const RVec w = hankel_weights(LiftShape(1, 4, 2));
        REQUIRE(w.size() == 4);
        CHECK(w(0) == 1.0);
        CHECK(w(1) == 2.0);
        CHECK(w(2) == 2.0);
        CHECK(w(3) == 1.0);
    }
    SUBCASE("n=5, n1=3") {
        const RVec w = hankel_weights(LiftShape(1, 5, 3));
        REQUIRE(w.size() == 5);
        CHECK(w(0) == 1.0);
        CHECK(w(1) == 2.0);
        CHECK(w(2) == 3.0);
        CHECK(w(3) == 2.0);
        CHECK(w(4) == 1.0);
    }
    SUBCASE("counting identity: sum w_i = n1*n2") {
        const RVec w = hankel_weights(LiftShape(1, 48, 24));
        CHECK(w.sum() == doctest::Approx(24.0 * 25.0));
    }
    SUBCASE("symmetry w_i = w_{n-1-i}") {
        Rng rng(9);
        for (int rep = 0; rep < 20; ++rep) {
            const Index n = 2 + rng.uniform_index(60);
            const Index n1 = 1 + rng.uniform_index(n);
            const RVec w = hankel_weights(LiftShape(1, n, n1));
            for (Index i = 0; i < n; ++i) CHECK(w(i) == w(n - 1 - i));
        }
    }
}

TEST_CASE("lifting: weight_scale powers") {
    const LiftShape shape(1, 4, 2);
    SUBCASE("power +1 on all-ones") {
        const CMat X = CMat::Ones(1, 4);
        const CMat scaled = weight_scale(X, shape, +1);
        CHECK(scaled(0, 0).real() == doctest::Approx(1.0));
        CHECK(scaled(0, 1).real() == doctest::Approx(std::sqrt(2.0)));
        CHECK(scaled(0, 2).real() == doctest::Approx(std::sqrt(2.0)));
        CHECK(scaled(0, 3).real() == doctest::Approx(1.0));
    }
    SUBCASE("round trip +1 then -1") {
        Rng rng(4);
        const CMat X = random_cmat(1, 4, rng);
        const CMat back = weight_scale(weight_scale(X, shape, +1), shape, -1);
        CHECK((back - X).norm() <= 1e-14 * X.norm());
    }
}

TEST_CASE("lifting: normalized lift is an isometry") {
    Rng rng(6);
    const LiftShape shape(2, 10, 5);
    const CMat X = random_cmat(2, 10, rng);
    SUBCASE("G*G = identity") {
        const CMat back = normalized_lift_adjoint(normalized_lift(X, shape), shape);
        CHECK((back - X).norm() <= 1e-12 * X.norm());
    }
    SUBCASE("GG* fixes the range of H") {
        const CMat W = hankel_lift(X, shape);
        const CMat projected = normalized_lift(normalized_lift_adjoint(W, shape), shape);
        CHECK((projected - W).norm() <= 1e-12 * W.norm());
    }
    SUBCASE("GG* is idempotent on arbitrary input") {
        const CMat W = random_cmat(shape.lifted_rows(), shape.lifted_cols(), rng);
        const CMat once = normalized_lift(normalized_lift_adjoint(W, shape), shape);
        const CMat twice = normalized_lift(normalized_lift_adjoint(once, shape), shape);
        CHECK((twice - once).norm() <= 1e-12 * std::max(1.0, once.norm()));
    }
    SUBCASE("single unit entry at block (0,0) survives the projection") {
        const LiftShape tiny(1, 3, 2);
        CMat W = CMat::Zero(2, 2);
        W(0, 0) = 1.0;
        const CMat projected = normalized_lift(normalized_lift_adjoint(W, tiny), tiny);
        CHECK(std::abs(projected(0, 0) - Complex(1, 0)) <= 1e-14);
        CHECK(std::abs(projected(1, 1)) <= 1e-14);
    }
}

TEST_CASE("lifting: two-level lift") {
    SUBCASE("N1 = P1 = 1 is the identity") {
        Rng rng(8);
        const LiftShape2D shape(2, 2, 2, 1, 1);
        const CMat X = random_cmat(2, 4, rng);
        CHECK((hankel_lift_2d(X, shape) - X).norm() == 0.0);
    }
    SUBCASE("weights are the outer product of the level weights") {
        const LiftShape2D shape(1, 3, 3, 2, 2);
        const RVec w = hankel_weights_2d(shape);
        REQUIRE(w.size() == 9);
        const double expect[9] = {1, 2, 1, 2, 4, 2, 1, 2, 1};
        for (Index i = 0; i < 9; ++i) CHECK(w(i) == expect[i]);
    }
    SUBCASE("rank one for a single delay-Doppler source") {
        Rng rng(10);
        const LiftShape2D shape(2, 8, 8, 4, 4);
        CMat u(2, 1);
        u(0, 0) = rng.complex_gaussian();
        u(1, 0) = rng.complex_gaussian();
        const CMat X = u * steering_vector_2d(0.3, 0.7, 8, 8).transpose();
        CHECK(numerical_rank(hankel_lift_2d(X, shape)) == 1);
    }
    SUBCASE("adjoint identity") {
        Rng rng(12);
        const LiftShape2D shape(2, 6, 5, 3, 2);
        const CMat X = random_cmat(2, 30, rng);
        const CMat W = random_cmat(shape.lifted_rows(), shape.lifted_cols(), rng);
        const Complex lhs = frob_inner(hankel_lift_2d(X, shape), W);
        const Complex rhs = frob_inner(X, hankel_adjoint_2d(W, shape));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * X.norm() * W.norm());
    }
    SUBCASE("H*H equals squared weights, isometry holds") {
        Rng rng(13);
        const LiftShape2D shape(1, 6, 4, 3, 2);
        const CMat X = random_cmat(1, 24, rng);
        const CMat lhs = hankel_adjoint_2d(hankel_lift_2d(X, shape), shape);
        const CMat rhs = weight_scale_2d(X, shape, +2);
        CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        const CMat back = normalized_lift_adjoint_2d(normalized_lift_2d(X, shape), shape);
        CHECK((back - X).norm() <= 1e-12 * X.norm());
    }
}

TEST_CASE("lifting: shape validation") {
    CHECK_THROWS_AS(LiftShape(0, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(LiftShape(1, 4, 0), std::invalid_argument);
    CHECK_THROWS_AS(LiftShape(1, 4, 5), std::invalid_argument);
    Rng rng(14);
    const CMat X = random_cmat(2, 8, rng);
    CHECK_THROWS_AS(hankel_lift(X, LiftShape(3, 8, 4)), std::invalid_argument);
    CHECK_THROWS_AS(hankel_adjoint(X, LiftShape(2, 8, 4)), std::invalid_argument);
}

TEST_CASE("lifting: Lift interface matches the free functions") {
    Rng rng(15);
    const LiftShape shape = LiftShape::balanced(2, 11);
    const VectorHankelLift lift(shape);
    CHECK(lift.data_rows() == 2);
    CHECK(lift.data_cols() == 11);
    CHECK(lift.lifted_rows() == shape.lifted_rows());
    CHECK(lift.lifted_cols() == shape.lifted_cols());
    const CMat X = random_cmat(2, 11, rng);
    CHECK((lift.apply(X) - hankel_lift(X, shape)).norm() == 0.0);
    const CMat W = random_cmat(shape.lifted_rows(), shape.lifted_cols(), rng);
    CHECK((lift.adjoint(W) - hankel_adjoint(W, shape)).norm() == 0.0);
    CHECK((lift.weights() - hankel_weights(shape)).norm() == 0.0);
}
