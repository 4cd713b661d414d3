#pragma once

#include <memory>

#include "mvhl/types.hpp"

namespace mvhl {

/// Anti-diagonal multiplicities w_i = #{(j,k) : j+k = i, 0<=j<n1, 0<=k<n2}.
/// Equivalently w_i = min(i+1, n1, n2, n-i); all entries are >= 1.
RVec hankel_weights(const LiftShape& shape);

/// Block-Hankel lift: block (i, j) of the result is column x_{i+j} of X.
CMat hankel_lift(const CMat& X, const LiftShape& shape);

/// Adjoint of the lift: column i of the result is the sum of all blocks
/// (j, k) of W with j + k = i.
CMat hankel_adjoint(const CMat& W, const LiftShape& shape);

/// Scales column j of X by w_j^(power/2); power in {+1, -1, +2, -2}.
/// power=+2 composes the lift with its adjoint; +1/-1 apply the square-root
/// weighting used by the normalized lift.
CMat weight_scale(const CMat& X, const LiftShape& shape, int power);

/// Normalized (isometric) lift: applies the lift after -1/2-power column
/// scaling, so that the adjoint is a left inverse.
CMat normalized_lift(const CMat& X, const LiftShape& shape);
CMat normalized_lift_adjoint(const CMat& W, const LiftShape& shape);

/// Two-level lift: outer Hankel over the slow index p with a P1 x P2 block
/// grid; each block is the inner vectorized Hankel lift over the fast index.
RVec hankel_weights_2d(const LiftShape2D& shape);
CMat hankel_lift_2d(const CMat& X, const LiftShape2D& shape);
CMat hankel_adjoint_2d(const CMat& W, const LiftShape2D& shape);
CMat weight_scale_2d(const CMat& X, const LiftShape2D& shape, int power);
CMat normalized_lift_2d(const CMat& X, const LiftShape2D& shape);
CMat normalized_lift_adjoint_2d(const CMat& W, const LiftShape2D& shape);

/// Shape-erased lift used by the solver so that one ADMM implementation
/// covers both the 1D and the two-level case. Implementations are pure and
/// immutable; apply/adjoint never materialize the operator itself.
class Lift {
public:
    virtual ~Lift() = default;
    virtual Index data_rows() const = 0;
    virtual Index data_cols() const = 0;
    virtual Index lifted_rows() const = 0;
    virtual Index lifted_cols() const = 0;
    virtual const RVec& weights() const = 0;
    virtual CMat apply(const CMat& X) const = 0;
    virtual CMat adjoint(const CMat& W) const = 0;
};

class VectorHankelLift final : public Lift {
public:
    explicit VectorHankelLift(const LiftShape& shape)
        : shape_(shape), weights_(hankel_weights(shape)) {}

    Index data_rows() const override { return shape_.s; }
    Index data_cols() const override { return shape_.n; }
    Index lifted_rows() const override { return shape_.lifted_rows(); }
    Index lifted_cols() const override { return shape_.lifted_cols(); }
    const RVec& weights() const override { return weights_; }
    CMat apply(const CMat& X) const override { return hankel_lift(X, shape_); }
    CMat adjoint(const CMat& W) const override { return hankel_adjoint(W, shape_); }
    const LiftShape& shape() const { return shape_; }

private:
    LiftShape shape_;
    RVec weights_;
};

class TwoLevelHankelLift final : public Lift {
public:
    explicit TwoLevelHankelLift(const LiftShape2D& shape)
        : shape_(shape), weights_(hankel_weights_2d(shape)) {}

    Index data_rows() const override { return shape_.s; }
    Index data_cols() const override { return shape_.data_cols(); }
    Index lifted_rows() const override { return shape_.lifted_rows(); }
    Index lifted_cols() const override { return shape_.lifted_cols(); }
    const RVec& weights() const override { return weights_; }
    CMat apply(const CMat& X) const override { return hankel_lift_2d(X, shape_); }
    CMat adjoint(const CMat& W) const override { return hankel_adjoint_2d(W, shape_); }
    const LiftShape2D& shape() const { return shape_; }

private:
    LiftShape2D shape_;
    RVec weights_;
};

}  // namespace mvhl
