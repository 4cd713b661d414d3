#include "mvhl/lifting.hpp"

#include <algorithm>

namespace mvhl {

RVec hankel_weights(const LiftShape& shape) {
    RVec w(shape.n);
    for (Index i = 0; i < shape.n; ++i)
        w(i) = static_cast<double>(std::min({i + 1, shape.n1, shape.n2, shape.n - i}));
    return w;
}

CMat hankel_lift(const CMat& X, const LiftShape& shape) {
    require_data_shape(X, shape.s, shape.n, "hankel_lift");
    CMat W(shape.lifted_rows(), shape.n2);
    for (Index j = 0; j < shape.n2; ++j)
        for (Index i = 0; i < shape.n1; ++i) W.block(i * shape.s, j, shape.s, 1) = X.col(i + j);
    return W;
}

CMat hankel_adjoint(const CMat& W, const LiftShape& shape) {
    require_lifted_shape(W, shape.lifted_rows(), shape.n2, "hankel_adjoint");
    CMat X = CMat::Zero(shape.s, shape.n);
    for (Index j = 0; j < shape.n2; ++j)
        for (Index i = 0; i < shape.n1; ++i) X.col(i + j) += W.block(i * shape.s, j, shape.s, 1);
    return X;
}

namespace {

CMat scale_columns(const CMat& X, const RVec& w, int power, const char* who) {
    if (power != 1 && power != -1 && power != 2 && power != -2)
        throw std::invalid_argument(std::string(who) + ": power must be one of +-1, +-2");
    CMat out = X;
    for (Index j = 0; j < X.cols(); ++j) {
        const double factor = power == 2    ? w(j)
                              : power == -2 ? 1.0 / w(j)
                              : power == 1  ? std::sqrt(w(j))
                                            : 1.0 / std::sqrt(w(j));
        out.col(j) *= factor;
    }
    return out;
}

}  // namespace

CMat weight_scale(const CMat& X, const LiftShape& shape, int power) {
    require_data_shape(X, shape.s, shape.n, "weight_scale");
    return scale_columns(X, hankel_weights(shape), power, "weight_scale");
}

CMat normalized_lift(const CMat& X, const LiftShape& shape) {
    return hankel_lift(weight_scale(X, shape, -1), shape);
}

CMat normalized_lift_adjoint(const CMat& W, const LiftShape& shape) {
    return weight_scale(hankel_adjoint(W, shape), shape, -1);
}

RVec hankel_weights_2d(const LiftShape2D& shape) {
    const RVec wn = hankel_weights(LiftShape(1, shape.N, shape.N1));
    const RVec wp = hankel_weights(LiftShape(1, shape.P, shape.P1));
    RVec w(shape.data_cols());
    for (Index p = 0; p < shape.P; ++p)
        for (Index n = 0; n < shape.N; ++n) w(p * shape.N + n) = wn(n) * wp(p);
    return w;
}

CMat hankel_lift_2d(const CMat& X, const LiftShape2D& shape) {
    require_data_shape(X, shape.s, shape.data_cols(), "hankel_lift_2d");
    const LiftShape inner = shape.inner();
    const Index block_rows = inner.lifted_rows();
    CMat W(shape.lifted_rows(), shape.lifted_cols());
    for (Index p = 0; p < shape.P; ++p) {
        // Inner lift of the p-th slab; copied into every outer block (a, b)
        // with a + b = p.
        const CMat inner_lift = hankel_lift(X.middleCols(p * shape.N, shape.N), inner);
        for (Index a = 0; a < shape.P1; ++a) {
            const Index b = p - a;
            if (b < 0 || b >= shape.P2) continue;
            W.block(a * block_rows, b * shape.N2, block_rows, shape.N2) = inner_lift;
        }
    }
    return W;
}

CMat hankel_adjoint_2d(const CMat& W, const LiftShape2D& shape) {
    require_lifted_shape(W, shape.lifted_rows(), shape.lifted_cols(), "hankel_adjoint_2d");
    const LiftShape inner = shape.inner();
    const Index block_rows = inner.lifted_rows();
    CMat X = CMat::Zero(shape.s, shape.data_cols());
    for (Index a = 0; a < shape.P1; ++a) {
        for (Index b = 0; b < shape.P2; ++b) {
            const CMat slab =
                hankel_adjoint(W.block(a * block_rows, b * shape.N2, block_rows, shape.N2), inner);
            X.middleCols((a + b) * shape.N, shape.N) += slab;
        }
    }
    return X;
}

CMat weight_scale_2d(const CMat& X, const LiftShape2D& shape, int power) {
    require_data_shape(X, shape.s, shape.data_cols(), "weight_scale_2d");
    return scale_columns(X, hankel_weights_2d(shape), power, "weight_scale_2d");
}

CMat normalized_lift_2d(const CMat& X, const LiftShape2D& shape) {
    return hankel_lift_2d(weight_scale_2d(X, shape, -1), shape);
}

CMat normalized_lift_adjoint_2d(const CMat& W, const LiftShape2D& shape) {
    return weight_scale_2d(hankel_adjoint_2d(W, shape), shape, -1);
}

}  // namespace mvhl
