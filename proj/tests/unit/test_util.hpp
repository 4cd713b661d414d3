#pragma once

#include <complex>

#include "mvhl/rng.hpp"
#include "mvhl/types.hpp"

namespace mvhl::testutil {

inline CMat random_cmat(Index rows, Index cols, Rng& rng) {
    CMat M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) M(i, j) = rng.complex_gaussian();
    return M;
}

inline CVec random_cvec(Index n, Rng& rng) {
    CVec v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_gaussian();
    return v;
}

/// Frobenius inner product <A, B> = sum conj(a_ij) b_ij.
inline Complex frob_inner(const CMat& A, const CMat& B) {
    return (A.conjugate().cwiseProduct(B)).sum();
}

}  // namespace mvhl::testutil
