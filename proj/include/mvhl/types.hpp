#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>
#include <vector>

namespace mvhl {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// File-system failures (open/read/write); lets callers distinguish I/O
/// problems from numerical ones, which surface as plain runtime_error.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimensions governing the vectorized Hankel lift of an s x n data matrix.
/// The lifted matrix is (s*n1) x n2 where n1 + n2 = n + 1.
struct LiftShape {
    Index s = 1;   ///< subspace dimension (rows of the data matrix)
    Index n = 1;   ///< number of samples (columns of the data matrix)
    Index n1 = 1;  ///< pencil parameter (row-block count of the lift)
    Index n2 = 1;  ///< n - n1 + 1

    LiftShape() = default;

    LiftShape(Index s_, Index n_, Index n1_) : s(s_), n(n_), n1(n1_), n2(n_ + 1 - n1_) {
        if (s < 1 || n < 1) throw std::invalid_argument("LiftShape: s and n must be positive");
        if (n1 < 1 || n1 > n) throw std::invalid_argument("LiftShape: need 1 <= n1 <= n");
    }

    /// Balanced pencil split n1 = ceil((n+1)/2).
    static LiftShape balanced(Index s, Index n) { return LiftShape(s, n, (n + 2) / 2); }

    Index lifted_rows() const { return s * n1; }
    Index lifted_cols() const { return n2; }
};

/// Dimensions of the two-level (delay-Doppler) lift. Data matrices are
/// s x (N*P) with columns in raster order i = p*N + n (n fast, p slow).
/// The lifted matrix is (s*N1*P1) x (N2*P2), Hankel over p at the outer
/// level and over n inside each block.
struct LiftShape2D {
    Index s = 1;
    Index N = 1;  ///< fast-axis extent
    Index P = 1;  ///< slow-axis extent
    Index N1 = 1, N2 = 1;
    Index P1 = 1, P2 = 1;

    LiftShape2D() = default;

    LiftShape2D(Index s_, Index N_, Index P_, Index N1_, Index P1_)
        : s(s_), N(N_), P(P_), N1(N1_), N2(N_ + 1 - N1_), P1(P1_), P2(P_ + 1 - P1_) {
        if (s < 1 || N < 1 || P < 1)
            throw std::invalid_argument("LiftShape2D: s, N, P must be positive");
        if (N1 < 1 || N1 > N || P1 < 1 || P1 > P)
            throw std::invalid_argument("LiftShape2D: need 1 <= N1 <= N and 1 <= P1 <= P");
    }

    static LiftShape2D balanced(Index s, Index N, Index P) {
        return LiftShape2D(s, N, P, (N + 2) / 2, (P + 2) / 2);
    }

    Index data_cols() const { return N * P; }
    Index lifted_rows() const { return s * N1 * P1; }
    Index lifted_cols() const { return N2 * P2; }

    LiftShape inner() const { return LiftShape(s, N, N1); }
};

inline void require_data_shape(const CMat& X, Index s, Index cols, const char* who) {
    if (X.rows() != s || X.cols() != cols)
        throw std::invalid_argument(std::string(who) + ": data matrix does not match shape");
}

inline void require_lifted_shape(const CMat& W, Index rows, Index cols, const char* who) {
    if (W.rows() != rows || W.cols() != cols)
        throw std::invalid_argument(std::string(who) + ": lifted matrix does not match shape");
}

}  // namespace mvhl
