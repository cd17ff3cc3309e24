#pragma once
#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "lorentz/dual.hpp"
#include "lorentz/error.hpp"

namespace lorentz {

/// Dense row-major matrix over an arbitrary scalar (double or nested duals).
/// Dimensions here are tiny (<= 5), so plain Gaussian elimination is enough.
template <class T>
struct MatT {
    int rows = 0, cols = 0;
    VecT<T> a;

    MatT() = default;
    MatT(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, T(0.0)) {}

    T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static MatT identity(int n) {
        MatT m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
        return m;
    }
};

using Mat = MatT<double>;
using Vec = VecT<double>;

template <class T>
MatT<T> matmul(const MatT<T>& A, const MatT<T>& B) {
    MatT<T> C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const T& aik = A(i, k);
            for (int j = 0; j < B.cols; ++j) C(i, j) += aik * B(k, j);
        }
    return C;
}

template <class T>
VecT<T> matvec(const MatT<T>& A, const VecT<T>& x) {
    VecT<T> y(static_cast<std::size_t>(A.rows), T(0.0));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) y[i] += A(i, j) * x[j];
    return y;
}

template <class T>
MatT<T> transpose(const MatT<T>& A) {
    MatT<T> B(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) B(j, i) = A(i, j);
    return B;
}

template <class T>
MatT<T> mat_add(const MatT<T>& A, const MatT<T>& B) {
    MatT<T> C(A.rows, A.cols);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
    return C;
}

template <class T>
MatT<T> mat_scale(const MatT<T>& A, const T& s) {
    MatT<T> C(A.rows, A.cols);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] * s;
    return C;
}

template <class T>
T trace(const MatT<T>& A) {
    T t(0.0);
    for (int i = 0; i < A.rows; ++i) t += A(i, i);
    return t;
}

/// Solve A X = B in place by Gaussian elimination with partial pivoting on
/// value magnitude. Throws DegenerateJacobian on a vanishing pivot.
template <class T>
MatT<T> solve(MatT<T> A, MatT<T> B) {
    const int n = A.rows;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::fabs(value(A(col, col)));
        for (int r = col + 1; r < n; ++r) {
            double m = std::fabs(value(A(r, col)));
            if (m > best) { best = m; piv = r; }
        }
        if (best < 1e-300)
            fail(ErrorCode::DegenerateJacobian, "singular matrix in solve()");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(A(col, j), A(piv, j));
            for (int j = 0; j < B.cols; ++j) std::swap(B(col, j), B(piv, j));
        }
        T inv_p = T(1.0) / A(col, col);
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            T f = A(r, col) * inv_p;
            for (int j = col; j < n; ++j) A(r, j) = A(r, j) - f * A(col, j);
            for (int j = 0; j < B.cols; ++j) B(r, j) = B(r, j) - f * B(col, j);
        }
    }
    for (int i = 0; i < n; ++i) {
        T inv_p = T(1.0) / A(i, i);
        for (int j = 0; j < B.cols; ++j) B(i, j) = B(i, j) * inv_p;
    }
    return B;
}

template <class T>
MatT<T> inverse(const MatT<T>& A) {
    return solve(A, MatT<T>::identity(A.rows));
}

template <class T>
VecT<T> solve_vec(const MatT<T>& A, const VecT<T>& b) {
    MatT<T> B(A.rows, 1);
    for (int i = 0; i < A.rows; ++i) B(i, 0) = b[i];
    MatT<T> X = solve(A, B);
    VecT<T> x(static_cast<std::size_t>(A.rows));
    for (int i = 0; i < A.rows; ++i) x[i] = X(i, 0);
    return x;
}

/// Determinant by cofactor expansion. Pivoted elimination is unusable here:
/// a column whose values vanish can still carry nonzero dual parts, and a
/// value-based pivot would silently drop the derivative. Dimensions are <= 5,
/// so the polynomial expansion is exact and cheap.
template <class T>
T determinant(const MatT<T>& A) {
    const int n = A.rows;
    if (n == 1) return A(0, 0);
    if (n == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    if (n == 3)
        return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
               A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
               A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
    T det(0.0);
    double sign = 1.0;
    for (int c = 0; c < n; ++c) {
        MatT<T> M(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int k = 0; k < n; ++k) {
                if (k == c) continue;
                M(r - 1, cc++) = A(r, k);
            }
        }
        det += sign * A(0, c) * determinant(M);
        sign = -sign;
    }
    return det;
}

/// Generalized cross product: for a d x (d-1) matrix J the returned vector is
/// Euclidean-orthogonal to every column, via cofactor expansion.
template <class T>
VecT<T> generalized_cross(const MatT<T>& J) {
    const int d = J.rows;
    const int n = J.cols;
    VecT<T> out(static_cast<std::size_t>(d), T(0.0));
    if (n != d - 1) fail(ErrorCode::InvalidArgument, "generalized_cross needs d x (d-1)");
    for (int a = 0; a < d; ++a) {
        MatT<T> M(n, n);
        int rr = 0;
        for (int r = 0; r < d; ++r) {
            if (r == a) continue;
            for (int c = 0; c < n; ++c) M(rr, c) = J(r, c);
            ++rr;
        }
        T cof = determinant(M);
        out[a] = ((a % 2) == 0) ? cof : -cof;
    }
    return out;
}

// ---- Eigen bridges (double precision only) ----

inline Eigen::MatrixXd to_eigen(const Mat& A) {
    Eigen::MatrixXd M(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) M(i, j) = A(i, j);
    return M;
}

inline Mat from_eigen(const Eigen::MatrixXd& M) {
    Mat A(static_cast<int>(M.rows()), static_cast<int>(M.cols()));
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) A(i, j) = M(i, j);
    return A;
}

/// Eigenvalues of a self-adjoint operator A with respect to a positive
/// definite metric g: solves (gA) v = lambda g v.
inline std::pair<Vec, Mat> metric_selfadjoint_eigen(const Mat& A, const Mat& g) {
    Eigen::MatrixXd eg = to_eigen(g);
    Eigen::MatrixXd B = eg * to_eigen(A);
    B = 0.5 * (B + B.transpose()); // symmetrize roundoff
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(B, eg);
    if (es.info() != Eigen::Success)
        fail(ErrorCode::DegenerateJacobian, "generalized eigensolver failed");
    Vec lam(static_cast<std::size_t>(A.rows));
    for (int i = 0; i < A.rows; ++i) lam[i] = es.eigenvalues()(i);
    return {lam, from_eigen(es.eigenvectors())};
}

/// Signs of eigenvalues of a symmetric matrix (metric signature probe).
inline std::vector<int> metric_signature(const Mat& g, double tol = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(g));
    std::vector<int> signs;
    for (int i = 0; i < g.rows; ++i) {
        double lam = es.eigenvalues()(i);
        if (std::fabs(lam) < tol)
            fail(ErrorCode::SignatureMismatch, "near-degenerate metric eigenvalue");
        signs.push_back(lam > 0.0 ? 1 : -1);
    }
    return signs;
}

// ---- small vector helpers ----

template <class T>
VecT<T> vec_add(const VecT<T>& a, const VecT<T>& b) {
    VecT<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}
template <class T>
VecT<T> vec_sub(const VecT<T>& a, const VecT<T>& b) {
    VecT<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}
template <class T, class S>
VecT<T> vec_scale(const VecT<T>& a, const S& s) {
    VecT<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
    return c;
}
/// Plain Euclidean dot (coordinate-level, not metric).
template <class T>
T dot(const VecT<T>& a, const VecT<T>& b) {
    T s(0.0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

/// Metric inner product <a, b>_g.
template <class T>
T metric_dot(const MatT<T>& g, const VecT<T>& a, const VecT<T>& b) {
    T s(0.0);
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) s += g(i, j) * a[i] * b[j];
    return s;
}

} // namespace lorentz
