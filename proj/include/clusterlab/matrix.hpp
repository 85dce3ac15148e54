#pragma once

#include <optional>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/numeric.hpp"

namespace clusterlab {

// Dense matrix over an exact field, column-vector convention: a matrix with
// r rows and c cols maps K^c -> K^r.
template <class K>
struct Matrix {
    int rows = 0, cols = 0;
    std::vector<K> a;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, K(0)) {}

    K& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const K& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
        return m;
    }

    bool zero() const {
        for (const auto& x : a)
            if (!is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols != y.rows) throw ArgumentError("matrix product shape mismatch");
        Matrix z(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const K& xv = x.at(i, k);
                if (is_zero(xv)) continue;
                for (int j = 0; j < y.cols; ++j) z.at(i, j) += xv * y.at(k, j);
            }
        return z;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw ArgumentError("matrix sum shape mismatch");
        Matrix z = x;
        for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
        return z;
    }

    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw ArgumentError("matrix diff shape mismatch");
        Matrix z = x;
        for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
        return z;
    }

    Matrix scaled(const K& c) const {
        Matrix z = *this;
        for (auto& x : z.a) x *= c;
        return z;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    std::vector<K> apply(const std::vector<K>& v) const {
        if (static_cast<int>(v.size()) != cols) throw ArgumentError("matrix apply shape mismatch");
        std::vector<K> w(static_cast<size_t>(rows), K(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (!is_zero(at(i, j))) w[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
        return w;
    }
};

// In-place reduced row echelon form; returns the pivot columns.
template <class K>
std::vector<int> rref(Matrix<K>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!is_zero(m.at(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        K inv = field_inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || is_zero(m.at(i, c))) continue;
            K f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class K>
int rank(Matrix<K> m) {
    return static_cast<int>(rref(m).size());
}

// Columns of the result span ker(m).
template <class K>
Matrix<K> kernel_basis(Matrix<K> m) {
    int n = m.cols;
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_piv(static_cast<size_t>(n), false);
    for (int c : pivots) is_piv[static_cast<size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_piv[static_cast<size_t>(c)]) free_cols.push_back(c);
    Matrix<K> ker(n, static_cast<int>(free_cols.size()));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        int fc = free_cols[f];
        ker.at(fc, static_cast<int>(f)) = K(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            ker.at(pivots[r], static_cast<int>(f)) = -m.at(static_cast<int>(r), fc);
    }
    return ker;
}

// One solution of A x = b, if any.
template <class K>
std::optional<std::vector<K>> solve(const Matrix<K>& A, const std::vector<K>& b) {
    Matrix<K> aug(A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b[static_cast<size_t>(i)];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == A.cols) return std::nullopt;
    std::vector<K> x(static_cast<size_t>(A.cols), K(0));
    for (size_t r = 0; r < pivots.size(); ++r)
        x[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), A.cols);
    return x;
}

// One solution X of A X = B, if any.
template <class K>
std::optional<Matrix<K>> solve_matrix(const Matrix<K>& A, const Matrix<K>& B) {
    Matrix<K> X(A.cols, B.cols);
    Matrix<K> aug(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) aug.at(i, A.cols + j) = B.at(i, j);
    }
    std::vector<int> pivots = rref(aug);
    for (int p : pivots)
        if (p >= A.cols) return std::nullopt;
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < B.cols; ++j)
            X.at(pivots[r], j) = aug.at(static_cast<int>(r), A.cols + j);
    return X;
}

// Columns of the result are a basis of the column space of m.
template <class K>
Matrix<K> image_basis(const Matrix<K>& m) {
    Matrix<K> red = m;
    std::vector<int> pivots = rref(red);
    Matrix<K> img(m.rows, static_cast<int>(pivots.size()));
    for (size_t j = 0; j < pivots.size(); ++j)
        for (int i = 0; i < m.rows; ++i) img.at(i, static_cast<int>(j)) = m.at(i, pivots[j]);
    return img;
}

template <class K>
std::optional<Matrix<K>> inverse(const Matrix<K>& m) {
    if (m.rows != m.cols) return std::nullopt;
    auto x = solve_matrix(m, Matrix<K>::identity(m.rows));
    if (!x) return std::nullopt;
    if (!(m * *x == Matrix<K>::identity(m.rows))) return std::nullopt;
    return x;
}

template <class K>
Matrix<K> hstack(const Matrix<K>& x, const Matrix<K>& y) {
    if (x.rows != y.rows) throw ArgumentError("hstack shape mismatch");
    Matrix<K> z(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
    }
    return z;
}

template <class K>
Matrix<K> vstack(const Matrix<K>& x, const Matrix<K>& y) {
    if (x.cols != y.cols) throw ArgumentError("vstack shape mismatch");
    Matrix<K> z(x.rows + y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) z.at(x.rows + i, j) = y.at(i, j);
    return z;
}

// Coordinates of each column of B in the span of the columns of A.
// Requires the columns of B to lie in that span.
template <class K>
Matrix<K> coordinates_in(const Matrix<K>& A, const Matrix<K>& B) {
    auto X = solve_matrix(A, B);
    if (!X) throw IntegrityError("coordinates_in: vector outside span");
    return *X;
}

} // namespace clusterlab
