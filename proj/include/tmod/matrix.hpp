/*
   Copyright 2026 The tmod Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TMOD_MATRIX_HPP
#define TMOD_MATRIX_HPP

#include <optional>
#include <string>
#include <vector>

#include "poly.hpp"

namespace tmod {

/**
 * Dense matrix over a commutative ring, row-major.
 */
template <Ring R>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const R& zero) : rows_(rows), cols_(cols), zero_(zero.zero_like()), a_(static_cast<std::size_t>(rows) * cols, zero_) {}

    static Matrix identity(int n, const R& zero) {
        Matrix m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = zero.one_like();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const R& zero() const { return zero_; }
    bool square() const { return rows_ == cols_; }

    R& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const R& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        check_same(x, y);
        Matrix r = x;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.a_) v = -v;
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw AlgebraError("matrix product shape mismatch");
        Matrix r(x.rows_, y.cols_, pick_ctx(x.zero_, y.zero_));
        for (int i = 0; i < x.rows_; ++i)
            for (int k = 0; k < x.cols_; ++k) {
                const R& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (int j = 0; j < y.cols_; ++j) r(i, j) = r(i, j) + xik * y(k, j);
            }
        return r;
    }
    friend Matrix operator*(const R& s, const Matrix& x) {
        Matrix r = x;
        for (auto& v : r.a_) v = s * v;
        return r;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!(x.a_[i] == y.a_[i])) return false;
        return true;
    }

    std::vector<R> apply(const std::vector<R>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw AlgebraError("matrix-vector shape mismatch");
        std::vector<R> r(rows_, zero_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_, zero_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Matrix pow(unsigned e) const {
        Matrix r = identity(rows_, zero_), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            b = b * b;
            e >>= 1u;
        }
        return r;
    }
    bool is_zero() const {
        for (const auto& v : a_)
            if (!v.is_zero()) return false;
        return true;
    }
    template <typename F>
    auto map(F&& f) const {
        using S = decltype(f(zero_));
        Matrix<S> r(rows_, cols_, f(zero_));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
        return r;
    }
    /* block diagonal sum */
    friend Matrix direct_sum(const Matrix& x, const Matrix& y) {
        Matrix r(x.rows_ + y.rows_, x.cols_ + y.cols_, pick_ctx(x.zero_, y.zero_));
        for (int i = 0; i < x.rows_; ++i)
            for (int j = 0; j < x.cols_; ++j) r(i, j) = x(i, j);
        for (int i = 0; i < y.rows_; ++i)
            for (int j = 0; j < y.cols_; ++j) r(x.rows_ + i, x.cols_ + j) = y(i, j);
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < cols_; ++j) s += (j ? ", " : "") + (*this)(i, j).str();
        }
        return s + "]";
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    R zero_{};
    std::vector<R> a_;

    static void check_same(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw AlgebraError("matrix shape mismatch");
    }
};

/**
 * Characteristic polynomial det(X*Id - m), ascending coefficients, computed
 * by Berkowitz's algorithm with ring operations only.
 */
template <Ring R>
Poly<R> berkowitz_charpoly(const Matrix<R>& m) {
    if (!m.square()) throw AlgebraError("characteristic polynomial of a non-square matrix");
    const int n = m.rows();
    const R zero = m.zero();
    const R one = zero.one_like();
    if (n == 0) return Poly<R>::constant(one);
    /* c holds descending coefficients of the charpoly of the leading r x r block */
    std::vector<R> c = {one, -m(0, 0)};
    for (int r = 1; r < n; ++r) {
        /* Toeplitz column t_0..t_{r+1} */
        std::vector<R> t(r + 2, zero);
        t[0] = one;
        t[1] = -m(r, r);
        std::vector<R> v(r, zero);  // A_r^k S
        for (int i = 0; i < r; ++i) v[i] = m(i, r);
        for (int k = 2; k <= r + 1; ++k) {
            R s = zero;
            for (int j = 0; j < r; ++j) s = s + m(r, j) * v[j];
            t[k] = -s;
            if (k == r + 1) break;
            std::vector<R> w(r, zero);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) w[i] = w[i] + m(i, j) * v[j];
            v = std::move(w);
        }
        std::vector<R> nc(r + 2, zero);
        for (int i = 0; i < r + 2; ++i)
            for (int j = 0; j <= std::min(i, r); ++j) nc[i] = nc[i] + t[i - j] * c[j];
        c = std::move(nc);
    }
    std::vector<R> asc(c.rbegin(), c.rend());
    return Poly<R>(zero, std::move(asc));
}

template <Ring R>
R determinant(const Matrix<R>& m) {
    Poly<R> cp = berkowitz_charpoly(m);
    R d = cp[0];
    return (m.rows() % 2) ? -d : d;
}

/* ---------- linear algebra over a finite field ---------- */

using FqVec = std::vector<Fq>;
using FqMat = Matrix<Fq>;

/**
 * Subspace of F^n kept in reduced echelon form, with incremental insertion
 * and coordinates relative to the inserted generators.
 */
class Subspace {
public:
    explicit Subspace(int n = 0, const Fq& zero = Fq()) : n_(n), zero_(zero) {}

    int ambient() const { return n_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<FqVec>& basis() const { return rows_; }

    /* reduce v against the current basis; returns the residual */
    FqVec reduce(FqVec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const Fq c = v[piv_[i]];
            if (c.is_zero()) continue;
            for (int j = 0; j < n_; ++j)
                if (!rows_[i][j].is_zero()) v[j] = v[j] - c * rows_[i][j];
        }
        return v;
    }
    bool contains(const FqVec& v) const { return is_zero_vec(reduce(v)); }

    /* insert v; returns true if the dimension grew */
    bool insert(const FqVec& v0) {
        FqVec v = reduce(v0);
        int p = -1;
        for (int j = 0; j < n_; ++j)
            if (!v[j].is_zero()) {
                p = j;
                break;
            }
        if (p < 0) return false;
        const Fq inv = v[p].inverse();
        for (auto& x : v) x = x * inv;
        for (auto& row : rows_) {
            const Fq c = row[p];
            if (c.is_zero()) continue;
            for (int j = 0; j < n_; ++j) row[j] = row[j] - c * v[j];
        }
        rows_.push_back(v);
        piv_.push_back(p);
        return true;
    }

    const std::vector<int>& pivots() const { return piv_; }

    static bool is_zero_vec(const FqVec& v) {
        for (const auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    }

private:
    int n_;
    Fq zero_;
    std::vector<FqVec> rows_;
    std::vector<int> piv_;
};

/* rank of a matrix over a field */
inline int rank(const FqMat& m) {
    Subspace s(m.cols(), m.zero());
    for (int i = 0; i < m.rows(); ++i) {
        FqVec row(m.cols());
        for (int j = 0; j < m.cols(); ++j) row[j] = m(i, j);
        s.insert(row);
    }
    return s.dim();
}

/* basis of the right kernel {v : m v = 0} */
inline std::vector<FqVec> kernel(const FqMat& m) {
    const int n = m.cols();
    const Fq z = m.zero();
    /* Gaussian elimination on a copy */
    std::vector<FqVec> a(m.rows(), FqVec(n, z));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < n && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        const Fq inv = a[r][c].inverse();
        for (auto& x : a[r]) x = x * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Fq f = a[i][c];
            for (int j = 0; j < n; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(n, false);
    for (int c : pivcol) is_piv[c] = true;
    std::vector<FqVec> out;
    for (int f = 0; f < n; ++f) {
        if (is_piv[f]) continue;
        FqVec v(n, z);
        v[f] = z.one_like();
        for (int i = 0; i < static_cast<int>(pivcol.size()); ++i) v[pivcol[i]] = -a[i][f];
        out.push_back(v);
    }
    return out;
}

/* inverse of a square matrix over a field, or nullopt when singular */
inline std::optional<FqMat> inverse(const FqMat& m) {
    const int n = m.rows();
    const Fq z = m.zero();
    std::vector<FqVec> a(n, FqVec(2 * n, z));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
        a[i][n + i] = z.one_like();
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (!a[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) return std::nullopt;
        std::swap(a[c], a[piv]);
        const Fq inv = a[c][c].inverse();
        for (auto& x : a[c]) x = x * inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            const Fq f = a[i][c];
            for (int j = 0; j < 2 * n; ++j) a[i][j] = a[i][j] - f * a[c][j];
        }
    }
    FqMat r(n, n, z);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a[i][n + j];
    return r;
}

}  // namespace tmod

#endif
