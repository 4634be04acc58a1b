#pragma once

/**
 * @file matrix.hpp
 * @brief Dense exact rational matrices and the symmetric-matrix wrapper.
 */

#include "qfd/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace qfd {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    /// Row-major nested initializer; all rows must have equal length.
    Matrix(std::initializer_list<std::initializer_list<Rat>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) throw DomainError("matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix diagonal(const std::vector<Rat>& entries) {
        Matrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix product: dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rat& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix sum: dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

    /// Top-left k x k block.
    Matrix leading(std::size_t k) const { return submatrix(0, k); }

    /// Principal submatrix with the listed rows and columns removed.
    Matrix without(const std::vector<std::size_t>& drop) const {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < rows_; ++i)
            if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
        Matrix m(keep.size(), keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) m(i, j) = (*this)(keep[i], keep[j]);
        return m;
    }

    /// Exact determinant by Gaussian elimination over Q.
    Rat determinant() const {
        if (!square()) throw DomainError("determinant: matrix is not square");
        Matrix a = *this;
        const std::size_t n = rows_;
        Rat det = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t pivot = c;
            while (pivot < n && a(pivot, c) == 0) ++pivot;
            if (pivot == n) return 0;
            if (pivot != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(pivot, j));
                det = -det;
            }
            det *= a(c, c);
            for (std::size_t r = c + 1; r < n; ++r) {
                if (a(r, c) == 0) continue;
                Rat f = a(r, c) / a(c, c);
                for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
            }
        }
        return det;
    }

    bool is_symmetric() const {
        if (!square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

private:
    Matrix submatrix(std::size_t from, std::size_t to) const {
        Matrix m(to - from, to - from);
        for (std::size_t i = from; i < to; ++i)
            for (std::size_t j = from; j < to; ++j) m(i - from, j - from) = (*this)(i, j);
        return m;
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// A square rational matrix with entries(i, j) == entries(j, i).
class SymMatrix {
public:
    SymMatrix() = default;

    explicit SymMatrix(Matrix m) : m_(std::move(m)) {
        if (!m_.square())
            throw DomainError("symmetric matrix: " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                              " is not square");
        for (std::size_t i = 0; i < m_.rows(); ++i)
            for (std::size_t j = i + 1; j < m_.cols(); ++j)
                if (m_(i, j) != m_(j, i))
                    throw DomainError("symmetric matrix: asymmetric at (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ")/(" + std::to_string(j + 1) + "," +
                                      std::to_string(i + 1) + ")");
    }

    SymMatrix(std::initializer_list<std::initializer_list<Rat>> rows) : SymMatrix(Matrix(rows)) {}

    static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }

    static SymMatrix diagonal(const std::vector<Rat>& entries) { return SymMatrix(Matrix::diagonal(entries)); }

    template <typename T>
    static SymMatrix diagonal(std::initializer_list<T> entries) {
        return diagonal(std::vector<Rat>(entries.begin(), entries.end()));
    }

    /// (a - b) I_d + b J_d: a on the diagonal, b elsewhere.
    static SymMatrix comb(const Int& a, const Int& b, std::size_t d) {
        Matrix m(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) = i == j ? Rat(a) : Rat(b);
        return SymMatrix(std::move(m));
    }

    /// N^T S N, again symmetric.
    SymMatrix congruent(const Matrix& n) const { return SymMatrix(n.transpose() * m_ * n); }

    std::size_t size() const { return m_.rows(); }
    const Rat& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const Matrix& matrix() const { return m_; }
    Rat determinant() const { return m_.determinant(); }

    friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

private:
    Matrix m_;
};

}  // namespace qfd
