#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "sbl/types.hpp"

namespace sbl {

/// Dense complex matrix, row-major storage. Square matrices are the common
/// case throughout the library; rectangular shapes appear in rank work
/// (Jacobians, stacked vectorizations).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// Elementary matrix E_{r,c}: a single 1 at (r, c).
    static Matrix unit(std::size_t n, std::size_t r, std::size_t c) {
        Matrix m(n, n);
        m(r, c) = 1.0;
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.begin()->size() : 0;
        Matrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            require(row.size() == c, "from_rows: ragged row lengths");
            std::size_t j = 0;
            for (cplx v : row) m(i, j++) = v;
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    /// Dimension of a square matrix.
    std::size_t dim() const {
        require(is_square(), "square matrix required");
        return rows_;
    }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    cplx trace() const {
        cplx s = 0.0;
        for (std::size_t i = 0; i < dim(); ++i) s += (*this)(i, i);
        return s;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (const cplx& v : data_)
            if (!is_finite(v)) return false;
        return true;
    }

    std::vector<cplx> column(std::size_t j) const {
        std::vector<cplx> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, const std::vector<cplx>& c) {
        require(c.size() == rows_, "set_column: length mismatch");
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    Matrix& operator+=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix addition: dimension mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix subtraction: dimension mismatch");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    Matrix& operator*=(cplx s) {
        for (cplx& v : data_) v *= s;
        return *this;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

inline Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
inline Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
inline Matrix operator*(Matrix a, cplx s) { return a *= s; }
inline Matrix operator*(cplx s, Matrix a) { return a *= s; }
inline Matrix operator*(Matrix a, double s) { return a *= cplx(s); }
inline Matrix operator*(double s, Matrix a) { return a *= cplx(s); }

inline Matrix operator-(const Matrix& a) {
    Matrix m = a;
    for (cplx& v : m.data()) v = -v;
    return m;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "matrix product: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline std::vector<cplx> operator*(const Matrix& a, const std::vector<cplx>& x) {
    require(a.cols() == x.size(), "matrix-vector product: dimension mismatch");
    std::vector<cplx> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

/// tr(X Y) without forming the product.
inline cplx trace_product(const Matrix& x, const Matrix& y) {
    require(x.cols() == y.rows() && y.cols() == x.rows(), "trace_product: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) s += x(i, k) * y(k, i);
    return s;
}

inline double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

}  // namespace sbl
