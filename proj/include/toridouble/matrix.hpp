#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "toridouble/errors.hpp"

namespace toridouble {

using Integer = mpz_class;
using Rational = mpq_class;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeMismatch("ragged matrix initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix column(const std::vector<T>& v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }
    static Matrix diagonal(const std::vector<T>& v) {
        Matrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeMismatch("set_block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    static Matrix hstack(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_) throw ShapeMismatch("hstack row mismatch");
        Matrix m(a.rows_, a.cols_ + b.cols_);
        m.set_block(0, 0, a);
        m.set_block(0, a.cols_, b);
        return m;
    }
    static Matrix vstack(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.cols_) throw ShapeMismatch("vstack column mismatch");
        Matrix m(a.rows_ + b.rows_, a.cols_);
        m.set_block(0, 0, a);
        m.set_block(a.rows_, 0, b);
        return m;
    }
    // [[a, b], [c, d]]
    static Matrix blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
        return vstack(hstack(a, b), hstack(c, d));
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != 0) return false;
        return true;
    }
    bool is_antisymmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                if ((*this)(i, j) != -(*this)(j, i)) return false;
        return true;
    }
    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = -a.data_[i];
        return m;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
        Matrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix m(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = s * a.data_[i];
        return m;
    }
    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
        if (a.cols_ != v.size()) throw ShapeMismatch("matrix-vector shape mismatch");
        std::vector<T> out(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
        return out;
    }

    const std::vector<T>& data() const { return data_; }

private:
    void check_same(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw ShapeMismatch("elementwise shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using IntMatrix = Matrix<Integer>;
using RatVector = std::vector<Rational>;
using IntVector = std::vector<Integer>;

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
bool is_integral(const RatMatrix& m);
bool is_integral(const RatVector& v);
// throws ValidationError when an entry is not an integer
IntMatrix to_integer(const RatMatrix& m);
IntVector to_integer(const RatVector& v);

Rational det(const RatMatrix& m);
Integer det(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
// throws SingularMatrix
RatMatrix inverse(const RatMatrix& m);
// columns span the right kernel of m
RatMatrix nullspace(const RatMatrix& m);
// exact leading-principal-minor test on the symmetric part
bool is_positive_definite(const RatMatrix& m);
RatMatrix symmetric_part(const RatMatrix& m);

Rational dot(const RatVector& a, const RatVector& b);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator*(const Rational& s, const RatVector& a);
// x - floor(x) entrywise, landing in [0, 1)
RatVector frac(const RatVector& v);
Integer floor_q(const Rational& q);

// correctly rounded (to nearest, ties to even)
double to_double(const Rational& q);

// "3", "-3/4", "0.125", "1e-3", "-2.5e2"
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const RatMatrix& m);
std::string to_string(const IntMatrix& m);
std::string to_string(const RatVector& v);
std::string to_string(const IntVector& v);

// Exact complex rational matrix re + i·im.
struct CRatMatrix {
    RatMatrix re;
    RatMatrix im;

    std::size_t rows() const { return re.rows(); }
    std::size_t cols() const { return re.cols(); }
    CRatMatrix transpose() const { return {re.transpose(), im.transpose()}; }
    CRatMatrix conj() const { return {re, -im}; }
    friend CRatMatrix operator*(const CRatMatrix& a, const CRatMatrix& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRatMatrix operator+(const CRatMatrix& a, const CRatMatrix& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRatMatrix operator-(const CRatMatrix& a) { return {-a.re, -a.im}; }
    friend bool operator==(const CRatMatrix& a, const CRatMatrix& b) { return a.re == b.re && a.im == b.im; }
};

CRatMatrix inverse(const CRatMatrix& m);
CRatMatrix to_complex(const RatMatrix& m);

struct CRational {
    Rational re = 0;
    Rational im = 0;

    friend CRational operator+(const CRational& a, const CRational& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRational operator-(const CRational& a, const CRational& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRational operator*(const CRational& a, const CRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const CRational& a, const CRational& b) { return a.re == b.re && a.im == b.im; }
};

struct CRatVector {
    RatVector re;
    RatVector im;

    CRatVector() = default;
    CRatVector(RatVector r, RatVector i) : re(std::move(r)), im(std::move(i)) {}
    explicit CRatVector(RatVector r) : re(std::move(r)), im(re.size(), Rational(0)) {}

    std::size_t size() const { return re.size(); }
    CRational operator[](std::size_t i) const { return {re[i], im[i]}; }
    CRatVector conj() const;
    friend CRatVector operator+(const CRatVector& a, const CRatVector& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRatVector operator-(const CRatVector& a, const CRatVector& b) { return {a.re - b.re, a.im - b.im}; }
    friend bool operator==(const CRatVector& a, const CRatVector& b) { return a.re == b.re && a.im == b.im; }
};

CRatVector operator*(const CRatMatrix& m, const CRatVector& v);
// bilinear a^T b, no conjugation
CRational dot(const CRatVector& a, const CRatVector& b);
std::string to_string(const CRational& z);
std::string to_string(const CRatVector& v);
std::string to_string(const CRatMatrix& m);
// "a+bi", "-i", "0.5-2/3i", "3"
CRational parse_complex(const std::string& text);

}  // namespace toridouble
