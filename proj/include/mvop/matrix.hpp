#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace mvop {

namespace detail {
// resolved by argument-dependent lookup at instantiation
template <class T>
bool entry_is_zero(const T& x)
{
    return is_zero(x);
}
} // namespace detail

/// Dense row-major matrix over an exact ring R. R{} must be the ring zero.
template <class R>
class Mat {
public:
    using value_type = R;

    Mat() = default;
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<R> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries))
    {
        if (e_.size() != rows_ * cols_)
            fail(ErrorKind::DimensionMismatch, "entry count does not match shape");
    }
    Mat(std::initializer_list<std::initializer_list<R>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                fail(ErrorKind::DimensionMismatch, "ragged matrix literal");
            e_.insert(e_.end(), r.begin(), r.end());
        }
    }

    static Mat identity(std::size_t n)
    {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = R(1);
        return m;
    }

    /// Matrix unit E_{i,j}.
    static Mat unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j)
    {
        Mat m(rows, cols);
        m(i, j) = R(1);
        return m;
    }

    static Mat diagonal(const std::vector<R>& d)
    {
        Mat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const std::vector<R>& entries() const { return e_; }

    R& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& x : e_)
            if (!detail::entry_is_zero(x))
                return false;
        return true;
    }

    Mat transpose() const
    {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    template <class F>
    auto map(F&& f) const -> Mat<decltype(f(std::declval<const R&>()))>
    {
        using S = decltype(f(std::declval<const R&>()));
        std::vector<S> out;
        out.reserve(e_.size());
        for (const auto& x : e_)
            out.push_back(f(x));
        return Mat<S>(rows_, cols_, std::move(out));
    }

    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Mat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    Mat& operator+=(const Mat& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k)
            e_[k] += o.e_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o)
    {
        require_same_shape(o);
        for (std::size_t k = 0; k < e_.size(); ++k)
            e_[k] -= o.e_[k];
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator-(Mat a)
    {
        for (auto& x : a.e_)
            x = -x;
        return a;
    }
    friend Mat operator*(Mat a, const Rational& s)
    {
        for (auto& x : a.e_)
            x = x * s;
        return a;
    }
    friend Mat operator*(const Rational& s, Mat a) { return std::move(a) * s; }

    friend bool operator==(const Mat& a, const Mat& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }

private:
    void require_same_shape(const Mat& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            fail(ErrorKind::DimensionMismatch,
                 "shape " + std::to_string(rows_) + "x" + std::to_string(cols_) + " vs " +
                     std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> e_;
};

template <class A, class B>
auto operator*(const Mat<A>& a, const Mat<B>& b) -> Mat<decltype(std::declval<A>() * std::declval<B>())>
{
    using C = decltype(std::declval<A>() * std::declval<B>());
    if (a.cols() != b.rows())
        fail(ErrorKind::DimensionMismatch, "matrix product inner dimensions " + std::to_string(a.cols()) +
                                               " vs " + std::to_string(b.rows()));
    Mat<C> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (detail::entry_is_zero(a(i, k)))
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

template <class R>
bool is_zero(const Mat<R>& m)
{
    return m.is_zero();
}

using QMat = Mat<Rational>;
using PolyMat = Mat<PolyX>;
using EigMatN = Mat<PolyN>;

inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

template <class Var>
UniPoly<Var> exact_div(const UniPoly<Var>& a, const UniPoly<Var>& b)
{
    auto [q, r] = a.divmod(b);
    if (!r.is_zero())
        fail(ErrorKind::InvalidArgument, "inexact polynomial division");
    return q;
}

/// Determinant by fraction-free (Bareiss) elimination over an integral domain
/// with exact division.
template <class R>
R determinant(Mat<R> m)
{
    if (!m.is_square())
        fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return R(1);
    R prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (detail::entry_is_zero(m(k, k))) {
            std::size_t p = k + 1;
            while (p < n && detail::entry_is_zero(m(p, k)))
                ++p;
            if (p == n)
                return R();
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = exact_div(m(k, k) * m(i, j) - m(i, k) * m(k, j), prev);
            m(i, k) = R();
        }
        prev = m(k, k);
    }
    R d = m(n - 1, n - 1);
    return sign < 0 ? -d : d;
}

/// Classical adjugate: adj(M)·M = M·adj(M) = det(M)·I.
template <class R>
Mat<R> adjugate(const Mat<R>& m)
{
    if (!m.is_square())
        fail(ErrorKind::DimensionMismatch, "adjugate of a non-square matrix");
    const std::size_t n = m.rows();
    Mat<R> adj(n, n);
    if (n == 1) {
        adj(0, 0) = R(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Mat<R> minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i)
                    continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j)
                        continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            R d = determinant(std::move(minor));
            adj(j, i) = ((i + j) % 2) ? -d : d;
        }
    return adj;
}

/// Gauss-Jordan inverse over a field (Rational or RatFunc).
template <class F>
Mat<F> inverse(const Mat<F>& a)
{
    if (!a.is_square())
        fail(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Mat<F> m = a;
    Mat<F> inv = Mat<F>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && detail::entry_is_zero(m(p, k)))
            ++p;
        if (p == n)
            fail(ErrorKind::SingularMatrix, "matrix is singular");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(m(k, j), m(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        const F piv = m(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            m(k, j) = m(k, j) / piv;
            inv(k, j) = inv(k, j) / piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || detail::entry_is_zero(m(i, k)))
                continue;
            const F f = m(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

/// Entrywise evaluation of a matrix over Q[t] at a rational point.
template <class Var>
QMat evaluate(const Mat<UniPoly<Var>>& m, const Rational& t)
{
    return m.map([&](const UniPoly<Var>& p) { return p(t); });
}

template <class Var>
Mat<UniPoly<Var>> lift(const QMat& m)
{
    return m.map([](const Rational& r) { return UniPoly<Var>(r); });
}

template <class R>
std::string to_string(const Mat<R>& m)
{
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i ? "; " : "";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out += j ? ", " : "";
            out += m(i, j).str();
        }
    }
    return out + "]";
}

} // namespace mvop
