#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "ratfunc.hpp"

namespace mvop {

inline PolyMat derivative(const PolyMat& m, unsigned order = 1)
{
    return m.map([order](const PolyX& p) { return p.derivative(order); });
}

/// Largest entry degree; -1 for the zero matrix.
inline int degree(const PolyMat& m)
{
    int d = -1;
    for (const auto& p : m.entries())
        d = std::max(d, p.degree());
    return d;
}

/// Matrix of the x^k coefficients of every entry.
inline QMat coeff(const PolyMat& m, std::size_t k)
{
    return m.map([k](const PolyX& p) { return p.coeff(k); });
}

/// Differential operator sum_j d^j F_j(x) with matrix polynomial coefficients,
/// acting on row vectors / matrices from the right:
///   (P . D)(x) = sum_j P^{(j)}(x) F_j(x).
class MatDiffOp {
public:
    MatDiffOp() = default;
    MatDiffOp(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
    explicit MatDiffOp(std::vector<PolyMat> coeffs)
    {
        if (coeffs.empty())
            fail(ErrorKind::InvalidArgument, "operator needs at least one coefficient to fix its shape");
        rows_ = coeffs.front().rows();
        cols_ = coeffs.front().cols();
        for (const auto& c : coeffs)
            if (c.rows() != rows_ || c.cols() != cols_)
                fail(ErrorKind::DimensionMismatch, "operator coefficients of different shapes");
        c_ = std::move(coeffs);
        trim();
    }

    static MatDiffOp identity(std::size_t n) { return MatDiffOp({PolyMat::identity(n)}); }
    static MatDiffOp constant(const PolyMat& f0) { return MatDiffOp({f0}); }
    static MatDiffOp constant(const QMat& f0) { return MatDiffOp({lift<XVar>(f0)}); }
    static MatDiffOp scalar(const PolyX& f0) { return MatDiffOp({PolyMat{{f0}}}); }
    /// d^k * c as a 1x1 operator.
    static MatDiffOp d(unsigned k, const PolyX& c = PolyX(1))
    {
        std::vector<PolyMat> v(k + 1, PolyMat(1, 1));
        v[k](0, 0) = c;
        return MatDiffOp(std::move(v));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    /// -1 for the zero operator.
    int order() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<PolyMat>& coeffs() const { return c_; }
    PolyMat coeff(std::size_t j) const { return j < c_.size() ? c_[j] : PolyMat(rows_, cols_); }
    PolyMat leading() const { return c_.empty() ? PolyMat(rows_, cols_) : c_.back(); }

    /// Scalar entry (i, j) as a 1x1 operator.
    MatDiffOp entry(std::size_t i, std::size_t j) const
    {
        MatDiffOp out(1, 1);
        for (const auto& c : c_)
            out.c_.push_back(PolyMat{{c(i, j)}});
        out.trim();
        return out;
    }

    /// Places a 1x1 operator at position (i, j) of an n x m operator.
    MatDiffOp placed(std::size_t n, std::size_t m, std::size_t i, std::size_t j) const
    {
        if (rows_ != 1 || cols_ != 1)
            fail(ErrorKind::DimensionMismatch, "placed() expects a scalar operator");
        MatDiffOp out(n, m);
        for (const auto& c : c_) {
            PolyMat e(n, m);
            e(i, j) = c(0, 0);
            out.c_.push_back(std::move(e));
        }
        return out;
    }

    template <class F>
    MatDiffOp map_coeffs(F&& f) const
    {
        std::vector<PolyMat> v;
        for (const auto& c : c_)
            v.push_back(f(c));
        if (v.empty())
            return MatDiffOp(rows_, cols_);
        return MatDiffOp(std::move(v));
    }

    MatDiffOp& operator+=(const MatDiffOp& o)
    {
        require_same_shape(o);
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size(), PolyMat(rows_, cols_));
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            c_[j] += o.c_[j];
        trim();
        return *this;
    }
    MatDiffOp& operator-=(const MatDiffOp& o) { return *this += -o; }

    friend MatDiffOp operator+(MatDiffOp a, const MatDiffOp& b) { return a += b; }
    friend MatDiffOp operator-(MatDiffOp a, const MatDiffOp& b) { return a -= b; }
    friend MatDiffOp operator-(MatDiffOp a)
    {
        for (auto& c : a.c_)
            c = -c;
        return a;
    }
    friend MatDiffOp operator*(const Rational& s, MatDiffOp a)
    {
        for (auto& c : a.c_)
            c = c * s;
        a.trim();
        return a;
    }
    friend MatDiffOp operator*(MatDiffOp a, const Rational& s) { return s * std::move(a); }
    friend bool operator==(const MatDiffOp& a, const MatDiffOp& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.c_ == b.c_;
    }

    std::string str() const
    {
        if (c_.empty())
            return "0";
        std::string out;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j].is_zero())
                continue;
            if (!out.empty())
                out += " + ";
            if (j > 0)
                out += j == 1 ? "d*" : "d^" + std::to_string(j) + "*";
            out += to_string(c_[j]);
        }
        return out;
    }

private:
    void require_same_shape(const MatDiffOp& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            fail(ErrorKind::DimensionMismatch, "operators of different shapes");
    }
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<PolyMat> c_;
};

inline bool is_zero(const MatDiffOp& d) { return d.is_zero(); }

inline PolyMat apply(const PolyMat& p, const MatDiffOp& d)
{
    if (p.cols() != d.rows())
        fail(ErrorKind::DimensionMismatch, "apply: P has " + std::to_string(p.cols()) + " columns, operator has " +
                                               std::to_string(d.rows()) + " rows");
    PolyMat out(p.rows(), d.cols());
    PolyMat dp = p;
    for (std::size_t j = 0; j < d.coeffs().size(); ++j) {
        if (j > 0)
            dp = derivative(dp);
        if (dp.is_zero())
            break;
        out += dp * d.coeffs()[j];
    }
    return out;
}

/// The product d1 d2: apply d1 first, then d2.
inline MatDiffOp compose(const MatDiffOp& d1, const MatDiffOp& d2)
{
    if (d1.cols() != d2.rows())
        fail(ErrorKind::DimensionMismatch, "compose: inner dimensions " + std::to_string(d1.cols()) + " vs " +
                                               std::to_string(d2.rows()));
    if (d1.is_zero() || d2.is_zero())
        return MatDiffOp(d1.rows(), d2.cols());
    const auto& f = d1.coeffs();
    const auto& g = d2.coeffs();
    std::vector<PolyMat> h(f.size() + g.size() - 1, PolyMat(d1.rows(), d2.cols()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        // f_i^{(r)} for r = 0..max order of d2
        std::vector<PolyMat> fd{f[i]};
        for (std::size_t r = 1; r < g.size(); ++r)
            fd.push_back(derivative(fd.back()));
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g[j].is_zero())
                continue;
            for (std::size_t k = 0; k <= j; ++k) {
                const PolyMat& fdr = fd[j - k];
                if (fdr.is_zero())
                    continue;
                h[i + k] += (fdr * g[j]) * binomial(static_cast<unsigned>(j), static_cast<unsigned>(k));
            }
        }
    }
    return MatDiffOp(std::move(h));
}

inline MatDiffOp pow(const MatDiffOp& d, unsigned k)
{
    if (!d.is_square())
        fail(ErrorKind::DimensionMismatch, "power of a non-square operator");
    MatDiffOp out = MatDiffOp::identity(d.rows());
    for (unsigned i = 0; i < k; ++i)
        out = compose(out, d);
    return out;
}

/// Composition of a list, left to right.
inline MatDiffOp compose_all(std::initializer_list<MatDiffOp> ops)
{
    auto it = ops.begin();
    MatDiffOp out = *it;
    for (++it; it != ops.end(); ++it)
        out = compose(out, *it);
    return out;
}

/// True when deg F_j <= j for every coefficient.
inline bool in_bounded_degree_class(const MatDiffOp& d)
{
    for (std::size_t j = 0; j < d.coeffs().size(); ++j)
        if (degree(d.coeffs()[j]) > static_cast<int>(j))
            return false;
    return true;
}

/// Lambda_n(D) = sum_i [n]_i * (x^i coefficient of F_i).
inline EigMatN eigenvalue_poly(const MatDiffOp& d)
{
    EigMatN out(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.coeffs().size(); ++i) {
        const PolyMat& f = d.coeffs()[i];
        if (degree(f) > static_cast<int>(i))
            fail(ErrorKind::NotInBoundedDegreeClass,
                 "coefficient of d^" + std::to_string(i) + " has degree " + std::to_string(degree(f)));
        QMat top = coeff(f, i);
        if (top.is_zero())
            continue;
        PolyN ff = falling_factorial<NVar>(static_cast<unsigned>(i));
        out += top.map([&](const Rational& c) { return ff * c; });
    }
    return out;
}

/// Nonnegative integer roots of a polynomial in n; requires p != 0.
inline std::vector<long> nonnegative_integer_roots(const PolyN& p)
{
    std::vector<long> roots;
    if (p.is_zero())
        fail(ErrorKind::InvalidArgument, "roots of the zero polynomial");
    // Cauchy bound: every root satisfies |r| <= 1 + max |a_i / a_d|.
    Rational bound(0);
    for (int i = 0; i < p.degree(); ++i)
        bound = std::max(bound, abs(p.coeff(i) / p.leading()));
    mpz_class top = (bound + 1).floor();
    if (!top.fits_slong_p())
        fail(ErrorKind::InvalidArgument, "root bound too large");
    for (long r = 0; r <= top.get_si(); ++r)
        if (p(Rational(r)).is_zero())
            roots.push_back(r);
    return roots;
}

struct DegreeCertificate {
    bool preserving = false;
    PolyN det;               // det Lambda_n(D)
    bool det_identically_zero = false;
    std::vector<long> roots; // nonnegative integer roots of det
};

/// deg(P . D) = deg P for all P iff det Lambda_n(D) never vanishes on n = 0, 1, 2, ...
inline DegreeCertificate is_degree_preserving(const MatDiffOp& d)
{
    if (!d.is_square())
        fail(ErrorKind::DimensionMismatch, "degree preservation needs a square operator");
    DegreeCertificate cert;
    cert.det = determinant(eigenvalue_poly(d));
    if (cert.det.is_zero()) {
        // every n is a root; report the first one
        cert.det_identically_zero = true;
        cert.roots = {0};
        return cert;
    }
    cert.roots = nonnegative_integer_roots(cert.det);
    cert.preserving = cert.roots.empty();
    return cert;
}

enum class ScalarFamily { Hermite, Laguerre, Jacobi };

inline std::string to_string(ScalarFamily f)
{
    switch (f) {
    case ScalarFamily::Hermite: return "hermite";
    case ScalarFamily::Laguerre: return "laguerre";
    case ScalarFamily::Jacobi: return "jacobi";
    }
    return "?";
}

/// W(x) = w(x) R(x) with w a classical scalar weight and R a symmetric
/// polynomial matrix. For Hermite `a` holds the shift b; for Laguerre `a` is
/// alpha; for Jacobi (a, b) are (alpha, beta).
struct WeightForm {
    ScalarFamily family = ScalarFamily::Jacobi;
    Rational a;
    Rational b;
    PolyMat poly;

    std::size_t size() const { return poly.rows(); }

    /// w'/w.
    RatFunc log_derivative() const
    {
        switch (family) {
        case ScalarFamily::Hermite:
            return RatFunc(PolyX{a * 2, Rational(-2)});
        case ScalarFamily::Laguerre:
            return RatFunc(PolyX{a, Rational(-1)}, PolyX{Rational(0), Rational(1)});
        case ScalarFamily::Jacobi:
            return RatFunc(PolyX{b - a, -(a + b)}, PolyX{Rational(1), Rational(0), Rational(-1)});
        }
        return {};
    }
};

namespace detail {

inline RatFunc int_power(const PolyX& base, const Rational& e)
{
    if (!e.is_integer() || !e.numerator().fits_slong_p())
        fail(ErrorKind::UnsupportedWeight, "scalar weight ratio is not rational");
    long k = e.numerator().get_si();
    PolyX p = pow(base, static_cast<unsigned>(k < 0 ? -k : k));
    return k < 0 ? RatFunc(PolyX(1), p) : RatFunc(p);
}

/// w_num / w_den as a rational function.
inline RatFunc scalar_ratio(const WeightForm& num, const WeightForm& den)
{
    if (num.family != den.family)
        fail(ErrorKind::MixedFamilies, to_string(num.family) + " vs " + to_string(den.family));
    switch (num.family) {
    case ScalarFamily::Hermite:
        if (num.a != den.a)
            fail(ErrorKind::UnsupportedWeight, "Hermite weights with different shifts have a non-rational ratio");
        return RatFunc(1);
    case ScalarFamily::Laguerre:
        return int_power(PolyX{Rational(0), Rational(1)}, num.a - den.a);
    case ScalarFamily::Jacobi:
        return int_power(PolyX{Rational(1), Rational(-1)}, num.a - den.a) *
               int_power(PolyX{Rational(1), Rational(1)}, num.b - den.b);
    }
    return RatFunc(1);
}

inline PolyMat require_polynomial(const RatMat& m, std::size_t k)
{
    PolyMat out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_polynomial())
                fail(ErrorKind::NonPolynomialAdjoint, "coefficient of d^" + std::to_string(k) + " entry (" +
                                                          std::to_string(i) + "," + std::to_string(j) +
                                                          ") is " + m(i, j).str());
            out(i, j) = m(i, j).num() * (Rational(1) / m(i, j).den().leading());
        }
    return out;
}

} // namespace detail

/// Adjoint of D between two weights: the operator D' with
///   <P . D, Q>_to = <P, Q . D'>_from
/// for all matrix polynomials P, Q, i.e. D' = W_to D^* W_from^{-1}.
inline MatDiffOp formal_adjoint(const MatDiffOp& d, const WeightForm& to, const WeightForm& from)
{
    if (to.size() != d.cols() || from.size() != d.rows())
        fail(ErrorKind::DimensionMismatch, "adjoint: weight sizes do not match the operator");
    if (d.is_zero())
        return MatDiffOp(d.cols(), d.rows());

    const RatFunc ell = to.log_derivative();
    const RatMat r_from_inv = mat_inverse(to_ratmat(from.poly));
    const RatFunc ratio = detail::scalar_ratio(to, from);
    const std::size_t m = d.coeffs().size();

    // sum_{s >= k} (-1)^s C(s,k) L^{s-k}(R_to F_s^T), with L(M) = ell M + M'
    std::vector<RatMat> acc(m, RatMat(d.cols(), d.rows()));
    for (std::size_t s = 0; s < m; ++s) {
        RatMat cur = to_ratmat(to.poly * d.coeffs()[s].transpose());
        for (std::size_t j = 0; j <= s; ++j) {
            if (j > 0)
                cur = cur.map([&](const RatFunc& f) { return ell * f; }) + derivative(cur);
            const std::size_t k = s - j;
            Rational c = binomial(static_cast<unsigned>(s), static_cast<unsigned>(k));
            if (s % 2)
                c = -c;
            acc[k] += cur.map([&](const RatFunc& f) { return f * c; });
        }
    }

    std::vector<PolyMat> g;
    for (std::size_t k = 0; k < m; ++k) {
        RatMat gk = acc[k] * r_from_inv;
        gk = gk.map([&](const RatFunc& f) { return ratio * f; });
        g.push_back(detail::require_polynomial(gk, k));
    }
    return MatDiffOp(std::move(g));
}

/// One-weight adjoint D^dagger = W D^* W^{-1}.
inline MatDiffOp formal_adjoint(const MatDiffOp& d, const WeightForm& w) { return formal_adjoint(d, w, w); }

} // namespace mvop
