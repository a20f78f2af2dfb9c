#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "matrix.hpp"
#include "rational.hpp"

namespace mvop {

enum class SolveStatus { Unique, RankDeficient, Inconsistent };

struct SolveResult {
    SolveStatus status = SolveStatus::Unique;
    std::size_t rank = 0;
    QMat x; // valid only when status == Unique
};

/// Solves A X = B exactly for a (possibly tall) rational system.
/// Rows are scaled to integers and reduced by Bareiss fraction-free
/// elimination, so every intermediate stays in Z and the k-th pivot divides
/// the next step exactly.
inline SolveResult solve_exact(const QMat& a, const QMat& b)
{
    if (a.rows() != b.rows())
        fail(ErrorKind::DimensionMismatch, "solve: row count of A and B differ");
    const std::size_t m = a.rows(), n = a.cols(), r = b.cols(), w = n + r;

    std::vector<std::vector<mpz_class>> t(m, std::vector<mpz_class>(w));
    for (std::size_t i = 0; i < m; ++i) {
        mpz_class l = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).denominator().get_mpz_t());
        for (std::size_t j = 0; j < r; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b(i, j).denominator().get_mpz_t());
        for (std::size_t j = 0; j < w; ++j) {
            const Rational& v = j < n ? a(i, j) : b(i, j - n);
            t[i][j] = v.numerator() * (l / v.denominator());
        }
    }

    mpz_class prev = 1;
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && t[p][col] == 0)
            ++p;
        if (p == m)
            continue;
        std::swap(t[p], t[row]);
        for (std::size_t i = row + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < w; ++j) {
                mpz_class v = t[row][col] * t[i][j] - t[i][col] * t[row][j];
                mpz_divexact(t[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            t[i][col] = 0;
        }
        prev = t[row][col];
        pivot_col.push_back(col);
        ++row;
    }

    SolveResult res;
    res.rank = row;
    for (std::size_t i = row; i < m; ++i)
        for (std::size_t j = n; j < w; ++j)
            if (t[i][j] != 0) {
                res.status = SolveStatus::Inconsistent;
                return res;
            }
    if (row < n) {
        res.status = SolveStatus::RankDeficient;
        return res;
    }

    res.x = QMat(n, r);
    for (std::size_t c = 0; c < r; ++c)
        for (std::size_t k = n; k-- > 0;) {
            Rational acc(mpz_class(t[k][n + c]));
            for (std::size_t j = k + 1; j < n; ++j)
                acc -= Rational(mpz_class(t[k][j])) * res.x(j, c);
            res.x(k, c) = acc / Rational(mpz_class(t[k][k]));
        }
    return res;
}

} // namespace mvop
