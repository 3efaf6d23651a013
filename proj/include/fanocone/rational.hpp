/**
 * Exact rational scalars and vectors, plus the small amount of exact linear
 * algebra (rank, determinant, linear solves) the cone code needs.
 */

#ifndef FANOCONE_RATIONAL_HPP
#define FANOCONE_RATIONAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>
#include <boost/multiprecision/gmp.hpp>
#include "error.hpp"

namespace fanocone {

// Expression templates off: values are stored in `auto` and passed to deduced templates freely.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;   // row-major

/**
 * Parse "p", "p/q" or "-p/q". Anything else (including decimals) is
 * rejected with InvalidInput.
 */
inline Rational parse_rational(const std::string& text)
{
    auto bad = [&]() -> Error {
        return Error(ErrorCode::InvalidInput, "not a rational literal: '" + text + "'");
    };
    if (text.empty())
        throw bad();
    auto is_int = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size())
            return false;
        return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    if (!is_int(num))
        throw bad();
    if (num[0] == '+')
        num.erase(0, 1);
    if (slash == std::string::npos)
        return Rational(BigInt(num));
    std::string den = text.substr(slash + 1);
    if (!is_int(den) || den[0] == '-' || den[0] == '+')
        throw bad();
    BigInt d(den);
    if (d == 0)
        throw Error(ErrorCode::InvalidInput, "zero denominator in '" + text + "'");
    return Rational(BigInt(num), d);
}

/** Canonical "p/q" form; integers print without a denominator. */
inline std::string to_string(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q)
{
    return q.convert_to<double>();
}

inline std::vector<double> to_double(const RationalVector& v)
{
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = to_double(v[i]);
    return out;
}

inline RationalVector to_rational(const std::vector<std::int64_t>& v)
{
    RationalVector out;
    out.reserve(v.size());
    for (auto x : v)
        out.emplace_back(x);
    return out;
}

template <typename T, typename U>
auto dot(const std::vector<T>& a, const std::vector<U>& b)
{
    using R = decltype(a[0] * b[0]);
    R s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/** Rescale a nonzero rational vector to the unique primitive integer vector on its ray. */
inline RationalVector primitive(const RationalVector& v)
{
    BigInt lcm_den = 1;
    for (const auto& x : v)
        lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
    BigInt g = 0;
    std::vector<BigInt> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
        ints[i] = numerator(v[i]) * (lcm_den / denominator(v[i]));
        g = boost::multiprecision::gcd(g, ints[i]);
    }
    if (g == 0)
        throw Error(ErrorCode::InvalidInput, "zero vector has no primitive representative");
    if (g < 0)
        g = -g;
    RationalVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rational(ints[i] / g);
    return out;
}

inline bool is_zero(const RationalVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

namespace linalg {

/** Row-reduce in place; returns the pivot columns. */
inline std::vector<std::size_t> row_reduce(RationalMatrix& m)
{
    std::vector<std::size_t> pivots;
    if (m.empty())
        return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c)
    {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j)
            m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i)
        {
            if (i == r || m[i][c] == 0)
                continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(RationalMatrix m)
{
    return row_reduce(m).size();
}

/** Determinant of a square matrix by fraction-tracking elimination. */
inline Rational det(RationalMatrix m)
{
    const std::size_t n = m.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t p = c;
        while (p < n && m[p][c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c)
        {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t i = c + 1; i < n; ++i)
        {
            if (m[i][c] == 0)
                continue;
            Rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j)
                m[i][j] -= f * m[c][j];
        }
    }
    return d;
}

/**
 * Solve A x = b exactly. Returns nullopt when the system is inconsistent;
 * free variables are set to zero when it is underdetermined.
 */
inline std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    RationalMatrix aug(rows, RationalVector(cols + 1));
    for (std::size_t i = 0; i < rows; ++i)
    {
        std::copy(a[i].begin(), a[i].end(), aug[i].begin());
        aug[i][cols] = b[i];
    }
    auto pivots = row_reduce(aug);
    if (!pivots.empty() && pivots.back() == cols)
        return std::nullopt;
    RationalVector x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug[r][cols];
    return x;
}

/** Columns-as-vectors convenience: the matrix whose rows are the given vectors. */
inline RationalMatrix rows_of(const std::vector<RationalVector>& vs)
{
    return RationalMatrix(vs.begin(), vs.end());
}

inline RationalMatrix transpose(const RationalMatrix& m)
{
    if (m.empty())
        return {};
    RationalMatrix t(m[0].size(), RationalVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            t[j][i] = m[i][j];
    return t;
}

}   // namespace linalg

}   // namespace fanocone

#endif
