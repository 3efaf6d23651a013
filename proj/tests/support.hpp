// Shared fixtures and independent oracles for the test binaries.

#ifndef FANOCONE_TESTS_SUPPORT_HPP
#define FANOCONE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>
#include "fanocone/fanocone.hpp"

namespace fanocone::testing {

using IntRows = std::vector<std::vector<std::int64_t>>;

inline LogFanoCone make_cone(const IntRows& rays, const std::vector<std::string>& boundary = {},
                             const std::string& label = {})
{
    std::vector<RationalVector> rs;
    for (const auto& r : rays)
        rs.push_back(to_rational(r));
    std::vector<Rational> c;
    for (const auto& s : boundary)
        c.push_back(parse_rational(s));
    return LogFanoCone::make(ToricConeData::make(rs, c, label));
}

inline LogFanoCone affine_space(std::size_t n)
{
    IntRows rays(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        rays[i][i] = 1;
    return make_cone(rays, {}, "C^" + std::to_string(n));
}

inline LogFanoCone conifold()
{
    return make_cone({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, {}, "conifold");
}

/** Gorenstein cone over a random lattice polytope at height 1. */
inline LogFanoCone random_gorenstein(std::mt19937_64& rng, std::size_t n, int box = 2)
{
    std::uniform_int_distribution<int> coord(-box, box);
    std::uniform_int_distribution<int> count(static_cast<int>(n), static_cast<int>(n) + 4);
    for (;;)
    {
        std::vector<RationalVector> pts;
        const int m = count(rng);
        for (int k = 0; k < m; ++k)
        {
            RationalVector p;
            for (std::size_t i = 0; i + 1 < n; ++i)
                p.emplace_back(coord(rng));
            p.emplace_back(1);
            pts.push_back(std::move(p));
        }
        try
        {
            auto ext = extreme_rays(PolyCone::from_rays(pts));
            return LogFanoCone::make(ToricConeData::make(ext, {}));
        }
        catch (const Error&)
        {
        }
    }
}

/** Simplicial cone with random rays and random boundary coefficients in [0, 1). */
inline LogFanoCone random_simplicial(std::mt19937_64& rng, std::size_t n, int box = 3)
{
    std::uniform_int_distribution<int> coord(-box, box);
    std::uniform_int_distribution<int> num(0, 5), den(1, 6);
    for (;;)
    {
        std::vector<RationalVector> rays(n);
        for (auto& r : rays)
            for (std::size_t i = 0; i < n; ++i)
                r.emplace_back(coord(rng));
        if (linalg::det(linalg::rows_of(rays)) == 0)
            continue;
        std::vector<Rational> c;
        for (std::size_t i = 0; i < n; ++i)
        {
            Rational q(num(rng), den(rng));
            c.push_back(q < 1 ? q : Rational(0));
        }
        try
        {
            return LogFanoCone::make(ToricConeData::make(rays, c));
        }
        catch (const Error&)
        {
        }
    }
}

/** Mixed family used by the randomized suites. */
inline LogFanoCone random_cone(std::mt19937_64& rng, std::size_t max_rank = 4)
{
    std::uniform_int_distribution<std::size_t> rank(2, max_rank);
    const std::size_t n = rank(rng);
    return (rng() & 1) ? random_gorenstein(rng, n) : random_simplicial(rng, n);
}

/** Positive rational combination of the rays: an interior point of sigma. */
inline RationalVector random_reeb(std::mt19937_64& rng, const LogFanoCone& x)
{
    std::uniform_int_distribution<int> num(1, 9), den(1, 4);
    RationalVector xi(x.rank(), Rational(0));
    for (const auto& r : x.sigma().rays())
    {
        Rational w(num(rng), den(rng));
        for (std::size_t i = 0; i < xi.size(); ++i)
            xi[i] += w * r[i];
    }
    return xi;
}

/** Facets of the cone spanned by `rays` from all (n-1)-subsets: the brute-force oracle. */
inline std::vector<RationalVector> brute_force_facets(const std::vector<RationalVector>& rays)
{
    const std::size_t n = rays[0].size();
    std::vector<RationalVector> out;
    std::vector<bool> pick(rays.size(), false);
    std::fill(pick.end() - static_cast<long>(n - 1), pick.end(), true);
    do
    {
        RationalMatrix m;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (pick[i])
                m.push_back(rays[i]);
        if (linalg::rank(m) != n - 1)
            continue;
        // Normal via cofactors of the (n-1) x n matrix.
        RationalVector normal(n);
        for (std::size_t j = 0; j < n; ++j)
        {
            RationalMatrix minor;
            for (const auto& row : m)
            {
                RationalVector r;
                for (std::size_t k = 0; k < n; ++k)
                    if (k != j)
                        r.push_back(row[k]);
                minor.push_back(r);
            }
            normal[j] = ((j % 2) ? -1 : 1) * linalg::det(minor);
        }
        bool pos = true, neg = true;
        for (const auto& r : rays)
        {
            Rational s = dot(normal, r);
            pos = pos && s >= 0;
            neg = neg && s <= 0;
        }
        if (neg && !pos)
            for (auto& c : normal)
                c = -c;
        if (pos || neg)
            out.push_back(primitive(normal));
    } while (std::next_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/** Golden-section minimization of a unimodal function on [a, b]. */
inline double golden_section(const std::function<double(double)>& f, double a, double b, double tol = 1e-12)
{
    const double r = (std::sqrt(5.0) - 1) / 2;
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * (1 + std::abs(a) + std::abs(b)))
    {
        if (fc < fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2;
}

/**
 * Conifold normalized volume on the slice xi_3 = 3, by hand: the dual cone
 * has rays e1, e2, e3 - e1, e3 - e2 and splits along the diagonal
 * {e1, e3 - e1} into two unimodular simplices, giving
 * vol(x, y, z) = z / (x y (z - x)(z - y)).
 */
inline double conifold_hvol_closed(double x, double y)
{
    const double z = 3;
    return 27 * z / (x * y * (z - x) * (z - y));
}

/**
 * Grid + nested golden-section search for the minimum of a function on the
 * open square (0, L)^2; the grid only brackets the minimum.
 */
inline double grid_golden_min(const std::function<double(double, double)>& f, double L, int grid = 40)
{
    double best = INFINITY, bx = 0, by = 0;
    for (int i = 1; i < grid; ++i)
        for (int j = 1; j < grid; ++j)
        {
            const double x = L * i / grid, y = L * j / grid;
            const double v = f(x, y);
            if (v < best)
            {
                best = v;
                bx = x;
                by = y;
            }
        }
    const double h = L / grid;
    auto inner = [&](double x) {
        const double y = golden_section([&](double yy) { return f(x, yy); }, std::max(by - h, 1e-12), std::min(by + h, L - 1e-12));
        return f(x, y);
    };
    const double x = golden_section(inner, std::max(bx - h, 1e-12), std::min(bx + h, L - 1e-12));
    return inner(x);
}

}   // namespace fanocone::testing

#endif
