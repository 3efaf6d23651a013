/**
 * Truncated index character of the weight semigroup sigma^v cap M,
 *
 *     F(xi, t) = sum_{alpha, <alpha, xi> <= T} exp(-t <alpha, xi>),
 *
 * and extraction of its leading Laurent coefficient lim t^n F(xi, t), which
 * equals vol(xi).
 */

#ifndef FANOCONE_INDEX_CHARACTER_HPP
#define FANOCONE_INDEX_CHARACTER_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>
#include "error.hpp"
#include "rational.hpp"
#include "toric_singularity.hpp"
#include "volume.hpp"

namespace fanocone {

inline constexpr double kTailRelTol = 1e-12;

struct CharacterValue
{
    double value = 0;          // the truncated sum
    double tail_bound = 0;     // upper bound on the omitted terms
    double truncation = 0;     // T
};

namespace detail {

// Integer division rounding toward -inf / +inf; d > 0.
inline std::int64_t floor_div(std::int64_t a, std::int64_t d)
{
    return a >= 0 ? a / d : -((-a + d - 1) / d);
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t d)
{
    return -floor_div(-a, d);
}

/**
 * Integer matrix U with det U = +-1 and U d = e_{n-1}, for primitive d, by
 * Euclidean row reduction of d.
 */
inline std::vector<std::vector<std::int64_t>> unimodular_to_last(std::vector<std::int64_t> d)
{
    const std::size_t n = d.size();
    std::vector<std::vector<std::int64_t>> u(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        u[i][i] = 1;
    for (;;)
    {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (d[i] != 0 && (p == n || std::llabs(d[i]) < std::llabs(d[p])))
                p = i;
        if (p == n)
            throw Error(ErrorCode::Internal, "zero summation direction");
        bool reduced = false;
        for (std::size_t j = 0; j < n; ++j)
        {
            if (j == p || d[j] == 0)
                continue;
            const std::int64_t q = d[j] / d[p];
            d[j] -= q * d[p];
            for (std::size_t k = 0; k < n; ++k)
                u[j][k] -= q * u[p][k];
            reduced = true;
        }
        if (!reduced)
        {
            if (std::llabs(d[p]) != 1)
                throw Error(ErrorCode::Internal, "summation direction is not primitive");
            std::swap(u[p], u[n - 1]);
            std::swap(d[p], d[n - 1]);
            if (d[n - 1] < 0)
                for (auto& c : u[n - 1])
                    c = -c;
            return u;
        }
    }
}

/**
 * w = max over simplices of sum_j <u_{s,j}, xi>. Every lattice point of a
 * simplicial cone is the corner of a translated fundamental parallelepiped,
 * which gives N(s) <= vol(xi) (s + w)^n / n! for the number of semigroup
 * points of level <= s.
 */
inline double parallelepiped_width(const VolumeForm& form, const std::vector<double>& xi)
{
    double w = 0;
    const auto ni = static_cast<Eigen::Index>(xi.size());
    Eigen::Map<const Eigen::VectorXd> x(xi.data(), ni);
    for (const auto& u : form.factors_double())
        w = std::max(w, (u * x).sum());
    return w;
}

/**
 * Bound on sum_{level > T} exp(-t level), from the counting bound above
 * integrated by parts:
 *     vol e^{-tT} sum_{k<=n} (t(T+w))^k / k! / t^n.
 */
inline double tail_bound(double vol_xi, double w, std::size_t n, double t, double trunc)
{
    const double x = t * (trunc + w);
    double term = 1, sum = 1;
    for (std::size_t k = 1; k <= n; ++k)
    {
        term *= x / static_cast<double>(k);
        sum += term;
    }
    return vol_xi * std::exp(-t * trunc) * sum / std::pow(t, static_cast<double>(n));
}

}   // namespace detail

/**
 * Sum over alpha in sigma^v cap Z^n with <alpha, xi> <= T. The last
 * coordinate of alpha is summed as a closed-form geometric run for each
 * choice of the others. Throws TruncationTooSmall when the tail bound
 * exceeds 1e-12 of the partial sum.
 */
inline CharacterValue index_character(const LogFanoCone& x, const VolumeForm& form,
                                      const std::vector<double>& xi, double t, double trunc)
{
    require_reeb(x.sigma(), xi);
    if (!(t > 0))
        throw Error(ErrorCode::InvalidInput, "index character needs t > 0");
    if (!(trunc > 0) || !std::isfinite(trunc))
        throw Error(ErrorCode::InvalidInput, "truncation bound must be positive and finite");
    const std::size_t n = x.rank();

    // sigma^v = {alpha : <alpha, v> >= 0 for every ray v of sigma}; rays are small integers.
    auto as_int = [](const RationalVector& r) {
        std::vector<std::int64_t> ri;
        for (const auto& c : r)
            ri.push_back(numerator(c).convert_to<std::int64_t>());
        return ri;
    };
    std::vector<std::vector<double>> vertices;   // of {alpha in sigma^v : <alpha, xi> <= T}, besides 0
    for (const auto& u : form.dual_rays())
    {
        auto ud = to_double(u);
        const double l = dot(ud, xi);
        for (auto& c : ud)
            c *= trunc / l;
        vertices.push_back(std::move(ud));
    }

    // Change lattice basis (beta = U alpha) so that the geometric run follows
    // the candidate direction giving the fewest columns.
    std::vector<std::vector<std::int64_t>> candidates;
    for (std::size_t i = 0; i < n; ++i)
    {
        std::vector<std::int64_t> e(n, 0);
        e[i] = 1;
        candidates.push_back(std::move(e));
    }
    for (const auto& u : form.dual_rays())
        candidates.push_back(as_int(u));
    std::vector<std::vector<std::int64_t>> basis;
    std::vector<std::int64_t> lo, hi;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& d : candidates)
    {
        auto u = detail::unimodular_to_last(d);
        std::vector<std::int64_t> clo(n, 0), chi(n, 0);
        for (const auto& vtx : vertices)
        {
            for (std::size_t i = 0; i < n; ++i)
            {
                double c = 0;
                for (std::size_t k = 0; k < n; ++k)
                    c += static_cast<double>(u[i][k]) * vtx[k];
                clo[i] = std::min<std::int64_t>(clo[i], static_cast<std::int64_t>(std::floor(c)));
                chi[i] = std::max<std::int64_t>(chi[i], static_cast<std::int64_t>(std::ceil(c)));
            }
        }
        double cost = 1;
        for (std::size_t i = 0; i + 1 < n; ++i)
            cost *= static_cast<double>(chi[i] - clo[i] + 1);
        if (cost < best_cost)
        {
            best_cost = cost;
            basis = std::move(u);
            lo = std::move(clo);
            hi = std::move(chi);
        }
    }
    // alpha = U^{-1} beta, so <v, alpha> = <U^{-T} v, beta> and likewise for xi.
    RationalMatrix um;
    for (const auto& row : basis)
    {
        RationalVector r;
        for (auto c : row)
            r.emplace_back(c);
        um.push_back(std::move(r));
    }
    RationalMatrix ut = linalg::transpose(um);
    std::vector<std::vector<std::int64_t>> rays;
    for (const auto& r : x.sigma().rays())
    {
        auto w = linalg::solve(ut, r);
        if (!w)
            throw Error(ErrorCode::Internal, "singular lattice basis change");
        rays.push_back(as_int(*w));
    }
    std::vector<double> xi_b(n, 0.0);
    {
        Eigen::MatrixXd utd(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                utd(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = static_cast<double>(basis[k][i]);
        Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(xi.data(), static_cast<Eigen::Index>(n));
        Eigen::VectorXd sol = utd.fullPivLu().solve(xv);
        for (std::size_t i = 0; i < n; ++i)
            xi_b[i] = sol[static_cast<Eigen::Index>(i)];
    }
    const std::size_t last = n - 1;
    const double xi_last = xi_b[last];
    const double step = -t * xi_last;
    const double run_den = std::expm1(step);

    // Largest value of sum_{j>k} v_ij alpha_j, and smallest of sum_{j>k} xi_j alpha_j, over the box.
    std::vector<std::vector<std::int64_t>> suffix_max(rays.size(), std::vector<std::int64_t>(n, 0));
    std::vector<double> level_suffix_min(n, 0.0);
    for (std::size_t k = n - 1; k-- > 0;)
    {
        for (std::size_t i = 0; i < rays.size(); ++i)
        {
            const std::int64_t c = rays[i][k + 1];
            suffix_max[i][k] = suffix_max[i][k + 1] + std::max(c * lo[k + 1], c * hi[k + 1]);
        }
        level_suffix_min[k] = level_suffix_min[k + 1]
                            + std::min(xi_b[k + 1] * static_cast<double>(lo[k + 1]),
                                       xi_b[k + 1] * static_cast<double>(hi[k + 1]));
    }

    long double total = 0;
    std::vector<std::int64_t> partial(rays.size(), 0);

    std::function<void(std::size_t, double)> walk = [&](std::size_t k, double level) {
        if (k == last)
        {
            std::int64_t a_lo = lo[last], a_hi = hi[last];
            for (std::size_t i = 0; i < rays.size(); ++i)
            {
                const std::int64_t c = rays[i][last], p = partial[i];
                if (c == 0)
                {
                    if (p < 0)
                        return;
                }
                else if (c > 0)
                    a_lo = std::max(a_lo, detail::ceil_div(-p, c));
                else
                    a_hi = std::min(a_hi, detail::floor_div(p, -c));
            }
            const double room = trunc - level;
            if (xi_last > 0)
                a_hi = std::min<std::int64_t>(a_hi, static_cast<std::int64_t>(std::floor(room / xi_last)));
            else if (xi_last < 0)
                a_lo = std::max<std::int64_t>(a_lo, static_cast<std::int64_t>(std::ceil(room / xi_last)));
            else if (room < 0)
                return;
            if (a_lo > a_hi)
                return;
            const double cnt = static_cast<double>(a_hi - a_lo + 1);
            const double first = std::exp(-t * (level + xi_last * static_cast<double>(a_lo)));
            const double run = (xi_last == 0) ? cnt : std::expm1(step * cnt) / run_den;
            total += static_cast<long double>(first) * static_cast<long double>(run);
            return;
        }
        // Clip coordinate k using the box bounds of the coordinates after it.
        std::int64_t k_lo = lo[k], k_hi = hi[k];
        for (std::size_t i = 0; i < rays.size(); ++i)
        {
            const std::int64_t c = rays[i][k], room = partial[i] + suffix_max[i][k];
            if (c == 0)
            {
                if (room < 0)
                    return;
            }
            else if (c > 0)
                k_lo = std::max(k_lo, detail::ceil_div(-room, c));
            else
                k_hi = std::min(k_hi, detail::floor_div(room, -c));
        }
        const double level_room = trunc - level - level_suffix_min[k];
        if (xi_b[k] > 0)
            k_hi = std::min<std::int64_t>(k_hi, static_cast<std::int64_t>(std::floor(level_room / xi_b[k] + 1e-9)));
        else if (xi_b[k] < 0)
            k_lo = std::max<std::int64_t>(k_lo, static_cast<std::int64_t>(std::ceil(level_room / xi_b[k] - 1e-9)));
        for (std::int64_t a = k_lo; a <= k_hi; ++a)
        {
            for (std::size_t i = 0; i < rays.size(); ++i)
                partial[i] += rays[i][k] * a;
            walk(k + 1, level + xi_b[k] * static_cast<double>(a));
            for (std::size_t i = 0; i < rays.size(); ++i)
                partial[i] -= rays[i][k] * a;
        }
    };
    walk(0, 0.0);

    CharacterValue out;
    out.value = static_cast<double>(total);
    out.truncation = trunc;
    out.tail_bound = detail::tail_bound(vol(form, xi), detail::parallelepiped_width(form, xi), n, t, trunc);
    if (out.tail_bound > kTailRelTol * out.value)
        throw Error(ErrorCode::TruncationTooSmall,
                    "tail bound " + std::to_string(out.tail_bound) + " exceeds 1e-12 of the partial sum");
    return out;
}

/**
 * Smallest truncation (on a doubling search) whose tail bound clears
 * 1e-12 of the leading-order size vol / t^n of F.
 */
inline double auto_truncation(const VolumeForm& form, const std::vector<double>& xi, double t)
{
    const std::size_t n = xi.size();
    const double v = vol(form, xi);
    const double w = detail::parallelepiped_width(form, xi);
    // F >= 1 always; F ~ vol / t^n for small t. Aim below both, with a margin.
    const double target = 0.25 * kTailRelTol * std::max(1.0, v / std::pow(t, static_cast<double>(n)));
    double trunc = 1.0 / t;
    while (detail::tail_bound(v, w, n, t, trunc) > target)
        trunc *= 1.25;
    return trunc;
}

inline CharacterValue index_character(const LogFanoCone& x, const VolumeForm& form,
                                      const std::vector<double>& xi, double t)
{
    return index_character(x, form, xi, t, auto_truncation(form, xi, t));
}

struct CharacterSample
{
    std::vector<double> xi;
    std::vector<double> t_values;
    std::vector<double> F_values;
    double truncation_bound = 0;     // largest T used
    double a0_estimate = 0;
    double a0_error = 0;             // |last two Richardson diagonal entries|
    double vol = 0;                  // closed form, for comparison
    bool agrees = false;             // |a0 - vol| <= 1e-3 vol
};

struct LeadingCoefficientOptions
{
    int j_min = 3;     // t = 2^{-j}
    int j_max = 6;
    double agreement_tol = 1e-3;
};

/**
 * Richardson extrapolation of t^n F(xi, t) to t -> 0 along t = 2^{-j}. The
 * expansion t^n F = a0 + a1 t + a2 t^2 + ... is analytic at 0, so each
 * column of the table removes one power of t.
 */
inline CharacterSample leading_coefficient(const LogFanoCone& x, const VolumeForm& form,
                                           const std::vector<double>& xi,
                                           const LeadingCoefficientOptions& opts = {})
{
    require_reeb(x.sigma(), xi);
    if (opts.j_max - opts.j_min < 1)
        throw Error(ErrorCode::InvalidInput, "need at least two grid points for extrapolation");
    const double nd = static_cast<double>(x.rank());
    CharacterSample out;
    out.xi = xi;
    std::vector<std::vector<double>> table;
    for (int j = opts.j_min; j <= opts.j_max; ++j)
    {
        const double t = std::ldexp(1.0, -j);
        auto cv = index_character(x, form, xi, t);
        out.t_values.push_back(t);
        out.F_values.push_back(cv.value);
        out.truncation_bound = std::max(out.truncation_bound, cv.truncation);
        std::vector<double> row{std::pow(t, nd) * cv.value};
        for (std::size_t k = 1; k <= table.size(); ++k)
        {
            const double f = std::ldexp(1.0, static_cast<int>(k));
            row.push_back((f * row[k - 1] - table.back()[k - 1]) / (f - 1));
        }
        table.push_back(std::move(row));
    }
    const auto& last = table.back();
    const auto& prev = table[table.size() - 2];
    out.a0_estimate = last.back();
    out.a0_error = std::abs(last.back() - prev.back());
    if (!std::isfinite(out.a0_estimate) || !(out.a0_estimate > 0) || out.a0_error > 1e-2 * out.a0_estimate)
        throw Error(ErrorCode::ExtrapolationDiverged, "Richardson table did not settle");
    out.vol = vol(form, xi);
    out.agrees = std::abs(out.a0_estimate - out.vol) <= opts.agreement_tol * out.vol;
    return out;
}

}   // namespace fanocone

#endif
