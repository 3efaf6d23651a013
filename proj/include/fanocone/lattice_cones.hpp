/**
 * Polyhedral cones in a lattice Z^n: facet/ray enumeration by the double
 * description method, dual cones, placing triangulations, and membership
 * tests. All arithmetic is exact.
 */

#ifndef FANOCONE_LATTICE_CONES_HPP
#define FANOCONE_LATTICE_CONES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <type_traits>
#include <vector>
#include "error.hpp"
#include "rational.hpp"

namespace fanocone {

/** Desk-scale limits for the double description method. */
inline constexpr std::size_t kMaxConeRank = 6;
inline constexpr std::size_t kMaxConeRays = 64;

inline bool lex_less(const RationalVector& a, const RationalVector& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace detail {

/**
 * Extreme rays of {y : <a_i, y> >= 0 for all i} for a full-rank constraint
 * matrix, by the double description method. Output rays are primitive and
 * sorted lexicographically.
 */
inline std::vector<RationalVector> dd_extreme_rays(const std::vector<RationalVector>& constraints,
                                                   std::size_t dim)
{
    const std::size_t m = constraints.size();
    if (m > kMaxConeRays || dim > kMaxConeRank)
        throw Error(ErrorCode::TooLarge, "double description limited to rank <= 6 and <= 64 rays");

    // Greedy choice of n independent constraints for the initial simplicial cone.
    std::vector<std::size_t> basis;
    RationalMatrix acc;
    for (std::size_t i = 0; i < m && basis.size() < dim; ++i)
    {
        acc.push_back(constraints[i]);
        if (linalg::rank(acc) == acc.size())
            basis.push_back(i);
        else
            acc.pop_back();
    }
    if (basis.size() < dim)
        throw Error(ErrorCode::NotFullDim, "generators span a proper subspace");

    struct Ray
    {
        RationalVector y;
        std::uint64_t tight;   // processed constraints with <a, y> = 0
    };
    std::vector<Ray> rays;
    std::uint64_t processed = 0;
    for (auto i : basis)
        processed |= std::uint64_t(1) << i;

    // Rays of {y : B y >= 0} are the columns of B^{-1}.
    RationalMatrix b = linalg::rows_of(acc);
    for (std::size_t j = 0; j < dim; ++j)
    {
        RationalVector e(dim, Rational(0));
        e[j] = 1;
        auto col = linalg::solve(b, e);
        if (!col)
            throw Error(ErrorCode::Internal, "singular initial basis in double description");
        Ray r{*col, 0};
        for (std::size_t k = 0; k < dim; ++k)
            if (k != j)
                r.tight |= std::uint64_t(1) << basis[k];
        rays.push_back(std::move(r));
    }

    for (std::size_t i = 0; i < m; ++i)
    {
        if (processed & (std::uint64_t(1) << i))
            continue;
        const auto& a = constraints[i];
        std::vector<Rational> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<Ray> next;
        for (std::size_t k = 0; k < rays.size(); ++k)
        {
            val[k] = dot(a, rays[k].y);
            if (val[k] > 0)
                pos.push_back(k);
            else if (val[k] < 0)
                neg.push_back(k);
            if (val[k] >= 0)
            {
                Ray r = rays[k];
                if (val[k] == 0)
                    r.tight |= std::uint64_t(1) << i;
                next.push_back(std::move(r));
            }
        }
        for (auto p : pos)
        {
            for (auto q : neg)
            {
                const std::uint64_t common = rays[p].tight & rays[q].tight;
                // Combinatorial adjacency test.
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
                {
                    if (k == p || k == q)
                        continue;
                    if ((rays[k].tight & common) == common)
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                RationalVector y(dim);
                for (std::size_t j = 0; j < dim; ++j)
                    y[j] = val[p] * rays[q].y[j] - val[q] * rays[p].y[j];
                next.push_back(Ray{primitive(y), common | (std::uint64_t(1) << i)});
            }
        }
        rays = std::move(next);
        processed |= std::uint64_t(1) << i;
    }

    std::vector<RationalVector> out;
    out.reserve(rays.size());
    for (auto& r : rays)
        out.push_back(primitive(r.y));
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}   // namespace detail

/**
 * A pointed, full-dimensional rational polyhedral cone given by primitive
 * integer generators. Facet normals (the inward primitive normals, i.e. the
 * rays of the dual cone) are computed once at construction.
 */
class PolyCone
{
    private:
        std::size_t dim_ = 0;
        std::vector<RationalVector> rays_;
        std::vector<RationalVector> facets_;

        PolyCone() = default;

    public:
        /**
         * Build from generators. Generators are made primitive; their order
         * is preserved. Throws NotFullDim, NotPointed or TooLarge.
         */
        static PolyCone from_rays(const std::vector<RationalVector>& rays)
        {
            if (rays.empty())
                throw Error(ErrorCode::NotFullDim, "cone has no generators");
            PolyCone c;
            c.dim_ = rays[0].size();
            if (c.dim_ == 0)
                throw Error(ErrorCode::InvalidInput, "cone rank must be positive");
            for (const auto& r : rays)
            {
                if (r.size() != c.dim_)
                    throw Error(ErrorCode::InvalidInput, "generator has wrong dimension");
                if (is_zero(r))
                    throw Error(ErrorCode::InvalidInput, "zero generator");
                c.rays_.push_back(primitive(r));
            }
            c.facets_ = detail::dd_extreme_rays(c.rays_, c.dim_);
            if (linalg::rank(linalg::rows_of(c.facets_)) < c.dim_)
                throw Error(ErrorCode::NotPointed, "cone contains a line");
            return c;
        }

        static PolyCone from_rays(const std::vector<std::vector<std::int64_t>>& rays)
        {
            std::vector<RationalVector> rs;
            for (const auto& r : rays)
                rs.push_back(to_rational(r));
            return from_rays(rs);
        }

        std::size_t dim() const { return dim_; }
        const std::vector<RationalVector>& rays() const { return rays_; }

        /** Inward primitive facet normals, sorted lexicographically. */
        const std::vector<RationalVector>& facets() const { return facets_; }
};

/** The dual cone {y : <y, r> >= 0 for all rays r}, rays sorted lexicographically. */
inline PolyCone dual_cone(const PolyCone& c)
{
    return PolyCone::from_rays(c.facets());
}

/** The generators of c that span extremal rays, in lexicographic order. */
inline std::vector<RationalVector> extreme_rays(const PolyCone& c)
{
    return dual_cone(c).facets();
}

/**
 * Membership test for exact or floating points. With strict = true, tests
 * the interior (every facet pairing positive).
 */
template <typename T>
bool contains(const PolyCone& c, const std::vector<T>& v, bool strict)
{
    if (v.size() != c.dim())
        throw Error(ErrorCode::InvalidInput, "point has wrong dimension");
    for (const auto& f : c.facets())
    {
        T s(0);
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            if constexpr (std::is_same_v<T, Rational>)
                s += f[i] * v[i];
            else
                s += static_cast<T>(to_double(f[i])) * v[i];
        }
        if (strict ? !(s > 0) : (s < 0))
            return false;
    }
    return true;
}

struct SimplicialDecomposition
{
    std::vector<std::vector<std::size_t>> simplices;   // indices into the generator list
    std::vector<Rational> det_values;                  // |det| of each simplex
};

/**
 * Placing triangulation of the cone spanned by `vectors`, inserting them in
 * the given order. Vectors that fall inside the current cone are skipped;
 * a vector outside the current linear span cones over every simplex;
 * otherwise it is joined to every boundary facet it sees. Vectors need not
 * be primitive; returned determinants use them as given.
 */
inline SimplicialDecomposition placing_triangulation(const std::vector<RationalVector>& vectors,
                                                     const std::vector<std::size_t>& order)
{
    using Simplex = std::vector<std::size_t>;
    if (vectors.empty())
        throw Error(ErrorCode::NotFullDim, "nothing to triangulate");
    const std::size_t n = vectors[0].size();
    std::vector<Simplex> simplices;
    std::size_t span_dim = 0;
    RationalMatrix used;

    auto coords_in = [&](const Simplex& s, const RationalVector& r) {
        RationalMatrix cols(n, RationalVector(s.size()));
        for (std::size_t j = 0; j < s.size(); ++j)
            for (std::size_t i = 0; i < n; ++i)
                cols[i][j] = vectors[s[j]][i];
        auto x = linalg::solve(cols, r);
        if (!x)
            throw Error(ErrorCode::Internal, "placing triangulation: point left the span");
        return *x;
    };

    for (auto idx : order)
    {
        const auto& r = vectors[idx];
        if (is_zero(r))
            continue;
        used.push_back(r);
        const std::size_t new_rank = linalg::rank(used);
        if (simplices.empty())
        {
            simplices.push_back({idx});
            span_dim = 1;
            continue;
        }
        if (new_rank > span_dim)
        {
            for (auto& s : simplices)
                s.push_back(idx);
            span_dim = new_rank;
            continue;
        }
        used.pop_back();

        // Boundary facets: (d-1)-subsets that lie in exactly one simplex.
        std::multiset<Simplex> facet_count;
        for (const auto& s : simplices)
        {
            for (std::size_t drop = 0; drop < s.size(); ++drop)
            {
                Simplex f;
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop)
                        f.push_back(s[j]);
                std::sort(f.begin(), f.end());
                facet_count.insert(f);
            }
        }
        std::vector<Simplex> added;
        for (const auto& s : simplices)
        {
            auto lambda = coords_in(s, r);
            for (std::size_t drop = 0; drop < s.size(); ++drop)
            {
                if (lambda[drop] >= 0)
                    continue;
                Simplex f;
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop)
                        f.push_back(s[j]);
                std::sort(f.begin(), f.end());
                if (facet_count.count(f) != 1)
                    continue;
                f.push_back(idx);
                added.push_back(std::move(f));
            }
        }
        for (auto& s : added)
            simplices.push_back(std::move(s));
    }
    if (span_dim < n)
        throw Error(ErrorCode::NotFullDim, "vectors span a proper subspace");

    SimplicialDecomposition out;
    for (auto& s : simplices)
    {
        RationalMatrix m;
        for (auto i : s)
            m.push_back(vectors[i]);
        Rational d = linalg::det(m);
        if (d == 0)
            throw Error(ErrorCode::Internal, "degenerate simplex in placing triangulation");
        out.det_values.push_back(d < 0 ? Rational(-d) : d);
        out.simplices.push_back(std::move(s));
    }
    return out;
}

/** Placing triangulation of c with lexicographic insertion order. */
inline SimplicialDecomposition triangulate(const PolyCone& c)
{
    std::vector<std::size_t> order(c.rays().size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(c.rays()[a], c.rays()[b]);
    });
    return placing_triangulation(c.rays(), order);
}

/** Placing triangulation of c with a seeded random insertion order. */
inline SimplicialDecomposition triangulate(const PolyCone& c, std::uint64_t seed)
{
    std::vector<std::size_t> order(c.rays().size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    return placing_triangulation(c.rays(), order);
}

}   // namespace fanocone

#endif
