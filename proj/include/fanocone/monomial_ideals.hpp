/**
 * Monomial ideals of C[x_1..x_n] primary to the maximal ideal: Newton
 * polyhedron, Hilbert-Samuel multiplicity, log canonical threshold and
 * the normalized multiplicity mult * lct^n, which is at least n^n.
 */

#ifndef FANOCONE_MONOMIAL_IDEALS_HPP
#define FANOCONE_MONOMIAL_IDEALS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>
#include "error.hpp"
#include "lattice_cones.hpp"
#include "rational.hpp"

namespace fanocone {

/** Supporting inequality <a, x> >= b of a Newton polyhedron. */
struct HalfSpace
{
    RationalVector a;
    Rational b;
};

class MonomialIdeal
{
    private:
        std::size_t n_ = 0;
        std::vector<std::vector<std::int64_t>> generators_;
        std::vector<RationalVector> vertices_;   // of the Newton polyhedron, lexicographic
        std::vector<HalfSpace> facets_;

        MonomialIdeal() = default;

    public:
        /**
         * Validates exponent vectors and primality (every axis carries a pure
         * power), then computes the Newton polyhedron
         * conv(generators) + R^n_{>=0} from the homogenized cone
         * cone{(g, 1), (e_i, 0)}, whose facet normals (a, c) give <a, x> >= -c.
         */
        static MonomialIdeal make(std::size_t n, std::vector<std::vector<std::int64_t>> generators)
        {
            if (n == 0)
                throw Error(ErrorCode::InvalidInput, "need at least one variable");
            if (generators.empty())
                throw Error(ErrorCode::NotPrimary, "zero ideal");
            for (const auto& g : generators)
            {
                if (g.size() != n)
                    throw Error(ErrorCode::InvalidInput, "exponent vector has wrong length");
                if (std::any_of(g.begin(), g.end(), [](std::int64_t e) { return e < 0; }))
                    throw Error(ErrorCode::InvalidInput, "negative exponent");
            }
            for (std::size_t i = 0; i < n; ++i)
            {
                bool axis = std::any_of(generators.begin(), generators.end(), [&](const auto& g) {
                    for (std::size_t j = 0; j < n; ++j)
                        if ((j == i) != (g[j] != 0))
                            return false;
                    return true;
                });
                if (!axis)
                    throw Error(ErrorCode::NotPrimary, "no pure power of x_" + std::to_string(i + 1));
            }

            MonomialIdeal a;
            a.n_ = n;
            // Drop duplicates and generators divisible by another one.
            std::sort(generators.begin(), generators.end());
            generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
            for (const auto& g : generators)
            {
                bool divisible = std::any_of(generators.begin(), generators.end(), [&](const auto& h) {
                    if (h == g)
                        return false;
                    for (std::size_t j = 0; j < n; ++j)
                        if (h[j] > g[j])
                            return false;
                    return true;
                });
                if (!divisible)
                    a.generators_.push_back(g);
            }

            std::vector<RationalVector> homog;
            for (const auto& g : a.generators_)
            {
                RationalVector v = to_rational(g);
                v.emplace_back(1);
                homog.push_back(std::move(v));
            }
            for (std::size_t i = 0; i < n; ++i)
            {
                RationalVector e(n + 1, Rational(0));
                e[i] = 1;
                homog.push_back(std::move(e));
            }
            if (homog.size() > kMaxConeRays)
                throw Error(ErrorCode::TooLarge, "too many minimal generators for the Newton polyhedron");
            PolyCone cone = PolyCone::from_rays(homog);
            for (const auto& f : cone.facets())
            {
                HalfSpace h;
                h.a.assign(f.begin(), f.end() - 1);
                h.b = -f.back();
                a.facets_.push_back(std::move(h));
            }
            for (const auto& r : extreme_rays(cone))
                if (r.back() != 0)
                {
                    RationalVector v(r.begin(), r.end() - 1);
                    for (auto& c : v)
                        c /= r.back();
                    a.vertices_.push_back(std::move(v));
                }
            return a;
        }

        std::size_t n() const { return n_; }

        /** Minimal monomial generators. */
        const std::vector<std::vector<std::int64_t>>& generators() const { return generators_; }
        const std::vector<RationalVector>& vertices() const { return vertices_; }
        const std::vector<HalfSpace>& facets() const { return facets_; }

        bool in_newton_polyhedron(const RationalVector& x) const
        {
            return std::all_of(facets_.begin(), facets_.end(),
                               [&](const HalfSpace& h) { return dot(h.a, x) >= h.b; });
        }
};

/**
 * An ideal with the Newton polyhedron of a^k, i.e. k P(a), generated by k
 * times the vertices of P(a). Multiplicity and lct only see the Newton
 * polyhedron, so this stands in for a^k.
 */
inline MonomialIdeal newton_power(const MonomialIdeal& a, std::int64_t k)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidInput, "power must be >= 1");
    std::vector<std::vector<std::int64_t>> gens;
    for (const auto& v : a.vertices())
    {
        std::vector<std::int64_t> g;
        for (const auto& c : v)
            g.push_back(numerator(c).convert_to<std::int64_t>() * k);
        gens.push_back(std::move(g));
    }
    return MonomialIdeal::make(a.n(), std::move(gens));
}

/** Generators of the actual power a^k: all k-fold sums of generators. */
inline MonomialIdeal power(const MonomialIdeal& a, std::int64_t k)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidInput, "power must be >= 1");
    std::vector<std::vector<std::int64_t>> current{std::vector<std::int64_t>(a.n(), 0)};
    for (std::int64_t step = 0; step < k; ++step)
    {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& c : current)
            for (const auto& g : a.generators())
            {
                auto s = c;
                for (std::size_t j = 0; j < s.size(); ++j)
                    s[j] += g[j];
                next.push_back(std::move(s));
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        current = std::move(next);
    }
    return MonomialIdeal::make(a.n(), std::move(current));
}

/**
 * mult(a) = n! covol(P(a)). The region R^n_{>=0} \ P is the union of the
 * cones from the origin over the bounded facets, so it is the sum of
 * |det| over a triangulation of each bounded facet's vertex cone.
 */
inline Rational multiplicity(const MonomialIdeal& a)
{
    Rational total = 0;
    for (const auto& f : a.facets())
    {
        if (f.b <= 0)
            continue;
        std::vector<RationalVector> on_facet;
        for (const auto& v : a.vertices())
            if (dot(f.a, v) == f.b)
                on_facet.push_back(v);
        std::vector<std::size_t> order(on_facet.size());
        std::iota(order.begin(), order.end(), 0);
        auto tri = placing_triangulation(on_facet, order);
        for (const auto& d : tri.det_values)
            total += d;
    }
    return total;
}

/**
 * lct(a) = max{c : (1,...,1) in c P(a)} = 1 / min{s : s(1,...,1) in P(a)},
 * and the minimum s is the largest b / sum(a) over facets with b > 0.
 */
inline Rational lct(const MonomialIdeal& a)
{
    Rational s = 0;
    for (const auto& f : a.facets())
    {
        if (f.b <= 0)
            continue;
        Rational sum = 0;
        for (const auto& c : f.a)
            sum += c;
        s = std::max(s, f.b / sum);
    }
    if (s <= 0)
        throw Error(ErrorCode::Internal, "Newton polyhedron of a primary ideal has no bounded facet");
    return 1 / s;
}

inline Rational normalized_multiplicity(const MonomialIdeal& a)
{
    Rational l = lct(a), p = 1;
    for (std::size_t i = 0; i < a.n(); ++i)
        p *= l;
    return multiplicity(a) * p;
}

/** n^n, the normalized volume of a smooth point. */
inline Rational smooth_bound(std::size_t n)
{
    Rational p = 1;
    for (std::size_t i = 0; i < n; ++i)
        p *= static_cast<long>(n);
    return p;
}

}   // namespace fanocone

#endif
