/**
 * Toric log Fano cone singularities (X, D, xi): the cone sigma in the
 * co-weight lattice N, torus-invariant boundary coefficients, and the Reeb
 * vectors living in the interior of sigma.
 */

#ifndef FANOCONE_TORIC_SINGULARITY_HPP
#define FANOCONE_TORIC_SINGULARITY_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>
#include "error.hpp"
#include "lattice_cones.hpp"
#include "rational.hpp"

namespace fanocone {

/** Decoded (not yet validated for Q-Gorenstein/klt) toric pair. */
struct ToricConeData
{
    PolyCone sigma;
    std::vector<Rational> boundary_coeffs;   // one per ray of sigma
    std::string label;

    /**
     * Checks the structural invariants: pointed and full-dimensional cone,
     * one coefficient per ray, every ray extremal.
     */
    static ToricConeData make(const std::vector<RationalVector>& rays,
                              std::vector<Rational> boundary,
                              std::string label = {})
    {
        PolyCone sigma = PolyCone::from_rays(rays);
        if (boundary.empty())
            boundary.assign(rays.size(), Rational(0));
        if (boundary.size() != rays.size())
            throw Error(ErrorCode::InvalidInput, "need exactly one boundary coefficient per ray");
        auto ext = extreme_rays(sigma);
        for (const auto& r : sigma.rays())
            if (!std::binary_search(ext.begin(), ext.end(), r, lex_less))
                throw Error(ErrorCode::InvalidInput, "ray is not extremal in sigma");
        for (std::size_t i = 0; i < sigma.rays().size(); ++i)
            for (std::size_t j = i + 1; j < sigma.rays().size(); ++j)
                if (sigma.rays()[i] == sigma.rays()[j])
                    throw Error(ErrorCode::InvalidInput, "duplicate ray");
        return ToricConeData{std::move(sigma), std::move(boundary), std::move(label)};
    }

    std::size_t rank() const { return sigma.dim(); }
};

/** gamma_D in M_Q with <gamma, v_i> = 1 - c_i for every ray v_i. */
struct GorensteinVector
{
    RationalVector gamma;
};

/**
 * Solve the Gorenstein system exactly and certify klt. Throws NotKlt when
 * some c_i >= 1, InvalidInput when some c_i < 0, NotQGorenstein when the
 * system has no solution.
 */
inline GorensteinVector validate(const ToricConeData& data)
{
    const auto& rays = data.sigma.rays();
    for (std::size_t i = 0; i < data.boundary_coeffs.size(); ++i)
    {
        const auto& c = data.boundary_coeffs[i];
        if (c >= 1)
            throw Error(ErrorCode::NotKlt, "boundary coefficient " + to_string(c) + " >= 1");
        if (c < 0)
            throw Error(ErrorCode::InvalidInput, "boundary coefficient " + to_string(c) + " < 0");
    }
    RationalVector rhs;
    for (const auto& c : data.boundary_coeffs)
        rhs.push_back(1 - c);
    auto gamma = linalg::solve(linalg::rows_of(rays), rhs);
    if (!gamma)
        throw Error(ErrorCode::NotQGorenstein, "K_X + D is not Q-Cartier: Gorenstein system inconsistent");
    // <gamma, v_i> = 1 - c_i > 0 on every ray, so gamma is positive on sigma \ {0}.
    return GorensteinVector{*gamma};
}

/** A validated log Fano cone pair: toric data with its Gorenstein vector. */
class LogFanoCone
{
    private:
        ToricConeData data_;
        GorensteinVector gamma_;

        LogFanoCone(ToricConeData d, GorensteinVector g) : data_(std::move(d)), gamma_(std::move(g)) {}

    public:
        static LogFanoCone make(ToricConeData data)
        {
            auto g = validate(data);
            return LogFanoCone(std::move(data), std::move(g));
        }

        const ToricConeData& data() const { return data_; }
        const PolyCone& sigma() const { return data_.sigma; }
        const RationalVector& gamma() const { return gamma_.gamma; }
        std::size_t rank() const { return data_.rank(); }
};

/**
 * A point of N_R: exact rational coordinates or floating ones. Interior
 * membership is checked by the operations that consume it.
 */
class ReebVector
{
    private:
        std::variant<RationalVector, std::vector<double>> coords_;

    public:
        ReebVector(RationalVector v) : coords_(std::move(v)) {}
        ReebVector(std::vector<double> v) : coords_(std::move(v)) {}

        bool exact() const { return std::holds_alternative<RationalVector>(coords_); }
        const RationalVector& exact_coords() const { return std::get<RationalVector>(coords_); }

        std::vector<double> as_double() const
        {
            if (exact())
                return to_double(exact_coords());
            return std::get<std::vector<double>>(coords_);
        }

        std::size_t size() const
        {
            return exact() ? exact_coords().size() : std::get<std::vector<double>>(coords_).size();
        }
};

template <typename T>
void require_reeb(const PolyCone& sigma, const std::vector<T>& xi)
{
    if (xi.size() != sigma.dim())
        throw Error(ErrorCode::InvalidInput, "Reeb vector has wrong dimension");
    if (!contains(sigma, xi, true))
        throw Error(ErrorCode::NotInReebCone, "xi is not in the interior of sigma");
}

/** A(wt_xi) = <gamma_D, xi>. Linear in xi; no cone check. */
template <typename T>
T log_discrepancy_unchecked(const LogFanoCone& x, const std::vector<T>& xi)
{
    T s(0);
    for (std::size_t i = 0; i < xi.size(); ++i)
    {
        if constexpr (std::is_same_v<T, Rational>)
            s += x.gamma()[i] * xi[i];
        else
            s += static_cast<T>(to_double(x.gamma()[i])) * xi[i];
    }
    return s;
}

/** A(wt_xi) for a Reeb vector xi; throws NotInReebCone outside the interior. */
template <typename T>
T log_discrepancy(const LogFanoCone& x, const std::vector<T>& xi)
{
    require_reeb(x.sigma(), xi);
    return log_discrepancy_unchecked(x, xi);
}

enum class Regularity { QuasiRegular, Irregular };

inline const char* to_string(Regularity r)
{
    return r == Regularity::QuasiRegular ? "QuasiRegular" : "Irregular";
}

inline constexpr std::int64_t kDefaultMaxDenominator = 10000;

/**
 * QuasiRegular iff xi is a positive multiple of a rational vector. Exact
 * input is always quasi-regular. For floating input the verdict is "some
 * rational direction with denominator <= max_denominator matches xi to
 * within tol": the coordinates are divided by the largest one in absolute
 * value and every denominator q <= max_denominator is tried.
 */
inline Regularity classify_regularity(const LogFanoCone& x, const ReebVector& xi, double tol,
                                      std::int64_t max_denominator = kDefaultMaxDenominator)
{
    if (xi.exact())
    {
        require_reeb(x.sigma(), xi.exact_coords());
        return Regularity::QuasiRegular;
    }
    auto v = xi.as_double();
    require_reeb(x.sigma(), v);
    std::size_t ref = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[ref]))
            ref = i;
    std::vector<double> ratio(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        ratio[i] = v[i] / v[ref];
    for (std::int64_t q = 1; q <= max_denominator; ++q)
    {
        bool ok = true;
        for (double r : ratio)
        {
            const double scaled = r * static_cast<double>(q);
            if (std::abs(scaled - std::round(scaled)) > tol * static_cast<double>(q))
            {
                ok = false;
                break;
            }
        }
        if (ok)
            return Regularity::QuasiRegular;
    }
    return Regularity::Irregular;
}

/**
 * Integral approximation of k*xi by componentwise rounding, so that
 * |result - k*xi|_inf <= 1/2. Throws RoundingExitsCone when the rounded
 * vector is not a Reeb vector; the caller should retry with a larger k.
 */
inline RationalVector rationalize(const LogFanoCone& x, const ReebVector& xi, std::int64_t k)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidInput, "rationalize needs k >= 1");
    auto v = xi.as_double();
    require_reeb(x.sigma(), v);
    RationalVector out;
    for (double c : v)
        out.emplace_back(static_cast<std::int64_t>(std::llround(static_cast<double>(k) * c)));
    if (!contains(x.sigma(), out, true))
        throw Error(ErrorCode::RoundingExitsCone,
                    "rounding k*xi left the Reeb cone at k = " + std::to_string(k));
    return out;
}

}   // namespace fanocone

#endif
