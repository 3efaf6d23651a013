/**
 * JSON schemas for cones, singularities, ideals and GIT toy points.
 *
 *   Cone:        {"rank": n, "rays": [[int, ...], ...]}
 *   Singularity: {"rank": n, "rays": [...], "boundary": ["p/q", ...], "label": str}
 *   Ideal:       {"n": n, "generators": [[int, ...], ...]}
 *   Toy point:   {"support": [{"weight": [w, w'], "nonzero": bool, "tag": str}, ...],
 *                 "directions": [[a, b], ...], "k": int}
 *
 * Rationals are serialized as "p/q" strings.
 */

#ifndef FANOCONE_JSON_IO_HPP
#define FANOCONE_JSON_IO_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>
#include <json.hpp>   // vendored nlohmann/json
#include "error.hpp"
#include "git_toy.hpp"
#include "lattice_cones.hpp"
#include "monomial_ideals.hpp"
#include "rational.hpp"
#include "toric_singularity.hpp"

namespace fanocone::io {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::vector<std::vector<std::int64_t>> int_rows(const json& j, const char* what, std::size_t width)
{
    if (!j.is_array())
        throw Error(ErrorCode::InvalidInput, std::string(what) + " must be an array");
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& row : j)
    {
        if (!row.is_array() || row.size() != width)
            throw Error(ErrorCode::InvalidInput, std::string(what) + " entries must have length " + std::to_string(width));
        std::vector<std::int64_t> r;
        for (const auto& c : row)
        {
            if (!c.is_number_integer())
                throw Error(ErrorCode::InvalidInput, std::string(what) + " entries must be integers");
            r.push_back(c.get<std::int64_t>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline std::size_t positive_int(const json& j, const char* key)
{
    const auto& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
        throw Error(ErrorCode::InvalidInput, std::string("'") + key + "' must be a positive integer");
    return static_cast<std::size_t>(v.get<std::int64_t>());
}

}   // namespace detail

inline json rational_json(const Rational& q) { return to_string(q); }

inline json rational_json(const RationalVector& v)
{
    json a = json::array();
    for (const auto& q : v)
        a.push_back(to_string(q));
    return a;
}

inline Rational rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw Error(ErrorCode::InvalidInput, "rationals are integers or \"p/q\" strings");
}

inline json ints_json(const std::vector<RationalVector>& rows)
{
    json a = json::array();
    for (const auto& r : rows)
    {
        json row = json::array();
        for (const auto& c : r)
            row.push_back(numerator(c).convert_to<std::int64_t>());
        a.push_back(std::move(row));
    }
    return a;
}

inline PolyCone cone_from_json(const json& j)
{
    const std::size_t rank = detail::positive_int(j, "rank");
    return PolyCone::from_rays(detail::int_rows(detail::field(j, "rays"), "rays", rank));
}

/** Canonical form: rays sorted lexicographically. */
inline json cone_to_json(const PolyCone& c)
{
    auto rays = c.rays();
    std::sort(rays.begin(), rays.end(), lex_less);
    return json{{"rank", c.dim()}, {"rays", ints_json(rays)}};
}

inline ToricConeData singularity_from_json(const json& j)
{
    const std::size_t rank = detail::positive_int(j, "rank");
    auto rows = detail::int_rows(detail::field(j, "rays"), "rays", rank);
    std::vector<RationalVector> rays;
    for (const auto& r : rows)
        rays.push_back(to_rational(r));
    std::vector<Rational> boundary;
    if (j.contains("boundary"))
    {
        if (!j["boundary"].is_array())
            throw Error(ErrorCode::InvalidInput, "boundary must be an array");
        for (const auto& c : j["boundary"])
            boundary.push_back(rational_from_json(c));
    }
    std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : "";
    return ToricConeData::make(rays, std::move(boundary), std::move(label));
}

inline json singularity_to_json(const ToricConeData& d)
{
    return json{{"rank", d.rank()},
                {"rays", ints_json(d.sigma.rays())},
                {"boundary", rational_json(RationalVector(d.boundary_coeffs.begin(), d.boundary_coeffs.end()))},
                {"label", d.label}};
}

inline MonomialIdeal ideal_from_json(const json& j)
{
    const std::size_t n = detail::positive_int(j, "n");
    return MonomialIdeal::make(n, detail::int_rows(detail::field(j, "generators"), "generators", n));
}

inline git::WeightedPoint toy_point_from_json(const json& j)
{
    const auto& support = detail::field(j, "support");
    if (!support.is_array())
        throw Error(ErrorCode::InvalidInput, "support must be an array");
    std::vector<git::SupportEntry> entries;
    std::size_t idx = 0;
    for (const auto& e : support)
    {
        git::SupportEntry s;
        const json& w = e.is_array() ? e : detail::field(e, "weight");
        auto rows = detail::int_rows(json::array({w}), "weight", 2);
        s.weight = {rows[0][0], rows[0][1]};
        s.nonzero = e.is_object() && e.contains("nonzero") ? e["nonzero"].get<bool>() : true;
        s.tag = e.is_object() && e.contains("tag") ? e["tag"].get<std::string>() : "w" + std::to_string(idx);
        entries.push_back(std::move(s));
        ++idx;
    }
    return git::WeightedPoint(std::move(entries));
}

inline json toy_point_to_json(const git::WeightedPoint& p)
{
    json a = json::array();
    for (const auto& e : p.support())
        a.push_back(json{{"weight", {e.weight.first, e.weight.second}}, {"nonzero", e.nonzero}, {"tag", e.tag}});
    return a;
}

inline std::vector<git::Direction> directions_from_json(const json& j)
{
    std::vector<git::Direction> out;
    for (const auto& r : detail::int_rows(j, "directions", 2))
        out.emplace_back(r[0], r[1]);
    return out;
}

}   // namespace fanocone::io

#endif
