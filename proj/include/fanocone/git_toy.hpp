/**
 * Weight combinatorics of points in a representation of a rank-2 torus
 * generated by two commuting one-parameter subgroups lambda = (1,0) and
 * lambda' = (0,1). Only the support of a point matters for its flat limits,
 * so points are stored as tagged weight pairs.
 */

#ifndef FANOCONE_GIT_TOY_HPP
#define FANOCONE_GIT_TOY_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>
#include "error.hpp"

namespace fanocone::git {

using Weight = std::pair<std::int64_t, std::int64_t>;
using Direction = std::pair<std::int64_t, std::int64_t>;

struct SupportEntry
{
    Weight weight;
    bool nonzero = true;
    std::string tag;

    friend bool operator==(const SupportEntry&, const SupportEntry&) = default;
};

class WeightedPoint
{
    private:
        std::vector<SupportEntry> support_;

    public:
        /** Rejects an empty support and repeated tags. */
        explicit WeightedPoint(std::vector<SupportEntry> support) : support_(std::move(support))
        {
            if (std::none_of(support_.begin(), support_.end(), [](const auto& e) { return e.nonzero; }))
                throw Error(ErrorCode::InvalidInput, "point has empty support");
            std::set<std::string> tags;
            for (const auto& e : support_)
                if (!tags.insert(e.tag).second)
                    throw Error(ErrorCode::InvalidInput, "duplicate tag '" + e.tag + "'");
        }

        /** Convenience: nonzero coordinates tagged w0, w1, ... */
        static WeightedPoint from_weights(const std::vector<Weight>& weights)
        {
            std::vector<SupportEntry> s;
            for (std::size_t i = 0; i < weights.size(); ++i)
                s.push_back({weights[i], true, "w" + std::to_string(i)});
            return WeightedPoint(std::move(s));
        }

        const std::vector<SupportEntry>& support() const { return support_; }

        /** Sorted weights of the nonzero coordinates. */
        std::vector<Weight> weights() const
        {
            std::vector<Weight> w;
            for (const auto& e : support_)
                if (e.nonzero)
                    w.push_back(e.weight);
            std::sort(w.begin(), w.end());
            return w;
        }

        friend bool operator==(const WeightedPoint& a, const WeightedPoint& b)
        {
            auto key = [](const WeightedPoint& p) {
                std::vector<std::pair<std::string, Weight>> k;
                for (const auto& e : p.support_)
                    if (e.nonzero)
                        k.emplace_back(e.tag, e.weight);
                std::sort(k.begin(), k.end());
                return k;
            };
            return key(a) == key(b);
        }
};

inline std::int64_t pairing(const Weight& w, const Direction& d)
{
    return d.first * w.first + d.second * w.second;
}

/**
 * lim_{t -> 0} d(t) . p in projective coordinates: the nonzero coordinates
 * whose weight pairing with d is minimal.
 */
inline WeightedPoint limit(const WeightedPoint& p, const Direction& d)
{
    if (d.first == 0 && d.second == 0)
        throw Error(ErrorCode::InvalidInput, "direction must be nonzero");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& e : p.support())
        if (e.nonzero)
            best = std::min(best, pairing(e.weight, d));
    std::vector<SupportEntry> kept;
    for (const auto& e : p.support())
        if (e.nonzero && pairing(e.weight, d) == best)
            kept.push_back(e);
    return WeightedPoint(std::move(kept));
}

/** mu(p, d) = -min over the support of <w, d>. */
inline std::int64_t mu_weight(const WeightedPoint& p, const Direction& d)
{
    if (d.first == 0 && d.second == 0)
        throw Error(ErrorCode::InvalidInput, "direction must be nonzero");
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& e : p.support())
        if (e.nonzero)
            best = std::min(best, pairing(e.weight, d));
    return -best;
}

inline constexpr Direction kLambda{1, 0};
inline constexpr Direction kLambdaPrime{0, 1};

struct CompositionCheck
{
    bool equal = false;          // at the requested k
    std::int64_t min_k = 1;      // equality holds exactly for k >= min_k
    WeightedPoint two_step;
    WeightedPoint composed;
};

/**
 * Compares lim_{lambda'} lim_{lambda} p with lim_{tau} p for tau = (t^k, t).
 * The two-step limit keeps the lexicographically smallest weight (w0, w0');
 * tau keeps it alone iff k w0 + w0' < k w + w' for every other weight,
 * which for w > w0 means k > (w0' - w') / (w - w0).
 */
inline CompositionCheck composed_equals_two_step(const WeightedPoint& p, std::int64_t k)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidInput, "k must be >= 1");
    WeightedPoint two = limit(limit(p, kLambda), kLambdaPrime);
    const Weight lead = two.weights().front();
    std::int64_t min_k = 1;
    for (const auto& w : p.weights())
    {
        if (w.first <= lead.first)
            continue;   // same first weight: larger second weight by lexicographic minimality
        const std::int64_t gap = lead.second - w.second;
        const std::int64_t dw = w.first - lead.first;
        if (gap >= 0)
        {
            // floor(gap / dw) + 1
            min_k = std::max(min_k, gap / dw + 1);
        }
    }
    WeightedPoint composed = limit(p, Direction{k, 1});
    const bool equal = composed == two;
    return CompositionCheck{equal, min_k, std::move(two), std::move(composed)};
}

struct AdditivityCheck
{
    std::int64_t mu_composed = 0;   // mu(p, k lambda + lambda')
    std::int64_t mu_lambda = 0;     // mu(lim_lambda p, lambda)
    std::int64_t mu_lambda_prime = 0;   // mu(lim_lambda' lim_lambda p, lambda')
    std::int64_t residual = 0;      // mu_composed - (k mu_lambda + mu_lambda_prime)
    std::int64_t residual_on_limit = 0;   // same identity evaluated on the two-step limit point
};

/**
 * Stepwise weights along lambda then lambda' against the weight of the
 * composed subgroup k lambda + lambda'. The residual on p vanishes for
 * k >= min_k; on the two-step limit point it vanishes for every k.
 */
inline AdditivityCheck mu_additivity(const WeightedPoint& p, std::int64_t k)
{
    AdditivityCheck out;
    const Direction composed{k, 1};
    WeightedPoint first = limit(p, kLambda);
    WeightedPoint second = limit(first, kLambdaPrime);
    out.mu_composed = mu_weight(p, composed);
    out.mu_lambda = mu_weight(first, kLambda);
    out.mu_lambda_prime = mu_weight(second, kLambdaPrime);
    out.residual = out.mu_composed - (k * out.mu_lambda + out.mu_lambda_prime);
    out.residual_on_limit = mu_weight(second, composed) - (k * mu_weight(second, kLambda) + mu_weight(second, kLambdaPrime));
    return out;
}

/** Successive limits along a list of directions; element 0 is p itself. */
inline std::vector<WeightedPoint> limit_chain(const WeightedPoint& p, const std::vector<Direction>& dirs)
{
    std::vector<WeightedPoint> chain{p};
    for (const auto& d : dirs)
        chain.push_back(limit(chain.back(), d));
    return chain;
}

}   // namespace fanocone::git

#endif
