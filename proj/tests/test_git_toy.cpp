#include <gtest/gtest.h>
#include "support.hpp"

using namespace fanocone;
using namespace fanocone::git;

namespace {

WeightedPoint random_point(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int64_t> size(1, 6), w(-8, 8);
    std::vector<Weight> ws;
    const auto m = size(rng);
    for (std::int64_t i = 0; i < m; ++i)
        ws.emplace_back(w(rng), w(rng));
    return WeightedPoint::from_weights(ws);
}

/** Smallest k0 in [1, limit] with equality for every k in [k0, limit]. */
std::int64_t scan_min_k(const WeightedPoint& p, std::int64_t limit)
{
    auto two = fanocone::git::limit(fanocone::git::limit(p, kLambda), kLambdaPrime);
    std::int64_t k0 = limit + 1;
    for (std::int64_t k = limit; k >= 1; --k)
    {
        if (!(fanocone::git::limit(p, Direction{k, 1}) == two))
            break;
        k0 = k;
    }
    return k0;
}

}   // namespace

TEST(GitToy, ReferenceInstance)
{
    auto p = WeightedPoint::from_weights({{0, 0}, {1, -5}});
    auto c = composed_equals_two_step(p, 6);
    EXPECT_EQ(c.min_k, 6);
    EXPECT_TRUE(c.equal);
    EXPECT_FALSE(composed_equals_two_step(p, 5).equal);
    EXPECT_EQ(c.two_step.weights(), (std::vector<Weight>{{0, 0}}));
}

TEST(GitToy, MinKMatchesScan)
{
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 300; ++trial)
    {
        auto p = random_point(rng);
        const auto min_k = composed_equals_two_step(p, 1).min_k;
        ASSERT_LE(min_k, 50);
        EXPECT_EQ(scan_min_k(p, 100), min_k);
    }
}

TEST(GitToy, AdditivityAtAndBeyondMinK)
{
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto p = random_point(rng);
        const auto min_k = composed_equals_two_step(p, 1).min_k;
        for (std::int64_t k = min_k; k < min_k + 5; ++k)
            EXPECT_EQ(mu_additivity(p, k).residual, 0);
        for (std::int64_t k = 1; k < min_k + 5; ++k)
            EXPECT_EQ(mu_additivity(p, k).residual_on_limit, 0);
    }
    // At k = 5 the two weights tie, so mu still adds up; at k = 4 it does not.
    auto p = WeightedPoint::from_weights({{0, 0}, {1, -5}});
    EXPECT_EQ(mu_additivity(p, 5).residual, 0);
    EXPECT_EQ(mu_additivity(p, 4).residual, 1);
}

TEST(GitToy, LimitsAreIdempotentAndChainsStabilize)
{
    std::mt19937_64 rng(63);
    for (int trial = 0; trial < 200; ++trial)
    {
        auto p = random_point(rng);
        for (Direction d : {kLambda, kLambdaPrime, Direction{3, 1}, Direction{-1, 2}})
        {
            auto q = limit(p, d);
            EXPECT_EQ(limit(q, d), q);
        }
        auto chain = limit_chain(p, {kLambda, kLambdaPrime, kLambda, kLambdaPrime});
        ASSERT_EQ(chain.size(), 5u);
        EXPECT_EQ(chain[3], chain[2]);
        EXPECT_EQ(chain[4], chain[2]);
        EXPECT_EQ(chain[2].weights().size(), 1u);
    }
}

TEST(GitToy, ZeroEntriesAreIgnored)
{
    WeightedPoint p({{{-3, 0}, false, "z"}, {{0, 0}, true, "a"}, {{2, 1}, true, "b"}});
    auto q = limit(p, kLambda);
    EXPECT_EQ(q.weights(), (std::vector<Weight>{{0, 0}}));
    EXPECT_EQ(mu_weight(p, kLambda), 0);
}

TEST(GitToy, Errors)
{
    EXPECT_THROW(WeightedPoint({}), Error);
    EXPECT_THROW(WeightedPoint({{{0, 0}, false, "a"}}), Error);
    EXPECT_THROW(WeightedPoint({{{0, 0}, true, "a"}, {{1, 0}, true, "a"}}), Error);
    auto p = WeightedPoint::from_weights({{0, 0}});
    EXPECT_THROW(limit(p, Direction{0, 0}), Error);
    EXPECT_THROW(composed_equals_two_step(p, 0), Error);
}
