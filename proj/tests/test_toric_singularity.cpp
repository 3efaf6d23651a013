#include <gtest/gtest.h>
#include "support.hpp"

using namespace fanocone;
using namespace fanocone::testing;

TEST(ToricSingularity, GorensteinVectors)
{
    EXPECT_EQ(conifold().gamma(), to_rational({0, 0, 1}));
    EXPECT_EQ(affine_space(3).gamma(), to_rational({1, 1, 1}));
    auto b = make_cone({{1, 0}, {0, 1}}, {"1/2", "0"});
    EXPECT_EQ(b.gamma(), (RationalVector{Rational(1, 2), Rational(1)}));
}

TEST(ToricSingularity, GammaSolvesRayEquations)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial)
    {
        auto x = random_cone(rng, 4);
        const auto& rays = x.sigma().rays();
        for (std::size_t i = 0; i < rays.size(); ++i)
            EXPECT_EQ(dot(x.gamma(), rays[i]), 1 - x.data().boundary_coeffs[i]);
    }
}

TEST(ToricSingularity, ValidationErrors)
{
    auto code = [](auto&& f) {
        try
        {
            f();
        }
        catch (const Error& e)
        {
            return e.code();
        }
        return ErrorCode::Internal;
    };
    EXPECT_EQ(code([] { make_cone({{1, 0}, {0, 1}}, {"1", "0"}); }), ErrorCode::NotKlt);
    EXPECT_EQ(code([] { make_cone({{1, 0}, {0, 1}}, {"-1/2", "0"}); }), ErrorCode::InvalidInput);
    // Square cone with unequal coefficients: no gamma.
    EXPECT_EQ(code([] { make_cone({{0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, {"1/2", "0", "0", "0"}); }),
              ErrorCode::NotQGorenstein);
    EXPECT_EQ(code([] { make_cone({{1, 0}, {1, 1}, {0, 1}}); }), ErrorCode::InvalidInput);
    EXPECT_EQ(code([] { make_cone({{1, 0}, {0, 1}}, {"0"}); }), ErrorCode::InvalidInput);
}

TEST(ToricSingularity, LogDiscrepancy)
{
    auto x = conifold();
    EXPECT_EQ(log_discrepancy(x, to_rational({1, 1, 2})), Rational(2));
    EXPECT_DOUBLE_EQ(log_discrepancy(x, std::vector<double>{1.5, 1.5, 3.0}), 3.0);
    try
    {
        log_discrepancy(x, to_rational({1, 0, 1}));
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::NotInReebCone);
    }
}

TEST(ToricSingularity, Regularity)
{
    auto x = affine_space(2);
    EXPECT_EQ(classify_regularity(x, ReebVector(to_rational({1, 3})), 1e-9), Regularity::QuasiRegular);
    EXPECT_EQ(classify_regularity(x, ReebVector(std::vector<double>{1.0, 0.75}), 1e-9), Regularity::QuasiRegular);
    EXPECT_EQ(classify_regularity(x, ReebVector(std::vector<double>{1.0, std::sqrt(2.0)}), 1e-9, 10000),
              Regularity::Irregular);
}

TEST(ToricSingularity, Rationalize)
{
    auto x = affine_space(2);
    ReebVector xi(std::vector<double>{1.0, std::sqrt(2.0)});
    EXPECT_EQ(rationalize(x, xi, 5), to_rational({5, 7}));
    EXPECT_EQ(rationalize(x, ReebVector(std::vector<double>{0.6, 0.6}), 5), to_rational({3, 3}));
    ReebVector golden(std::vector<double>{1.0, (1 + std::sqrt(5.0)) / 2});
    EXPECT_EQ(rationalize(x, golden, 8), to_rational({8, 13}));
    // Within sqrt(n)/2 of k xi for every k.
    for (std::int64_t k = 1; k < 40; ++k)
    {
        auto r = rationalize(x, xi, k);
        auto d = xi.as_double();
        double dist2 = 0;
        for (std::size_t i = 0; i < 2; ++i)
            dist2 += std::pow(to_double(r[i]) - static_cast<double>(k) * d[i], 2);
        EXPECT_LE(std::sqrt(dist2), std::sqrt(2.0) / 2);
    }
    try
    {
        rationalize(x, ReebVector(std::vector<double>{0.1, 1.0}), 1);
        FAIL();
    }
    catch (const Error& e)
    {
        EXPECT_EQ(e.code(), ErrorCode::RoundingExitsCone);
    }
}
