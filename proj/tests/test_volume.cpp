#include <array>
#include <gtest/gtest.h>
#include <Eigen/Eigenvalues>
#include "support.hpp"

using namespace fanocone;
using namespace fanocone::testing;

TEST(Volume, AffineSpaceClosedForm)
{
    // vol(xi) = 1 / prod xi_i on C^n.
    for (std::size_t n = 1; n <= 4; ++n)
    {
        auto x = affine_space(n);
        auto form = build_volume_form(x);
        RationalVector xi;
        Rational expect = 1;
        for (std::size_t i = 0; i < n; ++i)
        {
            xi.emplace_back(static_cast<long>(i) + 2, 3);
            expect /= xi.back();
        }
        EXPECT_EQ(vol(form, xi), expect);
    }
}

TEST(Volume, ConifoldClosedForm)
{
    auto x = conifold();
    auto form = build_volume_form(x);
    const RationalVector xi{Rational(3, 2), Rational(3, 2), Rational(3)};
    EXPECT_EQ(form.decomposition().simplices.size(), 2u);
    EXPECT_EQ(vol(form, xi), Rational(16, 27));
    EXPECT_EQ(normalized_volume(x, form, xi), Rational(16));
    for (double a : {0.5, 1.0, 2.2})
        for (double b : {0.7, 1.9})
            EXPECT_NEAR(normalized_volume(x, form, std::vector<double>{a, b, 3.0}), conifold_hvol_closed(a, b),
                        1e-12 * conifold_hvol_closed(a, b));
}

TEST(Volume, MatchesLatticeCount)
{
    // For xi = (1, 1, 2) every dual ray pairs to 1, so {<m, xi> <= k} is the
    // k-th dilate of a lattice polytope and the count is a cubic in k with
    // leading coefficient vol / 3!.
    auto x = conifold();
    auto form = build_volume_form(x);
    const std::vector<std::int64_t> xi{1, 1, 2};
    std::vector<std::array<std::int64_t, 3>> r;
    for (const auto& v : x.sigma().rays())
        r.push_back({numerator(v[0]).convert_to<std::int64_t>(), numerator(v[1]).convert_to<std::int64_t>(),
                     numerator(v[2]).convert_to<std::int64_t>()});
    auto count = [&](std::int64_t k) {
        std::int64_t total = 0;
        for (std::int64_t a = -k; a <= k; ++a)
            for (std::int64_t b = -k; b <= k; ++b)
                for (std::int64_t c = 0; a * xi[0] + b * xi[1] + c * xi[2] <= k; ++c)
                {
                    bool in = true;
                    for (const auto& v : r)
                        in = in && v[0] * a + v[1] * b + v[2] * c >= 0;
                    total += in;
                }
        return total;
    };
    const Rational exact = vol(form, to_rational(xi));
    const std::int64_t c0 = count(10), c1 = count(11), c2 = count(12), c3 = count(13);
    EXPECT_EQ(Rational(c3 - 3 * c2 + 3 * c1 - c0), exact);

    auto estimate = [&](std::int64_t k) { return 6.0 * static_cast<double>(count(k)) / std::pow(static_cast<double>(k), 3); };
    const double extrapolated = 2 * estimate(200) - estimate(100);
    EXPECT_NEAR(extrapolated, to_double(exact), 1e-3 * to_double(exact));
}

TEST(Volume, MatchesMonteCarlo)
{
    // vol(xi) = n! |{y in dual cone : <y, xi> <= 1}|, sampled in a bounding box.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial)
    {
        auto x = random_gorenstein(rng, 3);
        auto form = build_volume_form(x);
        auto xi = to_double(random_reeb(rng, x));
        std::vector<double> lo(3, 0), hi(3, 0);
        for (const auto& u : form.dual_rays())
        {
            auto ud = to_double(u);
            double s = 0;
            for (std::size_t i = 0; i < 3; ++i)
                s += ud[i] * xi[i];
            for (std::size_t i = 0; i < 3; ++i)
            {
                lo[i] = std::min(lo[i], ud[i] / s);
                hi[i] = std::max(hi[i], ud[i] / s);
            }
        }
        const PolyCone dual = dual_cone(x.sigma());
        std::uniform_real_distribution<double> unit(0, 1);
        const int samples = 400000;
        int hits = 0;
        for (int s = 0; s < samples; ++s)
        {
            std::vector<double> y(3);
            for (std::size_t i = 0; i < 3; ++i)
                y[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
            if (y[0] * xi[0] + y[1] * xi[1] + y[2] * xi[2] > 1)
                continue;
            hits += contains(dual, y, false);
        }
        const double box = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
        const double p = static_cast<double>(hits) / samples;
        const double estimate = 6 * box * p;
        const double sigma = 6 * box * std::sqrt(p * (1 - p) / samples);
        EXPECT_NEAR(estimate, vol(form, xi), 5 * sigma);
    }
}

TEST(Volume, SeedIndependent)
{
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 30; ++trial)
    {
        auto x = random_cone(rng, 4);
        auto xi = random_reeb(rng, x);
        auto base = vol(build_volume_form(x), xi);
        for (std::uint64_t seed : {7u, 8u, 9u})
            EXPECT_EQ(vol(VolumeForm::build(x.sigma(), seed), xi), base);
    }
}

TEST(Volume, Homogeneity)
{
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 40; ++trial)
    {
        auto x = random_cone(rng, 4);
        auto form = build_volume_form(x);
        auto xi = random_reeb(rng, x);
        Rational lambda(static_cast<long>(rng() % 17 + 1), static_cast<long>(rng() % 5 + 1));
        RationalVector scaled;
        for (const auto& c : xi)
            scaled.push_back(lambda * c);
        Rational p = 1;
        for (std::size_t i = 0; i < x.rank(); ++i)
            p *= lambda;
        EXPECT_EQ(vol(form, scaled) * p, vol(form, xi));
        EXPECT_EQ(normalized_volume(x, form, scaled), normalized_volume(x, form, xi));
    }
}

TEST(Volume, GradientAndHessianMatchFiniteDifferences)
{
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 20; ++trial)
    {
        auto x = random_cone(rng, 4);
        auto form = build_volume_form(x);
        auto xi = to_double(random_reeb(rng, x));
        const double v = vol(form, xi);
        auto g = grad_vol(form, xi);
        auto h = hess_vol(form, xi);
        double scale = 0;
        for (double c : xi)
            scale = std::max(scale, std::abs(c));
        const double step = 1e-5 * scale;
        for (std::size_t i = 0; i < xi.size(); ++i)
        {
            auto p = xi, m = xi;
            p[i] += step;
            m[i] -= step;
            const double fd = (vol(form, p) - vol(form, m)) / (2 * step);
            EXPECT_NEAR(g[static_cast<long>(i)], fd, 1e-6 * (std::abs(fd) + v / scale));
            auto gp = grad_vol(form, p), gm = grad_vol(form, m);
            for (std::size_t j = 0; j < xi.size(); ++j)
            {
                const double fdh = (gp[static_cast<long>(j)] - gm[static_cast<long>(j)]) / (2 * step);
                const double hij = h(static_cast<long>(i), static_cast<long>(j));
                EXPECT_NEAR(hij, fdh, 1e-5 * (std::abs(fdh) + v / (scale * scale)));
            }
        }
        // Exact gradient agrees with the floating one.
        auto ex = random_reeb(rng, x);
        auto ge = grad_vol(form, ex);
        auto gd = grad_vol(form, to_double(ex));
        for (std::size_t i = 0; i < ex.size(); ++i)
            EXPECT_NEAR(to_double(ge[i]), gd[static_cast<long>(i)], 1e-12 * (1 + std::abs(gd[static_cast<long>(i)])));
    }
}

TEST(Volume, MinimizeAffineSpace)
{
    for (std::size_t n = 1; n <= 4; ++n)
    {
        auto x = affine_space(n);
        auto r = minimize(x, build_volume_form(x));
        EXPECT_EQ(r.certificate, Certificate::Converged);
        const double nn = std::pow(static_cast<double>(n), static_cast<double>(n));
        EXPECT_NEAR(r.min_hvol, nn, 1e-9 * nn);
        for (double c : r.minimizer)
            EXPECT_NEAR(c, 1.0, 1e-8);
        EXPECT_EQ(r.slice_value, Rational(static_cast<long>(n)));
    }
}

TEST(Volume, MinimizeFromOffCenterStart)
{
    auto x = affine_space(3);
    auto form = build_volume_form(x);
    auto r = minimize_from(x, form, {0.2, 0.3, 2.5});
    EXPECT_EQ(r.certificate, Certificate::Converged);
    EXPECT_NEAR(r.min_hvol, 27.0, 1e-9 * 27);
    EXPECT_GT(r.newton_iters, 0);
}

TEST(Volume, MinimizeConifoldAgainstGridSearch)
{
    const double oracle = grid_golden_min(conifold_hvol_closed, 3.0);
    auto x = conifold();
    auto r = minimize(x, build_volume_form(x));
    EXPECT_EQ(r.certificate, Certificate::Converged);
    EXPECT_NEAR(r.min_hvol, oracle, 1e-6 * oracle);
    EXPECT_NEAR(r.min_hvol, 16.0, 1e-9 * 16);
    EXPECT_GT(r.hessian_min_eigenvalue, 0);
    EXPECT_EQ(r.regularity, Regularity::QuasiRegular);
}

TEST(Volume, MinimizeWithBoundary)
{
    // C^2 with (1/2) D_1: hvol = (xi_1/2 + xi_2)^2 / (xi_1 xi_2), minimum 2 at xi_1 = 2 xi_2.
    auto x = make_cone({{1, 0}, {0, 1}}, {"1/2", "0"});
    auto r = minimize(x, build_volume_form(x));
    EXPECT_EQ(r.certificate, Certificate::Converged);
    EXPECT_NEAR(r.min_hvol, 2.0, 1e-10);
    EXPECT_NEAR(r.minimizer[0] / r.minimizer[1], 2.0, 1e-8);
}

TEST(Volume, MaxItersCertificate)
{
    auto x = affine_space(3);
    MinimizeOptions o;
    o.max_iters = 1;
    auto r = minimize_from(x, build_volume_form(x), {0.1, 0.2, 2.7}, o);
    EXPECT_EQ(r.certificate, Certificate::MaxIters);
}

TEST(Volume, KSemistability)
{
    auto x = affine_space(2);
    auto form = build_volume_form(x);
    EXPECT_TRUE(is_ksemistable(x, form, {1.0, 1.0}, 1e-6).semistable);
    EXPECT_TRUE(is_ksemistable(x, form, {5.0, 5.0}, 1e-6).semistable);
    auto v = is_ksemistable(x, form, {1.0, 2.0}, 1e-6);
    EXPECT_FALSE(v.semistable);
    ASSERT_EQ(v.witness.size(), 2u);
    EXPECT_NEAR(log_discrepancy_unchecked(x, v.witness), 0.0, 1e-12);
}

TEST(Volume, ConvexAlongSegments)
{
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 100; ++trial)
    {
        auto x = random_cone(rng, 4);
        auto form = build_volume_form(x);
        auto a = random_reeb(rng, x), b = random_reeb(rng, x);
        RationalVector mid;
        for (std::size_t i = 0; i < a.size(); ++i)
            mid.push_back((a[i] + b[i]) / 2);
        EXPECT_LE(2 * vol(form, mid), vol(form, a) + vol(form, b));
    }
}

TEST(Volume, ScanSegment)
{
    auto x = affine_space(2);
    auto s = scan_segment(x, build_volume_form(x), {1.0, 3.0}, {3.0, 1.0}, 5);
    ASSERT_EQ(s.size(), 5u);
    EXPECT_DOUBLE_EQ(s[2].first, 0.5);
    EXPECT_NEAR(s[2].second, 4.0, 1e-12);
    EXPECT_GT(s[0].second, s[2].second);
}
