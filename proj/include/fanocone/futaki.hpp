/**
 * Generalized Futaki and Berman-Ding invariants of product test
 * configurations (X, D, xi0; eta), eta a vector in N_R.
 *
 *     T_{xi0}(eta) = (A(xi0) eta - A(eta) xi0) / n
 *     Fut          = D_{-T_{xi0}(eta)} vol(xi0) / vol(xi0)
 *                  = D_{-eta} hvol(xi0) / (n A(xi0)^{n-1} vol(xi0))
 */

#ifndef FANOCONE_FUTAKI_HPP
#define FANOCONE_FUTAKI_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>
#include <Eigen/Dense>
#include "error.hpp"
#include "rational.hpp"
#include "toric_singularity.hpp"
#include "volume.hpp"

namespace fanocone {

template <typename T>
struct ProductTestConfig
{
    std::vector<T> eta;
    std::vector<T> xi0;
};

/** T_{xi0}(eta); A of the result is exactly zero for rational input. */
template <typename T>
std::vector<T> t_normalize(const LogFanoCone& x, const std::vector<T>& xi0, const std::vector<T>& eta)
{
    if (eta.size() != x.rank() || xi0.size() != x.rank())
        throw Error(ErrorCode::InvalidInput, "eta and xi0 must have the torus rank");
    const T a0 = log_discrepancy_unchecked(x, xi0);
    const T ae = log_discrepancy_unchecked(x, eta);
    const T n = T(static_cast<long>(x.rank()));
    std::vector<T> out(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i)
        out[i] = (a0 * eta[i] - ae * xi0[i]) / n;
    return out;
}

/**
 * (a xi0, b xi0 + eta) with a = n/A(xi0), b = -A(eta)/A(xi0), so that the
 * result has A(xi0') = n and A(eta') = 0. Idempotent.
 */
template <typename T>
ProductTestConfig<T> normalize_config(const LogFanoCone& x, const ProductTestConfig<T>& cfg)
{
    if (cfg.eta.size() != x.rank() || cfg.xi0.size() != x.rank())
        throw Error(ErrorCode::InvalidInput, "eta and xi0 must have the torus rank");
    const T a0 = log_discrepancy_unchecked(x, cfg.xi0);
    if (!(a0 > 0))
        throw Error(ErrorCode::DegenerateXi, "A(xi0) <= 0");
    const T a = T(static_cast<long>(x.rank())) / a0;
    const T b = -log_discrepancy_unchecked(x, cfg.eta) / a0;
    ProductTestConfig<T> out;
    for (std::size_t i = 0; i < cfg.xi0.size(); ++i)
    {
        out.xi0.push_back(a * cfg.xi0[i]);
        out.eta.push_back(b * cfg.xi0[i] + cfg.eta[i]);
    }
    return out;
}

template <typename T>
bool is_normalized(const LogFanoCone& x, const ProductTestConfig<T>& cfg)
{
    return log_discrepancy_unchecked(x, cfg.xi0) == T(static_cast<long>(x.rank()))
        && log_discrepancy_unchecked(x, cfg.eta) == T(0);
}

enum class FutakiMethod { AnalyticGradient, FiniteDifference };

struct FutakiReport
{
    double fut = 0;                 // D_{-T(eta)} vol / vol, analytic gradient
    double fut_hvol = 0;            // D_{-eta} hvol / (n A^{n-1} vol), analytic
    double fut_fd = 0;              // same quotient by central differences of hvol
    double ding = 0;                // equals fut for product configurations
    std::vector<double> t_xi_eta;
    FutakiMethod method = FutakiMethod::AnalyticGradient;
};

/** Exact Futaki invariant for rational xi0 and eta. */
inline Rational futaki_exact(const LogFanoCone& x, const VolumeForm& form,
                             const RationalVector& xi0, const RationalVector& eta)
{
    require_reeb(x.sigma(), xi0);
    auto t = t_normalize(x, xi0, eta);
    auto g = grad_vol(form, xi0);
    return -dot(g, t) / vol(form, xi0);
}

/**
 * Both closed-form expressions, plus a central-difference estimate of
 * d/de hvol(xi0 - e eta) with step h = 1e-5 |xi0|.
 */
inline FutakiReport futaki(const LogFanoCone& x, const VolumeForm& form,
                           const std::vector<double>& xi0, const std::vector<double>& eta)
{
    require_reeb(x.sigma(), xi0);
    if (eta.size() != x.rank())
        throw Error(ErrorCode::InvalidInput, "eta must have the torus rank");
    const std::size_t n = x.rank();
    const double nd = static_cast<double>(n);
    FutakiReport rep;
    rep.t_xi_eta = t_normalize(x, xi0, eta);

    const double v = vol(form, xi0);
    const Eigen::VectorXd g = grad_vol(form, xi0);
    double d_t = 0;
    for (std::size_t i = 0; i < n; ++i)
        d_t -= g[static_cast<Eigen::Index>(i)] * rep.t_xi_eta[i];
    rep.fut = d_t / v;

    const double a0 = log_discrepancy_unchecked(x, xi0);
    const double ae = log_discrepancy_unchecked(x, eta);
    double g_eta = 0;
    for (std::size_t i = 0; i < n; ++i)
        g_eta += g[static_cast<Eigen::Index>(i)] * eta[i];
    // d/de [A(xi0 - e eta)^n vol(xi0 - e eta)] at e = 0
    const double d_hvol = -nd * std::pow(a0, nd - 1) * ae * v - std::pow(a0, nd) * g_eta;
    const double denom = nd * std::pow(a0, nd - 1) * v;
    rep.fut_hvol = d_hvol / denom;

    double norm = 0;
    for (double c : xi0)
        norm += c * c;
    const double h = 1e-5 * std::sqrt(norm);
    auto shifted = [&](double e) {
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = xi0[i] - e * eta[i];
        return normalized_volume(x, form, p);
    };
    rep.fut_fd = (shifted(h) - shifted(-h)) / (2 * h) / denom;
    rep.ding = rep.fut;
    return rep;
}

/**
 * Berman-Ding invariant of a product configuration. The central fibre is X
 * itself, so the lct correction vanishes and D^NA = Fut.
 */
inline double ding_product(const LogFanoCone& x, const VolumeForm& form,
                           const std::vector<double>& xi0, const std::vector<double>& eta)
{
    return futaki(x, form, xi0, eta).fut;
}

}   // namespace fanocone

#endif
