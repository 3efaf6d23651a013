/**
 * Closed-form volume of a Reeb vector, its derivatives, the normalized
 * volume, and its minimization over the Reeb cone.
 *
 * For a toric cone sigma with dual cone sigma^v triangulated into simplicial
 * cones s with primitive rays u_{s,1..n},
 *
 *     vol(xi) = sum_s |det s| / prod_j <u_{s,j}, xi>,
 *
 * which is n! times the Euclidean volume of {alpha in sigma^v : <alpha, xi> <= 1}.
 * The normalized volume is A(xi)^n vol(xi) with A(xi) = <gamma_D, xi>.
 */

#ifndef FANOCONE_VOLUME_HPP
#define FANOCONE_VOLUME_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>
#include <Eigen/Dense>
#include "error.hpp"
#include "lattice_cones.hpp"
#include "rational.hpp"
#include "toric_singularity.hpp"

namespace fanocone {

class VolumeForm
{
    public:
        struct Term
        {
            Rational det;
            std::vector<RationalVector> factors;
        };

    private:
        std::size_t dim_ = 0;
        SimplicialDecomposition decomposition_;
        std::vector<RationalVector> dual_rays_;
        std::vector<Term> terms_;
        // Double copies for fast floating evaluation.
        std::vector<double> det_d_;
        std::vector<Eigen::MatrixXd> factors_d_;   // n x n, row j = u_{s,j}

        VolumeForm() = default;

    public:
        /**
         * Triangulate the dual of sigma. With a seed, the triangulation uses a
         * shuffled insertion order (the resulting function is the same).
         */
        static VolumeForm build(const PolyCone& sigma, std::optional<std::uint64_t> seed = std::nullopt)
        {
            VolumeForm f;
            PolyCone dual = dual_cone(sigma);
            f.dim_ = sigma.dim();
            f.dual_rays_ = dual.rays();
            f.decomposition_ = seed ? triangulate(dual, *seed) : triangulate(dual);
            const std::size_t n = f.dim_;
            for (std::size_t s = 0; s < f.decomposition_.simplices.size(); ++s)
            {
                Term t;
                t.det = f.decomposition_.det_values[s];
                Eigen::MatrixXd m(n, n);
                for (std::size_t j = 0; j < n; ++j)
                {
                    const auto& u = f.dual_rays_[f.decomposition_.simplices[s][j]];
                    t.factors.push_back(u);
                    for (std::size_t k = 0; k < n; ++k)
                        m(j, k) = to_double(u[k]);
                }
                f.det_d_.push_back(to_double(t.det));
                f.factors_d_.push_back(std::move(m));
                f.terms_.push_back(std::move(t));
            }
            return f;
        }

        std::size_t dim() const { return dim_; }
        const std::vector<Term>& terms() const { return terms_; }
        const SimplicialDecomposition& decomposition() const { return decomposition_; }

        /** Rays of sigma^v; these are also the inward facet normals of sigma. */
        const std::vector<RationalVector>& dual_rays() const { return dual_rays_; }

        const std::vector<double>& det_double() const { return det_d_; }
        const std::vector<Eigen::MatrixXd>& factors_double() const { return factors_d_; }
};

inline VolumeForm build_volume_form(const LogFanoCone& x)
{
    return VolumeForm::build(x.sigma());
}

namespace detail {

template <typename T>
void check_dim(const VolumeForm& form, const std::vector<T>& xi)
{
    if (xi.size() != form.dim())
        throw Error(ErrorCode::InvalidInput, "Reeb vector has wrong dimension");
}

[[noreturn]] inline void not_reeb()
{
    throw Error(ErrorCode::NotInReebCone, "a linear factor <u, xi> is not positive");
}

}   // namespace detail

/** vol(xi): exact for Rational input. Throws NotInReebCone outside int(sigma). */
inline Rational vol(const VolumeForm& form, const RationalVector& xi)
{
    detail::check_dim(form, xi);
    Rational total = 0;
    for (const auto& t : form.terms())
    {
        Rational prod = 1;
        for (const auto& u : t.factors)
        {
            Rational l = dot(u, xi);
            if (l <= 0)
                detail::not_reeb();
            prod *= l;
        }
        total += t.det / prod;
    }
    return total;
}

inline double vol(const VolumeForm& form, const std::vector<double>& xi)
{
    detail::check_dim(form, xi);
    const std::size_t n = form.dim();
    Eigen::Map<const Eigen::VectorXd> x(xi.data(), static_cast<Eigen::Index>(n));
    double total = 0;
    for (std::size_t s = 0; s < form.terms().size(); ++s)
    {
        Eigen::VectorXd l = form.factors_double()[s] * x;
        if ((l.array() <= 0).any())
            detail::not_reeb();
        total += form.det_double()[s] / l.prod();
    }
    return total;
}

/** Gradient: d_k vol = -sum_s term_s * sum_j u_{s,j,k} / <u_{s,j}, xi>. */
inline RationalVector grad_vol(const VolumeForm& form, const RationalVector& xi)
{
    detail::check_dim(form, xi);
    const std::size_t n = form.dim();
    RationalVector g(n, Rational(0));
    for (const auto& t : form.terms())
    {
        std::vector<Rational> l;
        Rational prod = 1;
        for (const auto& u : t.factors)
        {
            l.push_back(dot(u, xi));
            if (l.back() <= 0)
                detail::not_reeb();
            prod *= l.back();
        }
        Rational term = t.det / prod;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                g[k] -= term * t.factors[j][k] / l[j];
    }
    return g;
}

inline Eigen::VectorXd grad_vol(const VolumeForm& form, const std::vector<double>& xi)
{
    detail::check_dim(form, xi);
    const auto n = static_cast<Eigen::Index>(form.dim());
    Eigen::Map<const Eigen::VectorXd> x(xi.data(), n);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    for (std::size_t s = 0; s < form.terms().size(); ++s)
    {
        const auto& u = form.factors_double()[s];
        Eigen::VectorXd l = u * x;
        if ((l.array() <= 0).any())
            detail::not_reeb();
        const double term = form.det_double()[s] / l.prod();
        g -= term * (u.transpose() * l.cwiseInverse());
    }
    return g;
}

/**
 * Hessian: term_s * (w w^T + U^T diag(1/l^2) U) with w = U^T (1/l), summed
 * over simplices.
 */
inline Eigen::MatrixXd hess_vol(const VolumeForm& form, const std::vector<double>& xi)
{
    detail::check_dim(form, xi);
    const auto n = static_cast<Eigen::Index>(form.dim());
    Eigen::Map<const Eigen::VectorXd> x(xi.data(), n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t s = 0; s < form.terms().size(); ++s)
    {
        const auto& u = form.factors_double()[s];
        Eigen::VectorXd l = u * x;
        if ((l.array() <= 0).any())
            detail::not_reeb();
        const double term = form.det_double()[s] / l.prod();
        Eigen::VectorXd inv = l.cwiseInverse();
        Eigen::VectorXd w = u.transpose() * inv;
        Eigen::MatrixXd scaled = inv.asDiagonal() * u;
        h += term * (w * w.transpose() + scaled.transpose() * scaled);
    }
    return h;
}

/** A(xi)^n vol(xi); exact for Rational input and invariant under xi -> lambda xi. */
inline Rational normalized_volume(const LogFanoCone& x, const VolumeForm& form, const RationalVector& xi)
{
    require_reeb(x.sigma(), xi);
    Rational a = log_discrepancy_unchecked(x, xi);
    Rational p = 1;
    for (std::size_t i = 0; i < x.rank(); ++i)
        p *= a;
    return p * vol(form, xi);
}

inline double normalized_volume(const LogFanoCone& x, const VolumeForm& form, const std::vector<double>& xi)
{
    require_reeb(x.sigma(), xi);
    const double a = log_discrepancy_unchecked(x, xi);
    return std::pow(a, static_cast<double>(x.rank())) * vol(form, xi);
}

enum class Certificate { Converged, MaxIters, BoundaryEscape };

inline const char* to_string(Certificate c)
{
    switch (c)
    {
        case Certificate::Converged:      return "Converged";
        case Certificate::MaxIters:       return "MaxIters";
        case Certificate::BoundaryEscape: return "BoundaryEscape";
    }
    return "MaxIters";
}

struct MinimizeOptions
{
    double grad_tol = 1e-10;          // on |P grad vol| / vol, P = slice projection
    int max_iters = 200;
    double armijo = 1e-4;
    double shrink = 0.5;
    double barrier_margin = 1e-9;     // Euclidean distance to the facets of sigma
    double regularity_tol = 1e-8;
    std::int64_t regularity_max_denominator = kDefaultMaxDenominator;
};

struct MinimizationResult
{
    std::vector<double> minimizer;
    double min_hvol = 0;
    double grad_norm = 0;            // relative slice gradient |P grad vol| / vol
    int newton_iters = 0;
    Rational slice_value;            // A(xi) = n on the slice
    Certificate certificate = Certificate::MaxIters;
    double hessian_min_eigenvalue = 0;   // slice-restricted Hessian of vol
    Regularity regularity = Regularity::Irregular;
};

namespace detail {

/** Orthonormal basis (columns) of the hyperplane gamma^perp. */
inline Eigen::MatrixXd slice_basis(const RationalVector& gamma)
{
    const auto n = static_cast<Eigen::Index>(gamma.size());
    Eigen::MatrixXd g(n, 1);
    for (Eigen::Index i = 0; i < n; ++i)
        g(i, 0) = to_double(gamma[static_cast<std::size_t>(i)]);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    return q.rightCols(n - 1);
}

inline double facet_distance(const VolumeForm& form, const std::vector<double>& xi)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& u : form.dual_rays())
    {
        auto ud = to_double(u);
        double norm = 0, pair = 0;
        for (std::size_t i = 0; i < ud.size(); ++i)
        {
            norm += ud[i] * ud[i];
            pair += ud[i] * xi[i];
        }
        best = std::min(best, pair / std::sqrt(norm));
    }
    return best;
}

inline bool all_factors_positive(const VolumeForm& form, const Eigen::VectorXd& xi)
{
    for (const auto& u : form.factors_double())
        if (((u * xi).array() <= 0).any())
            return false;
    return true;
}

}   // namespace detail

/** Slice-normalized sum of the rays of sigma: always a Reeb vector with A = n. */
inline std::vector<double> default_start(const LogFanoCone& x)
{
    RationalVector s(x.rank(), Rational(0));
    for (const auto& r : x.sigma().rays())
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] += r[i];
    Rational scale = Rational(static_cast<long>(x.rank())) / log_discrepancy_unchecked(x, s);
    for (auto& c : s)
        c *= scale;
    return to_double(s);
}

/**
 * Damped Newton on vol restricted to the slice {A(xi) = n} inside int(sigma),
 * started from `start` (rescaled onto the slice). Backtracking keeps every
 * iterate strictly interior.
 */
inline MinimizationResult minimize_from(const LogFanoCone& x, const VolumeForm& form,
                                        std::vector<double> start, const MinimizeOptions& opts = {})
{
    require_reeb(x.sigma(), start);
    const std::size_t n = x.rank();
    const auto ni = static_cast<Eigen::Index>(n);
    {
        const double a = log_discrepancy_unchecked(x, start);
        for (auto& c : start)
            c *= static_cast<double>(n) / a;
    }

    MinimizationResult res;
    res.slice_value = Rational(static_cast<long>(n));
    Eigen::MatrixXd z = detail::slice_basis(x.gamma());
    Eigen::VectorXd xi = Eigen::Map<Eigen::VectorXd>(start.data(), ni);

    auto as_vec = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    auto finish = [&](Certificate c) {
        res.minimizer = as_vec(xi);
        const double v = vol(form, res.minimizer);
        res.min_hvol = std::pow(static_cast<double>(n), static_cast<double>(n)) * v;
        Eigen::VectorXd gz = z.transpose() * grad_vol(form, res.minimizer);
        res.grad_norm = gz.norm() / v;
        if (n > 1)
        {
            Eigen::MatrixXd hz = z.transpose() * hess_vol(form, res.minimizer) * z;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hz, Eigen::EigenvaluesOnly);
            res.hessian_min_eigenvalue = es.eigenvalues().minCoeff();
        }
        else
            res.hessian_min_eigenvalue = std::numeric_limits<double>::infinity();
        res.certificate = c;
        res.regularity = classify_regularity(x, ReebVector(res.minimizer), opts.regularity_tol,
                                             opts.regularity_max_denominator);
        return res;
    };

    if (n == 1)
        return finish(Certificate::Converged);

    for (int iter = 0; iter < opts.max_iters; ++iter)
    {
        auto xv = as_vec(xi);
        const double v = vol(form, xv);
        Eigen::VectorXd g = grad_vol(form, xv);
        Eigen::VectorXd gz = z.transpose() * g;
        if (gz.norm() / v <= opts.grad_tol)
            return finish(Certificate::Converged);

        Eigen::MatrixXd hz = z.transpose() * hess_vol(form, xv) * z;
        Eigen::LLT<Eigen::MatrixXd> llt(hz);
        Eigen::VectorXd d = llt.info() == Eigen::Success ? Eigen::VectorXd(-llt.solve(gz)) : Eigen::VectorXd(-gz);
        Eigen::VectorXd dir = z * d;
        const double slope = g.dot(dir);

        double alpha = 1.0;
        bool accepted = false;
        while (alpha > 1e-20)
        {
            Eigen::VectorXd trial = xi + alpha * dir;
            if (detail::all_factors_positive(form, trial))
            {
                const double vt = vol(form, as_vec(trial));
                // Small slack so that steps at roundoff level are not rejected forever.
                if (vt <= v + opts.armijo * alpha * slope + 4 * std::numeric_limits<double>::epsilon() * v)
                {
                    xi = trial;
                    accepted = true;
                    break;
                }
            }
            alpha *= opts.shrink;
        }
        res.newton_iters = iter + 1;
        if (!accepted)
        {
            res.minimizer = as_vec(xi);
            Eigen::VectorXd gz2 = z.transpose() * grad_vol(form, res.minimizer);
            return finish(gz2.norm() / vol(form, res.minimizer) <= opts.grad_tol ? Certificate::Converged
                                                                                : Certificate::MaxIters);
        }
        if (detail::facet_distance(form, as_vec(xi)) < opts.barrier_margin)
            return finish(Certificate::BoundaryEscape);
    }
    auto xv = as_vec(xi);
    Eigen::VectorXd gz = z.transpose() * grad_vol(form, xv);
    return finish(gz.norm() / vol(form, xv) <= opts.grad_tol ? Certificate::Converged : Certificate::MaxIters);
}

inline MinimizationResult minimize(const LogFanoCone& x, const VolumeForm& form, const MinimizeOptions& opts = {})
{
    return minimize_from(x, form, default_start(x), opts);
}

struct KSemistabilityVerdict
{
    bool semistable = false;
    std::vector<double> witness;     // empty when semistable
    double distance = 0;             // |xi0/A(xi0) - xi*/A(xi*)|
    MinimizationResult minimization;
};

/**
 * K-semistable iff the slice-normalized xi0 is the minimizer of the
 * normalized volume. Otherwise the witness is eta = n xi0/A(xi0) - xi*,
 * which satisfies A(eta) = 0 and has negative Futaki invariant: the product
 * configuration generated by eta destabilizes.
 */
inline KSemistabilityVerdict is_ksemistable(const LogFanoCone& x, const VolumeForm& form,
                                            const std::vector<double>& xi0, double tol,
                                            const MinimizeOptions& opts = {})
{
    require_reeb(x.sigma(), xi0);
    KSemistabilityVerdict out;
    out.minimization = minimize(x, form, opts);
    if (out.minimization.certificate == Certificate::BoundaryEscape)
        throw Error(ErrorCode::Internal, "minimizer escaped to the boundary of the Reeb cone");
    const auto& star = out.minimization.minimizer;
    const double a0 = log_discrepancy_unchecked(x, xi0);
    const double as = log_discrepancy_unchecked(x, star);
    double dist2 = 0;
    for (std::size_t i = 0; i < xi0.size(); ++i)
    {
        const double d = xi0[i] / a0 - star[i] / as;
        dist2 += d * d;
    }
    out.distance = std::sqrt(dist2);
    out.semistable = out.distance <= tol;
    if (!out.semistable)
    {
        const double n = static_cast<double>(x.rank());
        for (std::size_t i = 0; i < xi0.size(); ++i)
            out.witness.push_back(n * xi0[i] / a0 - star[i]);
    }
    return out;
}

/** Samples of the normalized volume along the segment from a to b (inclusive). */
inline std::vector<std::pair<double, double>> scan_segment(const LogFanoCone& x, const VolumeForm& form,
                                                           const std::vector<double>& a,
                                                           const std::vector<double>& b, int samples)
{
    if (samples < 2)
        throw Error(ErrorCode::InvalidInput, "a segment scan needs at least 2 samples");
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < samples; ++i)
    {
        const double s = static_cast<double>(i) / (samples - 1);
        std::vector<double> p(a.size());
        for (std::size_t k = 0; k < a.size(); ++k)
            p[k] = (1 - s) * a[k] + s * b[k];
        out.emplace_back(s, normalized_volume(x, form, p));
    }
    return out;
}

}   // namespace fanocone

#endif
