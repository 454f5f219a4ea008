#ifndef WCCA_WASSERSTEIN_HPP
#define WCCA_WASSERSTEIN_HPP

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "wcca/grid.hpp"

namespace wcca {

/**
 * A probability measure on [support_lo, support_hi], stored as its
 * quantile function sampled on the midpoint level grid of a GridConfig.
 *
 * The quantile vector is nondecreasing and contained in the support
 * interval; atoms are representable as repeated values. Instances are
 * immutable after construction and safe to share across threads.
 */
class Distribution {
public:
    Distribution(Eigen::VectorXd quantiles, GridConfig grid);

    const Eigen::VectorXd& quantiles() const { return q_; }
    const GridConfig& grid() const { return grid_; }
    int m_levels() const { return grid_.m_levels; }

    friend bool operator==(const Distribution& a, const Distribution& b) {
        return a.grid_ == b.grid_ && a.q_ == b.q_;
    }

private:
    Eigen::VectorXd q_;
    GridConfig grid_;
};

/**
 * An element of the tangent space at `base`, in quantile coordinates:
 * entry j holds the displacement evaluated at the base quantile of
 * level u_j. In these coordinates the log map is a vector subtraction,
 * the exponential map is an addition, and parallel transport between
 * base points leaves the entries unchanged.
 */
class TangentVector {
public:
    TangentVector(Eigen::VectorXd values, Distribution base);

    const Eigen::VectorXd& values() const { return v_; }
    const Distribution& base() const { return base_; }

    /// Norm induced by the base measure: sqrt((1/m) sum v_j^2).
    double norm() const;

private:
    Eigen::VectorXd v_;
    Distribution base_;
};

enum class ExpMode {
    Strict,  ///< reject candidates outside the log image or support
    Project  ///< isotonic projection (pool-adjacent-violators) then clip
};

/// 2-Wasserstein distance: L2 distance of quantile functions.
double wasserstein_distance(const Distribution& mu, const Distribution& nu);

/// Inner product <u, w> at the common base (midpoint quadrature).
double tangent_inner(const TangentVector& u, const TangentVector& w);

/// Log map at mu: quantile function of nu minus quantile function of mu.
TangentVector log_map(const Distribution& mu, const Distribution& nu);

/// Exponential map at `base`; inverse of log_map on its image.
Distribution exp_map(const Distribution& base, const TangentVector& v,
                     ExpMode mode = ExpMode::Strict);

/// Constant-speed geodesic from mu to nu evaluated at time t in [0,1].
Distribution mccann_geodesic(const Distribution& mu, const Distribution& nu, double t);

/// Parallel transport of v from `from` to `to`; entries are unchanged,
/// only the base point is replaced, so inner products are preserved
/// exactly.
TangentVector transport_vector(const TangentVector& v, const Distribution& from,
                               const Distribution& to);

/**
 * Empirical quantile ingestion. Levels are read off the right-continuous
 * inverse of the empirical CDF, i.e. q_j = x_(ceil(u_j * N)) on the sorted
 * samples. Midpoint levels never coincide with jump levels unless N and m
 * share the right factors; at an exact jump the lower order statistic is
 * taken (the convention is arbitrary on that null set of levels).
 * With clip = true, samples outside the support are clamped to it;
 * otherwise they raise SupportViolation.
 */
Distribution from_samples(std::vector<double> samples, const GridConfig& grid,
                          bool clip = false);

/**
 * Build a Distribution from density values tabulated on an x-grid covering
 * the support: trapezoid integration to a CDF, normalization to unit mass,
 * then inversion by monotone linear interpolation at the midpoint levels.
 */
Distribution from_density_grid(const std::vector<std::pair<double, double>>& density,
                               const GridConfig& grid);

/// In-place pool-adjacent-violators projection onto nondecreasing vectors
/// (least squares, uniform weights).
void isotonic_project(Eigen::VectorXd& values);

} // namespace wcca

#endif // WCCA_WASSERSTEIN_HPP
