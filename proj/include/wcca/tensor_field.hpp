#ifndef WCCA_TENSOR_FIELD_HPP
#define WCCA_TENSOR_FIELD_HPP

#include <Eigen/Core>
#include <memory>

#include "wcca/wasserstein.hpp"

namespace wcca {

/**
 * A time-indexed family of distributions: one functional datum, or a
 * mean curve. Frame i is the measure observed at t_value(i). Stored as
 * a (t_points x m_levels) matrix of quantile values, all frames sharing
 * one GridConfig.
 */
class DistributionCurve {
public:
    DistributionCurve(Eigen::MatrixXd frame_quantiles, GridConfig grid);

    const GridConfig& grid() const { return grid_; }
    int t_points() const { return grid_.t_points; }
    int m_levels() const { return grid_.m_levels; }

    /// Quantile table, rows are time frames.
    const Eigen::MatrixXd& quantiles() const { return Q_; }

    /// The distribution at time index i (copies one row).
    Distribution frame(int i) const;

    friend bool operator==(const DistributionCurve& a, const DistributionCurve& b) {
        return a.grid_ == b.grid_ && a.Q_ == b.Q_;
    }

private:
    Eigen::MatrixXd Q_;
    GridConfig grid_;
};

using CurvePtr = std::shared_ptr<const DistributionCurve>;

/// True when the two handles denote the same base curve (pointer fast
/// path, content comparison otherwise).
bool same_curve(const CurvePtr& a, const CurvePtr& b);

/**
 * A vector field along a base curve, in quantile coordinates:
 * z(i, j) is the tangent vector at frame i evaluated at level u_j.
 * Elements of the space of square-integrable fields along the curve,
 * with inner product integral over t of the per-frame tangent inner
 * products. Immutable; transport between curves re-tags the base and
 * leaves entries unchanged, hence is exactly unitary.
 */
class TangentField {
public:
    TangentField(Eigen::MatrixXd values, CurvePtr base);

    const Eigen::MatrixXd& values() const { return z_; }
    const CurvePtr& base() const { return base_; }
    const GridConfig& grid() const { return base_->grid(); }

    double norm() const;

private:
    Eigen::MatrixXd z_;
    CurvePtr base_;
};

/// <<z1, z2>> = |T| * (1/(t_points*m_levels)) * sum of entrywise products.
double field_inner(const TangentField& z1, const TangentField& z2);

/// Parallel transport along curves: entries unchanged, base re-tagged.
TangentField transport_field(const TangentField& z, CurvePtr to);

/// Apply the rank-one operator (left tensor right) to arg:
/// returns <<right, arg>> * left. right and arg must share a base;
/// left may live over a different curve.
TangentField rank_one_operator_apply(const TangentField& left, const TangentField& right,
                                     const TangentField& arg);

/// Log map applied frame-by-frame: the field t -> Log_{base(t)} curve(t).
TangentField log_field(const CurvePtr& base, const DistributionCurve& curve);

/// Exponential map applied frame-by-frame.
DistributionCurve exp_field(const DistributionCurve& base, const TangentField& field,
                            ExpMode mode = ExpMode::Strict);

} // namespace wcca

#endif // WCCA_TENSOR_FIELD_HPP
