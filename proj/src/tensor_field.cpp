#include "wcca/tensor_field.hpp"

#include <cmath>
#include <utility>

namespace wcca {

DistributionCurve::DistributionCurve(Eigen::MatrixXd frame_quantiles, GridConfig grid)
    : Q_(std::move(frame_quantiles)), grid_(std::move(grid)) {
    grid_.validate();
    if (Q_.rows() != grid_.t_points || Q_.cols() != grid_.m_levels)
        throw DomainError("DistributionCurve: quantile table shape mismatch");
    // Validate every frame through the Distribution invariants.
    for (int i = 0; i < Q_.rows(); ++i) (void)frame(i);
}

Distribution DistributionCurve::frame(int i) const {
    if (i < 0 || i >= Q_.rows()) throw DomainError("DistributionCurve::frame: index out of range");
    return Distribution(Q_.row(i).transpose(), grid_);
}

bool same_curve(const CurvePtr& a, const CurvePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

TangentField::TangentField(Eigen::MatrixXd values, CurvePtr base)
    : z_(std::move(values)), base_(std::move(base)) {
    if (!base_) throw DomainError("TangentField: null base curve");
    if (z_.rows() != base_->t_points() || z_.cols() != base_->m_levels())
        throw DomainError("TangentField: value shape mismatch with base grid");
    if (!z_.allFinite()) throw DomainError("TangentField: non-finite entry");
}

double TangentField::norm() const {
    return std::sqrt(grid().field_weight() * z_.squaredNorm());
}

double field_inner(const TangentField& z1, const TangentField& z2) {
    require_same_grid(z1.grid(), z2.grid(), "field_inner");
    if (!same_curve(z1.base(), z2.base()))
        throw BaseMismatch("field_inner: fields anchored along different base curves");
    return z1.grid().field_weight() * z1.values().cwiseProduct(z2.values()).sum();
}

TangentField transport_field(const TangentField& z, CurvePtr to) {
    if (!to) throw DomainError("transport_field: null target curve");
    require_same_grid(z.grid(), to->grid(), "transport_field");
    return TangentField(z.values(), std::move(to));
}

TangentField rank_one_operator_apply(const TangentField& left, const TangentField& right,
                                     const TangentField& arg) {
    const double coefficient = field_inner(right, arg);  // checks right/arg base match
    return TangentField(coefficient * left.values(), left.base());
}

TangentField log_field(const CurvePtr& base, const DistributionCurve& curve) {
    if (!base) throw DomainError("log_field: null base curve");
    require_same_grid(base->grid(), curve.grid(), "log_field");
    return TangentField(curve.quantiles() - base->quantiles(), base);
}

DistributionCurve exp_field(const DistributionCurve& base, const TangentField& field,
                            ExpMode mode) {
    if (!(*field.base() == base))
        throw BaseMismatch("exp_field: field anchored along a different curve");
    const GridConfig& grid = base.grid();
    Eigen::MatrixXd Q(grid.t_points, grid.m_levels);
    for (int i = 0; i < grid.t_points; ++i) {
        const Distribution frame = base.frame(i);
        const TangentVector v(field.values().row(i).transpose(), frame);
        Q.row(i) = exp_map(frame, v, mode).quantiles().transpose();
    }
    return DistributionCurve(std::move(Q), grid);
}

} // namespace wcca
