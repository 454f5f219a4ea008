#ifndef WCCA_GRID_HPP
#define WCCA_GRID_HPP

#include "wcca/errors.hpp"

namespace wcca {

/**
 * Discretization shared by every object in a computation.
 *
 * Quantile levels form the midpoint grid u_j = (j - 1/2) / m, j = 1..m,
 * which stays strictly inside (0,1) so quantile functions are never
 * evaluated at 0 or 1, and all integrals du use the uniform midpoint
 * rule with weight 1/m. Time samples are t_i = t_lo + i*(t_hi-t_lo)/(T-1),
 * i = 0..T-1, integrated with the uniform Riemann rule of weight |T|/T.
 */
struct GridConfig {
    int m_levels = 0;       ///< number of quantile levels (>= 2)
    int t_points = 0;       ///< number of time samples (>= 2)
    double support_lo = 0.0;
    double support_hi = 1.0;
    double time_lo = 0.0;
    double time_hi = 1.0;

    GridConfig() = default;
    GridConfig(int m, int t, double a, double b, double t0 = 0.0, double t1 = 1.0)
        : m_levels(m), t_points(t), support_lo(a), support_hi(b), time_lo(t0), time_hi(t1) {
        validate();
    }

    void validate() const {
        if (m_levels < 2) throw DomainError("GridConfig: m_levels must be >= 2");
        if (t_points < 2) throw DomainError("GridConfig: t_points must be >= 2");
        if (!(support_lo < support_hi)) throw DomainError("GridConfig: need support_lo < support_hi");
        if (!(time_lo < time_hi)) throw DomainError("GridConfig: need time_lo < time_hi");
    }

    /// Quantile level u_j for j in [0, m_levels).
    double u_level(int j) const { return (j + 0.5) / m_levels; }

    /// Time sample t_i for i in [0, t_points).
    double t_value(int i) const {
        return time_lo + (time_hi - time_lo) * static_cast<double>(i) / (t_points - 1);
    }

    double time_length() const { return time_hi - time_lo; }

    /// Midpoint quadrature weight for integrals du.
    double quantile_weight() const { return 1.0 / m_levels; }

    /// Uniform Riemann weight for integrals dt.
    double time_weight() const { return time_length() / t_points; }

    /// Combined weight for the double integral over (t, u).
    double field_weight() const { return time_weight() * quantile_weight(); }

    friend bool operator==(const GridConfig& a, const GridConfig& b) {
        return a.m_levels == b.m_levels && a.t_points == b.t_points &&
               a.support_lo == b.support_lo && a.support_hi == b.support_hi &&
               a.time_lo == b.time_lo && a.time_hi == b.time_hi;
    }
    friend bool operator!=(const GridConfig& a, const GridConfig& b) { return !(a == b); }
};

inline void require_same_grid(const GridConfig& a, const GridConfig& b, const char* where) {
    if (a != b) throw GridMismatch(std::string(where) + ": grid mismatch");
}

} // namespace wcca

#endif // WCCA_GRID_HPP
