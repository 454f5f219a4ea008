#include "wcca/wasserstein.hpp"

#include <algorithm>
#include <cmath>

namespace wcca {

namespace {

// Slack for support containment checks; absorbs rounding dust from sums
// of in-range values without letting genuinely escaping mass through.
double support_slack(const GridConfig& grid) {
    return 1e-9 * (grid.support_hi - grid.support_lo);
}

void check_distribution_invariants(const Eigen::VectorXd& q, const GridConfig& grid) {
    if (q.size() != grid.m_levels)
        throw DomainError("Distribution: quantile vector length != m_levels");
    for (int j = 0; j + 1 < q.size(); ++j) {
        if (!(q[j] <= q[j + 1]))
            throw DomainError("Distribution: quantile vector not nondecreasing");
    }
    const double slack = support_slack(grid);
    if (q[0] < grid.support_lo - slack || q[q.size() - 1] > grid.support_hi + slack)
        throw DomainError("Distribution: quantiles escape the support interval");
    if (!q.allFinite()) throw DomainError("Distribution: non-finite quantile");
}

} // namespace

Distribution::Distribution(Eigen::VectorXd quantiles, GridConfig grid)
    : q_(std::move(quantiles)), grid_(std::move(grid)) {
    grid_.validate();
    check_distribution_invariants(q_, grid_);
}

TangentVector::TangentVector(Eigen::VectorXd values, Distribution base)
    : v_(std::move(values)), base_(std::move(base)) {
    if (v_.size() != base_.m_levels())
        throw DomainError("TangentVector: length != m_levels of base");
    if (!v_.allFinite()) throw DomainError("TangentVector: non-finite entry");
}

double TangentVector::norm() const {
    return std::sqrt(v_.squaredNorm() / base_.m_levels());
}

double wasserstein_distance(const Distribution& mu, const Distribution& nu) {
    require_same_grid(mu.grid(), nu.grid(), "wasserstein_distance");
    return std::sqrt((mu.quantiles() - nu.quantiles()).squaredNorm() / mu.m_levels());
}

double tangent_inner(const TangentVector& u, const TangentVector& w) {
    require_same_grid(u.base().grid(), w.base().grid(), "tangent_inner");
    if (!(u.base() == w.base()))
        throw BaseMismatch("tangent_inner: vectors anchored at different base measures");
    return u.values().dot(w.values()) / u.base().m_levels();
}

TangentVector log_map(const Distribution& mu, const Distribution& nu) {
    require_same_grid(mu.grid(), nu.grid(), "log_map");
    return TangentVector(nu.quantiles() - mu.quantiles(), mu);
}

Distribution exp_map(const Distribution& base, const TangentVector& v, ExpMode mode) {
    if (!(v.base() == base))
        throw BaseMismatch("exp_map: tangent vector anchored at a different base");
    Eigen::VectorXd q = base.quantiles() + v.values();
    const GridConfig& grid = base.grid();

    if (mode == ExpMode::Strict) {
        for (int j = 0; j + 1 < q.size(); ++j) {
            if (!(q[j] <= q[j + 1]))
                throw NotInLogImage("exp_map: candidate quantile vector not monotone");
        }
        const double slack = support_slack(grid);
        if (q[0] < grid.support_lo - slack || q[q.size() - 1] > grid.support_hi + slack)
            throw SupportViolation("exp_map: candidate quantiles escape the support");
        // Snap rounding dust so the result satisfies the containment invariant.
        q = q.cwiseMax(grid.support_lo).cwiseMin(grid.support_hi);
    } else {
        isotonic_project(q);
        q = q.cwiseMax(grid.support_lo).cwiseMin(grid.support_hi);
    }
    return Distribution(std::move(q), grid);
}

Distribution mccann_geodesic(const Distribution& mu, const Distribution& nu, double t) {
    require_same_grid(mu.grid(), nu.grid(), "mccann_geodesic");
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("mccann_geodesic: t outside [0,1]");
    return Distribution((1.0 - t) * mu.quantiles() + t * nu.quantiles(), mu.grid());
}

TangentVector transport_vector(const TangentVector& v, const Distribution& from,
                               const Distribution& to) {
    if (!(v.base() == from))
        throw BaseMismatch("transport_vector: vector not anchored at `from`");
    require_same_grid(from.grid(), to.grid(), "transport_vector");
    return TangentVector(v.values(), to);
}

Distribution from_samples(std::vector<double> samples, const GridConfig& grid, bool clip) {
    if (samples.empty()) throw EmptyInput("from_samples: empty sample set");
    if (clip) {
        for (double& x : samples)
            x = std::min(std::max(x, grid.support_lo), grid.support_hi);
    } else {
        const double slack = support_slack(grid);
        for (double x : samples) {
            if (x < grid.support_lo - slack || x > grid.support_hi + slack)
                throw SupportViolation("from_samples: sample outside support");
        }
    }
    std::sort(samples.begin(), samples.end());
    const auto n = static_cast<double>(samples.size());

    Eigen::VectorXd q(grid.m_levels);
    for (int j = 0; j < grid.m_levels; ++j) {
        auto rank = static_cast<std::size_t>(std::ceil(grid.u_level(j) * n));
        if (rank < 1) rank = 1;
        if (rank > samples.size()) rank = samples.size();
        q[j] = samples[rank - 1];
    }
    if (!clip) q = q.cwiseMax(grid.support_lo).cwiseMin(grid.support_hi);
    return Distribution(std::move(q), grid);
}

Distribution from_density_grid(const std::vector<std::pair<double, double>>& density,
                               const GridConfig& grid) {
    if (density.size() < 2) throw DomainError("from_density_grid: need at least 2 grid points");
    const std::size_t n = density.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (density[i].second < 0.0)
            throw DomainError("from_density_grid: negative density value");
        if (i + 1 < n && !(density[i].first < density[i + 1].first))
            throw DomainError("from_density_grid: x-grid not strictly increasing");
    }

    // Trapezoid CDF, then normalize.
    std::vector<double> cdf(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) {
        const double dx = density[i].first - density[i - 1].first;
        cdf[i] = cdf[i - 1] + 0.5 * dx * (density[i].second + density[i - 1].second);
    }
    const double mass = cdf[n - 1];
    if (!(mass > 0.0)) throw DegenerateDensity("from_density_grid: total mass is not positive");
    for (double& c : cdf) c /= mass;

    Eigen::VectorXd q(grid.m_levels);
    std::size_t lo = 0;
    for (int j = 0; j < grid.m_levels; ++j) {
        const double u = grid.u_level(j);
        while (lo + 1 < n && cdf[lo + 1] < u) ++lo;
        // cdf[lo] <= u (except possibly at the very first point), cdf[lo+1] >= u
        std::size_t hi = lo + 1;
        const double c0 = cdf[lo], c1 = cdf[hi];
        double x;
        if (c1 > c0) {
            const double w = (u - c0) / (c1 - c0);
            x = density[lo].first + w * (density[hi].first - density[lo].first);
        } else {
            x = density[hi].first;  // flat CDF segment: take its right edge
        }
        q[j] = std::min(std::max(x, grid.support_lo), grid.support_hi);
    }
    // Interpolation between increasing breakpoints preserves monotonicity.
    return Distribution(std::move(q), grid);
}

void isotonic_project(Eigen::VectorXd& values) {
    const auto n = static_cast<std::size_t>(values.size());
    if (n < 2) return;

    // Pool-adjacent-violators with block bookkeeping: each active block
    // carries its mean and width; violating neighbors merge right-to-left.
    std::vector<double> mean(n);
    std::vector<std::size_t> width(n);
    std::size_t blocks = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mean[blocks] = values[i];
        width[blocks] = 1;
        ++blocks;
        while (blocks > 1 && mean[blocks - 2] > mean[blocks - 1]) {
            const double total = mean[blocks - 2] * width[blocks - 2] +
                                 mean[blocks - 1] * width[blocks - 1];
            width[blocks - 2] += width[blocks - 1];
            mean[blocks - 2] = total / width[blocks - 2];
            --blocks;
        }
    }
    std::size_t pos = 0;
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::size_t k = 0; k < width[b]; ++k) values[pos++] = mean[b];
}

} // namespace wcca
