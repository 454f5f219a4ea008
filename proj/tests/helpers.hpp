#ifndef WCCA_TESTS_HELPERS_HPP
#define WCCA_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "wcca/rng.hpp"
#include "wcca/tensor_field.hpp"
#include "wcca/wasserstein.hpp"

namespace wcca_test {

// ----- independent numeric oracles (no production code paths) -----

inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

// Valid for shapes >= 1; pow(0,0) = 1 covers the flat edge cases.
inline double beta_density_raw(double x, double a, double b) {
    if (x < 0.0 || x > 1.0) return 0.0;
    return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0);
}

/// Regularized incomplete beta by composite Simpson quadrature.
inline double beta_cdf_oracle(double x, double a, double b) {
    auto f = [&](double t) { return beta_density_raw(t, a, b); };
    const double total = simpson(f, 0.0, 1.0, 4096);
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return simpson(f, 0.0, x, 4096) / total;
}

/// Quantile by bisection on the oracle CDF.
inline double beta_quantile_oracle(double u, double a, double b) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (beta_cdf_oracle(mid, a, b) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Reference isotonic regression: repeated scan-and-pool until monotone.
inline std::vector<double> pava_reference(std::vector<double> y) {
    const std::size_t n = y.size();
    std::vector<double> w(n, 1.0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < y.size(); ++i) {
            if (y[i] > y[i + 1]) {
                const double merged = (y[i] * w[i] + y[i + 1] * w[i + 1]) / (w[i] + w[i + 1]);
                y[i] = merged;
                w[i] += w[i + 1];
                y.erase(y.begin() + static_cast<long>(i) + 1);
                w.erase(w.begin() + static_cast<long>(i) + 1);
                changed = true;
                break;
            }
        }
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (double k = 0; k < w[i]; ++k) out.push_back(y[i]);
    out.resize(n);
    return out;
}

// ----- construction helpers -----

inline wcca::GridConfig grid_1d(int m, double lo = 0.0, double hi = 1.0) {
    return wcca::GridConfig(m, 2, lo, hi);
}

inline wcca::Distribution uniform_dist(double a, double b, const wcca::GridConfig& grid) {
    Eigen::VectorXd q(grid.m_levels);
    for (int j = 0; j < grid.m_levels; ++j) q(j) = a + (b - a) * grid.u_level(j);
    return wcca::Distribution(q, grid);
}

inline wcca::Distribution point_mass(double x, const wcca::GridConfig& grid) {
    return wcca::Distribution(Eigen::VectorXd::Constant(grid.m_levels, x), grid);
}

inline wcca::Distribution beta_dist(double a, double b, const wcca::GridConfig& grid) {
    std::vector<std::pair<double, double>> density(4096);
    for (int i = 0; i < 4096; ++i) {
        const double x = static_cast<double>(i) / 4095;
        density[i] = {x, beta_density_raw(x, a, b)};
    }
    return wcca::from_density_grid(density, grid);
}

/// Random distribution supported in (lo, hi): sorted uniform draws become
/// an empirical quantile vector.
inline wcca::Distribution random_dist(wcca::RandomStream& rng, const wcca::GridConfig& grid) {
    std::vector<double> values(static_cast<std::size_t>(grid.m_levels));
    const double margin = 0.05 * (grid.support_hi - grid.support_lo);
    for (auto& v : values)
        v = rng.uniform(grid.support_lo + margin, grid.support_hi - margin);
    std::sort(values.begin(), values.end());
    Eigen::VectorXd q = Eigen::Map<Eigen::VectorXd>(values.data(), grid.m_levels);
    return wcca::Distribution(q, grid);
}

inline wcca::CurvePtr random_curve(wcca::RandomStream& rng, const wcca::GridConfig& grid) {
    Eigen::MatrixXd q(grid.t_points, grid.m_levels);
    for (int i = 0; i < grid.t_points; ++i)
        q.row(i) = random_dist(rng, grid).quantiles().transpose();
    return std::make_shared<const wcca::DistributionCurve>(std::move(q), grid);
}

inline wcca::TangentField random_field(wcca::RandomStream& rng, const wcca::CurvePtr& base,
                                       double scale = 1.0) {
    Eigen::MatrixXd z(base->t_points(), base->m_levels());
    for (int i = 0; i < z.rows(); ++i)
        for (int j = 0; j < z.cols(); ++j) z(i, j) = scale * rng.normal();
    return wcca::TangentField(std::move(z), base);
}

} // namespace wcca_test

#endif // WCCA_TESTS_HELPERS_HPP
