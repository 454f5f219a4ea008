#include "wcca/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "detail.hpp"
#include "parallel.hpp"
#include "wcca/rng.hpp"

namespace wcca {

namespace {

constexpr double kDensityBound = 1.78;  // upper bound M on the mean-surface densities
constexpr int kDensityGridSize = 4096;

double basis_value(int j, double u) {  // j >= 1
    return std::sqrt(2.0) * std::sin(M_PI * j * u);
}

// Unnormalized Beta(a, b) density for shapes >= 1 (pow(0,0) = 1 covers
// the flat edge cases); from_density_grid normalizes.
double beta_density_unnormalized(double x, double a, double b) {
    if (x < 0.0 || x > 1.0) return 0.0;
    return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0);
}

Distribution beta_distribution(double a, double b, const GridConfig& grid) {
    std::vector<std::pair<double, double>> density(kDensityGridSize);
    for (int i = 0; i < kDensityGridSize; ++i) {
        const double x = static_cast<double>(i) / (kDensityGridSize - 1);
        density[i] = {x, beta_density_unnormalized(x, a, b)};
    }
    return from_density_grid(density, grid);
}

struct ScoreLaw {
    int score_case;
    double draw(RandomStream& rng) const {
        return score_case == 1 ? rng.truncated_normal_pm1() : rng.uniform(-1.0, 1.0);
    }
};

// One subject's score rows; eta(1) carries the coupled component.
void draw_subject_scores(RandomStream& rng, const ScoreLaw& law, double sigma, int K,
                         Eigen::VectorXd& xi, Eigen::VectorXd& eta) {
    for (int k = 0; k < K; ++k) xi(k) = score_scale(k + 1) * law.draw(rng);
    for (int k = 0; k < K; ++k) eta(k) = score_scale(k + 1) * law.draw(rng);
    const double theta2 = eta(1) / score_scale(2);  // recover the raw variate
    eta(1) = 0.5 * (xi(0) + xi(1)) + sigma * coupling_noise_scale(law.score_case) * theta2;
}

} // namespace

void SimConfig::validate() const {
    grid.validate();
    if (n < 2) throw DomainError("SimConfig: n must be >= 2");
    if (sigma < 0.0) throw DomainError("SimConfig: sigma must be >= 0");
    if (score_case != 1 && score_case != 2) throw DomainError("SimConfig: case must be 1 or 2");
    if (basis_size < 2) throw DomainError("SimConfig: basis_size must be >= 2");
    if (replicates < 1) throw DomainError("SimConfig: replicates must be >= 1");
}

double score_scale(int k) {
    return std::pow(2.0, -k) / (std::sqrt(2.0) * M_PI * k * kDensityBound);
}

double truncated_normal_variance() {
    const double phi1 = std::exp(-0.5) / std::sqrt(2.0 * M_PI);
    const double cdf1 = 0.5 * (1.0 + std::erf(1.0 / std::sqrt(2.0)));
    return 1.0 - 2.0 * phi1 / (2.0 * cdf1 - 1.0);
}

double theta_variance(int score_case) {
    if (score_case == 1) return truncated_normal_variance();
    if (score_case == 2) return 1.0 / 3.0;
    throw DomainError("theta_variance: case must be 1 or 2");
}

double coupling_noise_scale(int score_case) {
    const double var_theta = theta_variance(score_case);
    const double s1 = score_scale(1), s2 = score_scale(2);
    const double var_sum = (s1 * s1 + s2 * s2) * var_theta;  // Var(xi_1 + xi_2)
    return std::sqrt(var_sum / var_theta);
}

std::pair<DistributionCurve, DistributionCurve> beta_mean_surfaces(const GridConfig& grid) {
    if (grid.support_lo != 0.0 || grid.support_hi != 1.0)
        throw DomainError("beta_mean_surfaces: support must be [0,1]");
    Eigen::MatrixXd qx(grid.t_points, grid.m_levels), qy(grid.t_points, grid.m_levels);
    for (int i = 0; i < grid.t_points; ++i) {
        const double t = grid.t_value(i);
        const double bump = (t * t + t) / 2.0;
        qx.row(i) = beta_distribution(2.0 + t, 3.0 - bump, grid).quantiles().transpose();
        qy.row(i) = beta_distribution(3.0 - t, 2.0 + bump, grid).quantiles().transpose();
    }
    return {DistributionCurve(std::move(qx), grid), DistributionCurve(std::move(qy), grid)};
}

std::vector<TangentField> basis_fields(const CurvePtr& mean, int count) {
    if (!mean) throw DomainError("basis_fields: null mean curve");
    if (count < 1) throw DomainError("basis_fields: count must be >= 1");
    const GridConfig& grid = mean->grid();
    std::vector<TangentField> fields;
    fields.reserve(count);
    for (int j = 1; j <= count; ++j) {
        Eigen::RowVectorXd row(grid.m_levels);
        for (int l = 0; l < grid.m_levels; ++l) row(l) = basis_value(j, grid.u_level(l));
        Eigen::MatrixXd z = row.replicate(grid.t_points, 1);
        fields.emplace_back(std::move(z), mean);
    }
    return fields;
}

ScoreDraws sample_scores(const SimConfig& config, std::uint64_t replicate) {
    config.validate();
    const ScoreLaw law{config.score_case};
    ScoreDraws draws;
    draws.xi.resize(config.n, config.basis_size);
    draws.eta.resize(config.n, config.basis_size);
    Eigen::VectorXd xi(config.basis_size), eta(config.basis_size);
    for (int i = 0; i < config.n; ++i) {
        RandomStream rng(config.seed, replicate, static_cast<std::uint64_t>(i));
        draw_subject_scores(rng, law, config.sigma, config.basis_size, xi, eta);
        draws.xi.row(i) = xi.transpose();
        draws.eta.row(i) = eta.transpose();
    }
    return draws;
}

namespace {

// Per-level safety margins of a mean surface: the smallest quantile
// increment at each level pair, plus the support margins at the ends.
struct SurfaceMargins {
    Eigen::VectorXd min_step;  // length m-1
    double min_first, max_last;

    explicit SurfaceMargins(const DistributionCurve& mean) {
        const Eigen::MatrixXd& q = mean.quantiles();
        const int m = static_cast<int>(q.cols());
        min_step = (q.rightCols(m - 1) - q.leftCols(m - 1)).colwise().minCoeff().transpose();
        min_first = q.col(0).minCoeff();
        max_last = q.col(m - 1).maxCoeff();
    }

    // Is mean + displacement a valid quantile surface, frame by frame?
    bool admits(const Eigen::VectorXd& d, const GridConfig& grid) const {
        const int m = static_cast<int>(d.size());
        for (int l = 0; l + 1 < m; ++l)
            if (min_step(l) + (d(l + 1) - d(l)) < 0.0) return false;
        return min_first + d(0) >= grid.support_lo && max_last + d(m - 1) <= grid.support_hi;
    }
};

} // namespace

GeneratedData generate_dataset(const SimConfig& config, std::uint64_t replicate) {
    config.validate();
    const GridConfig& grid = config.grid;
    const int K = config.basis_size, m = grid.m_levels, n = config.n;

    auto [mean_x, mean_y] = beta_mean_surfaces(grid);
    const SurfaceMargins margins_x(mean_x), margins_y(mean_y);

    Eigen::MatrixXd basis(K, m);
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < m; ++l) basis(k, l) = basis_value(k + 1, grid.u_level(l));

    const ScoreLaw law{config.score_case};
    std::vector<DistributionCurve> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    long redraws = 0;
    Eigen::VectorXd xi(K), eta(K);
    for (int i = 0; i < n; ++i) {
        RandomStream rng(config.seed, replicate, static_cast<std::uint64_t>(i));
        bool accepted = false;
        for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
            draw_subject_scores(rng, law, config.sigma, K, xi, eta);
            const Eigen::VectorXd dx = basis.transpose() * xi;
            const Eigen::VectorXd dy = basis.transpose() * eta;
            if (!margins_x.admits(dx, grid) || !margins_y.admits(dy, grid)) {
                ++redraws;
                continue;
            }
            Eigen::MatrixXd qx = mean_x.quantiles();
            qx.rowwise() += dx.transpose();
            Eigen::MatrixXd qy = mean_y.quantiles();
            qy.rowwise() += dy.transpose();
            xs.emplace_back(std::move(qx), grid);
            ys.emplace_back(std::move(qy), grid);
            accepted = true;
        }
        if (!accepted)
            throw NotInLogImage("generate_dataset: subject stuck outside the log image");
    }

    // Analytic truth from the generator's second moments.
    const double var_theta = theta_variance(config.score_case);
    const double s1 = score_scale(1), s2 = score_scale(2);
    const double lambda1 = s1 * s1 * var_theta, lambda2 = s2 * s2 * var_theta;
    const double var_sum = lambda1 + lambda2;  // Var(xi_1 + xi_2)
    const double tau = coupling_noise_scale(config.score_case);
    const double var_eta2 = 0.25 * var_sum + config.sigma * config.sigma * tau * tau * var_theta;
    const double rho = 0.5 * std::sqrt(var_sum) / std::sqrt(var_eta2);
    const double rho_design = 0.5 / std::sqrt(0.25 + config.sigma * config.sigma);

    auto mean_x_ptr = std::make_shared<const DistributionCurve>(std::move(mean_x));
    auto mean_y_ptr = std::make_shared<const DistributionCurve>(std::move(mean_y));
    Eigen::MatrixXd u_values =
        (basis.row(0) + basis.row(1)).replicate(grid.t_points, 1) / std::sqrt(var_sum);
    Eigen::MatrixXd v_values = basis.row(1).replicate(grid.t_points, 1) / std::sqrt(var_eta2);

    GroundTruth truth{rho, rho_design, TangentField(std::move(u_values), mean_x_ptr),
                      TangentField(std::move(v_values), mean_y_ptr)};
    return GeneratedData{Sample(std::move(xs)), Sample(std::move(ys)), std::move(truth), redraws};
}

namespace {

double direction_distance(const TangentField& a, const TangentField& b) {
    const double na = a.norm(), nb = b.norm();
    if (!(na > 0.0) || !(nb > 0.0))
        throw DomainError("error_metrics: zero weight field");
    const double cosine = field_inner(a, b) / (na * nb);
    return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs(cosine)));
}

} // namespace

ErrorMetrics error_metrics(const CcaEstimate& est, const GroundTruth& truth) {
    const TangentField u_hat = transport_field(est.u_field, truth.u_field.base());
    const TangentField v_hat = transport_field(est.v_field, truth.v_field.base());
    return ErrorMetrics{std::abs(est.rho - truth.rho),
                        direction_distance(u_hat, truth.u_field),
                        direction_distance(v_hat, truth.v_field)};
}

std::string tuning_label(const CcaTuning& tuning, CcaMethod method) {
    char buf[64];
    if (method == CcaMethod::Fpca) {
        if (tuning.k_x == tuning.k_y)
            std::snprintf(buf, sizeof buf, "k=%d", tuning.k_x);
        else
            std::snprintf(buf, sizeof buf, "k=%d/%d", tuning.k_x, tuning.k_y);
    } else {
        if (tuning.eps_x == tuning.eps_y)
            std::snprintf(buf, sizeof buf, "eps=%g", tuning.eps_x);
        else
            std::snprintf(buf, sizeof buf, "eps=%g/%g", tuning.eps_x, tuning.eps_y);
    }
    return buf;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return RandomStream(master, a, b).next_u64();
}

ReplicateReport run_replicates(const SimConfig& config, const MethodSpec& method) {
    config.validate();
    MethodSpec spec = method;
    if (spec.cross_validate && spec.cv_grid.empty())
        spec.cv_grid = spec.method == CcaMethod::Fpca ? default_fpca_grid()
                                                      : default_tikhonov_grid();

    ReplicateReport report;
    report.config = config;
    report.method = spec;
    report.rows.resize(config.replicates);
    std::vector<long> redraws(config.replicates, 0);

    detail::parallel_for(config.replicates, detail::default_thread_count(), [&](int rep) {
        const GeneratedData data = generate_dataset(config, static_cast<std::uint64_t>(rep));
        const detail::PairWorkspace ws = detail::build_workspace(data.x, data.y);
        CcaTuning tuning = spec.tuning;
        if (spec.cross_validate) {
            tuning = detail::cv_core(ws, spec.method, spec.cv_grid, spec.cv_folds,
                                     derive_seed(config.seed, rep, 0x63765F73656564ULL))
                         .chosen;
        }
        const CcaEstimate est =
            spec.method == CcaMethod::Fpca
                ? detail::fpca_fit(ws, tuning.k_x, tuning.k_y, spec.top_r)
                : detail::tikhonov_fit(ws, tuning.eps_x, tuning.eps_y, spec.top_r);
        const ErrorMetrics metrics = error_metrics(est, data.truth);
        report.rows[rep] = ReplicateRow{rep, tuning, est.rho, metrics.abs_rho_err,
                                        metrics.u_err, metrics.v_err};
        redraws[rep] = data.redraws;
    });

    double sum_rho = 0.0, sum_u2 = 0.0, sum_v2 = 0.0;
    for (const auto& row : report.rows) {
        sum_rho += row.abs_rho_err;
        sum_u2 += row.u_err * row.u_err;
        sum_v2 += row.v_err * row.v_err;
        ++report.tuning_histogram[tuning_label(row.tuning, spec.method)];
    }
    for (long r : redraws) report.total_redraws += r;
    const double nrep = config.replicates;
    report.mean_abs_rho_err = sum_rho / nrep;
    report.imse_u = std::sqrt(sum_u2 / nrep);
    report.imse_v = std::sqrt(sum_v2 / nrep);
    return report;
}

} // namespace wcca
