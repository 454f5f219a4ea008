#ifndef WCCA_SIMULATION_HPP
#define WCCA_SIMULATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wcca/cca.hpp"

namespace wcca {

/**
 * Synthetic-data generator configuration. The generator produces paired
 * samples of distribution curves whose log fields are finite sine-basis
 * expansions with bounded random scores; the second Y-score is coupled
 * to the first two X-scores, with noise level sigma, so the population
 * canonical correlation is 0.5 / sqrt(0.25 + sigma^2).
 */
struct SimConfig {
    int n = 100;            ///< subjects per replicate
    double sigma = 0.1;     ///< coupling noise level, >= 0
    int score_case = 1;     ///< 1 = truncated-normal scores, 2 = uniform scores
    int basis_size = 20;    ///< number of basis fields K (>= 2)
    GridConfig grid{64, 50, 0.0, 1.0};
    std::uint64_t seed = 0;
    int replicates = 50;

    void validate() const;
};

/**
 * Analytic targets of the generator. `rho` is evaluated from the
 * generator's exact second moments; `rho_design` is the closed form
 * 0.5/sqrt(0.25+sigma^2) that the coupling noise scale is chosen to
 * achieve, so the two agree up to rounding. The weight fields carry the
 * unit-covariance normalization of the population problem.
 */
struct GroundTruth {
    double rho;
    double rho_design;
    TangentField u_field;  ///< over the X mean curve
    TangentField v_field;  ///< over the Y mean curve
};

/// Beta-family mean curves on support [0,1]: shape parameters
/// (2+t, 3-(t^2+t)/2) for X and (3-t, 2+(t^2+t)/2) for Y. Quantiles are
/// obtained by CDF-grid inversion on a 4096-point x-grid.
std::pair<DistributionCurve, DistributionCurve> beta_mean_surfaces(const GridConfig& grid);

/// Orthonormal basis fields in quantile coordinates: field j has entries
/// sqrt(2) sin(pi*j*u) at every time point, independent of the mean shape.
std::vector<TangentField> basis_fields(const CurvePtr& mean, int count);

/// Per-subject random scores of one replicate (no validity rejection).
struct ScoreDraws {
    Eigen::MatrixXd xi;   // n x K
    Eigen::MatrixXd eta;  // n x K
};
ScoreDraws sample_scores(const SimConfig& config, std::uint64_t replicate);

struct GeneratedData {
    Sample x;
    Sample y;
    GroundTruth truth;
    long redraws = 0;  ///< subjects redrawn to keep strict-mode validity
};

/// Generate one replicate: X and Y samples plus the analytic truth.
/// Subjects whose candidate quantile surfaces would leave the image of
/// the strict exponential map (possible in the extreme tails of the
/// coupled score) are redrawn from their own stream; the redraw count is
/// reported. A subject that fails 1000 consecutive attempts raises
/// NotInLogImage, which indicates a generator defect rather than bad luck.
GeneratedData generate_dataset(const SimConfig& config, std::uint64_t replicate);

/// Per-replicate error summary against the generator truth. Weight-field
/// distances compare direction only: both fields are transported to the
/// truth's base curve, scaled to unit norm, and sign-aligned (the smaller
/// of the two signed distances is taken) before measuring.
struct ErrorMetrics {
    double abs_rho_err;
    double u_err;
    double v_err;
};
ErrorMetrics error_metrics(const CcaEstimate& est, const GroundTruth& truth);

/// What to fit on each replicate.
struct MethodSpec {
    CcaMethod method = CcaMethod::Fpca;
    bool cross_validate = true;
    CcaTuning tuning;                  ///< used when cross_validate is false
    std::vector<CcaTuning> cv_grid;    ///< empty = default grid for the method
    int cv_folds = 5;
    int top_r = 1;
};

struct ReplicateRow {
    int replicate;
    CcaTuning tuning;
    double rho_hat;
    double abs_rho_err;
    double u_err;
    double v_err;
};

struct ReplicateReport {
    SimConfig config;
    MethodSpec method;
    std::vector<ReplicateRow> rows;
    double mean_abs_rho_err = 0.0;
    double imse_u = 0.0;  ///< sqrt(mean of squared u distances)
    double imse_v = 0.0;
    std::map<std::string, int> tuning_histogram;
    long total_redraws = 0;
};

/// Run config.replicates independent replicates (parallel over replicates,
/// deterministic for a fixed master seed) and aggregate the error metrics.
ReplicateReport run_replicates(const SimConfig& config, const MethodSpec& method);

/// Histogram label for a tuning choice ("k=2" or "eps=1e-06").
std::string tuning_label(const CcaTuning& tuning, CcaMethod method);

// Design constants of the generator, exposed for tests and oracles.

/// Score bound s_k = 2^-k / (sqrt(2)*pi*k*M), M = 1.78.
double score_scale(int k);
/// Variance of the bounded score variate: truncated normal (case 1) or
/// uniform on [-1,1] (case 2).
double theta_variance(int score_case);
/// Variance of N(0,1) truncated to [-1,1].
double truncated_normal_variance();
/// Noise multiplier applied to sigma in the coupled score; chosen so the
/// noise variance is sigma^2 * Var(xi_1 + xi_2).
double coupling_noise_scale(int score_case);

/// Stream-derivation helper shared by the runner and the CLI.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

} // namespace wcca

#endif // WCCA_SIMULATION_HPP
