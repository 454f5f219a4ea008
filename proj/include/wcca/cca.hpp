#ifndef WCCA_CCA_HPP
#define WCCA_CCA_HPP

#include <cstdint>
#include <vector>

#include "wcca/estimation.hpp"

namespace wcca {

enum class CcaMethod { Fpca, Tikhonov };

/// Regularization knobs: truncation levels for the FPCA estimator,
/// ridge parameters for the Tikhonov estimator. Unused members stay 0.
struct CcaTuning {
    int k_x = 0;
    int k_y = 0;
    double eps_x = 0.0;
    double eps_y = 0.0;

    static CcaTuning truncation(int k) { return {k, k, 0.0, 0.0}; }
    static CcaTuning truncation(int kx, int ky) { return {kx, ky, 0.0, 0.0}; }
    static CcaTuning ridge(double eps) { return {0, 0, eps, eps}; }
    static CcaTuning ridge(double ex, double ey) { return {0, 0, ex, ey}; }
};

/// One canonical pair: correlation plus its two weight fields.
struct CcaPair {
    double rho;
    TangentField u_field;
    TangentField v_field;
};

/**
 * Result of a correlation fit. The weight fields satisfy the unit
 * constraint <<U, C_reg U>> = 1 under the regularized covariance used by
 * the method, live in the span of the sample log fields, and carry a
 * deterministic sign (nonnegative projection on the leading eigenfield,
 * falling back to the largest-entry-positive rule). `higher` holds the
 * next canonical pairs in nonincreasing correlation order.
 */
struct CcaEstimate {
    double rho;                ///< leading canonical correlation, in [0, 1]
    TangentField u_field;      ///< weight field over the X mean curve
    TangentField v_field;      ///< weight field over the Y mean curve
    CcaMethod method;
    CcaTuning tuning;
    bool rho_clipped = false;  ///< true when a value above 1 was clipped
    std::vector<CcaPair> higher;
};

/**
 * FPCA-truncated estimator. Scores are truncated at (k_x, k_y), the
 * whitened cross-covariance W = Lx^{-1/2} gamma Ly^{-1/2} is formed and
 * its singular value decomposition taken; the top singular value is the
 * correlation estimate and the singular vectors, unwhitened, give the
 * weight-field coordinates in the trailing eigenfield bases.
 *
 * Throws RankError when a truncation level exceeds the sample size and
 * SingularTruncation when it reaches eigenvalues that are numerically
 * zero.
 */
CcaEstimate fpca_cca(const EigenSystem& eig_x, const ScoreMatrix& scores_x,
                     const EigenSystem& eig_y, const ScoreMatrix& scores_y,
                     int k_x, int k_y, int r = 1);

/**
 * Tikhonov-regularized estimator, solved entirely in Gram space: the
 * nonzero eigenstructure of
 *   (C_X + eps_x id)^{-1} C_XY (C_Y + eps_y id)^{-1} C_YX
 * is recovered from n x n matrices built from the log-field Gram
 * matrices, never from dense operators on the field grid.
 */
CcaEstimate tikhonov_cca(const LogFieldMatrix& logs_x, const LogFieldMatrix& logs_y,
                         double eps_x, double eps_y, int r = 1);

/// Cross-validation output: the winning candidate plus the per-candidate
/// scores (squared pooled Pearson correlations, one per input candidate).
struct CvResult {
    CcaTuning chosen;
    std::vector<double> scores;
};

/**
 * K-fold cross-validation for either estimator. Subjects are split into
 * `folds` blocks by a seeded shuffle; for each candidate the weight
 * functions are fitted without the held-out block, transported to the
 * full-sample mean base, and the held-out projection pairs are pooled
 * across all folds into a single squared Pearson correlation. The
 * candidate with the highest score wins; ties break toward smaller
 * truncation (larger ridge).
 */
CvResult cv_select(const Sample& sample_x, const Sample& sample_y, CcaMethod method,
                   const std::vector<CcaTuning>& candidates, int folds = 5,
                   std::uint64_t seed = 0);

/// Default candidate grids: k in {1..10}; eps log-spaced over
/// {1e-10, .., 1e-2} (9 points).
std::vector<CcaTuning> default_fpca_grid();
std::vector<CcaTuning> default_tikhonov_grid();

} // namespace wcca

#endif // WCCA_CCA_HPP
