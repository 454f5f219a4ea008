#ifndef WCCA_ESTIMATION_HPP
#define WCCA_ESTIMATION_HPP

#include <Eigen/Core>
#include <utility>
#include <vector>

#include "wcca/tensor_field.hpp"

namespace wcca {

/// A sample of n independent distribution curves on a common grid.
class Sample {
public:
    Sample(std::vector<DistributionCurve> curves);

    int size() const { return static_cast<int>(curves_.size()); }
    const DistributionCurve& curve(int i) const { return curves_[i]; }
    const std::vector<DistributionCurve>& curves() const { return curves_; }
    const GridConfig& grid() const { return curves_.front().grid(); }

private:
    std::vector<DistributionCurve> curves_;
};

/**
 * The n log fields of a sample with respect to a common base curve,
 * flattened row-wise: row i is the field of subject i stored as a
 * (t_points*m_levels)-vector in row-major frame order. When the base is
 * the sample's own Fréchet mean the rows average to the zero field, so
 * no separate centering pass exists anywhere downstream.
 */
class LogFieldMatrix {
public:
    static LogFieldMatrix from_sample(const Sample& sample, CurvePtr base);

    /// Wrap precomputed rows (used by oracles and file ingestion).
    static LogFieldMatrix from_rows(Eigen::MatrixXd rows, CurvePtr base);

    int size() const { return static_cast<int>(rows_.rows()); }
    const Eigen::MatrixXd& rows() const { return rows_; }
    const CurvePtr& base() const { return base_; }
    const GridConfig& grid() const { return base_->grid(); }

    /// Row i as a TangentField over the base curve.
    TangentField field(int i) const;

private:
    LogFieldMatrix(Eigen::MatrixXd rows, CurvePtr base);

    Eigen::MatrixXd rows_;  // n x (t_points*m_levels)
    CurvePtr base_;
};

/**
 * Eigenvalues and orthonormal eigenfields of a sample covariance
 * operator. Only components with positive eigenvalue are kept;
 * eigenvalues are sorted descending and clipped at zero, and each
 * eigenfield's sign is fixed so its entry of largest magnitude is
 * positive.
 */
struct EigenSystem {
    Eigen::VectorXd eigenvalues;            // size k
    std::vector<TangentField> eigenfields;  // k fields over `base`
    CurvePtr base;

    int count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Subject-by-component projection scores s(i,k) = <<row_i, eigenfield_k>>.
struct ScoreMatrix {
    Eigen::MatrixXd s;  // n x k

    int subjects() const { return static_cast<int>(s.rows()); }
    int components() const { return static_cast<int>(s.cols()); }
};

/// Fréchet mean curve: per frame, the measure whose quantile vector is
/// the arithmetic mean of the sample quantile vectors.
DistributionCurve frechet_mean_curve(const Sample& sample);

/// Log fields of every subject with respect to `mean`.
LogFieldMatrix log_fields(const Sample& sample, CurvePtr mean);

/**
 * Eigendecomposition of the sample covariance operator held in factored
 * form. The n x n Gram matrix G(i,i') = <<row_i, row_i'>> / n is
 * decomposed and its eigenvectors lifted to eigenfields; the nonzero
 * spectrum equals that of the covariance operator itself. At most
 * max_components components are returned, fewer when the numerical rank
 * is smaller.
 */
std::pair<EigenSystem, ScoreMatrix> covariance_eigen(const LogFieldMatrix& logs,
                                                     int max_components);

/// Cross-covariance of two score matrices: gamma(j,k) = (1/n) sum_i
/// s_x(i,j) s_y(i,k).
Eigen::MatrixXd cross_covariance_scores(const ScoreMatrix& scores_x,
                                        const ScoreMatrix& scores_y);

/**
 * Advisory alignment diagnostic: the two truncated sums
 *   sum_{j<=k_x, k<=k_y} gamma(j,k)^2 / (lx_j^2 * ly_k)  and
 *   sum_{j<=k_x, k<=k_y} gamma(j,k)^2 / (lx_j * ly_k^2).
 * Both are nondecreasing in the truncation levels.
 */
std::pair<double, double> alignment_diagnostic(const Eigen::MatrixXd& gamma,
                                               const Eigen::VectorXd& lambda_x,
                                               const Eigen::VectorXd& lambda_y,
                                               int k_x, int k_y);

} // namespace wcca

#endif // WCCA_ESTIMATION_HPP
