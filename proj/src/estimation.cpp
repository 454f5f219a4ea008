#include "wcca/estimation.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "detail.hpp"

namespace wcca {

Sample::Sample(std::vector<DistributionCurve> curves) : curves_(std::move(curves)) {
    if (curves_.size() < 2) throw DomainError("Sample: need at least 2 curves");
    for (const auto& c : curves_)
        require_same_grid(curves_.front().grid(), c.grid(), "Sample");
}

LogFieldMatrix::LogFieldMatrix(Eigen::MatrixXd rows, CurvePtr base)
    : rows_(std::move(rows)), base_(std::move(base)) {
    if (!base_) throw DomainError("LogFieldMatrix: null base curve");
    const auto width = static_cast<Eigen::Index>(base_->t_points()) * base_->m_levels();
    if (rows_.cols() != width)
        throw DomainError("LogFieldMatrix: row width != t_points*m_levels");
}

LogFieldMatrix LogFieldMatrix::from_rows(Eigen::MatrixXd rows, CurvePtr base) {
    return LogFieldMatrix(std::move(rows), std::move(base));
}

LogFieldMatrix LogFieldMatrix::from_sample(const Sample& sample, CurvePtr base) {
    if (!base) throw DomainError("LogFieldMatrix: null base curve");
    require_same_grid(sample.grid(), base->grid(), "log_fields");
    const int n = sample.size();
    const int t = base->t_points(), m = base->m_levels();
    Eigen::MatrixXd rows(n, static_cast<Eigen::Index>(t) * m);
    for (int i = 0; i < n; ++i) {
        const Eigen::MatrixXd diff = sample.curve(i).quantiles() - base->quantiles();
        rows.row(i) = Eigen::Map<const Eigen::RowVectorXd>(diff.data(), diff.size());
    }
    return LogFieldMatrix(std::move(rows), std::move(base));
}

TangentField LogFieldMatrix::field(int i) const {
    if (i < 0 || i >= size()) throw DomainError("LogFieldMatrix::field: index out of range");
    const int t = base_->t_points(), m = base_->m_levels();
    // Rows were flattened from column-major (t x m) blocks; copy the row
    // into contiguous storage before reversing the map.
    const Eigen::VectorXd flat = rows_.row(i).transpose();
    Eigen::MatrixXd z = Eigen::Map<const Eigen::MatrixXd>(flat.data(), t, m);
    return TangentField(std::move(z), base_);
}

DistributionCurve frechet_mean_curve(const Sample& sample) {
    Eigen::MatrixXd mean = sample.curve(0).quantiles();
    for (int i = 1; i < sample.size(); ++i) mean += sample.curve(i).quantiles();
    mean /= sample.size();
    return DistributionCurve(std::move(mean), sample.grid());
}

LogFieldMatrix log_fields(const Sample& sample, CurvePtr mean) {
    return LogFieldMatrix::from_sample(sample, std::move(mean));
}

std::pair<EigenSystem, ScoreMatrix> covariance_eigen(const LogFieldMatrix& logs,
                                                     int max_components) {
    const int n = logs.size();
    if (max_components < 1) throw DomainError("covariance_eigen: max_components < 1");
    if (max_components > n) throw RankError("covariance_eigen: max_components exceeds sample size");

    const double w = logs.grid().field_weight();
    const Eigen::MatrixXd gram = (w / n) * (logs.rows() * logs.rows().transpose());
    return detail::lift_eigensystem(logs, detail::gram_eig(gram, max_components), max_components);
}

Eigen::MatrixXd cross_covariance_scores(const ScoreMatrix& scores_x,
                                        const ScoreMatrix& scores_y) {
    if (scores_x.subjects() != scores_y.subjects())
        throw SampleMismatch("cross_covariance_scores: subject counts differ");
    const double n = scores_x.subjects();
    return (scores_x.s.transpose() * scores_y.s) / n;
}

std::pair<double, double> alignment_diagnostic(const Eigen::MatrixXd& gamma,
                                               const Eigen::VectorXd& lambda_x,
                                               const Eigen::VectorXd& lambda_y,
                                               int k_x, int k_y) {
    if (k_x < 0 || k_x > gamma.rows() || k_x > lambda_x.size() ||
        k_y < 0 || k_y > gamma.cols() || k_y > lambda_y.size())
        throw RankError("alignment_diagnostic: truncation exceeds available components");
    double first = 0.0, second = 0.0;
    for (int j = 0; j < k_x; ++j) {
        for (int k = 0; k < k_y; ++k) {
            const double g2 = gamma(j, k) * gamma(j, k);
            first += g2 / (lambda_x(j) * lambda_x(j) * lambda_y(k));
            second += g2 / (lambda_x(j) * lambda_y(k) * lambda_y(k));
        }
    }
    return {first, second};
}

} // namespace wcca
