#ifndef WCCA_SRC_DETAIL_HPP
#define WCCA_SRC_DETAIL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "wcca/cca.hpp"
#include "wcca/estimation.hpp"

// Internal machinery shared by the estimation, cca and simulation
// translation units. Not installed.

namespace wcca::detail {

/// Positive spectrum of a PSD Gram matrix, descending. Eigenvalues at or
/// below a relative floor are treated as numerically zero and dropped,
/// together with their eigenvectors.
struct GramEig {
    Eigen::VectorXd lambda;  // r positive eigenvalues, descending
    Eigen::MatrixXd vecs;    // n x r orthonormal eigenvectors of the Gram

    int count() const { return static_cast<int>(lambda.size()); }
};

/// gram must hold <<row_i, row_j>> / n. Keeps at most max_components pairs.
GramEig gram_eig(const Eigen::MatrixXd& gram, int max_components);

/// Lift Gram eigenvectors to orthonormal eigenfields over logs.base(),
/// apply the largest-entry-positive sign convention, and derive scores.
std::pair<EigenSystem, ScoreMatrix> lift_eigensystem(const LogFieldMatrix& logs,
                                                     const GramEig& eig, int max_components);

/// Shared precomputation for repeated fits on one paired sample: log
/// fields over the sample means, weighted Gram matrices, their spectra,
/// and the full cross-covariance expressed in the two eigenbases.
struct PairWorkspace {
    LogFieldMatrix logs_x, logs_y;
    Eigen::MatrixXd Kx, Ky;       // <<row_i, row_j>> including quadrature weight
    GramEig ex, ey;               // eigendecomposition of K/n
    Eigen::MatrixXd gamma;        // (1/n) Sx^T Sy in the eigenbases
    int n = 0;
};

PairWorkspace build_workspace(const Sample& x, const Sample& y);
PairWorkspace build_workspace(LogFieldMatrix logs_x, LogFieldMatrix logs_y);

/// Coordinate scores s(i,k) = sqrt(n*lambda_k) vecs(i,k) (no sign fixing).
Eigen::MatrixXd coordinate_scores(const GramEig& eig, int n);

CcaEstimate fpca_fit(const PairWorkspace& ws, int k_x, int k_y, int r);
CcaEstimate tikhonov_fit(const PairWorkspace& ws, double eps_x, double eps_y, int r);

CvResult cv_core(const PairWorkspace& ws, CcaMethod method,
                 const std::vector<CcaTuning>& candidates, int folds, std::uint64_t seed);

/// Top singular triple by alternating power iteration (deterministic).
void top_singular_triple(const Eigen::MatrixXd& w, double& sigma, Eigen::VectorXd& u,
                         Eigen::VectorXd& v);

} // namespace wcca::detail

#endif // WCCA_SRC_DETAIL_HPP
