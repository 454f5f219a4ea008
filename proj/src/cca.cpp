#include "wcca/cca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "detail.hpp"
#include "wcca/rng.hpp"

namespace wcca {

namespace detail {

GramEig gram_eig(const Eigen::MatrixXd& gram, int max_components) {
    const int n = static_cast<int>(gram.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw Error("gram_eig: eigendecomposition failed");

    const Eigen::VectorXd& vals = solver.eigenvalues();  // ascending
    const double top = std::max(vals(n - 1), 0.0);
    const double rank_floor = top * 1e-13;

    int k = 0;
    while (k < max_components && k < n) {
        const double lambda = vals(n - 1 - k);
        if (!(lambda > rank_floor) || !(lambda > 0.0)) break;
        ++k;
    }
    GramEig out;
    out.lambda.resize(k);
    out.vecs.resize(n, k);
    for (int c = 0; c < k; ++c) {
        out.lambda(c) = vals(n - 1 - c);
        out.vecs.col(c) = solver.eigenvectors().col(n - 1 - c);
    }
    return out;
}

Eigen::MatrixXd coordinate_scores(const GramEig& eig, int n) {
    return eig.vecs * (static_cast<double>(n) * eig.lambda).cwiseSqrt().asDiagonal();
}

std::pair<EigenSystem, ScoreMatrix> lift_eigensystem(const LogFieldMatrix& logs,
                                                     const GramEig& eig, int max_components) {
    const int n = logs.size();
    const int k = std::min(max_components, eig.count());
    const int t = logs.base()->t_points(), m = logs.base()->m_levels();

    // Batch lift: column c of F is the unsigned eigenfield, flattened.
    Eigen::MatrixXd combo = eig.vecs.leftCols(k);
    for (int c = 0; c < k; ++c) combo.col(c) /= std::sqrt(n * eig.lambda(c));
    Eigen::MatrixXd flat = logs.rows().transpose() * combo;

    EigenSystem esys;
    esys.base = logs.base();
    esys.eigenvalues = eig.lambda.head(k);
    esys.eigenfields.reserve(k);
    ScoreMatrix scores;
    scores.s.resize(n, k);
    for (int c = 0; c < k; ++c) {
        Eigen::MatrixXd z = Eigen::Map<const Eigen::MatrixXd>(flat.col(c).data(), t, m);
        Eigen::Index rr = 0, cc = 0;
        z.cwiseAbs().maxCoeff(&rr, &cc);
        const double sign = z(rr, cc) < 0.0 ? -1.0 : 1.0;
        if (sign < 0.0) z = -z;
        scores.s.col(c) = (sign * std::sqrt(n * eig.lambda(c))) * eig.vecs.col(c);
        esys.eigenfields.emplace_back(std::move(z), logs.base());
    }
    return {std::move(esys), std::move(scores)};
}

PairWorkspace build_workspace(LogFieldMatrix logs_x, LogFieldMatrix logs_y) {
    if (logs_x.size() != logs_y.size())
        throw SampleMismatch("cca: paired samples have different sizes");
    PairWorkspace ws{std::move(logs_x), std::move(logs_y), {}, {}, {}, {}, {}, 0};
    ws.n = ws.logs_x.size();
    const double wx = ws.logs_x.grid().field_weight();
    const double wy = ws.logs_y.grid().field_weight();
    ws.Kx.noalias() = wx * (ws.logs_x.rows() * ws.logs_x.rows().transpose());
    ws.Ky.noalias() = wy * (ws.logs_y.rows() * ws.logs_y.rows().transpose());
    ws.ex = gram_eig(ws.Kx / ws.n, ws.n);
    ws.ey = gram_eig(ws.Ky / ws.n, ws.n);
    const Eigen::MatrixXd sx = coordinate_scores(ws.ex, ws.n);
    const Eigen::MatrixXd sy = coordinate_scores(ws.ey, ws.n);
    ws.gamma.noalias() = (sx.transpose() * sy) / ws.n;
    return ws;
}

PairWorkspace build_workspace(const Sample& x, const Sample& y) {
    if (x.size() != y.size()) throw SampleMismatch("cca: paired samples have different sizes");
    auto mean_x = std::make_shared<const DistributionCurve>(frechet_mean_curve(x));
    auto mean_y = std::make_shared<const DistributionCurve>(frechet_mean_curve(y));
    return build_workspace(log_fields(x, std::move(mean_x)), log_fields(y, std::move(mean_y)));
}

void top_singular_triple(const Eigen::MatrixXd& w, double& sigma, Eigen::VectorXd& u,
                         Eigen::VectorXd& v) {
    v = Eigen::VectorXd::Ones(w.cols()).normalized();
    u = Eigen::VectorXd::Zero(w.rows());
    sigma = 0.0;
    bool restarted = false;
    for (int iter = 0; iter < 2000; ++iter) {
        Eigen::VectorXd wu = w * v;
        const double su = wu.norm();
        if (su == 0.0) {
            if (restarted) return;  // matrix maps the probes to zero
            v = Eigen::VectorXd::LinSpaced(w.cols(), 1.0, 2.0).normalized();
            restarted = true;
            continue;
        }
        u = wu / su;
        Eigen::VectorXd wv = w.transpose() * u;
        const double sv = wv.norm();
        if (sv == 0.0) { sigma = 0.0; return; }
        v = wv / sv;
        if (std::abs(sv - sigma) <= 1e-13 * sv) { sigma = sv; return; }
        sigma = sv;
    }
}

namespace {

struct CoordTriples {
    Eigen::VectorXd sigma;   // r singular values, nonincreasing
    Eigen::MatrixXd u, v;    // whitened singular vectors (columns)
};

// SVD of W(i,j) = gamma(i,j) / (wx_i * wy_j). Power iteration covers the
// r = 1 case cheaply; anything larger goes through a full decomposition.
CoordTriples whitened_triples(const Eigen::VectorXd& wx, const Eigen::VectorXd& wy,
                              const Eigen::MatrixXd& gamma, int r, bool power_only) {
    Eigen::MatrixXd w = gamma;
    for (int i = 0; i < w.rows(); ++i) w.row(i) /= wx(i);
    for (int j = 0; j < w.cols(); ++j) w.col(j) /= wy(j);

    const int r_eff = std::min({r, static_cast<int>(w.rows()), static_cast<int>(w.cols())});
    CoordTriples out;
    if (r_eff == 1 && power_only) {
        out.sigma.resize(1);
        out.u.resize(w.rows(), 1);
        out.v.resize(w.cols(), 1);
        double s;
        Eigen::VectorXd uu, vv;
        top_singular_triple(w, s, uu, vv);
        out.sigma(0) = s;
        out.u.col(0) = uu;
        out.v.col(0) = vv;
        return out;
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.sigma = svd.singularValues().head(r_eff);
    out.u = svd.matrixU().leftCols(r_eff);
    out.v = svd.matrixV().leftCols(r_eff);
    return out;
}

struct SideBasis {
    const LogFieldMatrix* logs;
    const GramEig* eig;
    int n;

    // Lift a coordinate vector (length q <= count) to flattened field values.
    Eigen::VectorXd lift(const Eigen::VectorXd& coords) const {
        const int q = static_cast<int>(coords.size());
        Eigen::VectorXd alpha =
            eig->vecs.leftCols(q) *
            (coords.array() / (static_cast<double>(n) * eig->lambda.head(q).array()).sqrt())
                .matrix();
        return logs->rows().transpose() * alpha;
    }

    // Sign factor of the leading eigenfield under the largest-entry rule.
    double leading_field_sign() const {
        Eigen::VectorXd phi1 = lift(Eigen::VectorXd::Unit(1, 0));
        Eigen::Index imax = 0;
        phi1.cwiseAbs().maxCoeff(&imax);
        return phi1(imax) < 0.0 ? -1.0 : 1.0;
    }
};

TangentField field_from_flat(const Eigen::VectorXd& flat, const CurvePtr& base) {
    Eigen::MatrixXd z =
        Eigen::Map<const Eigen::MatrixXd>(flat.data(), base->t_points(), base->m_levels());
    return TangentField(std::move(z), base);
}

// Joint sign rule for a canonical pair: make the projection of U on the
// leading eigenfield nonnegative; when that projection is negligible fall
// back to the largest-entry rule on U itself.
void orient_pair(const Eigen::VectorXd& u_coords, double leading_sign, Eigen::VectorXd& u_flat,
                 Eigen::VectorXd& v_flat) {
    const double on_first = leading_sign * u_coords(0);
    double flip = 1.0;
    if (std::abs(on_first) > 1e-12 * u_coords.norm()) {
        flip = on_first < 0.0 ? -1.0 : 1.0;
    } else {
        Eigen::Index imax = 0;
        u_flat.cwiseAbs().maxCoeff(&imax);
        flip = u_flat(imax) < 0.0 ? -1.0 : 1.0;
    }
    if (flip < 0.0) {
        u_flat = -u_flat;
        v_flat = -v_flat;
    }
}

CcaEstimate assemble_estimate(const PairWorkspace& ws, const CoordTriples& triples,
                              const Eigen::VectorXd& wx, const Eigen::VectorXd& wy,
                              CcaMethod method, CcaTuning tuning) {
    const SideBasis bx{&ws.logs_x, &ws.ex, ws.n};
    const SideBasis by{&ws.logs_y, &ws.ey, ws.n};
    const double sign_x = bx.leading_field_sign();

    const int r_eff = static_cast<int>(triples.sigma.size());
    std::vector<CcaPair> pairs;
    pairs.reserve(r_eff);
    bool clipped = false;
    for (int c = 0; c < r_eff; ++c) {
        double rho = triples.sigma(c);
        if (rho > 1.0) {
            clipped = clipped || rho > 1.0 + 1e-8;
            rho = 1.0;
        }
        const Eigen::VectorXd u_coords = triples.u.col(c).cwiseQuotient(wx);
        const Eigen::VectorXd v_coords = triples.v.col(c).cwiseQuotient(wy);
        Eigen::VectorXd u_flat = bx.lift(u_coords);
        Eigen::VectorXd v_flat = by.lift(v_coords);
        orient_pair(u_coords, sign_x, u_flat, v_flat);
        pairs.push_back(CcaPair{rho, field_from_flat(u_flat, ws.logs_x.base()),
                                field_from_flat(v_flat, ws.logs_y.base())});
    }
    CcaEstimate est{pairs.front().rho,
                    std::move(pairs.front().u_field),
                    std::move(pairs.front().v_field),
                    method,
                    tuning,
                    clipped,
                    {}};
    est.higher.assign(std::make_move_iterator(pairs.begin() + 1),
                      std::make_move_iterator(pairs.end()));
    return est;
}

void check_truncation(const GramEig& eig, int k, int n, const char* side) {
    if (k < 1) throw DomainError(std::string("fpca: truncation level < 1 on ") + side);
    if (k > n) throw RankError(std::string("fpca: truncation level exceeds sample size on ") + side);
    if (k > eig.count())
        throw SingularTruncation(std::string("fpca: truncation reaches a zero eigenvalue on ") +
                                 side);
}

} // namespace

CcaEstimate fpca_fit(const PairWorkspace& ws, int k_x, int k_y, int r) {
    if (r < 1) throw DomainError("fpca: r < 1");
    check_truncation(ws.ex, k_x, ws.n, "X");
    check_truncation(ws.ey, k_y, ws.n, "Y");
    const Eigen::VectorXd wx = ws.ex.lambda.head(k_x).cwiseSqrt();
    const Eigen::VectorXd wy = ws.ey.lambda.head(k_y).cwiseSqrt();
    const CoordTriples triples =
        whitened_triples(wx, wy, ws.gamma.topLeftCorner(k_x, k_y), r, false);
    return assemble_estimate(ws, triples, wx, wy, CcaMethod::Fpca,
                             CcaTuning::truncation(k_x, k_y));
}

CcaEstimate tikhonov_fit(const PairWorkspace& ws, double eps_x, double eps_y, int r) {
    if (!(eps_x > 0.0) || !(eps_y > 0.0))
        throw DomainError("tikhonov: regularization parameters must be positive");
    if (r < 1) throw DomainError("tikhonov: r < 1");
    if (ws.ex.count() == 0 || ws.ey.count() == 0)
        throw SingularTruncation("tikhonov: a sample has zero variance");
    const Eigen::VectorXd wx = (ws.ex.lambda.array() + eps_x).sqrt().matrix();
    const Eigen::VectorXd wy = (ws.ey.lambda.array() + eps_y).sqrt().matrix();
    const CoordTriples triples = whitened_triples(wx, wy, ws.gamma, r, false);
    return assemble_estimate(ws, triples, wx, wy, CcaMethod::Tikhonov,
                             CcaTuning::ridge(eps_x, eps_y));
}

namespace {

double pooled_pearson_sq(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double n = static_cast<double>(x.size());
    const double sx = x.sum(), sy = y.sum();
    const double sxx = x.squaredNorm(), syy = y.squaredNorm();
    const double sxy = x.dot(y);
    const double num = n * sxy - sx * sy;
    const double den = (n * sxx - sx * sx) * (n * syy - sy * sy);
    if (!(den > 0.0)) return 0.0;
    return std::min(1.0, std::max(0.0, num * num / den));
}

// Truncation candidates past the informative level sit on a score ridge
// that is flat to well below this tolerance, and a smaller truncation
// inside the ridge costs nothing, so near-ties resolve to the smallest
// k. Ridge candidates are different: every step toward a larger epsilon
// buys first-order shrinkage bias, so only genuine score ties (never
// observed in practice) resolve toward more regularization there.
double cv_tie_tolerance(CcaMethod method) {
    return method == CcaMethod::Fpca ? 1e-3 : 0.0;
}

// Tie rule: smaller truncation, larger ridge.
bool tuning_preferred(const CcaTuning& a, const CcaTuning& b, CcaMethod method) {
    if (method == CcaMethod::Fpca)
        return a.k_x != b.k_x ? a.k_x < b.k_x : a.k_y < b.k_y;
    return a.eps_x != b.eps_x ? a.eps_x > b.eps_x : a.eps_y > b.eps_y;
}

struct FoldFitResult {
    Eigen::VectorXd u_flat, v_flat;  // weight fields lifted to the field grid
};

// Fit one candidate from fold coordinates and lift to dense field values.
FoldFitResult fold_fit(const Eigen::MatrixXd& atr_x, const Eigen::MatrixXd& atr_y,
                       const GramEig& gx, const GramEig& gy, const Eigen::MatrixXd& gamma,
                       CcaMethod method, const CcaTuning& cand, int n_tr) {
    Eigen::VectorXd wx, wy;
    Eigen::MatrixXd gamma_block;
    if (method == CcaMethod::Fpca) {
        check_truncation(gx, cand.k_x, n_tr, "X");
        check_truncation(gy, cand.k_y, n_tr, "Y");
        wx = gx.lambda.head(cand.k_x).cwiseSqrt();
        wy = gy.lambda.head(cand.k_y).cwiseSqrt();
        gamma_block = gamma.topLeftCorner(cand.k_x, cand.k_y);
    } else {
        if (!(cand.eps_x > 0.0) || !(cand.eps_y > 0.0))
            throw DomainError("cv: nonpositive ridge candidate");
        wx = (gx.lambda.array() + cand.eps_x).sqrt().matrix();
        wy = (gy.lambda.array() + cand.eps_y).sqrt().matrix();
        gamma_block = gamma;
    }
    const CoordTriples triples = whitened_triples(wx, wy, gamma_block, 1, true);
    const Eigen::VectorXd u_coords = triples.u.col(0).cwiseQuotient(wx);
    const Eigen::VectorXd v_coords = triples.v.col(0).cwiseQuotient(wy);

    auto lift = [n_tr](const Eigen::MatrixXd& rows, const GramEig& g,
                       const Eigen::VectorXd& coords) {
        const int q = static_cast<int>(coords.size());
        Eigen::VectorXd alpha =
            g.vecs.leftCols(q) *
            (coords.array() / (static_cast<double>(n_tr) * g.lambda.head(q).array()).sqrt())
                .matrix();
        return Eigen::VectorXd(rows.transpose() * alpha);
    };
    return {lift(atr_x, gx, u_coords), lift(atr_y, gy, v_coords)};
}

// Centered fold Gram from the full-sample Gram: rows re-based from the
// full mean to the fold training mean without touching the field grid.
Eigen::MatrixXd centered_subgram(const Eigen::MatrixXd& k_full, const std::vector<int>& train) {
    const int nt = static_cast<int>(train.size());
    Eigen::MatrixXd sub(nt, nt);
    for (int a = 0; a < nt; ++a)
        for (int b = 0; b < nt; ++b) sub(a, b) = k_full(train[a], train[b]);
    const Eigen::VectorXd rmean = sub.rowwise().mean();
    const double gmean = rmean.mean();
    sub.noalias() -= rmean * Eigen::RowVectorXd::Ones(nt);
    sub.noalias() -= Eigen::VectorXd::Ones(nt) * rmean.transpose();
    sub.array() += gmean;
    return sub;
}

} // namespace

CvResult cv_core(const PairWorkspace& ws, CcaMethod method,
                 const std::vector<CcaTuning>& candidates, int folds, std::uint64_t seed) {
    if (candidates.empty()) throw DomainError("cv_select: empty candidate list");
    if (folds < 2) throw DomainError("cv_select: folds < 2");
    const int n = ws.n;
    if (n / folds < 2) throw FoldError("cv_select: a fold would hold fewer than 2 subjects");

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    RandomStream rng(seed, 0x6376666F6C64ULL, 0);  // fixed stream key for fold splits
    rng.shuffle(order);

    const int n_cand = static_cast<int>(candidates.size());
    const double weight_x = ws.logs_x.grid().field_weight();
    const double weight_y = ws.logs_y.grid().field_weight();

    // Full-sample weight fields per candidate; folds orient against these
    // so pooled projections keep one consistent sign across folds. The
    // full-sample log rows are already centered to the full mean, so the
    // fold fitting path applies verbatim.
    std::vector<Eigen::VectorXd> u_reference(n_cand);
    for (int c = 0; c < n_cand; ++c) {
        u_reference[c] = fold_fit(ws.logs_x.rows(), ws.logs_y.rows(), ws.ex, ws.ey, ws.gamma,
                                  method, candidates[c], n)
                             .u_flat;
    }

    Eigen::MatrixXd xs(n, n_cand), ys(n, n_cand);
    const int base_size = n / folds, remainder = n % folds;
    int cursor = 0;
    for (int l = 0; l < folds; ++l) {
        const int block = base_size + (l < remainder ? 1 : 0);
        std::vector<int> held(order.begin() + cursor, order.begin() + cursor + block);
        std::vector<int> train;
        train.reserve(n - block);
        for (int i = 0; i < cursor; ++i) train.push_back(order[i]);
        for (int i = cursor + block; i < n; ++i) train.push_back(order[i]);
        cursor += block;
        const int nt = static_cast<int>(train.size());

        // Training rows centered to the fold mean (a re-based log field).
        Eigen::MatrixXd atr_x(nt, ws.logs_x.rows().cols());
        Eigen::MatrixXd atr_y(nt, ws.logs_y.rows().cols());
        for (int a = 0; a < nt; ++a) {
            atr_x.row(a) = ws.logs_x.rows().row(train[a]);
            atr_y.row(a) = ws.logs_y.rows().row(train[a]);
        }
        atr_x.rowwise() -= atr_x.colwise().mean();
        atr_y.rowwise() -= atr_y.colwise().mean();

        const GramEig gx = gram_eig(centered_subgram(ws.Kx, train) / nt, nt);
        const GramEig gy = gram_eig(centered_subgram(ws.Ky, train) / nt, nt);
        const Eigen::MatrixXd sx = coordinate_scores(gx, nt);
        const Eigen::MatrixXd sy = coordinate_scores(gy, nt);
        const Eigen::MatrixXd gamma = (sx.transpose() * sy) / nt;

        for (int c = 0; c < n_cand; ++c) {
            FoldFitResult fit =
                fold_fit(atr_x, atr_y, gx, gy, gamma, method, candidates[c], nt);
            if (fit.u_flat.dot(u_reference[c]) < 0.0) {
                fit.u_flat = -fit.u_flat;
                fit.v_flat = -fit.v_flat;
            }
            for (int i : held) {
                xs(i, c) = weight_x * ws.logs_x.rows().row(i).dot(fit.u_flat);
                ys(i, c) = weight_y * ws.logs_y.rows().row(i).dot(fit.v_flat);
            }
        }
    }

    CvResult result;
    result.scores.resize(n_cand);
    double top = 0.0;
    for (int c = 0; c < n_cand; ++c) {
        result.scores[c] = pooled_pearson_sq(xs.col(c), ys.col(c));
        top = std::max(top, result.scores[c]);
    }
    int best = -1;
    for (int c = 0; c < n_cand; ++c) {
        if (result.scores[c] < top - cv_tie_tolerance(method)) continue;
        if (best < 0 || tuning_preferred(candidates[c], candidates[best], method)) best = c;
    }
    result.chosen = candidates[best];
    return result;
}

} // namespace detail

CcaEstimate fpca_cca(const EigenSystem& eig_x, const ScoreMatrix& scores_x,
                     const EigenSystem& eig_y, const ScoreMatrix& scores_y, int k_x, int k_y,
                     int r) {
    if (scores_x.subjects() != scores_y.subjects())
        throw SampleMismatch("fpca_cca: paired samples have different sizes");
    if (r < 1) throw DomainError("fpca_cca: r < 1");
    const int n = scores_x.subjects();
    auto check = [n](const EigenSystem& e, const ScoreMatrix& s, int k, const char* side) {
        if (k < 1) throw DomainError(std::string("fpca_cca: truncation < 1 on ") + side);
        if (k > n) throw RankError(std::string("fpca_cca: truncation exceeds n on ") + side);
        if (k > e.count() || k > s.components())
            throw SingularTruncation(
                std::string("fpca_cca: truncation reaches a zero eigenvalue on ") + side);
        for (int j = 0; j < k; ++j)
            if (!(e.eigenvalues(j) > 0.0))
                throw SingularTruncation(
                    std::string("fpca_cca: nonpositive eigenvalue inside truncation on ") + side);
    };
    check(eig_x, scores_x, k_x, "X");
    check(eig_y, scores_y, k_y, "Y");

    const Eigen::MatrixXd gamma =
        (scores_x.s.leftCols(k_x).transpose() * scores_y.s.leftCols(k_y)) / n;
    const Eigen::VectorXd wx = eig_x.eigenvalues.head(k_x).cwiseSqrt();
    const Eigen::VectorXd wy = eig_y.eigenvalues.head(k_y).cwiseSqrt();

    Eigen::MatrixXd w = gamma;
    for (int i = 0; i < k_x; ++i) w.row(i) /= wx(i);
    for (int j = 0; j < k_y; ++j) w.col(j) /= wy(j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);

    const int r_eff = std::min({r, k_x, k_y});
    std::vector<CcaPair> pairs;
    bool clipped = false;
    for (int c = 0; c < r_eff; ++c) {
        double rho = svd.singularValues()(c);
        if (rho > 1.0) {
            clipped = clipped || rho > 1.0 + 1e-8;
            rho = 1.0;
        }
        const Eigen::VectorXd u_coords = svd.matrixU().col(c).cwiseQuotient(wx);
        const Eigen::VectorXd v_coords = svd.matrixV().col(c).cwiseQuotient(wy);
        Eigen::MatrixXd u_values = u_coords(0) * eig_x.eigenfields[0].values();
        for (int j = 1; j < k_x; ++j) u_values += u_coords(j) * eig_x.eigenfields[j].values();
        Eigen::MatrixXd v_values = v_coords(0) * eig_y.eigenfields[0].values();
        for (int j = 1; j < k_y; ++j) v_values += v_coords(j) * eig_y.eigenfields[j].values();

        // Sign: projection on the leading eigenfield equals the first
        // coordinate because the basis is orthonormal.
        double flip = 1.0;
        if (std::abs(u_coords(0)) > 1e-12 * u_coords.norm()) {
            flip = u_coords(0) < 0.0 ? -1.0 : 1.0;
        } else {
            Eigen::Index rr = 0, cc = 0;
            u_values.cwiseAbs().maxCoeff(&rr, &cc);
            flip = u_values(rr, cc) < 0.0 ? -1.0 : 1.0;
        }
        if (flip < 0.0) {
            u_values = -u_values;
            v_values = -v_values;
        }
        pairs.push_back(CcaPair{rho, TangentField(std::move(u_values), eig_x.base),
                                TangentField(std::move(v_values), eig_y.base)});
    }
    CcaEstimate est{pairs.front().rho,
                    std::move(pairs.front().u_field),
                    std::move(pairs.front().v_field),
                    CcaMethod::Fpca,
                    CcaTuning::truncation(k_x, k_y),
                    clipped,
                    {}};
    est.higher.assign(std::make_move_iterator(pairs.begin() + 1),
                      std::make_move_iterator(pairs.end()));
    return est;
}

CcaEstimate tikhonov_cca(const LogFieldMatrix& logs_x, const LogFieldMatrix& logs_y,
                         double eps_x, double eps_y, int r) {
    const detail::PairWorkspace ws = detail::build_workspace(logs_x, logs_y);
    return detail::tikhonov_fit(ws, eps_x, eps_y, r);
}

CvResult cv_select(const Sample& sample_x, const Sample& sample_y, CcaMethod method,
                   const std::vector<CcaTuning>& candidates, int folds, std::uint64_t seed) {
    const detail::PairWorkspace ws = detail::build_workspace(sample_x, sample_y);
    return detail::cv_core(ws, method, candidates, folds, seed);
}

std::vector<CcaTuning> default_fpca_grid() {
    std::vector<CcaTuning> grid;
    for (int k = 1; k <= 10; ++k) grid.push_back(CcaTuning::truncation(k));
    return grid;
}

std::vector<CcaTuning> default_tikhonov_grid() {
    std::vector<CcaTuning> grid;
    for (int p = -10; p <= -2; ++p) grid.push_back(CcaTuning::ridge(std::pow(10.0, p)));
    return grid;
}

} // namespace wcca
