#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace wcca;
using namespace wcca_test;

TEST_CASE("distance: identity, point masses, shifted uniforms") {
    const GridConfig grid = grid_1d(64);
    const Distribution u1 = uniform_dist(0.0, 0.5, grid);
    const Distribution u2 = uniform_dist(0.5, 1.0, grid);

    CHECK(wasserstein_distance(u1, u1) == 0.0);
    CHECK(wasserstein_distance(point_mass(0.2, grid), point_mass(0.7, grid)) ==
          doctest::Approx(0.5).epsilon(1e-14));

    // Quantile functions differ by the constant 0.5; cross-check against a
    // direct quadrature of the squared quantile difference on a finer grid.
    CHECK(wasserstein_distance(u1, u2) == doctest::Approx(0.5).epsilon(1e-13));
    auto sq_diff = [](double u) {
        const double q1 = 0.5 * u, q2 = 0.5 + 0.5 * u;
        return (q2 - q1) * (q2 - q1);
    };
    const double oracle = std::sqrt(simpson(sq_diff, 0.0, 1.0, 2048));
    CHECK(wasserstein_distance(u1, u2) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("distance: grid mismatch rejected") {
    const Distribution a = uniform_dist(0.0, 1.0, grid_1d(32));
    const Distribution b = uniform_dist(0.0, 1.0, grid_1d(64));
    CHECK_THROWS_AS((void)wasserstein_distance(a, b), GridMismatch);
}

TEST_CASE("metric axioms on random triples") {
    const GridConfig grid = grid_1d(48);
    RandomStream rng(2024, 1);
    for (int trial = 0; trial < 100; ++trial) {
        const Distribution a = random_dist(rng, grid);
        const Distribution b = random_dist(rng, grid);
        const Distribution c = random_dist(rng, grid);
        const double ab = wasserstein_distance(a, b);
        const double ba = wasserstein_distance(b, a);
        CHECK(ab == ba);  // symmetric exactly
        CHECK(ab >= 0.0);
        const double ac = wasserstein_distance(a, c);
        const double cb = wasserstein_distance(c, b);
        CHECK(ab <= ac + cb + 1e-12);
    }
}

TEST_CASE("log map: identity, shift, isometry") {
    const GridConfig grid = grid_1d(64, 0.0, 2.0);
    const Distribution mu = uniform_dist(0.0, 1.0, grid);
    const Distribution nu = uniform_dist(0.25, 1.25, grid);

    CHECK(log_map(mu, mu).values().cwiseAbs().maxCoeff() == 0.0);

    const TangentVector shift = log_map(mu, nu);
    for (int j = 0; j < grid.m_levels; ++j)
        CHECK(shift.values()(j) == doctest::Approx(0.25).epsilon(1e-14));

    // Norm of the log equals the distance, on random beta-like pairs.
    RandomStream rng(7, 2);
    const GridConfig unit = grid_1d(64);
    for (int trial = 0; trial < 100; ++trial) {
        const Distribution a = beta_dist(rng.uniform(1.2, 4.0), rng.uniform(1.2, 4.0), unit);
        const Distribution b = beta_dist(rng.uniform(1.2, 4.0), rng.uniform(1.2, 4.0), unit);
        CHECK(log_map(a, b).norm() ==
              doctest::Approx(wasserstein_distance(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("exp map: identity, inverse pair, strict rejections") {
    const GridConfig grid = grid_1d(64);
    const Distribution mu = uniform_dist(0.1, 0.9, grid);
    const Distribution nu = beta_dist(2.0, 3.0, grid);

    const TangentVector zero(Eigen::VectorXd::Zero(grid.m_levels), mu);
    CHECK(exp_map(mu, zero).quantiles() == mu.quantiles());

    const Distribution back = exp_map(mu, log_map(mu, nu));
    CHECK((back.quantiles() - nu.quantiles()).cwiseAbs().maxCoeff() < 1e-12);

    // v_j = -2 u_j makes the candidate quantile vector decreasing.
    Eigen::VectorXd bad(grid.m_levels);
    for (int j = 0; j < grid.m_levels; ++j) bad(j) = -2.0 * grid.u_level(j);
    const Distribution base = uniform_dist(0.0, 1.0, grid);
    CHECK_THROWS_AS((void)exp_map(base, TangentVector(bad, base)), NotInLogImage);

    // A large positive shift escapes the support in strict mode.
    const TangentVector spill(Eigen::VectorXd::Constant(grid.m_levels, 0.5), base);
    CHECK_THROWS_AS((void)exp_map(base, spill, ExpMode::Strict), SupportViolation);
    const Distribution projected = exp_map(base, spill, ExpMode::Project);
    CHECK(projected.quantiles().maxCoeff() <= 1.0);
}

TEST_CASE("exp/log round trips on random pairs") {
    const GridConfig grid = grid_1d(48);
    RandomStream rng(99, 3);
    for (int trial = 0; trial < 50; ++trial) {
        const Distribution a = random_dist(rng, grid);
        const Distribution b = random_dist(rng, grid);
        const TangentVector v = log_map(a, b);
        CHECK((exp_map(a, v).quantiles() - b.quantiles()).cwiseAbs().maxCoeff() < 1e-12);
        // log(exp(v)) recovers v for strict-mode inputs
        const TangentVector w = log_map(a, exp_map(a, v));
        CHECK((w.values() - v.values()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("mccann geodesic: endpoints, midpoint, constant speed") {
    const GridConfig grid = grid_1d(64, 0.0, 2.0);
    const Distribution mu = uniform_dist(0.0, 1.0, grid);
    const Distribution nu = uniform_dist(1.0, 2.0, grid);

    CHECK(mccann_geodesic(mu, nu, 0.0).quantiles() == mu.quantiles());
    CHECK(mccann_geodesic(mu, nu, 1.0).quantiles() == nu.quantiles());

    const Distribution mid = mccann_geodesic(mu, nu, 0.5);
    const Distribution expected = uniform_dist(0.5, 1.5, grid);
    CHECK((mid.quantiles() - expected.quantiles()).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS((void)mccann_geodesic(mu, nu, 1.5), DomainError);
    CHECK_THROWS_AS((void)mccann_geodesic(mu, nu, -0.1), DomainError);

    RandomStream rng(5, 4);
    for (int trial = 0; trial < 40; ++trial) {
        const Distribution a = random_dist(rng, grid);
        const Distribution b = random_dist(rng, grid);
        const double d = wasserstein_distance(a, b);
        const double s = rng.uniform01(), t = rng.uniform01();
        const double seg =
            wasserstein_distance(mccann_geodesic(a, b, s), mccann_geodesic(a, b, t));
        CHECK(std::abs(seg - std::abs(t - s) * d) < 1e-12);
    }
}

TEST_CASE("parallel transport: re-tag, unitary, round trip") {
    const GridConfig grid = grid_1d(32);
    RandomStream rng(11, 5);
    const Distribution from = random_dist(rng, grid);
    const Distribution to = random_dist(rng, grid);

    Eigen::VectorXd uv(grid.m_levels), wv(grid.m_levels);
    for (int j = 0; j < grid.m_levels; ++j) {
        uv(j) = rng.normal();
        wv(j) = rng.normal();
    }
    const TangentVector u(uv, from), w(wv, from);

    const TangentVector same = transport_vector(u, from, from);
    CHECK(same.values() == u.values());

    const TangentVector pu = transport_vector(u, from, to);
    const TangentVector pw = transport_vector(w, from, to);
    CHECK(tangent_inner(pu, pw) == tangent_inner(u, w));  // exact at grid precision

    const TangentVector round = transport_vector(pu, to, from);
    CHECK(round.values() == u.values());
}

TEST_CASE("from_samples: examples and empirical convergence") {
    const GridConfig grid4 = grid_1d(4);
    CHECK(from_samples({0.5}, grid4).quantiles() ==
          Eigen::VectorXd::Constant(4, 0.5));

    // Levels (1/8, 3/8, 5/8, 7/8) against two samples.
    const Distribution two = from_samples({0.0, 1.0}, grid4);
    Eigen::VectorXd expected(4);
    expected << 0.0, 0.0, 1.0, 1.0;
    CHECK(two.quantiles() == expected);

    CHECK_THROWS_AS((void)from_samples({}, grid4), EmptyInput);

    const GridConfig grid = grid_1d(64);
    RandomStream rng(123, 6);
    std::vector<double> draws(100000);
    for (auto& d : draws) d = rng.uniform01();
    const Distribution emp = from_samples(draws, grid);
    double worst = 0.0;
    for (int j = 0; j < grid.m_levels; ++j)
        worst = std::max(worst, std::abs(emp.quantiles()(j) - grid.u_level(j)));
    CHECK(worst < 0.02);

    // Output is always sorted regardless of input order.
    const Distribution unsorted = from_samples({0.9, 0.1, 0.5, 0.3}, grid4);
    for (int j = 0; j + 1 < 4; ++j)
        CHECK(unsorted.quantiles()(j) <= unsorted.quantiles()(j + 1));
}

TEST_CASE("from_density_grid: flat, beta median, degenerate") {
    const GridConfig grid = grid_1d(64);

    const Distribution flat = beta_dist(1.0, 1.0, grid);
    double worst = 0.0;
    for (int j = 0; j < grid.m_levels; ++j)
        worst = std::max(worst, std::abs(flat.quantiles()(j) - grid.u_level(j)));
    CHECK(worst < 1e-6);

    // Median of Beta(2,3) against the incomplete-beta bisection oracle.
    const Distribution b23 = beta_dist(2.0, 3.0, grid);
    const double oracle_median = beta_quantile_oracle(0.5, 2.0, 3.0);
    CHECK(oracle_median == doctest::Approx(0.38573).epsilon(3e-4));
    // Interpolate the quantile vector at u = 0.5 (midpoint of levels 31,32).
    const double q_mid = 0.5 * (b23.quantiles()(31) + b23.quantiles()(32));
    CHECK(std::abs(q_mid - oracle_median) < 1e-4);

    // A literal constant density table equals the Beta(1,1) construction.
    std::vector<std::pair<double, double>> constant(4096);
    for (int i = 0; i < 4096; ++i) constant[i] = {i / 4095.0, 2.5};
    const Distribution from_constant = from_density_grid(constant, grid);
    CHECK((from_constant.quantiles() - flat.quantiles()).cwiseAbs().maxCoeff() < 1e-12);

    std::vector<std::pair<double, double>> zero(16);
    for (int i = 0; i < 16; ++i) zero[i] = {i / 15.0, 0.0};
    CHECK_THROWS_AS((void)from_density_grid(zero, grid), DegenerateDensity);
}

TEST_CASE("isotonic projection matches the reference implementation") {
    Eigen::VectorXd v(6);
    v << 3.0, 1.0, 2.0, 5.0, 4.0, 4.0;
    Eigen::VectorXd got = v;
    isotonic_project(got);
    const auto ref = pava_reference({3.0, 1.0, 2.0, 5.0, 4.0, 4.0});
    for (int j = 0; j < 6; ++j) CHECK(got(j) == doctest::Approx(ref[j]).epsilon(1e-13));

    RandomStream rng(17, 7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> data(20);
        for (auto& d : data) d = rng.normal();
        Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(data.data(), 20);
        isotonic_project(x);
        const auto want = pava_reference(data);
        for (int j = 0; j < 20; ++j) CHECK(x(j) == doctest::Approx(want[j]).epsilon(1e-11));
        for (int j = 0; j + 1 < 20; ++j) CHECK(x(j) <= x(j + 1) + 1e-12);
    }
}
