#include <doctest.h>

#include <cmath>
#include <vector>

#include "vecshap/predictor.hpp"
#include "vecshap/shapley.hpp"

using namespace vecshap;

namespace {

double max_abs_diff(const Attribution& a, const Attribution& b) {
    double worst = 0.0;
    for (std::size_t idx = 0; idx < a.raw().size(); ++idx)
        worst = std::max(worst, std::abs(a.raw()[idx] - b.raw()[idx]));
    return worst;
}

BackgroundSample random_background(Rng& rng, int n, int rows) {
    std::vector<double> data(static_cast<std::size_t>(n) * rows);
    for (double& v : data) v = rng.uniform(-1.0, 1.0);
    return BackgroundSample(n, std::move(data));
}

// Column means accumulated in long double, independent of the library path.
std::vector<double> column_means(const BackgroundSample& bg) {
    std::vector<long double> acc(static_cast<std::size_t>(bg.features()), 0.0L);
    for (int r = 0; r < bg.count(); ++r)
        for (int j = 0; j < bg.features(); ++j) acc[static_cast<std::size_t>(j)] += bg.row(r)[j];
    std::vector<double> out(acc.size());
    for (std::size_t j = 0; j < acc.size(); ++j) out[j] = static_cast<double>(acc[j] / bg.count());
    return out;
}

PolynomialPredictor test_polynomial() {
    // out0 = 0.5 x0 x1 - x2 + 0.25 x0 x2 x3,  out1 = x1^2 - 0.75 x3 + 1
    std::vector<std::vector<PolyTerm>> terms(2);
    terms[0].push_back({0.5, {1, 1, 0, 0}});
    terms[0].push_back({-1.0, {0, 0, 1, 0}});
    terms[0].push_back({0.25, {1, 0, 1, 1}});
    terms[1].push_back({1.0, {0, 2, 0, 0}});
    terms[1].push_back({-0.75, {0, 0, 0, 1}});
    terms[1].push_back({1.0, {0, 0, 0, 0}});
    return PolynomialPredictor(4, 2, std::move(terms));
}

}  // namespace

TEST_CASE("polynomial predictor basics") {
    const PolynomialPredictor p = test_polynomial();
    const std::vector<double> x{1.0, 2.0, -1.0, 0.5};
    const std::vector<double> y = p.evaluate(x);
    CHECK(y[0] == doctest::Approx(0.5 * 2.0 + 1.0 + 0.25 * 1.0 * -1.0 * 0.5).epsilon(1e-14));
    CHECK(y[1] == doctest::Approx(4.0 - 0.375 + 1.0).epsilon(1e-14));
    CHECK(p.depends_on(0));
    CHECK(p.depends_on(3));

    CHECK_THROWS_AS(PolynomialPredictor(2, 1, {{PolyTerm{1.0, {2, 2}}}}), std::invalid_argument);
    CHECK_THROWS_AS(PolynomialPredictor(2, 1, {{PolyTerm{1.0, {1}}}}), std::invalid_argument);
    CHECK_THROWS_AS(PolynomialPredictor(2, 2, {{}}), std::invalid_argument);
}

TEST_CASE("interventional game of a linear predictor is the centered additive game") {
    Rng rng(71);
    const int n = 5, m = 2;
    Eigen::MatrixXd b(n, m);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k) b(i, k) = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd b0(m);
    b0 << 0.4, -1.1;
    const LinearModelPredictor f{LinearPredictor(b0, b)};
    const BackgroundSample bg = random_background(rng, n, 20);
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);

    const VectorGame game = interventional_game(f, bg, x);
    const std::vector<double> mean = column_means(bg);
    for (std::uint32_t s = 0; s < game.coalition_count(); ++s) {
        for (int k = 0; k < m; ++k) {
            double expect = 0.0;
            for (int i = 0; i < n; ++i)
                if (s & (1u << i)) expect += b(i, k) * (x[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)]);
            CHECK(std::abs(game.value(s, k) - expect) <= 1e-12);
        }
    }
}

TEST_CASE("interventional degenerate cases") {
    const PolynomialPredictor p = test_polynomial();
    const std::vector<double> x{0.3, -0.2, 0.9, 0.1};

    // Background equal to the instance: every hybrid is x itself.
    const BackgroundSample bg_x(4, std::vector<double>(x));
    CHECK(sup_norm(interventional_game(p, bg_x, x)) == 0.0);

    // Constant predictor: centering removes it entirely.
    const FunctionPredictor constant(4, 2, [](std::span<const double>, std::span<double> out) {
        out[0] = 3.5;
        out[1] = -1.25;
    });
    Rng rng(73);
    const BackgroundSample bg = random_background(rng, 4, 16);
    CHECK(sup_norm(interventional_game(constant, bg, x)) == 0.0);
    CHECK(attribution_norm(explain(constant, bg, x)) == 0.0);

    CHECK_THROWS_AS(interventional_game(FunctionPredictor(17, 1, {}), BackgroundSample(17, std::vector<double>(17, 0.0)),
                                        std::vector<double>(17, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("explain: linear identity, oracle match on a polynomial, efficiency") {
    Rng rng(79);
    const int n = 4;
    Eigen::MatrixXd b(n, 1);
    b << 0.5, -2.0, 1.5, 0.25;
    const LinearModelPredictor f{LinearPredictor(Eigen::VectorXd::Zero(1), b)};
    const BackgroundSample bg = random_background(rng, n, 32);
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);

    const Attribution a = explain(f, bg, x);
    const std::vector<double> mean = column_means(bg);
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(a(i, 0) - b(i, 0) * (x[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)])) <= 1e-9);

    const PolynomialPredictor poly = test_polynomial();
    const BackgroundSample bg64 = random_background(rng, 4, 64);
    const VectorGame game = interventional_game(poly, bg64, x);
    CHECK(max_abs_diff(explain(poly, bg64, x), shapley_permutation(game)) <= 1e-10);

    // Efficiency against an independently computed baseline.
    const Attribution ap = explain(poly, bg64, x);
    std::vector<long double> baseline(2, 0.0L);
    for (int r = 0; r < bg64.count(); ++r) {
        const auto y = poly.evaluate(bg64.row(r));
        baseline[0] += y[0];
        baseline[1] += y[1];
    }
    const std::vector<double> fx = poly.evaluate(x);
    for (int k = 0; k < 2; ++k) {
        long double total = 0.0L;
        for (int i = 0; i < 4; ++i) total += ap(i, k);
        const long double expect = fx[static_cast<std::size_t>(k)] - baseline[static_cast<std::size_t>(k)] / bg64.count();
        CHECK(std::abs(static_cast<double>(total - expect)) <= 1e-9);
    }
}

TEST_CASE("explain is linear in the predictor and kills constant shifts") {
    Rng rng(83);
    const PolynomialPredictor f = test_polynomial();
    const BackgroundSample bg = random_background(rng, 4, 24);
    std::vector<double> x{0.2, -0.6, 0.4, 0.9};

    const FunctionPredictor h(4, 2, [](std::span<const double> in, std::span<double> out) {
        out[0] = std::sin(in[0]) + in[1] * in[3];
        out[1] = in[2] * in[2] - 0.5 * in[0];
    });
    const double alpha = 1.7, beta = -0.6;
    const FunctionPredictor combo(4, 2, [&](std::span<const double> in, std::span<double> out) {
        std::vector<double> yf(2), yh(2);
        f.evaluate(in, yf);
        h.evaluate(in, yh);
        out[0] = alpha * yf[0] + beta * yh[0];
        out[1] = alpha * yf[1] + beta * yh[1];
    });

    const Attribution af = explain(f, bg, x);
    const Attribution ah = explain(h, bg, x);
    const Attribution ac = explain(combo, bg, x);
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 2; ++k)
            CHECK(std::abs(ac(i, k) - (alpha * af(i, k) + beta * ah(i, k))) <= 1e-9);

    const FunctionPredictor shifted(4, 2, [&](std::span<const double> in, std::span<double> out) {
        f.evaluate(in, out);
        out[0] += 41.0;
        out[1] -= 7.5;
    });
    CHECK(max_abs_diff(explain(shifted, bg, x), af) <= 1e-10);
}

TEST_CASE("features the predictor ignores get exactly nothing") {
    Rng rng(89);
    // out0 ignores x1 and x3; out1 ignores x0, x1, x3.
    std::vector<std::vector<PolyTerm>> terms(2);
    terms[0].push_back({1.5, {1, 0, 1, 0}});
    terms[1].push_back({-0.5, {0, 0, 2, 0}});
    const PolynomialPredictor p(4, 2, std::move(terms));
    CHECK(p.depends_on(0));
    CHECK(!p.depends_on(1));
    CHECK(p.depends_on(2));
    CHECK(!p.depends_on(3));

    const BackgroundSample bg = random_background(rng, 4, 16);
    const std::vector<double> x{0.7, -0.3, 0.1, 0.8};
    const Attribution a = explain(p, bg, x);
    for (int k = 0; k < 2; ++k) {
        CHECK(std::abs(a(1, k)) <= 1e-10);
        CHECK(std::abs(a(3, k)) <= 1e-10);
    }

    Eigen::MatrixXd b(2, 1);
    b << 1.0, 0.0;
    CHECK(!LinearModelPredictor{LinearPredictor(Eigen::VectorXd::Zero(1), b)}.depends_on(1));
}

TEST_CASE("predictor stability bounds") {
    Rng rng(97);
    const PolynomialPredictor f = test_polynomial();
    const BackgroundSample bg = random_background(rng, 4, 12);
    const std::vector<double> x{0.25, 0.5, -0.75, 0.9};

    const PredictorStability same = predictor_stability(f, f, bg, x);
    CHECK(same.lhs == 0.0);
    CHECK(same.sup_diff == 0.0);
    CHECK(same.bound_delta == 0.0);

    const Eigen::Vector2d c(3.0, -2.0);
    const FunctionPredictor shifted(4, 2, [&](std::span<const double> in, std::span<double> out) {
        f.evaluate(in, out);
        out[0] += c[0];
        out[1] += c[1];
    });
    const PredictorStability shift = predictor_stability(f, shifted, bg, x);
    CHECK(shift.lhs <= 1e-10);
    CHECK(shift.bound_sup == doctest::Approx(2.0 * 3.0).epsilon(1e-12));

    for (double eps : {1e-3, 1e-2, 1e-1}) {
        // Perturbation bounded by one everywhere.
        const FunctionPredictor perturbed(4, 2, [&, eps](std::span<const double> in, std::span<double> out) {
            f.evaluate(in, out);
            out[0] += eps * std::cos(in[0] + in[1] + in[2] + in[3]);
            out[1] += eps * std::sin(in[0] - in[3]);
        });
        const PredictorStability s = predictor_stability(f, perturbed, bg, x);
        CHECK(s.lhs <= 2.0 * eps + 1e-9);
        CHECK(s.lhs <= s.bound_sup + 1e-9);
        CHECK(s.lhs <= s.bound_delta + 1e-9);
        CHECK(s.bound_sup <= 2.0 * eps + 1e-12);
    }
}

TEST_CASE("empirical moments") {
    const BackgroundSample two(2, {0.0, 0.0, 2.0, 2.0});
    const EmpiricalMoments em = empirical_moments(two);
    CHECK(em.ridged);
    CHECK(em.gaussian.mu()[0] == 1.0);
    CHECK(em.gaussian.mu()[1] == 1.0);
    CHECK(em.gaussian.sigma()(0, 1) == 2.0);
    CHECK(em.gaussian.sigma()(1, 0) == 2.0);
    CHECK(em.gaussian.sigma()(0, 0) == doctest::Approx(2.0 + 2e-8).epsilon(1e-15));
    CHECK(is_positive_definite(em.gaussian.sigma()));

    Rng rng(103);
    const int n = 3, rows = 10000;
    std::vector<double> data(static_cast<std::size_t>(n) * rows);
    for (double& v : data) v = rng.normal();
    const EmpiricalMoments mc = empirical_moments(BackgroundSample(n, std::move(data)));
    CHECK(!mc.ridged);
    for (int j = 0; j < n; ++j) CHECK(std::abs(mc.gaussian.mu()[j]) <= 0.05);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            CHECK(std::abs(mc.gaussian.sigma()(a, b) - (a == b ? 1.0 : 0.0)) <= 0.1);

    CHECK_THROWS_AS(empirical_moments(BackgroundSample(2, {1.0, 2.0})), std::invalid_argument);
}

TEST_CASE("explain with empirical background matches the diagonal closed form") {
    Rng rng(107);
    const int n = 4, m = 2;
    Eigen::MatrixXd b(n, m);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k) b(i, k) = rng.uniform(-1.0, 1.0);
    const LinearPredictor model(Eigen::VectorXd::Zero(m), b);
    const LinearModelPredictor f{model};
    const BackgroundSample bg = random_background(rng, n, 40);
    std::vector<double> x(n);
    for (double& v : x) v = rng.uniform(-1.0, 1.0);

    const std::vector<double> mean = column_means(bg);
    Eigen::VectorXd mu(n);
    for (int i = 0; i < n; ++i) mu[i] = mean[static_cast<std::size_t>(i)];
    const GaussianInput g(mu, Eigen::MatrixXd::Identity(n, n));
    Eigen::VectorXd xe(n);
    for (int i = 0; i < n; ++i) xe[i] = x[static_cast<std::size_t>(i)];

    CHECK(max_abs_diff(explain(f, bg, x), shap_linear_independent(model, g, xe)) <= 1e-9);
}
