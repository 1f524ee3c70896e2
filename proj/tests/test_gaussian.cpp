#include <doctest.h>

#include <cmath>

#include "vecshap/gaussian.hpp"
#include "vecshap/shapley.hpp"

using namespace vecshap;

namespace {

Eigen::MatrixXd identity_sigma(int n) { return Eigen::MatrixXd::Identity(n, n); }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Attribution& a, const Attribution& b) {
    double worst = 0.0;
    for (std::size_t idx = 0; idx < a.raw().size(); ++idx)
        worst = std::max(worst, std::abs(a.raw()[idx] - b.raw()[idx]));
    return worst;
}

// First-principles M_i for diagonal covariance at small n: the conditional
// matrix of a diagonal Gaussian is the coordinate selector of S, and the
// weights are exact factorial ratios.
Eigen::MatrixXd diagonal_attribution_matrix_oracle(int n, int i) {
    auto factorial = [](int x) {
        double f = 1.0;
        for (int j = 2; j <= x; ++j) f *= j;
        return f;
    };
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if (s & (1u << i)) continue;
        const int size = mask_size(s);
        const double w = factorial(size) * factorial(n - size - 1) / factorial(n);
        Eigen::MatrixXd selector_with = Eigen::MatrixXd::Zero(n, n);
        Eigen::MatrixXd selector_without = Eigen::MatrixXd::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            if ((s | (1u << i)) & (1u << j)) selector_with(j, j) = 1.0;
            if (s & (1u << j)) selector_without(j, j) = 1.0;
        }
        m += w * (selector_with - selector_without);
    }
    return m;
}

}  // namespace

TEST_CASE("gaussian input validation") {
    CHECK_NOTHROW(GaussianInput(Eigen::VectorXd::Zero(3), identity_sigma(3)));

    Eigen::MatrixXd asym = identity_sigma(2);
    asym(0, 1) = 0.5;
    CHECK_THROWS_AS(GaussianInput(Eigen::VectorXd::Zero(2), asym), std::invalid_argument);

    Eigen::MatrixXd indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(GaussianInput(Eigen::VectorXd::Zero(2), indefinite), std::invalid_argument);
    CHECK(!is_positive_definite(indefinite));
    CHECK(is_positive_definite(identity_sigma(4)));

    Eigen::MatrixXd diag = identity_sigma(3);
    diag(1, 1) = 2.5;
    CHECK(GaussianInput(Eigen::VectorXd::Zero(3), diag).diagonal());
    Eigen::MatrixXd full = diag;
    full(0, 2) = full(2, 0) = 0.1;
    CHECK(!GaussianInput(Eigen::VectorXd::Zero(3), full).diagonal());
}

TEST_CASE("conditional matrix examples") {
    const GaussianInput g(Eigen::VectorXd::Zero(3), identity_sigma(3));
    const Eigen::MatrixXd a = conditional_matrix(g, Coalition(0b101, 3));
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            const double expect = (r == c && (r == 0 || r == 2)) ? 1.0 : 0.0;
            CHECK(a(r, c) == doctest::Approx(expect).epsilon(1e-12));
        }

    const double rho = 0.75;
    Eigen::MatrixXd corr(2, 2);
    corr << 1.0, rho, rho, 1.0;
    const GaussianInput g2(Eigen::VectorXd::Zero(2), corr);
    const Eigen::MatrixXd a2 = conditional_matrix(g2, Coalition(0b01, 2));
    CHECK(a2(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a2(1, 0) == doctest::Approx(rho).epsilon(1e-14));
    CHECK(a2(0, 1) == 0.0);
    CHECK(a2(1, 1) == 0.0);

    CHECK(max_abs(conditional_matrix(g2, Coalition::empty(2))) == 0.0);
    Rng rng(31);
    for (int n : {2, 4, 6}) {
        const GaussianInput gr(Eigen::VectorXd::Zero(n), random_spd(rng, n));
        const Eigen::MatrixXd full = conditional_matrix(gr, Coalition::full(n));
        CHECK(max_abs(full - Eigen::MatrixXd::Identity(n, n)) <= 1e-10);
    }
}

TEST_CASE("conditioning reproduces known coordinates") {
    Rng rng(37);
    const int n = 5;
    const GaussianInput g(Eigen::VectorXd::Zero(n), random_spd(rng, n));
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        const Eigen::MatrixXd a = conditional_matrix(g, Coalition(s, n));
        for (int i = 0; i < n; ++i) {
            if (!((s >> i) & 1u)) continue;
            for (int c = 0; c < n; ++c)
                CHECK(std::abs(a(i, c) - (c == i ? 1.0 : 0.0)) <= 1e-10);
        }
    }
}

TEST_CASE("singular conditional block is a hard error") {
    Eigen::MatrixXd sigma(3, 3);
    sigma << 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0;
    const GaussianInput g = GaussianInput::unchecked(Eigen::VectorXd::Zero(3), sigma);
    CHECK_THROWS_WITH_AS(conditional_matrix(g, Coalition(0b011, 3)), "singular conditional block",
                         std::runtime_error);
}

TEST_CASE("attribution matrices: diagonal oracle, identity sum, n=1") {
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(4, 4);
    diag.diagonal() << 0.7, 1.3, 2.0, 0.4;
    const GaussianInput g(Eigen::VectorXd::Zero(4), diag);
    ConditionalMatrixSet set(g);
    for (int i = 0; i < 4; ++i) {
        const Eigen::MatrixXd mi = attribution_matrix(set, i);
        CHECK(max_abs(mi - diagonal_attribution_matrix_oracle(4, i)) <= 1e-10);
        Eigen::MatrixXd ei = Eigen::MatrixXd::Zero(4, 4);
        ei(i, i) = 1.0;
        CHECK(max_abs(mi - ei) <= 1e-10);
    }

    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
        const int n = rng.uniform_int(2, 6);
        const GaussianInput gr(Eigen::VectorXd::Zero(n), random_spd(rng, n));
        ConditionalMatrixSet sr(gr);
        Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) total += attribution_matrix(sr, i);
        CHECK(max_abs(total - Eigen::MatrixXd::Identity(n, n)) <= 1e-9);
    }

    const GaussianInput g1((Eigen::VectorXd(1) << 0.3).finished(),
                           (Eigen::MatrixXd(1, 1) << 2.0).finished());
    CHECK(attribution_matrix(g1, 0)(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("independent-features closed form") {
    Eigen::MatrixXd b(1, 2);
    b << 2.0, -1.0;
    const LinearPredictor p(Eigen::VectorXd::Zero(2), b);
    const GaussianInput g((Eigen::VectorXd(1) << 1.0).finished(), (Eigen::MatrixXd(1, 1) << 1.0).finished());
    const Attribution a = shap_linear_independent(p, g, (Eigen::VectorXd(1) << 1.5).finished());
    CHECK(a(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a(0, 1) == doctest::Approx(-0.5).epsilon(1e-15));

    Eigen::MatrixXd b3 = Eigen::MatrixXd::Ones(3, 1);
    const LinearPredictor additive(Eigen::VectorXd::Zero(1), b3);
    const GaussianInput g3(Eigen::VectorXd::Zero(3), identity_sigma(3));
    const Eigen::VectorXd x3 = (Eigen::VectorXd(3) << 1.0, 2.0, 3.0).finished();
    const Attribution a3 = shap_linear_independent(additive, g3, x3);
    CHECK(a3(0, 0) == 1.0);
    CHECK(a3(1, 0) == 2.0);
    CHECK(a3(2, 0) == 3.0);

    CHECK(attribution_norm(shap_linear_independent(additive, g3, Eigen::VectorXd::Zero(3))) == 0.0);

    Eigen::MatrixXd off = identity_sigma(3);
    off(0, 1) = off(1, 0) = 0.2;
    CHECK_THROWS_WITH_AS(
        shap_linear_independent(additive, GaussianInput(Eigen::VectorXd::Zero(3), off), x3),
        "use correlated path", std::invalid_argument);
}

TEST_CASE("correlated closed form: degeneration, efficiency, centered instance") {
    Rng rng(53);
    const int n = 5, m = 3;
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) diag(i, i) = rng.uniform(0.5, 2.0);
    Eigen::VectorXd mu(n), x(n);
    Eigen::MatrixXd b(n, m);
    Eigen::VectorXd b0(m);
    for (int i = 0; i < n; ++i) mu[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k) b(i, k) = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < m; ++k) b0[k] = rng.uniform(-1.0, 1.0);
    const LinearPredictor p(b0, b);

    const GaussianInput gd(mu, diag);
    CHECK(max_abs_diff(shap_linear_correlated(p, gd, x), shap_linear_independent(p, gd, x)) <= 1e-9);

    const GaussianInput gc(mu, random_spd(rng, n));
    const Attribution a = shap_linear_correlated(p, gc, x);
    const Eigen::VectorXd expect_total = b.transpose() * (x - mu);
    for (int k = 0; k < m; ++k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += a(i, k);
        CHECK(std::abs(total - expect_total[k]) <= 1e-9);
    }

    CHECK(attribution_norm(shap_linear_correlated(p, gc, mu)) == 0.0);
}

TEST_CASE("gaussian game: cross-check against the exact engine") {
    Rng rng(59);
    for (int t = 0; t < 10; ++t) {
        const int n = rng.uniform_int(2, 5);
        const int m = rng.uniform_int(1, 2);
        Eigen::VectorXd mu(n), x(n), b0(m);
        Eigen::MatrixXd b(n, m);
        for (int i = 0; i < n; ++i) mu[i] = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < n; ++i) x[i] = rng.uniform(-1.0, 1.0);
        for (int k = 0; k < m; ++k) b0[k] = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < m; ++k) b(i, k) = rng.uniform(-1.0, 1.0);
        const LinearPredictor p(b0, b);
        const GaussianInput g(mu, random_spd(rng, n));

        const VectorGame game = gaussian_game(p, g, x);
        CHECK(max_abs_diff(shapley_subset(game), shap_linear_correlated(p, g, x)) <= 1e-8);

        // Grand coalition equals the centered prediction.
        const Eigen::VectorXd total = b.transpose() * (x - mu);
        for (int k = 0; k < m; ++k)
            CHECK(std::abs(game.value(game.full_mask(), k) - total[k]) <= 1e-9);
    }

    // x = mu gives the zero game; identity covariance gives the additive game.
    Eigen::MatrixXd b(3, 1);
    b << 1.0, 2.0, -1.0;
    const LinearPredictor p(Eigen::VectorXd::Zero(1), b);
    const GaussianInput gi(Eigen::VectorXd::Zero(3), identity_sigma(3));
    CHECK(sup_norm(gaussian_game(p, gi, Eigen::VectorXd::Zero(3))) == 0.0);

    const Eigen::VectorXd x = (Eigen::VectorXd(3) << 0.5, -1.0, 2.0).finished();
    const VectorGame add = gaussian_game(p, gi, x);
    for (std::uint32_t s = 0; s < 8; ++s) {
        double expect = 0.0;
        for (int i = 0; i < 3; ++i)
            if (s & (1u << i)) expect += b(i, 0) * x[i];
        CHECK(add.value(s, 0) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("conditional matrix set caps and bounds") {
    CHECK_THROWS_AS(ConditionalMatrixSet(GaussianInput(Eigen::VectorXd::Zero(21), identity_sigma(21))),
                    std::invalid_argument);
    ConditionalMatrixSet set(GaussianInput(Eigen::VectorXd::Zero(2), identity_sigma(2)));
    CHECK_THROWS_AS(set.at(4), std::invalid_argument);
    CHECK_THROWS_AS(attribution_matrix(set, 2), std::invalid_argument);
}
