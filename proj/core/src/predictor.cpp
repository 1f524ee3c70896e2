#include "vecshap/predictor.hpp"

#include <cmath>
#include <stdexcept>

#include "vecshap/shapley.hpp"
#include "vecshap/stable_sum.hpp"

namespace vecshap {

namespace {

constexpr int kMaxInterventionalPlayers = 16;

}  // namespace

void LinearModelPredictor::evaluate(std::span<const double> x, std::span<double> out) const {
    const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    const Eigen::VectorXd y = model_.evaluate(xv);
    for (int k = 0; k < outputs(); ++k) out[k] = y[k];
}

bool LinearModelPredictor::depends_on(int i) const {
    for (int k = 0; k < outputs(); ++k)
        if (model_.B(i, k) != 0.0) return true;
    return false;
}

PolynomialPredictor::PolynomialPredictor(int n, int m, std::vector<std::vector<PolyTerm>> terms_per_output)
    : n_(n), m_(m), terms_(std::move(terms_per_output)) {
    if (n < 1 || m < 1) throw std::invalid_argument("predictor shape must be positive");
    if (terms_.size() != static_cast<std::size_t>(m))
        throw std::invalid_argument("need one term list per output");
    for (const auto& out_terms : terms_) {
        for (const auto& t : out_terms) {
            if (!std::isfinite(t.coeff)) throw std::invalid_argument("coefficients must be finite");
            if (t.exponents.size() != static_cast<std::size_t>(n))
                throw std::invalid_argument("each term needs one exponent per feature");
            int degree = 0;
            for (int e : t.exponents) {
                if (e < 0) throw std::invalid_argument("exponents must be nonnegative");
                degree += e;
            }
            if (degree > 3) throw std::invalid_argument("polynomial degree capped at 3");
        }
    }
}

void PolynomialPredictor::evaluate(std::span<const double> x, std::span<double> out) const {
    for (int k = 0; k < m_; ++k) {
        StableSum acc;
        for (const auto& t : terms_[k]) {
            double prod = t.coeff;
            for (int j = 0; j < n_; ++j)
                for (int e = 0; e < t.exponents[j]; ++e) prod *= x[j];
            acc.add(prod);
        }
        out[k] = acc.get();
    }
}

bool PolynomialPredictor::depends_on(int i) const {
    for (const auto& out_terms : terms_)
        for (const auto& t : out_terms)
            if (t.coeff != 0.0 && t.exponents[i] > 0) return true;
    return false;
}

BackgroundSample::BackgroundSample(int n, std::vector<double> rows, std::vector<std::string> names)
    : n_(n), rows_(std::move(rows)), names_(std::move(names)) {
    if (n < 1) throw std::invalid_argument("background needs at least one column");
    if (rows_.empty() || rows_.size() % static_cast<std::size_t>(n) != 0)
        throw std::invalid_argument("background rows must be nonempty and rectangular");
    for (double v : rows_)
        if (!std::isfinite(v)) throw std::invalid_argument("background entries must be finite");
    if (!names_.empty() && names_.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("column name count does not match columns");
}

namespace {

struct GamePairBuild {
    std::vector<double> table_f;
    std::vector<double> table_h;  // empty when h is null
    double sup_diff = 0.0;
};

// One pass over all (coalition, background row) hybrid points. When a second
// predictor is given it is evaluated at exactly the same points, which is what
// the stability bound's empirical sup is defined over.
GamePairBuild build_interventional(const Predictor& f, const Predictor* h,
                                   const BackgroundSample& bg, std::span<const double> x) {
    const int n = f.features();
    const int m = f.outputs();
    if (n > kMaxInterventionalPlayers)
        throw std::invalid_argument("interventional enumeration capped at n=16");
    if (bg.features() != n) throw std::invalid_argument("background column count does not match predictor");
    if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("instance length does not match predictor");
    if (h && (h->features() != n || h->outputs() != m))
        throw std::invalid_argument("predictors must share (n, m)");

    const int rows = bg.count();
    const std::uint32_t full = full_mask_for(n);
    GamePairBuild out;
    out.table_f.assign((std::size_t{1} << n) * m, 0.0);
    if (h) out.table_h.assign((std::size_t{1} << n) * m, 0.0);

    std::vector<double> point(static_cast<std::size_t>(n));
    std::vector<double> ef(static_cast<std::size_t>(m)), eh(static_cast<std::size_t>(m));
    std::vector<double> baseline_f(static_cast<std::size_t>(m)), baseline_h(static_cast<std::size_t>(m));

    for (std::uint32_t s = 0; s <= full; ++s) {
        StableVecSum mean_f(static_cast<std::size_t>(m));
        StableVecSum mean_h(static_cast<std::size_t>(m));
        if (s == full) {
            // Every hybrid is x itself; take f(x) directly so the grand
            // coalition value is exact.
            for (int j = 0; j < n; ++j) point[j] = x[j];
            f.evaluate(point, ef);
            for (int k = 0; k < m; ++k) mean_f.add(k, ef[k]);
            if (h) {
                h->evaluate(point, eh);
                for (int k = 0; k < m; ++k) mean_h.add(k, eh[k]);
                for (int k = 0; k < m; ++k) out.sup_diff = std::max(out.sup_diff, std::abs(ef[k] - eh[k]));
            }
        } else {
            for (int r = 0; r < rows; ++r) {
                const auto bg_row = bg.row(r);
                for (int j = 0; j < n; ++j) point[j] = (s >> j) & 1u ? x[j] : bg_row[j];
                f.evaluate(point, ef);
                for (int k = 0; k < m; ++k) {
                    if (!std::isfinite(ef[k])) throw std::runtime_error("predictor returned a non-finite value");
                    mean_f.add(k, ef[k] / rows);
                }
                if (h) {
                    h->evaluate(point, eh);
                    for (int k = 0; k < m; ++k) {
                        mean_h.add(k, eh[k] / rows);
                        out.sup_diff = std::max(out.sup_diff, std::abs(ef[k] - eh[k]));
                    }
                }
            }
        }
        if (s == 0) {
            for (int k = 0; k < m; ++k) baseline_f[k] = mean_f.get(k);
            if (h)
                for (int k = 0; k < m; ++k) baseline_h[k] = mean_h.get(k);
            continue;  // v(empty) stays exactly zero
        }
        for (int k = 0; k < m; ++k) out.table_f[std::size_t{s} * m + k] = mean_f.get(k) - baseline_f[k];
        if (h)
            for (int k = 0; k < m; ++k) out.table_h[std::size_t{s} * m + k] = mean_h.get(k) - baseline_h[k];
    }
    return out;
}

}  // namespace

VectorGame interventional_game(const Predictor& f, const BackgroundSample& bg, std::span<const double> x) {
    GamePairBuild b = build_interventional(f, nullptr, bg, x);
    return VectorGame(f.features(), f.outputs(), std::move(b.table_f));
}

Attribution explain(const Predictor& f, const BackgroundSample& bg, std::span<const double> x) {
    return shapley_subset(interventional_game(f, bg, x));
}

PredictorStability predictor_stability(const Predictor& f, const Predictor& h,
                                       const BackgroundSample& bg, std::span<const double> x) {
    GamePairBuild b = build_interventional(f, &h, bg, x);
    const VectorGame game_f(f.features(), f.outputs(), std::move(b.table_f));
    const VectorGame game_h(f.features(), f.outputs(), std::move(b.table_h));
    PredictorStability out;
    out.lhs = attribution_norm(attribution_diff(shapley_subset(game_f), shapley_subset(game_h)));
    out.sup_diff = b.sup_diff;
    out.bound_sup = 2.0 * b.sup_diff;
    out.bound_delta = marginal_seminorm(game_combine(1.0, game_f, -1.0, game_h));
    // Both are proved bounds on the attribution distance; exceeding them means
    // the engine itself is broken.
    if (out.lhs > out.bound_delta + 1e-9 || out.lhs > out.bound_sup + 1e-9)
        throw std::logic_error("stability bound violated");
    return out;
}

EmpiricalMoments empirical_moments(const BackgroundSample& bg) {
    const int n = bg.features();
    const int rows = bg.count();
    if (rows < 2) throw std::invalid_argument("empirical moments need at least two rows");

    Eigen::VectorXd mu(n);
    for (int j = 0; j < n; ++j) {
        StableSum acc;
        for (int r = 0; r < rows; ++r) acc.add(bg.row(r)[j] / rows);
        mu[j] = acc.get();
    }

    Eigen::MatrixXd sigma(n, n);
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            StableSum acc;
            for (int r = 0; r < rows; ++r) acc.add((bg.row(r)[a] - mu[a]) * (bg.row(r)[b] - mu[b]));
            const double cov = acc.get() / (rows - 1);
            sigma(a, b) = cov;
            sigma(b, a) = cov;
        }
    }

    bool ridged = false;
    if (!is_positive_definite(sigma)) {
        const double eps = 1e-8 * sigma.trace() / n;
        sigma.diagonal().array() += eps;
        ridged = true;
    }
    return EmpiricalMoments{GaussianInput(std::move(mu), std::move(sigma)), ridged};
}

}  // namespace vecshap
