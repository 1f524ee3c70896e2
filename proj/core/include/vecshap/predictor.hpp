#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vecshap/game.hpp"
#include "vecshap/gaussian.hpp"

namespace vecshap {

/// Deterministic model f : R^n -> R^m. Implementations must be pure
/// (safe for concurrent evaluate calls) and return finite outputs on
/// finite inputs.
class Predictor {
  public:
    virtual ~Predictor() = default;
    virtual int features() const = 0;
    virtual int outputs() const = 0;
    virtual void evaluate(std::span<const double> x, std::span<double> out) const = 0;

    std::vector<double> evaluate(std::span<const double> x) const {
        std::vector<double> out(static_cast<std::size_t>(outputs()));
        evaluate(x, out);
        return out;
    }
};

/// Predictor view of a linear model f(x) = b0 + B^T x.
class LinearModelPredictor : public Predictor {
  public:
    using Predictor::evaluate;
    explicit LinearModelPredictor(LinearPredictor model) : model_(std::move(model)) {}

    int features() const override { return model_.features(); }
    int outputs() const override { return model_.outputs(); }
    void evaluate(std::span<const double> x, std::span<double> out) const override;

    const LinearPredictor& model() const { return model_; }
    bool depends_on(int i) const;

  private:
    LinearPredictor model_;
};

struct PolyTerm {
    double coeff = 0.0;
    std::vector<int> exponents;  // one nonnegative exponent per feature
};

/// Fixed multivariate polynomial per output, total degree at most 3.
/// Exists so the interventional oracle tests see genuinely nonlinear
/// marginal structure while staying hand-derivable.
class PolynomialPredictor : public Predictor {
  public:
    using Predictor::evaluate;
    PolynomialPredictor(int n, int m, std::vector<std::vector<PolyTerm>> terms_per_output);

    int features() const override { return n_; }
    int outputs() const override { return m_; }
    void evaluate(std::span<const double> x, std::span<double> out) const override;

    bool depends_on(int i) const;
    const std::vector<std::vector<PolyTerm>>& terms() const { return terms_; }

  private:
    int n_;
    int m_;
    std::vector<std::vector<PolyTerm>> terms_;
};

/// Adapter for ad-hoc callables (test predictors, perturbations).
class FunctionPredictor : public Predictor {
  public:
    using Predictor::evaluate;
    using Fn = std::function<void(std::span<const double>, std::span<double>)>;
    FunctionPredictor(int n, int m, Fn fn) : n_(n), m_(m), fn_(std::move(fn)) {}

    int features() const override { return n_; }
    int outputs() const override { return m_; }
    void evaluate(std::span<const double> x, std::span<double> out) const override { fn_(x, out); }

  private:
    int n_;
    int m_;
    Fn fn_;
};

/// N observations of the background distribution, row-major.
class BackgroundSample {
  public:
    BackgroundSample(int n, std::vector<double> rows, std::vector<std::string> names = {});

    int features() const { return n_; }
    int count() const { return static_cast<int>(rows_.size() / n_); }
    std::span<const double> row(int r) const {
        return {rows_.data() + std::size_t{static_cast<std::size_t>(r)} * n_, static_cast<std::size_t>(n_)};
    }
    const std::vector<std::string>& names() const { return names_; }

  private:
    int n_;
    std::vector<double> rows_;
    std::vector<std::string> names_;
};

/// Marginal-expectation characteristic function: v(S) is the background
/// average of f evaluated with coordinates in S pinned to x, minus the
/// background average of f. Exactly zero at the empty coalition and exactly
/// f(x) - mean(f) at the grand coalition. Capped at n = 16.
VectorGame interventional_game(const Predictor& f, const BackgroundSample& bg,
                               std::span<const double> x);

/// shapley_subset of the interventional game.
Attribution explain(const Predictor& f, const BackgroundSample& bg, std::span<const double> x);

struct PredictorStability {
    double lhs = 0.0;          // || Phi(f;x) - Phi(h;x) ||_{A,inf}
    double bound_sup = 0.0;    // 2 * max || f - h ||_inf over evaluated points
    double bound_delta = 0.0;  // || v_f - v_h ||_{Delta,inf}
    double sup_diff = 0.0;     // max || f - h ||_inf over evaluated points
};

/// Evaluates both predictors over the same hybrid points and reports the
/// attribution distance together with both stability bounds.
PredictorStability predictor_stability(const Predictor& f, const Predictor& h,
                                       const BackgroundSample& bg, std::span<const double> x);

struct EmpiricalMoments {
    GaussianInput gaussian;
    bool ridged = false;  // sample covariance failed the PD check and got eps*I added
};

/// Sample mean and covariance (denominator N-1) of the background rows;
/// ridges with eps = 1e-8 * trace/n when the covariance is not positive
/// definite. Requires N >= 2.
EmpiricalMoments empirical_moments(const BackgroundSample& bg);

}  // namespace vecshap
