#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

#include "vecshap/coalition.hpp"
#include "vecshap/game.hpp"
#include "vecshap/random.hpp"

namespace vecshap {

/// Relative pivot rule used by every SPD factorization in this module:
/// the smallest Cholesky pivot must exceed 1e-10 times the largest
/// diagonal entry.
bool is_positive_definite(const Eigen::MatrixXd& sigma);

/// Background distribution X ~ N(mu, Sigma) with positive-definite Sigma.
class GaussianInput {
  public:
    /// Validates symmetry (1e-10 relative) and positive definiteness.
    GaussianInput(Eigen::VectorXd mu, Eigen::MatrixXd sigma);

    /// Skips validation. Testing escape hatch; downstream solves still fail
    /// loudly on singular blocks.
    static GaussianInput unchecked(Eigen::VectorXd mu, Eigen::MatrixXd sigma);

    int dim() const { return static_cast<int>(mu_.size()); }
    const Eigen::VectorXd& mu() const { return mu_; }
    const Eigen::MatrixXd& sigma() const { return sigma_; }

    /// True iff every off-diagonal entry is exactly zero.
    bool diagonal() const;

  private:
    struct unchecked_t {};
    GaussianInput(unchecked_t, Eigen::VectorXd mu, Eigen::MatrixXd sigma);
    Eigen::VectorXd mu_;
    Eigen::MatrixXd sigma_;
};

/// Linear multi-output model f(x) = b0 + B^T x with B in R^{n x m}
/// (row i holds feature i's coefficient vector in R^m).
struct LinearPredictor {
    Eigen::VectorXd b0;  // m
    Eigen::MatrixXd B;   // n x m

    LinearPredictor(Eigen::VectorXd b0_, Eigen::MatrixXd B_);

    int features() const { return static_cast<int>(B.rows()); }
    int outputs() const { return static_cast<int>(B.cols()); }
    Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const { return b0 + B.transpose() * x; }
};

/// Embedded conditional expectation matrix A-hat_S in R^{n x n}: the map
/// z -> E[X - mu | X_S = mu_S + z_S] built from A_S = Sigma_{:,S} Sigma_{S,S}^{-1}
/// with zero columns outside S. Throws "singular conditional block" when
/// Sigma_{S,S} fails the pivot rule.
Eigen::MatrixXd conditional_matrix(const GaussianInput& g, const Coalition& s);

/// Lazy cache of the embedded matrices, shared across the per-player sums of
/// attribution_matrix so each coalition is factorized once. Capped at n = 20.
class ConditionalMatrixSet {
  public:
    explicit ConditionalMatrixSet(GaussianInput g);

    const Eigen::MatrixXd& at(std::uint32_t mask);
    const GaussianInput& input() const { return g_; }
    int dim() const { return g_.dim(); }

  private:
    GaussianInput g_;
    std::vector<std::unique_ptr<Eigen::MatrixXd>> cache_;
};

/// M_i(Sigma) = sum over S in [n]\{i} of w(S) (A-hat_{S+{i}} - A-hat_S).
/// The matrices M_i sum to the identity over i.
Eigen::MatrixXd attribution_matrix(ConditionalMatrixSet& set, int i);
Eigen::MatrixXd attribution_matrix(const GaussianInput& g, int i);

/// Closed-form SHAP for independent features (diagonal Sigma, checked
/// exactly): row i of the result is B_i (x_i - mu_i).
Attribution shap_linear_independent(const LinearPredictor& p, const GaussianInput& g,
                                    const Eigen::VectorXd& x);

/// Closed-form SHAP for correlated features: row i is B^T M_i(Sigma) (x - mu).
Attribution shap_linear_correlated(const LinearPredictor& p, const GaussianInput& g,
                                   const Eigen::VectorXd& x);

/// The exact centered characteristic function of the Gaussian-linear pair:
/// v(S) = B^T A-hat_S (x - mu). Feeding it to shapley_subset reproduces
/// shap_linear_correlated.
VectorGame gaussian_game(const LinearPredictor& p, const GaussianInput& g,
                         const Eigen::VectorXd& x);

/// Random SPD test matrix L L^T + 1e-3 I with L entries uniform in [-1, 1].
Eigen::MatrixXd random_spd(Rng& rng, int n);

}  // namespace vecshap
