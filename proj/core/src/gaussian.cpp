#include "vecshap/gaussian.hpp"

#include <Eigen/Cholesky>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "vecshap/shapley.hpp"
#include "vecshap/stable_sum.hpp"

namespace vecshap {

namespace {

constexpr double kPivotRel = 1e-10;
constexpr int kMaxGaussianDim = 20;

// Cholesky with the relative pivot rule; empty matrices pass trivially.
bool spd_factor(const Eigen::MatrixXd& a, Eigen::LLT<Eigen::MatrixXd>& llt) {
    if (a.rows() == 0) return true;
    llt.compute(a);
    if (llt.info() != Eigen::Success) return false;
    const double max_diag = a.diagonal().maxCoeff();
    if (!(max_diag > 0.0)) return false;
    const Eigen::VectorXd piv = llt.matrixLLT().diagonal();
    for (Eigen::Index j = 0; j < piv.size(); ++j)
        if (!(piv[j] * piv[j] > kPivotRel * max_diag)) return false;
    return true;
}

std::vector<int> member_indices(const Coalition& s) {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(s.size()));
    for (int i = 0; i < s.n; ++i)
        if (s.contains(i)) idx.push_back(i);
    return idx;
}

}  // namespace

bool is_positive_definite(const Eigen::MatrixXd& sigma) {
    Eigen::LLT<Eigen::MatrixXd> llt;
    return spd_factor(sigma, llt);
}

GaussianInput::GaussianInput(unchecked_t, Eigen::VectorXd mu, Eigen::MatrixXd sigma)
    : mu_(std::move(mu)), sigma_(std::move(sigma)) {}

GaussianInput::GaussianInput(Eigen::VectorXd mu, Eigen::MatrixXd sigma)
    : GaussianInput(unchecked_t{}, std::move(mu), std::move(sigma)) {
    if (sigma_.rows() != sigma_.cols() || sigma_.rows() != mu_.size())
        throw std::invalid_argument("sigma must be square with the dimension of mu");
    if (mu_.size() < 1) throw std::invalid_argument("dimension must be positive");
    const double scale = sigma_.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < sigma_.rows(); ++i)
        for (Eigen::Index j = i + 1; j < sigma_.cols(); ++j)
            if (std::abs(sigma_(i, j) - sigma_(j, i)) > 1e-10 * scale)
                throw std::invalid_argument("sigma must be symmetric");
    if (!is_positive_definite(sigma_))
        throw std::invalid_argument("sigma must be positive definite");
}

GaussianInput GaussianInput::unchecked(Eigen::VectorXd mu, Eigen::MatrixXd sigma) {
    return GaussianInput(unchecked_t{}, std::move(mu), std::move(sigma));
}

bool GaussianInput::diagonal() const {
    for (Eigen::Index i = 0; i < sigma_.rows(); ++i)
        for (Eigen::Index j = 0; j < sigma_.cols(); ++j)
            if (i != j && sigma_(i, j) != 0.0) return false;
    return true;
}

LinearPredictor::LinearPredictor(Eigen::VectorXd b0_, Eigen::MatrixXd B_)
    : b0(std::move(b0_)), B(std::move(B_)) {
    if (b0.size() != B.cols()) throw std::invalid_argument("intercept length must equal output count");
    if (B.rows() < 1 || B.cols() < 1) throw std::invalid_argument("coefficient matrix must be nonempty");
    if (!b0.allFinite() || !B.allFinite()) throw std::invalid_argument("model entries must be finite");
}

Eigen::MatrixXd conditional_matrix(const GaussianInput& g, const Coalition& s) {
    const int n = g.dim();
    if (s.n != n) throw std::invalid_argument("coalition player count does not match dimension");
    Eigen::MatrixXd embedded = Eigen::MatrixXd::Zero(n, n);
    if (s.is_empty()) return embedded;

    const std::vector<int> idx = member_indices(s);
    const auto ns = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(ns, ns);       // Sigma_{S,S}
    Eigen::MatrixXd cross_rows(ns, n);   // Sigma_{S,:}
    for (Eigen::Index a = 0; a < ns; ++a) {
        for (Eigen::Index b = 0; b < ns; ++b) block(a, b) = g.sigma()(idx[a], idx[b]);
        for (int c = 0; c < n; ++c) cross_rows(a, c) = g.sigma()(idx[a], c);
    }

    Eigen::LLT<Eigen::MatrixXd> llt;
    if (!spd_factor(block, llt)) throw std::runtime_error("singular conditional block");
    // A_S = Sigma_{:,S} Sigma_{S,S}^{-1}  <=>  A_S^T = Sigma_{S,S}^{-1} Sigma_{S,:}
    const Eigen::MatrixXd a_t = llt.solve(cross_rows);
    for (Eigen::Index a = 0; a < ns; ++a)
        for (int r = 0; r < n; ++r) embedded(r, idx[a]) = a_t(a, r);
    return embedded;
}

ConditionalMatrixSet::ConditionalMatrixSet(GaussianInput g) : g_(std::move(g)) {
    if (g_.dim() > kMaxGaussianDim)
        throw std::invalid_argument("conditional matrix enumeration capped at n=20");
    cache_.resize(std::size_t{1} << g_.dim());
}

const Eigen::MatrixXd& ConditionalMatrixSet::at(std::uint32_t mask) {
    if (mask >= cache_.size()) throw std::invalid_argument("coalition mask out of range");
    auto& slot = cache_[mask];
    if (!slot)
        slot = std::make_unique<Eigen::MatrixXd>(conditional_matrix(g_, Coalition(mask, g_.dim())));
    return *slot;
}

Eigen::MatrixXd attribution_matrix(ConditionalMatrixSet& set, int i) {
    const int n = set.dim();
    if (i < 0 || i >= n) throw std::invalid_argument("player index out of range");
    const ShapleyWeightTable wt = shapley_weights(n);
    const std::uint32_t bit = std::uint32_t{1} << i;
    std::vector<StableSum> acc(std::size_t{static_cast<std::size_t>(n)} * n);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
        if (s & bit) continue;
        const double w = wt.w[std::popcount(s)];
        const Eigen::MatrixXd& with_i = set.at(s | bit);
        const Eigen::MatrixXd& without_i = set.at(s);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                acc[std::size_t{static_cast<std::size_t>(r)} * n + c].add(w * (with_i(r, c) - without_i(r, c)));
    }
    Eigen::MatrixXd out(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r, c) = acc[std::size_t{static_cast<std::size_t>(r)} * n + c].get();
    return out;
}

Eigen::MatrixXd attribution_matrix(const GaussianInput& g, int i) {
    ConditionalMatrixSet set(g);
    return attribution_matrix(set, i);
}

namespace {

void check_model_input(const LinearPredictor& p, const GaussianInput& g, const Eigen::VectorXd& x) {
    if (p.features() != g.dim() || x.size() != g.dim())
        throw std::invalid_argument("model, distribution, and instance dimensions do not match");
    if (!x.allFinite()) throw std::invalid_argument("instance must be finite");
}

}  // namespace

Attribution shap_linear_independent(const LinearPredictor& p, const GaussianInput& g,
                                    const Eigen::VectorXd& x) {
    check_model_input(p, g, x);
    if (!g.diagonal()) throw std::invalid_argument("use correlated path");
    const int n = p.features();
    const int m = p.outputs();
    std::vector<double> payoff(std::size_t{static_cast<std::size_t>(n)} * m);
    for (int i = 0; i < n; ++i) {
        const double dz = x[i] - g.mu()[i];
        for (int k = 0; k < m; ++k) payoff[std::size_t{static_cast<std::size_t>(i)} * m + k] = p.B(i, k) * dz;
    }
    return Attribution(n, m, std::move(payoff));
}

Attribution shap_linear_correlated(const LinearPredictor& p, const GaussianInput& g,
                                   const Eigen::VectorXd& x) {
    check_model_input(p, g, x);
    const int n = p.features();
    const int m = p.outputs();
    ConditionalMatrixSet set(g);
    const Eigen::VectorXd z = x - g.mu();
    std::vector<double> payoff(std::size_t{static_cast<std::size_t>(n)} * m);
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd row = p.B.transpose() * (attribution_matrix(set, i) * z);
        for (int k = 0; k < m; ++k) payoff[std::size_t{static_cast<std::size_t>(i)} * m + k] = row[k];
    }
    return Attribution(n, m, std::move(payoff));
}

VectorGame gaussian_game(const LinearPredictor& p, const GaussianInput& g, const Eigen::VectorXd& x) {
    check_model_input(p, g, x);
    const int n = p.features();
    const int m = p.outputs();
    ConditionalMatrixSet set(g);
    const Eigen::VectorXd z = x - g.mu();
    std::vector<double> table((std::size_t{1} << n) * m, 0.0);
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
        const Eigen::VectorXd val = p.B.transpose() * (set.at(s) * z);
        for (int k = 0; k < m; ++k) table[std::size_t{s} * m + k] = val[k];
    }
    return VectorGame(n, m, std::move(table));
}

Eigen::MatrixXd random_spd(Rng& rng, int n) {
    Eigen::MatrixXd l(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) l(r, c) = rng.uniform(-1.0, 1.0);
    Eigen::MatrixXd sigma = l * l.transpose();
    sigma.diagonal().array() += 1e-3;
    return sigma;
}

}  // namespace vecshap
