#include "vecshap/game.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vecshap {

namespace {

void check_shape(int n, int m) {
    if (n < 1 || n > VectorGame::kMaxPlayers)
        throw std::invalid_argument("player count out of range [1, 24]: " + std::to_string(n));
    if (m < 1 || m > VectorGame::kMaxOutputs)
        throw std::invalid_argument("output count out of range [1, 16]: " + std::to_string(m));
}

}  // namespace

VectorGame::VectorGame(int n, int m) : n_(n), m_(m) {
    check_shape(n, m);
    values_.assign((std::size_t{1} << n) * m, 0.0);
}

VectorGame::VectorGame(int n, int m, std::vector<double> values) : n_(n), m_(m), values_(std::move(values)) {
    check_shape(n, m);
    if (values_.size() != (std::size_t{1} << n) * static_cast<std::size_t>(m))
        throw std::invalid_argument("value table size does not match 2^n * m");
    for (double x : values_)
        if (!std::isfinite(x)) throw std::invalid_argument("game values must be finite");
    for (int k = 0; k < m; ++k)
        if (values_[k] != 0.0) throw std::invalid_argument("empty coalition must have zero value");
}

VectorGame make_game(int n, int m, const std::vector<GameEntry>& entries) {
    check_shape(n, m);
    std::vector<double> table((std::size_t{1} << n) * m, 0.0);
    std::vector<bool> seen(std::size_t{1} << n, false);
    for (const auto& e : entries) {
        if (e.mask >= (std::uint32_t{1} << n))
            throw std::invalid_argument("coalition mask out of range for n=" + std::to_string(n));
        if (seen[e.mask]) throw std::invalid_argument("duplicate coalition mask " + std::to_string(e.mask));
        seen[e.mask] = true;
        if (e.value.size() != static_cast<std::size_t>(m))
            throw std::invalid_argument("payoff vector length does not match m");
        for (double x : e.value) {
            if (!std::isfinite(x)) throw std::invalid_argument("game values must be finite");
            if (e.mask == 0 && x != 0.0)
                throw std::invalid_argument("empty coalition must have zero value");
        }
        for (int k = 0; k < m; ++k) table[std::size_t{e.mask} * m + k] = e.value[k];
    }
    return VectorGame(n, m, std::move(table));
}

VectorGame unanimity_game(int n, const Coalition& t, int k, int m) {
    check_shape(n, m);
    if (t.n != n) throw std::invalid_argument("coalition player count does not match n");
    if (t.is_empty()) throw std::invalid_argument("unanimity game requires nonempty T");
    if (k < 0 || k >= m) throw std::invalid_argument("output index out of range");
    std::vector<double> table((std::size_t{1} << n) * m, 0.0);
    for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s)
        if ((t.mask & s) == t.mask) table[std::size_t{s} * m + k] = 1.0;
    return VectorGame(n, m, std::move(table));
}

VectorGame coordinate_project(const VectorGame& v, int k) {
    if (k < 0 || k >= v.outputs()) throw std::invalid_argument("output index out of range");
    std::vector<double> table(v.coalition_count());
    for (std::uint32_t s = 0; s < v.coalition_count(); ++s) table[s] = v.value(s, k);
    return VectorGame(v.players(), 1, std::move(table));
}

VectorGame coordinate_embed(const VectorGame& g, int k, int m) {
    if (g.outputs() != 1) throw std::invalid_argument("coordinate_embed requires a scalar game");
    if (k < 0 || k >= m) throw std::invalid_argument("output index out of range");
    if (m < 1 || m > VectorGame::kMaxOutputs)
        throw std::invalid_argument("output count out of range [1, 16]: " + std::to_string(m));
    std::vector<double> table(g.coalition_count() * static_cast<std::size_t>(m), 0.0);
    for (std::uint32_t s = 0; s < g.coalition_count(); ++s) table[std::size_t{s} * m + k] = g.value(s, 0);
    return VectorGame(g.players(), m, std::move(table));
}

VectorGame game_combine(double a, const VectorGame& u, double b, const VectorGame& v) {
    if (!u.same_shape(v)) throw std::invalid_argument("game shapes do not match");
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("coefficients must be finite");
    std::vector<double> table(u.raw().size());
    for (std::size_t idx = 0; idx < table.size(); ++idx) table[idx] = a * u.raw()[idx] + b * v.raw()[idx];
    // a*0 + b*0 can produce -0.0 at the empty coalition; normalize it away
    for (int k = 0; k < u.outputs(); ++k) table[k] = 0.0;
    return VectorGame(u.players(), u.outputs(), std::move(table));
}

double sup_norm(const VectorGame& v) {
    double best = 0.0;
    for (double x : v.raw()) best = std::max(best, std::abs(x));
    return best;
}

double marginal_seminorm(const VectorGame& v) {
    const int m = v.outputs();
    double best = 0.0;
    for (int i = 0; i < v.players(); ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        for (std::uint32_t s = 0; s < v.coalition_count(); ++s) {
            if (s & bit) continue;
            const double* lo = v.raw().data() + std::size_t{s} * m;
            const double* hi = v.raw().data() + std::size_t{s | bit} * m;
            for (int k = 0; k < m; ++k) best = std::max(best, std::abs(hi[k] - lo[k]));
        }
    }
    return best;
}

Attribution::Attribution(int n, int m) : n_(n), m_(m) {
    check_shape(n, m);
    payoff_.assign(std::size_t{static_cast<std::size_t>(n)} * m, 0.0);
}

Attribution::Attribution(int n, int m, std::vector<double> payoff) : n_(n), m_(m), payoff_(std::move(payoff)) {
    check_shape(n, m);
    if (payoff_.size() != std::size_t{static_cast<std::size_t>(n)} * m)
        throw std::invalid_argument("payoff table size does not match n * m");
    for (double x : payoff_)
        if (!std::isfinite(x)) throw std::invalid_argument("attribution values must be finite");
}

double attribution_norm(const Attribution& a) {
    double best = 0.0;
    for (double x : a.raw()) best = std::max(best, std::abs(x));
    return best;
}

Attribution attribution_diff(const Attribution& a, const Attribution& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("attribution shapes do not match");
    std::vector<double> d(a.raw().size());
    for (std::size_t idx = 0; idx < d.size(); ++idx) d[idx] = a.raw()[idx] - b.raw()[idx];
    return Attribution(a.players(), a.outputs(), std::move(d));
}

}  // namespace vecshap
