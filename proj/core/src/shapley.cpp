#include "vecshap/shapley.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "vecshap/stable_sum.hpp"

namespace vecshap {

ShapleyWeightTable shapley_weights(int n) {
    if (n < 1 || n > VectorGame::kMaxPlayers)
        throw std::invalid_argument("player count out of range [1, 24]: " + std::to_string(n));
    ShapleyWeightTable t;
    t.n = n;
    t.w.resize(n);
    t.w[0] = 1.0 / n;  // 0!(n-1)!/n!
    for (int s = 0; s + 1 < n; ++s) t.w[s + 1] = t.w[s] * (s + 1) / (n - s - 1);
    return t;
}

double coalition_weight(int s, int n) {
    if (n < 1) throw std::invalid_argument("player count must be positive");
    if (s < 0 || s >= n) throw std::invalid_argument("coalition size must satisfy 0 <= s <= n-1");
    double w = 1.0 / n;
    for (int r = 0; r < s; ++r) w = w * (r + 1) / (n - r - 1);
    return w;
}

Attribution shapley_subset(const VectorGame& v) {
    const int n = v.players();
    const int m = v.outputs();
    const ShapleyWeightTable wt = shapley_weights(n);
    std::vector<double> payoff(std::size_t{static_cast<std::size_t>(n)} * m);
    std::vector<StableSum> acc(m);
    for (int i = 0; i < n; ++i) {
        for (auto& a : acc) a.reset();
        const std::uint32_t bit = std::uint32_t{1} << i;
        for (std::uint32_t s = 0; s < v.coalition_count(); ++s) {
            if (s & bit) continue;
            const double w = wt.w[std::popcount(s)];
            const double* lo = v.raw().data() + std::size_t{s} * m;
            const double* hi = v.raw().data() + std::size_t{s | bit} * m;
            for (int k = 0; k < m; ++k) acc[k].add(w * (hi[k] - lo[k]));
        }
        for (int k = 0; k < m; ++k) payoff[std::size_t{static_cast<std::size_t>(i)} * m + k] = acc[k].get();
    }
    return Attribution(n, m, std::move(payoff));
}

Attribution shapley_permutation(const VectorGame& v) {
    const int n = v.players();
    const int m = v.outputs();
    if (n > 10) throw std::invalid_argument("permutation oracle capped at n=10");
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<StableSum> acc(std::size_t{static_cast<std::size_t>(n)} * m);
    double n_factorial = 1.0;
    for (int i = 2; i <= n; ++i) n_factorial *= i;
    do {
        std::uint32_t preceding = 0;
        for (int pos = 0; pos < n; ++pos) {
            const int i = order[pos];
            const std::uint32_t bit = std::uint32_t{1} << i;
            const double* lo = v.raw().data() + std::size_t{preceding} * m;
            const double* hi = v.raw().data() + std::size_t{preceding | bit} * m;
            for (int k = 0; k < m; ++k) acc[std::size_t{static_cast<std::size_t>(i)} * m + k].add(hi[k] - lo[k]);
            preceding |= bit;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    std::vector<double> payoff(acc.size());
    for (std::size_t idx = 0; idx < acc.size(); ++idx) payoff[idx] = acc[idx].get() / n_factorial;
    return Attribution(n, m, std::move(payoff));
}

std::vector<double> harsanyi_dividends(const VectorGame& v) {
    if (v.outputs() != 1) throw std::invalid_argument("harsanyi_dividends requires a scalar game");
    if (v.players() > 20) throw std::invalid_argument("dividend path capped at n=20");
    // In-place Moebius transform over the subset lattice.
    std::vector<double> d(v.raw());
    for (int b = 0; b < v.players(); ++b) {
        const std::uint32_t bit = std::uint32_t{1} << b;
        for (std::uint32_t s = 0; s < v.coalition_count(); ++s)
            if (s & bit) d[s] -= d[s ^ bit];
    }
    return d;
}

Attribution shapley_via_unanimity(const VectorGame& v) {
    const int n = v.players();
    const std::vector<double> d = harsanyi_dividends(v);
    std::vector<double> payoff(n, 0.0);
    std::vector<StableSum> acc(n);
    for (std::uint32_t t = 1; t < v.coalition_count(); ++t) {
        const double share = d[t] / std::popcount(t);
        for (int i = 0; i < n; ++i)
            if (t & (std::uint32_t{1} << i)) acc[i].add(share);
    }
    for (int i = 0; i < n; ++i) payoff[i] = acc[i].get();
    return Attribution(n, 1, std::move(payoff));
}

}  // namespace vecshap
