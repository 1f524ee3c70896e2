#include "vecshap/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vecshap/stable_sum.hpp"

namespace vecshap {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("vectors must share a positive length");
    StableSum dot, na, nb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot.add(a[i] * b[i]);
        na.add(a[i] * a[i]);
        nb.add(b[i] * b[i]);
    }
    if (na.get() == 0.0 || nb.get() == 0.0)
        throw std::invalid_argument("undefined cosine for zero vector");
    return dot.get() / (std::sqrt(na.get()) * std::sqrt(nb.get()));
}

std::vector<double> average_ranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based positions i+1..j+1
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<double>(a.size());
    StableSum sa, sb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sa.add(a[i]);
        sb.add(b[i]);
    }
    const double ma = sa.get() / n;
    const double mb = sb.get() / n;
    StableSum cov, va, vb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cov.add((a[i] - ma) * (b[i] - mb));
        va.add((a[i] - ma) * (a[i] - ma));
        vb.add((b[i] - mb) * (b[i] - mb));
    }
    if (va.get() == 0.0 || vb.get() == 0.0)
        throw std::invalid_argument("undefined correlation for constant vector");
    return cov.get() / (std::sqrt(va.get()) * std::sqrt(vb.get()));
}

}  // namespace

double spearman_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2)
        throw std::invalid_argument("vectors must share length >= 2");
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    return pearson(ra, rb);
}

std::vector<double> importance_from_attributions(const std::vector<Attribution>& runs, int k) {
    if (runs.empty()) throw std::invalid_argument("importance needs at least one attribution");
    const int n = runs.front().players();
    const int m = runs.front().outputs();
    if (k < 0 || k >= m) throw std::invalid_argument("output index out of range");
    for (const auto& a : runs)
        if (a.players() != n || a.outputs() != m)
            throw std::invalid_argument("attribution shapes do not match");
    std::vector<double> importance(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        StableSum acc;
        for (const auto& a : runs) acc.add(std::abs(a(i, k)) / static_cast<double>(runs.size()));
        importance[static_cast<std::size_t>(i)] = acc.get();
    }
    return importance;
}

}  // namespace vecshap
