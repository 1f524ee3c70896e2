#pragma once

#include <span>
#include <vector>

#include "vecshap/game.hpp"

namespace vecshap {

/// <a,b> / (|a| |b|). Rejects zero vectors.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Positions 1..n averaged over ties.
std::vector<double> average_ranks(std::span<const double> x);

/// Pearson correlation of the tie-averaged rank vectors.
/// Rejects constant vectors and lengths below 2.
double spearman_correlation(std::span<const double> a, std::span<const double> b);

/// Entry i: mean over runs of |phi_i, component k|.
std::vector<double> importance_from_attributions(const std::vector<Attribution>& runs, int k);

}  // namespace vecshap
