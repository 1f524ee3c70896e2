#pragma once

#include <vector>

#include "vecshap/game.hpp"

namespace vecshap {

/// Coalition-size weights of the subset-form Shapley sum over subsets of
/// [n] \ {i}: w[s] = s!(n-s-1)!/n!. Over all such subsets the weights sum to one.
struct ShapleyWeightTable {
    int n = 0;
    std::vector<double> w;  // indexed by coalition size 0..n-1
};

/// Built by the multiplicative recurrence w[s+1] = w[s]*(s+1)/(n-s-1),
/// which stays exact to ~1 ulp per step and never forms a factorial.
ShapleyWeightTable shapley_weights(int n);

/// w(s, n) = s!(n-s-1)!/n! for a single size; requires 0 <= s <= n-1.
double coalition_weight(int s, int n);

/// Subset-form Shapley operator (the production path):
/// phi_i(v) = sum over S in [n]\{i} of w(|S|) * (v(S+{i}) - v(S)).
/// Accumulation is compensated and runs in ascending mask order.
Attribution shapley_subset(const VectorGame& v);

/// Permutation-form Shapley operator, enumerating all n! player orders.
/// Equal to shapley_subset by the uniqueness theorem; kept as an
/// independent oracle. Capped at n = 10.
Attribution shapley_permutation(const VectorGame& v);

/// Harsanyi dividends of a scalar game (Moebius transform of its value table):
/// d_T = sum over R in T of (-1)^(|T|-|R|) v(R). Requires m = 1, n <= 20.
std::vector<double> harsanyi_dividends(const VectorGame& v);

/// Shapley values of a scalar game through the unanimity basis:
/// phi_i = sum over T containing i of d_T / |T|. Requires m = 1, n <= 20.
Attribution shapley_via_unanimity(const VectorGame& v);

}  // namespace vecshap
