#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "vecshap/coalition.hpp"

namespace vecshap {

/// A vector-valued cooperative game: a total map from the 2^n coalitions of
/// [n] to payoff vectors in R^m, normalized so the empty coalition is worth
/// the zero vector. Values are stored densely, indexed by coalition mask.
/// Immutable after construction.
class VectorGame {
  public:
    static constexpr int kMaxPlayers = 24;
    static constexpr int kMaxOutputs = 16;

    /// The zero game on n players with m outputs.
    VectorGame(int n, int m);

    /// Takes ownership of a dense value table (2^n * m, coalition-major).
    /// Rejects non-finite entries and a nonzero value at the empty coalition.
    VectorGame(int n, int m, std::vector<double> values);

    int players() const { return n_; }
    int outputs() const { return m_; }
    std::uint32_t coalition_count() const { return std::uint32_t{1} << n_; }
    std::uint32_t full_mask() const { return coalition_count() - 1; }

    std::span<const double> value(std::uint32_t mask) const {
        return {values_.data() + std::size_t{mask} * m_, static_cast<std::size_t>(m_)};
    }
    double value(std::uint32_t mask, int k) const { return values_[std::size_t{mask} * m_ + k]; }

    const std::vector<double>& raw() const { return values_; }

    bool same_shape(const VectorGame& other) const {
        return n_ == other.n_ && m_ == other.m_;
    }

  private:
    int n_;
    int m_;
    std::vector<double> values_;  // 2^n rows of m components
};

struct GameEntry {
    std::uint32_t mask;
    std::vector<double> value;
};

/// Sparse constructor: unspecified coalitions default to the zero vector.
/// Rejects duplicate masks, out-of-range masks, non-finite components, and an
/// explicit nonzero entry for the empty coalition.
VectorGame make_game(int n, int m, const std::vector<GameEntry>& entries);

/// The unanimity game u_T embedded in output coordinate k:
/// v(S) = e_k if T is a subset of S, the zero vector otherwise. T must be nonempty.
VectorGame unanimity_game(int n, const Coalition& t, int k, int m);

/// Scalar game holding coordinate k of v.
VectorGame coordinate_project(const VectorGame& v, int k);

/// Places a scalar game into coordinate k of an m-output game;
/// all other coordinates are identically zero.
VectorGame coordinate_embed(const VectorGame& g, int k, int m);

/// Pointwise linear combination a*u + b*v of two games of equal shape.
VectorGame game_combine(double a, const VectorGame& u, double b, const VectorGame& v);

/// max over all coalitions of the max-abs payoff component.
double sup_norm(const VectorGame& v);

/// max over players i and coalitions S not containing i of the max-abs
/// marginal contribution v(S+{i}) - v(S). Computed by full enumeration.
double marginal_seminorm(const VectorGame& v);

/// Per-player payoff vectors: row i is the attribution of player i in R^m.
/// Immutable after construction.
class Attribution {
  public:
    Attribution(int n, int m);
    Attribution(int n, int m, std::vector<double> payoff);

    int players() const { return n_; }
    int outputs() const { return m_; }

    std::span<const double> row(int i) const {
        return {payoff_.data() + std::size_t{static_cast<std::size_t>(i)} * m_,
                static_cast<std::size_t>(m_)};
    }
    double operator()(int i, int k) const { return payoff_[std::size_t{static_cast<std::size_t>(i)} * m_ + k]; }

    const std::vector<double>& raw() const { return payoff_; }

    bool same_shape(const Attribution& other) const {
        return n_ == other.n_ && m_ == other.m_;
    }

  private:
    int n_;
    int m_;
    std::vector<double> payoff_;  // n rows of m components
};

/// max over players of the max-abs attribution component.
double attribution_norm(const Attribution& a);

/// Rowwise difference a - b (shapes must match).
Attribution attribution_diff(const Attribution& a, const Attribution& b);

}  // namespace vecshap
