#pragma once

#include <cstdint>
#include <random>

#include "vecshap/game.hpp"

namespace vecshap {

/// Deterministic random stream. Doubles are derived from the top 53 bits of
/// the mt19937_64 output so identical seeds give identical streams on every
/// standard library (the distribution adapters in <random> are
/// implementation-defined and would not).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Independent stream for one campaign trial.
    static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
        Rng r;
        r.gen_.seed(seq);
        return r;
    }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    /// Standard normal via Box-Muller (deterministic for a given stream).
    double normal();

  private:
    Rng() : gen_(0) {}
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Game with every nonempty coalition value i.i.d. uniform in [-1, 1] per component.
VectorGame random_game(Rng& rng, int n, int m);

}  // namespace vecshap
