#include "vecshap/random.hpp"

#include <cmath>
#include <numbers>

namespace vecshap {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

VectorGame random_game(Rng& rng, int n, int m) {
    std::vector<double> table((std::size_t{1} << n) * m, 0.0);
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s)
        for (int k = 0; k < m; ++k) table[std::size_t{s} * m + k] = rng.uniform(-1.0, 1.0);
    return VectorGame(n, m, std::move(table));
}

}  // namespace vecshap
