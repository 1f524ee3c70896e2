#pragma once

#include <cstddef>
#include <vector>

namespace vecshap {

/// Compensated accumulator (error-free two-sum). The running error term makes
/// the result insensitive to summation order well below the 1e-12 contract
/// assumed by every tolerance in this library.
class StableSum {
  public:
    StableSum() = default;
    explicit StableSum(double init) : sum_(init) {}

    void add(double input) {
        double t = sum_ + input;
        double z = t - sum_;
        c_ += (sum_ - (t - z)) + (input - z);
        sum_ = t;
    }

    double get() const { return sum_ + c_; }

    void reset() {
        sum_ = 0.0;
        c_ = 0.0;
    }

  private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

/// Fixed-width vector of compensated accumulators.
class StableVecSum {
  public:
    explicit StableVecSum(std::size_t dim) : acc_(dim) {}

    void add(std::size_t k, double x) { acc_[k].add(x); }

    // acc += scale * x
    template <class Range>
    void add_scaled(double scale, const Range& x) {
        for (std::size_t k = 0; k < acc_.size(); ++k) acc_[k].add(scale * x[k]);
    }

    std::size_t size() const { return acc_.size(); }
    double get(std::size_t k) const { return acc_[k].get(); }

    std::vector<double> values() const {
        std::vector<double> out(acc_.size());
        for (std::size_t k = 0; k < acc_.size(); ++k) out[k] = acc_[k].get();
        return out;
    }

  private:
    std::vector<StableSum> acc_;
};

}  // namespace vecshap
