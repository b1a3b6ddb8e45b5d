#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dpack {

// Malformed or inconsistent caller input. CLI maps this to exit code 1.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed. CLI maps this to exit code 3.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Runs fn(i) for i in [0, n). With threads <= 1 this is a plain loop.
// Work items must be independent; output slots are per-index, so the
// result does not depend on the schedule.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

// Step-constant profile g(1), g(2), ..., g(n_max), extended to the reals
// by g(x) = g(clamp(floor(x), 1, n_max)). Values are expected positive;
// nondecreasing is checked where an operation requires it.
class Profile {
  public:
    Profile() = default;
    explicit Profile(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw InputError("profile: needs at least one value");
        for (double v : values_)
            if (!(v > 0.0)) throw InputError("profile: values must be positive");
    }

    double at_index(std::int64_t n) const {
        if (n < 1) n = 1;
        if (n > static_cast<std::int64_t>(values_.size())) n = static_cast<std::int64_t>(values_.size());
        return values_[static_cast<std::size_t>(n - 1)];
    }

    // g(x) := g(max(floor(x), 1)), clamped to the stored range.
    double operator()(double x) const {
        auto n = static_cast<std::int64_t>(x);
        if (n < 1) n = 1;
        return at_index(n);
    }

    bool nondecreasing() const {
        for (std::size_t i = 1; i < values_.size(); ++i)
            if (values_[i] < values_[i - 1]) return false;
        return true;
    }

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> values_;
};

}  // namespace dpack
