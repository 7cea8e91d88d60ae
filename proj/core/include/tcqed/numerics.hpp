// numerics.hpp — small shared numerical utilities: grids, root finding,
// peak refinement, a deterministic RNG, and a deterministic parallel_for.

#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

#include "tcqed/errors.hpp"

namespace tcqed {

inline Eigen::VectorXd linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
    Eigen::VectorXd v(count);
    if (count == 1) {
        v[0] = lo;
        return v;
    }
    const double h = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) v[i] = lo + h * i;
    v[count - 1] = hi;
    return v;
}

// Bisection on a bracketing interval, followed by a short Newton polish with
// a finite-difference derivative.  Returns the root; the caller checks any
// residual contract it cares about.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double xtol = 1e-14,
                       int max_bisect = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw std::invalid_argument("solve_bracketed: interval does not bracket a root");
    for (int it = 0; it < max_bisect && (hi - lo) > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) { lo = hi = mid; break; }
        if (flo * fm < 0.0) { hi = mid; fhi = fm; }
        else { lo = mid; flo = fm; }
    }
    double x = 0.5 * (lo + hi);
    const double h = std::max(1e-9, 1e-9 * std::abs(x));
    for (int it = 0; it < 8; ++it) {
        const double fx = f(x);
        const double d = (f(x + h) - f(x - h)) / (2.0 * h);
        if (d == 0.0) break;
        const double step = fx / d;
        const double xn = x - step;
        if (xn < lo || xn > hi) break;   // keep the bracket guarantee
        x = xn;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2) on a uniform grid.
// Falls back to x1 when the three points are collinear.
inline double parabolic_peak(double x1, double dx, double y0, double y1, double y2) {
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom == 0.0) return x1;
    return x1 + 0.5 * dx * (y0 - y2) / denom;
}

// Indices of strict-left / non-strict-right local maxima of a sampled curve.
inline std::vector<int> local_maxima(const Eigen::VectorXd& y) {
    std::vector<int> idx;
    for (int i = 1; i + 1 < y.size(); ++i)
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) idx.push_back(i);
    return idx;
}

// Deterministic uniform generator.  mt19937_64 has a fixed specified output
// sequence; the bits-to-double mapping is done by hand so results do not
// depend on the standard library's distribution implementation.
class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-half_width, half_width).
    double symmetric(double half_width) {
        return half_width * (2.0 * uniform() - 1.0);
    }

  private:
    std::mt19937_64 gen_;
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads.  Work items write
// to caller-owned, index-addressed storage, so the output is identical for
// any job count.  The first exception thrown by a worker is rethrown.
inline void parallel_for(std::size_t count, int jobs,
                         const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int n_threads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace tcqed
