#pragma once

// Adaptive quadrature in one and two dimensions.
//
// 1D: globally adaptive Gauss-Kronrod (7/15) bisection.
// 2D: globally adaptive Genz-Malik (degree 7/5) rectangle bisection, splitting
//     the axis with the larger fourth difference.
// Infinite bounds are compactified with x = u / (1 - u^2).
//
// Both engines are deterministic: the subdivision order depends only on the
// integrand values, and ties in the priority queue are broken by creation order.

#include <cstddef>
#include <functional>
#include <limits>

namespace anharmonic::quad {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One axis of an integration region. Either bound may be +-infinity.
struct Bounds {
    double lower = 0.0;
    double upper = 1.0;

    bool finite() const noexcept;
    double width() const noexcept { return upper - lower; }
};

/// Axis-aligned rectangle, first axis x, second axis p.
struct Box {
    Bounds x;
    Bounds p;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
};

struct Options {
    double abs_tol = 1e-9;
    double rel_tol = 1e-7;
    std::size_t max_evals = 1'000'000;
    /// The region is first cut into this many equal pieces per axis, so that
    /// features narrower than the whole region are not missed by the first rule.
    std::size_t initial_splits = 1;
};

inline constexpr Options kDefault1d{1e-9, 1e-7, 1'000'000};
inline constexpr Options kDefault2d{1e-6, 1e-5, 50'000'000};

using Integrand1d = std::function<double(double)>;
using Integrand2d = std::function<double(double, double)>;

/// Throws NonConvergence (with the best value so far) when max_evals is exhausted,
/// std::invalid_argument for non-positive tolerances or lower >= upper.
QuadResult integrate_1d(const Integrand1d& f, Bounds region, const Options& opts = kDefault1d);

QuadResult integrate_2d(const Integrand2d& f, const Box& region, const Options& opts = kDefault2d);

}  // namespace anharmonic::quad
