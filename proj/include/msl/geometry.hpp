#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace msl {

/// Position in d-dimensional Euclidean space.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    std::size_t dim() const { return coords.size(); }
    double& operator[](std::size_t i) { return coords[i]; }
    const double& operator[](std::size_t i) const { return coords[i]; }

    bool operator==(const Point&) const = default;
};

/// Euclidean distance. Throws std::invalid_argument on dimension mismatch.
double distance(const Point& a, const Point& b);

/// Returns `target` when it is within `max_dist` of `from`, otherwise the
/// point on the segment [from, target] at exactly `max_dist` from `from`.
Point clamp_move(const Point& from, const Point& target, double max_dist);

struct MedianResult {
    Point position;
    int iterations = 0;
    bool converged = true;  // false when the iteration cap was hit
};

/// Point minimizing the sum of distances to `points` (kept with multiplicity).
/// When the minimizer set is not a singleton, returns the minimizer closest
/// to `anchor`. Accuracy: objective within tol*(1 + sum_i d(anchor, v_i)) of
/// the true minimum.
MedianResult geometric_median(std::span<const Point> points, const Point& anchor,
                              double tol = 1e-9);

/// sum_i d(c, points[i])
double median_objective(std::span<const Point> points, const Point& c);

}  // namespace msl
