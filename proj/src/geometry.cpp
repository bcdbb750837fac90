#include "msl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace msl {

namespace {

void require_same_dim(const Point& a, const Point& b, const char* what) {
    if (a.dim() != b.dim() || a.dim() == 0) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

Point axpy_point(const Point& base, const Point& dir, double s) {
    Point out = base;
    for (std::size_t i = 0; i < out.dim(); ++i) out[i] += s * dir[i];
    return out;
}

double coordinate_scale(std::span<const Point> points) {
    double s = 0.0;
    for (const Point& p : points)
        for (double c : p.coords) s = std::max(s, std::abs(c));
    return s;
}

// Exact 1D rule: the minimizer set is the interval between the two middle
// order statistics; the anchor is clamped into it.
double median_1d(std::vector<double> vals, double anchor) {
    std::sort(vals.begin(), vals.end());
    const std::size_t n = vals.size();
    if (n % 2 == 1) return vals[n / 2];
    const double lo = vals[n / 2 - 1];
    const double hi = vals[n / 2];
    return std::clamp(anchor, lo, hi);
}

struct LineFit {
    bool collinear = false;
    Point origin;
    Point dir;  // unit vector
};

// Detects whether all points lie on one line (within a tolerance relative to
// the coordinate scale). Uses the two-scan farthest-pair heuristic.
LineFit fit_line(std::span<const Point> points, double scale) {
    LineFit fit;
    const Point& p0 = points[0];
    const Point* a = &p0;
    double best = 0.0;
    for (const Point& p : points) {
        const double d = distance(p0, p);
        if (d > best) { best = d; a = &p; }
    }
    const Point* b = a;
    best = 0.0;
    for (const Point& p : points) {
        const double d = distance(*a, p);
        if (d > best) { best = d; b = &p; }
    }
    const double len = distance(*a, *b);
    if (len <= 1e-12 * (1.0 + scale)) return fit;  // all coincident: handled upstream

    Point dir = *b;
    for (std::size_t i = 0; i < dir.dim(); ++i) dir[i] = (dir[i] - (*a)[i]) / len;

    const double tol = 1e-10 * (1.0 + scale);
    for (const Point& p : points) {
        double t = 0.0;
        for (std::size_t i = 0; i < p.dim(); ++i) t += (p[i] - (*a)[i]) * dir[i];
        double resid2 = 0.0;
        for (std::size_t i = 0; i < p.dim(); ++i) {
            const double r = p[i] - (*a)[i] - t * dir[i];
            resid2 += r * r;
        }
        if (std::sqrt(resid2) > tol) return fit;
    }
    fit.collinear = true;
    fit.origin = *a;
    fit.dir = std::move(dir);
    return fit;
}

}  // namespace

double distance(const Point& a, const Point& b) {
    require_same_dim(a, b, "distance");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

Point clamp_move(const Point& from, const Point& target, double max_dist) {
    require_same_dim(from, target, "clamp_move");
    if (max_dist < 0.0) throw std::invalid_argument("clamp_move: negative max_dist");
    const double d = distance(from, target);
    if (d <= max_dist) return target;
    const double s = max_dist / d;
    Point out = from;
    for (std::size_t i = 0; i < out.dim(); ++i) out[i] += s * (target[i] - from[i]);
    return out;
}

double median_objective(std::span<const Point> points, const Point& c) {
    double acc = 0.0;
    for (const Point& p : points) acc += distance(c, p);
    return acc;
}

MedianResult geometric_median(std::span<const Point> points, const Point& anchor,
                              double tol) {
    if (points.empty()) throw std::invalid_argument("geometric_median: empty input");
    if (tol <= 0.0) throw std::invalid_argument("geometric_median: tol must be > 0");
    const std::size_t dim = points[0].dim();
    for (const Point& p : points) require_same_dim(points[0], p, "geometric_median");
    require_same_dim(points[0], anchor, "geometric_median");

    if (points.size() == 1) return {points[0], 0, true};

    const double scale = coordinate_scale(points);

    if (dim == 1) {
        std::vector<double> vals;
        vals.reserve(points.size());
        for (const Point& p : points) vals.push_back(p[0]);
        return {Point{median_1d(std::move(vals), anchor[0])}, 0, true};
    }

    double max_spread = 0.0;
    for (const Point& p : points) max_spread = std::max(max_spread, distance(points[0], p));
    if (max_spread <= 1e-12 * (1.0 + scale)) return {points[0], 0, true};

    // Collinear inputs (including the 2-point case) reduce to the 1D rule
    // along the line; this is the only d >= 2 case with a non-unique minimizer.
    const LineFit line = fit_line(points, scale);
    if (line.collinear) {
        std::vector<double> ts;
        ts.reserve(points.size());
        for (const Point& p : points) {
            double t = 0.0;
            for (std::size_t i = 0; i < dim; ++i) t += (p[i] - line.origin[i]) * line.dir[i];
            ts.push_back(t);
        }
        double ta = 0.0;
        for (std::size_t i = 0; i < dim; ++i) ta += (anchor[i] - line.origin[i]) * line.dir[i];
        const double t = median_1d(std::move(ts), ta);
        return {axpy_point(line.origin, line.dir, t), 0, true};
    }

    // Weiszfeld iteration from the coordinate-wise mean, with the standard
    // fix when an iterate lands on an input point: test the subgradient
    // optimality condition ||sum of unit vectors|| <= multiplicity, and when
    // it fails step away along the pulling direction.
    //
    // The stop is a certified gap bound: the minimizer lies in the convex
    // hull, so f(x) - f* <= dist(0, subdifferential at x) * max_i d(x, v_i).
    Point x{std::vector<double>(dim, 0.0)};
    for (const Point& p : points)
        for (std::size_t i = 0; i < dim; ++i) x[i] += p[i] / static_cast<double>(points.size());

    double eps_target = tol;
    for (const Point& p : points) eps_target += tol * distance(anchor, p);

    const double sing_eps = 1e-12 * (1.0 + scale);
    const int max_iters = 10000;
    int iter = 0;
    bool converged = false;
    for (; iter < max_iters; ++iter) {
        double mult = 0.0;
        bool at_anchor_point = false;
        double max_dist = 0.0;
        std::vector<double> dist_i(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            dist_i[i] = distance(x, points[i]);
            max_dist = std::max(max_dist, dist_i[i]);
            if (dist_i[i] <= sing_eps) {
                mult += 1.0;
                at_anchor_point = true;
            }
        }
        Point next{std::vector<double>(dim, 0.0)};
        if (at_anchor_point) {
            Point pull{std::vector<double>(dim, 0.0)};
            double inv_sum = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if (dist_i[i] <= sing_eps) continue;
                inv_sum += 1.0 / dist_i[i];
                for (std::size_t k = 0; k < dim; ++k)
                    pull[k] += (points[i][k] - x[k]) / dist_i[i];
            }
            double pull_norm = 0.0;
            for (double c : pull.coords) pull_norm += c * c;
            pull_norm = std::sqrt(pull_norm);
            if ((pull_norm - mult) * max_dist <= eps_target || inv_sum == 0.0) {
                converged = true;
                break;
            }
            const double step = (pull_norm - mult) / inv_sum;
            next = axpy_point(x, pull, step / pull_norm);
            x = std::move(next);
        } else {
            double inv_sum = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                const double wi = 1.0 / dist_i[i];
                inv_sum += wi;
                for (std::size_t k = 0; k < dim; ++k) next[k] += wi * points[i][k];
            }
            for (std::size_t k = 0; k < dim; ++k) next[k] /= inv_sum;
            // the gradient is inv_sum * (x - next)
            const double gap_bound = inv_sum * distance(x, next) * max_dist;
            x = std::move(next);
            if (gap_bound <= eps_target) {
                converged = true;
                ++iter;
                break;
            }
        }
    }

    // The returned point must be at least as good as the natural candidates
    // (every input point and the coordinate-wise mean); near-ties go to the
    // candidate closest to the anchor.
    std::vector<Point> candidates;
    candidates.reserve(points.size() + 2);
    candidates.push_back(std::move(x));
    Point mean{std::vector<double>(dim, 0.0)};
    for (const Point& p : points)
        for (std::size_t i = 0; i < dim; ++i) mean[i] += p[i] / static_cast<double>(points.size());
    candidates.push_back(std::move(mean));
    for (const Point& p : points) candidates.push_back(p);

    double best_f = std::numeric_limits<double>::infinity();
    for (const Point& cand : candidates) best_f = std::min(best_f, median_objective(points, cand));
    const double tie_eps = 1e-12 * (1.0 + best_f);
    const Point* best = nullptr;
    double best_anchor_d = std::numeric_limits<double>::infinity();
    for (const Point& cand : candidates) {
        if (median_objective(points, cand) > best_f + tie_eps) continue;
        const double ad = distance(cand, anchor);
        if (ad < best_anchor_d) { best_anchor_d = ad; best = &cand; }
    }
    return {*best, iter, converged};
}

}  // namespace msl
