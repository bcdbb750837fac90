#pragma once

#include <random>
#include <vector>

#include "msl/model.hpp"

namespace msl::testing {

inline Point rand_point(std::mt19937_64& rng, int dim, double lo, double hi) {
    std::uniform_real_distribution<double> U(lo, hi);
    Point p{std::vector<double>(static_cast<std::size_t>(dim), 0.0)};
    for (auto& c : p.coords) c = U(rng);
    return p;
}

struct RandomInstanceOptions {
    Variant variant = Variant::Standard;
    int dim = 1;
    std::size_t T = 10;
    std::size_t max_r = 4;
    double span = 10.0;  // requests drawn from [-span, span]
    double m = 1.0;
    double D = 2.0;
};

/// Random instance with requests scattered in a box. MovingClient instances
/// get a feasible agent walk instead.
inline Instance random_instance(std::mt19937_64& rng, const RandomInstanceOptions& o) {
    Instance inst;
    inst.variant = o.variant;
    inst.dimension = o.dim;
    inst.start = rand_point(rng, o.dim, -o.span / 2, o.span / 2);
    inst.move_limit = o.m;
    inst.move_cost = o.D;
    std::uniform_int_distribution<std::size_t> R(1, o.max_r);
    if (o.variant == Variant::MovingClient) {
        inst.agent_limit = o.m;
        Point agent = inst.start;
        std::uniform_real_distribution<double> S(-o.m, o.m);
        for (std::size_t t = 0; t < o.T; ++t) {
            Point step{std::vector<double>(static_cast<std::size_t>(o.dim), 0.0)};
            for (auto& c : step.coords) c = S(rng);
            const double n = distance(step, Point{std::vector<double>(step.dim(), 0.0)});
            const double limit = 0.999 * o.m;
            if (n > limit) {
                for (auto& c : step.coords) c *= limit / n;
            }
            for (std::size_t k = 0; k < agent.dim(); ++k) agent[k] += step[k];
            inst.batches.push_back(RequestBatch{{agent}});
        }
    } else {
        for (std::size_t t = 0; t < o.T; ++t) {
            RequestBatch b;
            const std::size_t r = R(rng);
            for (std::size_t i = 0; i < r; ++i)
                b.requests.push_back(rand_point(rng, o.dim, -o.span, o.span));
            inst.batches.push_back(std::move(b));
        }
    }
    return inst;
}

/// Collapsed instance with a fixed batch size r: every batch is r copies of
/// a random-walk center (mixed small steps and occasional jumps).
inline Instance random_collapsed_instance(std::mt19937_64& rng, int dim, std::size_t T,
                                          std::size_t r, double m, double D) {
    Instance inst;
    inst.variant = Variant::Standard;
    inst.dimension = dim;
    inst.start = Point{std::vector<double>(static_cast<std::size_t>(dim), 0.0)};
    inst.move_limit = m;
    inst.move_cost = D;
    std::uniform_real_distribution<double> U(0.0, 1.0);
    Point c = inst.start;
    for (std::size_t t = 0; t < T; ++t) {
        const double scale = (U(rng) < 0.25) ? 6.0 * m : 1.5 * m;
        for (auto& coord : c.coords) coord += scale * (2.0 * U(rng) - 1.0);
        RequestBatch b;
        b.requests.assign(r, c);
        inst.batches.push_back(std::move(b));
    }
    return inst;
}

inline Instance translated(const Instance& inst, const Point& shift) {
    Instance out = inst;
    for (std::size_t k = 0; k < out.start.dim(); ++k) out.start[k] += shift[k];
    for (auto& b : out.batches)
        for (auto& v : b.requests)
            for (std::size_t k = 0; k < v.dim(); ++k) v[k] += shift[k];
    return out;
}

inline Trace translated(const Trace& tr, const Point& shift) {
    Trace out = tr;
    for (auto& p : out.positions)
        for (std::size_t k = 0; k < p.dim(); ++k) p[k] += shift[k];
    return out;
}

}  // namespace msl::testing
