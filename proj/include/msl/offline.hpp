#pragma once

#include <optional>
#include <vector>

#include "msl/model.hpp"

namespace msl {

struct SolverSettings {
    int max_iterations = 50000;
    int polish_interval = 1000;  // coordinate-polish cadence, in iterations
    int polish_sweeps = 80;      // max sweeps per polish invocation
    std::vector<Trace> warm_starts;  // extra initial candidates, clamped feasible
};

struct GridParams {
    double grid_step = 0.0;
    double radius = 0.0;
};

struct SolverReport {
    Trace trace;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::optional<double> certified_gap;  // vs an oracle, filled by callers
    std::optional<GridParams> grid;       // set by the grid oracle
};

/// Near-optimal offline trace: minimizes the instance cost over all
/// trajectories with per-step displacement <= m. The objective is convex
/// (sums of Euclidean norms); the solver is a projected subgradient method
/// with adaptive Polyak target levels, walking in per-step displacement
/// space where the constraint set is a product of balls with an exact
/// projection, plus periodic coordinate polish and best-iterate tracking.
SolverReport solve_offline(const Instance& inst, double tol = 1e-6,
                           const SolverSettings& settings = {});

/// Brute-force oracle for 1-dimensional instances: exact optimum over the
/// discretized position set {start - K*g, ..., start + K*g} by dynamic
/// programming with the per-step transition constraint. Grids with the same
/// radius nest when the spacing is divided by an integer.
SolverReport grid_dp_oracle_1d(const Instance& inst, double grid_step, double radius);

/// Smallest symmetric radius around the start covering every request.
double default_oracle_radius(const Instance& inst);

}  // namespace msl
