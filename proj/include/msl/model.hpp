#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msl/geometry.hpp"

namespace msl {

enum class Variant {
    Standard,      // move knowing the requests, serve from the new position
    AnswerFirst,   // serve from the old position, then move
    MovingClient,  // one request per step issued by a speed-limited agent
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct RequestBatch {
    std::vector<Point> requests;
    std::size_t size() const { return requests.size(); }
};

struct CostBreakdown {
    double move_cost = 0.0;   // D * displacement
    double serve_cost = 0.0;  // sum of distances to the requests
    double total = 0.0;
};

/// A server trajectory: positions[0..T] with per-step cost breakdowns and the
/// per-step displacement limit it was produced under.
struct Trace {
    std::vector<Point> positions;      // length T+1, positions[0] == instance start
    std::vector<CostBreakdown> steps;  // length T
    double step_limit = 0.0;
};

struct Instance {
    Variant variant = Variant::Standard;
    int dimension = 1;
    Point start;
    double move_limit = 1.0;            // m (m_s for MovingClient)
    double move_cost = 1.0;             // D >= 1
    std::optional<double> agent_limit;  // m_a, MovingClient only
    std::vector<RequestBatch> batches;  // length T

    std::size_t horizon() const { return batches.size(); }
};

// Movement-limit checks absorb this much floating-point drift.
inline constexpr double kMoveSlack = 1e-9;

/// Cost of step `t` (0-based batch index) moving the server prev -> next.
CostBreakdown step_cost(const Instance& inst, std::size_t t, const Point& prev,
                        const Point& next);

/// Sum of step costs along the trace. Throws on length mismatch.
double total_cost(const Instance& inst, const Trace& trace);

/// Per-step cost breakdowns for a position sequence of length T+1.
std::vector<CostBreakdown> compute_steps(const Instance& inst,
                                         const std::vector<Point>& positions);

/// Assembles a Trace (positions + costs) under the given step limit.
Trace make_trace(const Instance& inst, std::vector<Point> positions, double step_limit);

/// Replaces every batch by r_t copies of its geometric median, tie-broken
/// toward the anchor trace position at that step. Standard/AnswerFirst only.
Instance collapse_to_centers(const Instance& inst, const Trace& anchor_trace,
                             double median_tol = 1e-9);

/// True when every batch consists of coincident points (within tol).
bool is_collapsed(const Instance& inst, double tol = 1e-9);

/// Prepends one step with r_1 requests on the start position.
Instance prepend_dummy_requests(const Instance& inst);

/// Empty iff all Instance invariants hold; otherwise human-readable violations.
std::vector<std::string> validate(const Instance& inst);

/// Trace-level checks (length, start anchor, displacement limit, cost sums).
std::vector<std::string> validate_trace(const Instance& inst, const Trace& trace);

}  // namespace msl
