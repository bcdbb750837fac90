#include "msl/model.hpp"

#include <cmath>
#include <stdexcept>

namespace msl {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Standard: return "standard";
        case Variant::AnswerFirst: return "answer_first";
        case Variant::MovingClient: return "moving_client";
    }
    throw std::logic_error("variant_name: bad enum");
}

Variant variant_from_name(const std::string& name) {
    if (name == "standard") return Variant::Standard;
    if (name == "answer_first") return Variant::AnswerFirst;
    if (name == "moving_client") return Variant::MovingClient;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

CostBreakdown step_cost(const Instance& inst, std::size_t t, const Point& prev,
                        const Point& next) {
    if (t >= inst.horizon()) throw std::out_of_range("step_cost: step index out of range");
    const RequestBatch& batch = inst.batches[t];
    CostBreakdown cb;
    cb.move_cost = inst.move_cost * distance(prev, next);
    const Point& serve_from = (inst.variant == Variant::AnswerFirst) ? prev : next;
    for (const Point& v : batch.requests) cb.serve_cost += distance(serve_from, v);
    cb.total = cb.move_cost + cb.serve_cost;
    return cb;
}

std::vector<CostBreakdown> compute_steps(const Instance& inst,
                                         const std::vector<Point>& positions) {
    if (positions.size() != inst.horizon() + 1) {
        throw std::invalid_argument("compute_steps: positions length != T+1");
    }
    std::vector<CostBreakdown> steps;
    steps.reserve(inst.horizon());
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
        steps.push_back(step_cost(inst, t, positions[t], positions[t + 1]));
    }
    return steps;
}

double total_cost(const Instance& inst, const Trace& trace) {
    double acc = 0.0;
    for (const CostBreakdown& cb : compute_steps(inst, trace.positions)) acc += cb.total;
    return acc;
}

Trace make_trace(const Instance& inst, std::vector<Point> positions, double step_limit) {
    Trace tr;
    tr.steps = compute_steps(inst, positions);
    tr.positions = std::move(positions);
    tr.step_limit = step_limit;
    return tr;
}

Instance collapse_to_centers(const Instance& inst, const Trace& anchor_trace,
                             double median_tol) {
    if (inst.variant == Variant::MovingClient) {
        throw std::invalid_argument("collapse_to_centers: unsupported for moving_client");
    }
    if (anchor_trace.positions.size() != inst.horizon() + 1) {
        throw std::invalid_argument("collapse_to_centers: anchor trace length mismatch");
    }
    Instance out = inst;
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
        const RequestBatch& batch = inst.batches[t];
        // Anchor is the position the tie-break owner holds when batch t arrives.
        const Point& anchor = anchor_trace.positions[t];
        const Point c = geometric_median(batch.requests, anchor, median_tol).position;
        out.batches[t].requests.assign(batch.size(), c);
    }
    return out;
}

bool is_collapsed(const Instance& inst, double tol) {
    for (const RequestBatch& batch : inst.batches) {
        for (const Point& v : batch.requests) {
            if (distance(v, batch.requests.front()) > tol) return false;
        }
    }
    return true;
}

Instance prepend_dummy_requests(const Instance& inst) {
    if (inst.variant == Variant::MovingClient) {
        throw std::invalid_argument("prepend_dummy_requests: unsupported for moving_client");
    }
    if (inst.batches.empty()) throw std::invalid_argument("prepend_dummy_requests: empty instance");
    Instance out = inst;
    RequestBatch dummy;
    dummy.requests.assign(inst.batches.front().size(), inst.start);
    out.batches.insert(out.batches.begin(), std::move(dummy));
    return out;
}

namespace {

bool finite_point(const Point& p) {
    for (double c : p.coords)
        if (!std::isfinite(c)) return false;
    return true;
}

}  // namespace

std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> out;
    auto bad = [&](std::string msg) { out.push_back(std::move(msg)); };

    if (inst.dimension < 1) bad("dimension must be >= 1");
    if (inst.horizon() < 1) bad("instance must have at least one step");
    if (!(inst.move_limit > 0.0)) bad("move limit m must be > 0");
    if (!(inst.move_cost >= 1.0)) bad("move cost D must be >= 1");
    if (inst.start.dim() != static_cast<std::size_t>(inst.dimension))
        bad("start point dimension differs from instance dimension");
    if (!finite_point(inst.start)) bad("start point has non-finite coordinates");

    if (inst.variant == Variant::MovingClient) {
        if (!inst.agent_limit) bad("moving_client requires agent limit m_a");
        else if (!(*inst.agent_limit > 0.0)) bad("agent limit m_a must be > 0");
    } else if (inst.agent_limit) {
        bad("agent limit m_a is only valid for moving_client");
    }

    const Point* prev_agent = &inst.start;
    for (std::size_t t = 0; t < inst.horizon(); ++t) {
        const RequestBatch& batch = inst.batches[t];
        if (batch.requests.empty()) {
            bad("batch " + std::to_string(t + 1) + " is empty (r_t >= 1 required)");
            continue;
        }
        if (inst.variant == Variant::MovingClient && batch.size() != 1) {
            bad("moving_client batch " + std::to_string(t + 1) + " must hold exactly one request");
        }
        for (const Point& v : batch.requests) {
            if (v.dim() != static_cast<std::size_t>(inst.dimension)) {
                bad("request in batch " + std::to_string(t + 1) + " has wrong dimension");
            } else if (!finite_point(v)) {
                bad("request in batch " + std::to_string(t + 1) + " has non-finite coordinates");
            }
        }
        if (inst.variant == Variant::MovingClient && inst.agent_limit &&
            batch.size() == 1 &&
            batch.requests[0].dim() == static_cast<std::size_t>(inst.dimension) &&
            prev_agent->dim() == batch.requests[0].dim()) {
            const double jump = distance(*prev_agent, batch.requests[0]);
            if (jump > *inst.agent_limit + kMoveSlack) {
                bad("agent jump at step " + std::to_string(t + 1) + " exceeds m_a (" +
                    std::to_string(jump) + " > " + std::to_string(*inst.agent_limit) + ")");
            }
            prev_agent = &batch.requests[0];
        }
    }
    return out;
}

std::vector<std::string> validate_trace(const Instance& inst, const Trace& trace) {
    std::vector<std::string> out;
    auto bad = [&](std::string msg) { out.push_back(std::move(msg)); };

    if (trace.positions.size() != inst.horizon() + 1) {
        bad("trace must hold T+1 positions");
        return out;
    }
    if (trace.steps.size() != inst.horizon()) bad("trace must hold T cost breakdowns");
    if (trace.positions.front() != inst.start) bad("trace does not start at the instance start");
    for (std::size_t t = 0; t + 1 < trace.positions.size(); ++t) {
        const double d = distance(trace.positions[t], trace.positions[t + 1]);
        if (d > trace.step_limit + kMoveSlack) {
            bad("displacement at step " + std::to_string(t + 1) + " exceeds the step limit (" +
                std::to_string(d) + " > " + std::to_string(trace.step_limit) + ")");
        }
    }
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        const CostBreakdown& cb = trace.steps[t];
        if (std::abs(cb.total - (cb.move_cost + cb.serve_cost)) > 1e-9) {
            bad("cost breakdown at step " + std::to_string(t + 1) + " is inconsistent");
        }
    }
    return out;
}

}  // namespace msl
