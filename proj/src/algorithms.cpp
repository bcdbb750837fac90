#include "msl/algorithms.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace msl {

Policy policy_from_name(std::string_view name) {
    if (name == "mtc") return Policy::Mtc;
    if (name == "mtc_moving_client") return Policy::MtcMovingClient;
    if (name == "static") return Policy::Static;
    if (name == "follow_center") return Policy::FollowCenter;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

std::string_view policy_name(Policy p) {
    switch (p) {
        case Policy::Mtc: return "mtc";
        case Policy::MtcMovingClient: return "mtc_moving_client";
        case Policy::Static: return "static";
        case Policy::FollowCenter: return "follow_center";
    }
    throw std::logic_error("policy_name: bad enum");
}

Point mtc_step(const Point& current, const RequestBatch& batch, double m, double D,
               const PolicyConfig& cfg) {
    if (batch.requests.empty()) throw std::invalid_argument("mtc_step: empty batch");
    const Point c = geometric_median(batch.requests, current, cfg.median_tol).position;
    const double dist = distance(current, c);
    const double r = static_cast<double>(batch.size());
    const double desired = std::min(1.0, r / D) * dist;
    const double cap = (1.0 + cfg.delta) * m;
    return clamp_move(current, c, std::min(desired, cap));
}

Point mtc_moving_client_step(const Point& current, const Point& agent, double m_s,
                             double D) {
    const double dist = distance(current, agent);
    return clamp_move(current, agent, std::min(m_s, dist / D));
}

PolicyRunner::PolicyRunner(Policy policy, PolicyConfig cfg, double m, double D, Point start)
    : policy_(policy), cfg_(cfg), m_(m), D_(D), pos_(std::move(start)) {}

const Point& PolicyRunner::step(const RequestBatch& batch) {
    switch (policy_) {
        case Policy::Mtc:
            pos_ = mtc_step(pos_, batch, m_, D_, cfg_);
            break;
        case Policy::MtcMovingClient:
            if (batch.size() != 1) {
                throw std::invalid_argument("moving-client policy expects one request per step");
            }
            pos_ = mtc_moving_client_step(pos_, batch.requests[0], m_, D_);
            break;
        case Policy::Static:
            break;
        case Policy::FollowCenter: {
            const Point c = geometric_median(batch.requests, pos_, cfg_.median_tol).position;
            pos_ = clamp_move(pos_, c, (1.0 + cfg_.delta) * m_);
            break;
        }
    }
    return pos_;
}

Trace run_online(const Instance& inst, Policy policy, const PolicyConfig& cfg) {
    if (cfg.delta < 0.0 || cfg.delta > 1.0) {
        throw std::invalid_argument("policy delta must lie in [0, 1]");
    }
    const auto violations = validate(inst);
    if (!violations.empty()) {
        throw std::invalid_argument("invalid instance: " + violations.front());
    }
    const bool mc_instance = inst.variant == Variant::MovingClient;
    const bool mc_policy = policy == Policy::MtcMovingClient;
    if (mc_instance != mc_policy) {
        throw std::invalid_argument(
            "policy '" + std::string(policy_name(policy)) + "' is incompatible with variant '" +
            variant_name(inst.variant) + "'");
    }

    const double limit = mc_policy ? inst.move_limit : (1.0 + cfg.delta) * inst.move_limit;
    PolicyRunner runner(policy, cfg, inst.move_limit, inst.move_cost, inst.start);

    std::vector<Point> positions;
    positions.reserve(inst.horizon() + 1);
    positions.push_back(inst.start);
    for (const RequestBatch& batch : inst.batches) positions.push_back(runner.step(batch));
    return make_trace(inst, std::move(positions), limit);
}

}  // namespace msl
