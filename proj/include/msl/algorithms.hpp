#pragma once

#include <string_view>

#include "msl/model.hpp"

namespace msl {

/// Online policy configuration. delta is the resource-augmentation factor:
/// the online server may move (1+delta)*m per step while the offline bound
/// stays m. delta = 0 runs un-augmented (outside the competitive analysis,
/// useful for lower-bound experiments).
struct PolicyConfig {
    double delta = 0.5;       // in [0, 1]
    double median_tol = 1e-9;
};

enum class Policy {
    Mtc,              // move-to-center
    MtcMovingClient,  // moving-client rule, no augmentation
    Static,           // never moves
    FollowCenter,     // chases the center at full speed, no damping
};

Policy policy_from_name(std::string_view name);
std::string_view policy_name(Policy p);

/// One move-to-center step: target the batch's geometric median c (ties
/// toward the current position), cover min{1, r/D} of the distance, capped
/// at (1+delta)*m.
Point mtc_step(const Point& current, const RequestBatch& batch, double m, double D,
               const PolicyConfig& cfg);

/// Moving-client rule: move min(m_s, d(current, agent)/D) toward the agent.
Point mtc_moving_client_step(const Point& current, const Point& agent, double m_s,
                             double D);

/// Incremental online simulation of a policy; used by the online loop and by
/// adversary generators that must play a policy forward over a prefix.
class PolicyRunner {
  public:
    PolicyRunner(Policy policy, PolicyConfig cfg, double m, double D, Point start);

    const Point& position() const { return pos_; }
    /// Feeds one request batch and advances the server; returns the new position.
    const Point& step(const RequestBatch& batch);

  private:
    Policy policy_;
    PolicyConfig cfg_;
    double m_;
    double D_;
    Point pos_;
};

/// Runs a policy over the whole instance and returns its trace. Throws on
/// invalid instances and on policy/variant mismatches (the moving-client rule
/// pairs exactly with moving_client instances).
Trace run_online(const Instance& inst, Policy policy, const PolicyConfig& cfg);

}  // namespace msl
