#pragma once

#include <cstdint>
#include <span>

#include <json.hpp>

#include "msl/algorithms.hpp"
#include "msl/model.hpp"

namespace msl {

/// How lower-bound constructions pick their drift directions.
///
/// Oblivious draws one fair coin per construction phase from the seed,
/// independently of any policy. WorstDirection derandomizes against a
/// deterministic reference policy: the policy is simulated over the common
/// prefix and the direction maximizing the policy-adversary separation at the
/// phase switch is taken (ties toward +).
struct AdversaryMode {
    enum class Kind { Oblivious, WorstDirection };
    Kind kind = Kind::Oblivious;
    std::uint64_t seed = 0;
    Policy reference_policy = Policy::Mtc;
    PolicyConfig reference_cfg{};
};

struct Generated {
    Instance instance;
    Trace adversary_trace;  // feasible at the offline limit (m or m_s)
    nlohmann::json meta;    // generator parameters and cost diagnostics
};

struct Thm1Params {
    std::size_t T = 100;
    std::size_t x = 0;  // 0 -> floor(sqrt(T))
    double m = 1.0;
    double D = 2.0;
    int dimension = 1;
};

struct Thm2Params {
    std::size_t cycles = 4;
    std::size_t x = 4;
    double delta = 0.5;  // augmentation the construction is aimed at
    std::size_t r_min = 1;
    std::size_t r_max = 4;
    double m = 1.0;
    double D = 2.0;
    int dimension = 1;
};

struct Thm3Params {
    std::size_t cycles = 10;
    std::size_t r = 8;
    double m = 1.0;
    double D = 2.0;
    int dimension = 1;
};

struct MovingClientParams {
    std::size_t T = 100;
    std::size_t x = 0;  // 0 -> max(1, round(sqrt(T) * m_s / m_a))
    double eps = 0.5;   // m_a = (1 + eps) * m_s
    double m_s = 1.0;
    double D = 2.0;
    int dimension = 1;
};

// Drift phase: requests pinned to the start for x steps while the adversary
// walks away, then requests ride on the adversary server.
Generated gen_thm1(const Thm1Params& p, const AdversaryMode& mode);

// Alternating phases: x steps of r_min requests on the cycle start, then
// ceil(x/delta) catch-up steps of r_max requests on the drifting adversary.
Generated gen_thm2(const Thm2Params& p, const AdversaryMode& mode);

// Two-step answer-first cycle: r requests on the common position, adversary
// jumps m, r requests on its new position.
Generated gen_thm3(const Thm3Params& p, const AdversaryMode& mode);

// Moving-client separation: the agent idles at the start, sprints to the
// adversary server at speed m_a for the last x phase-1 rounds, then both
// advance m_s per round.
Generated gen_moving_client(const MovingClientParams& p, const AdversaryMode& mode);

// Deterministic-direction variants (one entry per construction phase, each
// +1 or -1). The mode-based wrappers reduce to these; tests use them to pin
// directions down, e.g. to check that opposite directions mirror the
// instance through the start.
Generated gen_thm1_directions(const Thm1Params& p, std::span<const int> dirs);
Generated gen_thm2_directions(const Thm2Params& p, std::span<const int> dirs);
Generated gen_thm3_directions(const Thm3Params& p, std::span<const int> dirs);
Generated gen_moving_client_directions(const MovingClientParams& p, std::span<const int> dirs);

}  // namespace msl
