#include "msl/adversary.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

namespace msl {

namespace {

Point axis_point(int dim, double v) {
    Point p{std::vector<double>(static_cast<std::size_t>(dim), 0.0)};
    p[0] = v;
    return p;
}

// Hands out one direction per construction phase. Oblivious mode draws fair
// coins from the seed; worst-direction mode asks for the reference policy's
// position at the phase switch and walks away from it (ties toward +).
class DirectionSource {
  public:
    explicit DirectionSource(std::span<const int> fixed) : fixed_(fixed) {}
    explicit DirectionSource(const AdversaryMode& mode) : mode_(&mode), rng_(mode.seed) {}

    bool wants_policy() const {
        return mode_ && mode_->kind == AdversaryMode::Kind::WorstDirection;
    }

    int decide(double anchor_x, double policy_x) {
        if (!mode_) {
            if (used_ >= fixed_.size()) {
                throw std::invalid_argument("direction list exhausted");
            }
            const int d = fixed_[used_++];
            if (d != 1 && d != -1) throw std::invalid_argument("directions must be +1 or -1");
            return d;
        }
        if (mode_->kind == AdversaryMode::Kind::Oblivious) {
            used_++;
            return (rng_() & 1ull) ? 1 : -1;
        }
        used_++;
        return (anchor_x - policy_x >= 0.0) ? 1 : -1;
    }

    std::size_t decisions() const { return used_; }

  private:
    const AdversaryMode* mode_ = nullptr;
    std::span<const int> fixed_;
    std::size_t used_ = 0;
    std::mt19937_64 rng_;
};

std::optional<PolicyRunner> make_reference_runner(const DirectionSource& src,
                                                  const AdversaryMode* mode, Policy policy,
                                                  double m, double D, const Point& start) {
    if (!src.wants_policy() || !mode) return std::nullopt;
    return PolicyRunner(policy, mode->reference_cfg, m, D, start);
}

nlohmann::json mode_meta(const AdversaryMode* mode) {
    nlohmann::json j;
    if (!mode) {
        j["mode"] = "fixed";
        return j;
    }
    j["mode"] = mode->kind == AdversaryMode::Kind::Oblivious ? "oblivious" : "worst";
    if (mode->kind == AdversaryMode::Kind::Oblivious) {
        j["seed"] = mode->seed;
    } else {
        j["reference_policy"] = std::string(policy_name(mode->reference_policy));
        j["reference_delta"] = mode->reference_cfg.delta;
    }
    return j;
}

Generated build_thm1(const Thm1Params& p, DirectionSource src, const AdversaryMode* mode) {
    const std::size_t x = p.x > 0 ? p.x : static_cast<std::size_t>(std::sqrt(static_cast<double>(p.T)));
    if (p.T < 2 || x < 1 || x >= p.T) {
        throw std::invalid_argument("gen_thm1: need 1 <= x < T");
    }
    if (p.dimension < 1 || !(p.m > 0.0) || !(p.D >= 1.0)) {
        throw std::invalid_argument("gen_thm1: bad parameters");
    }

    Instance inst;
    inst.variant = Variant::Standard;
    inst.dimension = p.dimension;
    inst.start = axis_point(p.dimension, 0.0);
    inst.move_limit = p.m;
    inst.move_cost = p.D;

    auto runner = make_reference_runner(src, mode, mode ? mode->reference_policy : Policy::Mtc,
                                        p.m, p.D, inst.start);
    RequestBatch at_start{{inst.start}};
    for (std::size_t t = 1; t <= x; ++t) {
        inst.batches.push_back(at_start);
        if (runner) runner->step(at_start);
    }
    const int dir = src.decide(0.0, runner ? runner->position()[0] : 0.0);

    std::vector<Point> adv{inst.start};
    for (std::size_t t = 1; t <= p.T; ++t) {
        adv.push_back(axis_point(p.dimension, static_cast<double>(t) * p.m * dir));
    }
    for (std::size_t t = x + 1; t <= p.T; ++t) {
        inst.batches.push_back(RequestBatch{{adv[t]}});
    }

    Generated out;
    out.instance = std::move(inst);
    out.adversary_trace = make_trace(out.instance, std::move(adv), p.m);
    double adv_cost = 0.0;
    for (const CostBreakdown& cb : out.adversary_trace.steps) adv_cost += cb.total;

    out.meta = mode_meta(mode);
    out.meta["generator"] = "thm1";
    out.meta["T"] = p.T;
    out.meta["x"] = x;
    out.meta["m"] = p.m;
    out.meta["D"] = p.D;
    out.meta["directions"] = std::vector<int>{dir};
    out.meta["adversary_cost"] = adv_cost;
    out.meta["adversary_cost_bound"] =
        static_cast<double>(x) * p.D * p.m + p.m * static_cast<double>(x) * static_cast<double>(x) +
        static_cast<double>(p.T - x) * p.D * p.m;
    return out;
}

Generated build_thm2(const Thm2Params& p, DirectionSource src, const AdversaryMode* mode) {
    if (p.cycles < 1 || p.x < 1 || p.r_min < 1 || p.r_max < p.r_min) {
        throw std::invalid_argument("gen_thm2: bad parameters");
    }
    if (!(p.delta > 0.0) || p.delta > 1.0) {
        throw std::invalid_argument("gen_thm2: delta must lie in (0, 1]");
    }
    if (static_cast<double>(p.x) < 2.0 * p.delta) {
        throw std::invalid_argument("gen_thm2: need x >= 2*delta");
    }
    if (p.dimension < 1 || !(p.m > 0.0) || !(p.D >= 1.0)) {
        throw std::invalid_argument("gen_thm2: bad parameters");
    }
    const std::size_t catchup =
        static_cast<std::size_t>(std::ceil(static_cast<double>(p.x) / p.delta - 1e-9));

    Instance inst;
    inst.variant = Variant::Standard;
    inst.dimension = p.dimension;
    inst.start = axis_point(p.dimension, 0.0);
    inst.move_limit = p.m;
    inst.move_cost = p.D;

    auto runner = make_reference_runner(src, mode, mode ? mode->reference_policy : Policy::Mtc,
                                        p.m, p.D, inst.start);

    std::vector<Point> adv{inst.start};
    std::vector<int> dirs;
    std::vector<double> cycle_costs;
    double cycle_start = 0.0;
    for (std::size_t c = 0; c < p.cycles; ++c) {
        RequestBatch pinned;
        pinned.requests.assign(p.r_min, axis_point(p.dimension, cycle_start));
        for (std::size_t i = 1; i <= p.x; ++i) {
            inst.batches.push_back(pinned);
            if (runner) runner->step(pinned);
        }
        const int dir = src.decide(cycle_start, runner ? runner->position()[0] : 0.0);
        dirs.push_back(dir);

        double cost = 0.0;
        for (std::size_t i = 1; i <= p.x; ++i) {
            const double pos = cycle_start + static_cast<double>(i) * p.m * dir;
            adv.push_back(axis_point(p.dimension, pos));
            cost += p.D * p.m + static_cast<double>(p.r_min) * static_cast<double>(i) * p.m;
        }
        for (std::size_t j = 1; j <= catchup; ++j) {
            const double pos = cycle_start + static_cast<double>(p.x + j) * p.m * dir;
            adv.push_back(axis_point(p.dimension, pos));
            RequestBatch riding;
            riding.requests.assign(p.r_max, axis_point(p.dimension, pos));
            inst.batches.push_back(riding);
            if (runner) runner->step(riding);
            cost += p.D * p.m;
        }
        cycle_start += static_cast<double>(p.x + catchup) * p.m * dir;
        cycle_costs.push_back(cost);
    }

    Generated out;
    out.instance = std::move(inst);
    out.adversary_trace = make_trace(out.instance, std::move(adv), p.m);
    double adv_cost = 0.0;
    for (const CostBreakdown& cb : out.adversary_trace.steps) adv_cost += cb.total;

    out.meta = mode_meta(mode);
    out.meta["generator"] = "thm2";
    out.meta["cycles"] = p.cycles;
    out.meta["x"] = p.x;
    out.meta["delta"] = p.delta;
    out.meta["r_min"] = p.r_min;
    out.meta["r_max"] = p.r_max;
    out.meta["m"] = p.m;
    out.meta["D"] = p.D;
    out.meta["catchup_steps"] = catchup;
    out.meta["directions"] = dirs;
    out.meta["adversary_cost"] = adv_cost;
    out.meta["cycle_costs"] = cycle_costs;
    // asymptotic per-cycle diagnostic, meaningful for large x only
    out.meta["cycle_cost_diag_bound"] =
        3.0 * static_cast<double>(p.r_min) * p.m * static_cast<double>(p.x) * static_cast<double>(p.x);
    return out;
}

Generated build_thm3(const Thm3Params& p, DirectionSource src, const AdversaryMode* mode) {
    if (p.cycles < 1 || p.r < 1 || p.dimension < 1 || !(p.m > 0.0) || !(p.D >= 1.0)) {
        throw std::invalid_argument("gen_thm3: bad parameters");
    }

    Instance inst;
    inst.variant = Variant::AnswerFirst;
    inst.dimension = p.dimension;
    inst.start = axis_point(p.dimension, 0.0);
    inst.move_limit = p.m;
    inst.move_cost = p.D;

    auto runner = make_reference_runner(src, mode, mode ? mode->reference_policy : Policy::Mtc,
                                        p.m, p.D, inst.start);

    std::vector<Point> adv{inst.start};
    std::vector<int> dirs;
    double common = 0.0;
    for (std::size_t c = 0; c < p.cycles; ++c) {
        RequestBatch here;
        here.requests.assign(p.r, axis_point(p.dimension, common));
        inst.batches.push_back(here);
        if (runner) runner->step(here);

        const int dir = src.decide(common, runner ? runner->position()[0] : 0.0);
        dirs.push_back(dir);
        common += p.m * dir;

        adv.push_back(axis_point(p.dimension, common));  // jump during the first step
        adv.push_back(axis_point(p.dimension, common));  // hold during the second

        RequestBatch there;
        there.requests.assign(p.r, axis_point(p.dimension, common));
        inst.batches.push_back(there);
        if (runner) runner->step(there);
    }

    Generated out;
    out.instance = std::move(inst);
    out.adversary_trace = make_trace(out.instance, std::move(adv), p.m);
    double adv_cost = 0.0;
    for (const CostBreakdown& cb : out.adversary_trace.steps) adv_cost += cb.total;

    out.meta = mode_meta(mode);
    out.meta["generator"] = "thm3";
    out.meta["cycles"] = p.cycles;
    out.meta["r"] = p.r;
    out.meta["m"] = p.m;
    out.meta["D"] = p.D;
    out.meta["directions"] = dirs;
    out.meta["adversary_cost"] = adv_cost;
    out.meta["adversary_cost_bound"] = static_cast<double>(p.cycles) * p.D * p.m;
    return out;
}

Generated build_moving_client(const MovingClientParams& p, DirectionSource src,
                              const AdversaryMode* mode) {
    if (p.dimension < 1 || !(p.m_s > 0.0) || !(p.D >= 1.0) || p.eps < 0.0) {
        throw std::invalid_argument("gen_moving_client: bad parameters");
    }
    const double m_a = (1.0 + p.eps) * p.m_s;
    std::size_t x = p.x;
    if (x == 0) {
        x = static_cast<std::size_t>(
            std::llround(std::sqrt(static_cast<double>(p.T)) * p.m_s / m_a));
        x = std::max<std::size_t>(x, 1);
    }
    const std::size_t sprint_end =
        static_cast<std::size_t>(std::ceil(static_cast<double>(x) * m_a / p.m_s - 1e-9));
    if (sprint_end >= p.T) {
        throw std::invalid_argument("gen_moving_client: T too small for the chosen x");
    }
    const std::size_t idle = sprint_end - x;

    Instance inst;
    inst.variant = Variant::MovingClient;
    inst.dimension = p.dimension;
    inst.start = axis_point(p.dimension, 0.0);
    inst.move_limit = p.m_s;
    inst.move_cost = p.D;
    inst.agent_limit = m_a;

    // the plain damped rule pairs with batch instances; substitute the
    // moving-client rule when the caller kept that default
    Policy ref = mode ? mode->reference_policy : Policy::MtcMovingClient;
    if (ref == Policy::Mtc) ref = Policy::MtcMovingClient;
    auto runner = make_reference_runner(src, mode, ref, p.m_s, p.D, inst.start);

    std::vector<double> agent(p.T + 1, 0.0);
    for (std::size_t t = 1; t <= idle; ++t) {
        agent[t] = 0.0;
        if (runner) runner->step(RequestBatch{{axis_point(p.dimension, 0.0)}});
    }
    const int dir = src.decide(0.0, runner ? runner->position()[0] : 0.0);
    for (std::size_t t = idle + 1; t <= sprint_end; ++t) {
        agent[t] = static_cast<double>(t - idle) * m_a * dir;
    }
    for (std::size_t t = sprint_end + 1; t <= p.T; ++t) {
        agent[t] = agent[sprint_end] + static_cast<double>(t - sprint_end) * p.m_s * dir;
    }
    for (std::size_t t = 1; t <= p.T; ++t) {
        inst.batches.push_back(RequestBatch{{axis_point(p.dimension, agent[t])}});
    }

    std::vector<Point> adv{inst.start};
    double phase1_cost = 0.0;
    for (std::size_t t = 1; t <= p.T; ++t) {
        double pos;
        if (t <= sprint_end) {
            pos = static_cast<double>(t) * p.m_s * dir;
            phase1_cost += p.D * p.m_s + std::abs(pos - agent[t]);
        } else {
            pos = agent[t];  // rides with the agent from here on
        }
        adv.push_back(axis_point(p.dimension, pos));
    }

    Generated out;
    out.instance = std::move(inst);
    out.adversary_trace = make_trace(out.instance, std::move(adv), p.m_s);
    double adv_cost = 0.0;
    for (const CostBreakdown& cb : out.adversary_trace.steps) adv_cost += cb.total;

    out.meta = mode_meta(mode);
    out.meta["generator"] = "moving_client";
    out.meta["T"] = p.T;
    out.meta["x"] = x;
    out.meta["eps"] = p.eps;
    out.meta["m_s"] = p.m_s;
    out.meta["m_a"] = m_a;
    out.meta["D"] = p.D;
    out.meta["phase1_steps"] = sprint_end;
    out.meta["directions"] = std::vector<int>{dir};
    out.meta["adversary_cost"] = adv_cost;
    out.meta["phase1_cost"] = phase1_cost;
    out.meta["phase1_cost_bound"] =
        p.D * static_cast<double>(x) * m_a +
        static_cast<double>(x) * static_cast<double>(x) * m_a * m_a / p.m_s;
    return out;
}

}  // namespace

Generated gen_thm1(const Thm1Params& p, const AdversaryMode& mode) {
    return build_thm1(p, DirectionSource(mode), &mode);
}
Generated gen_thm2(const Thm2Params& p, const AdversaryMode& mode) {
    return build_thm2(p, DirectionSource(mode), &mode);
}
Generated gen_thm3(const Thm3Params& p, const AdversaryMode& mode) {
    return build_thm3(p, DirectionSource(mode), &mode);
}
Generated gen_moving_client(const MovingClientParams& p, const AdversaryMode& mode) {
    return build_moving_client(p, DirectionSource(mode), &mode);
}

Generated gen_thm1_directions(const Thm1Params& p, std::span<const int> dirs) {
    return build_thm1(p, DirectionSource(dirs), nullptr);
}
Generated gen_thm2_directions(const Thm2Params& p, std::span<const int> dirs) {
    return build_thm2(p, DirectionSource(dirs), nullptr);
}
Generated gen_thm3_directions(const Thm3Params& p, std::span<const int> dirs) {
    return build_thm3(p, DirectionSource(dirs), nullptr);
}
Generated gen_moving_client_directions(const MovingClientParams& p, std::span<const int> dirs) {
    return build_moving_client(p, DirectionSource(dirs), nullptr);
}

}  // namespace msl
