#include <doctest.h>

#include <stdexcept>
#include <random>

#include "msl/algorithms.hpp"
#include "msl/json_io.hpp"
#include "msl/model.hpp"
#include "msl/offline.hpp"
#include "helpers.hpp"

using namespace msl;
using namespace msl::testing;

namespace {

Instance one_step_1d() {
    Instance inst;
    inst.variant = Variant::Standard;
    inst.dimension = 1;
    inst.start = Point{0};
    inst.move_limit = 5.0;
    inst.move_cost = 3.0;
    inst.batches.push_back(RequestBatch{{Point{4}, Point{-2}}});
    return inst;
}

}  // namespace

TEST_CASE("step_cost per variant") {
    Instance inst = one_step_1d();
    SUBCASE("serve after move") {
        const CostBreakdown cb = step_cost(inst, 0, Point{0}, Point{1});
        CHECK(cb.move_cost == doctest::Approx(3.0));
        CHECK(cb.serve_cost == doctest::Approx(6.0));
        CHECK(cb.total == doctest::Approx(9.0));
    }
    SUBCASE("answer first") {
        inst.variant = Variant::AnswerFirst;
        const CostBreakdown cb = step_cost(inst, 0, Point{0}, Point{1});
        CHECK(cb.serve_cost == doctest::Approx(6.0));  // 4 + 2 from the old position
        CHECK(cb.move_cost == doctest::Approx(3.0));
        CHECK(cb.total == doctest::Approx(9.0));
    }
    SUBCASE("no movement, request on the server") {
        inst.batches[0] = RequestBatch{{Point{2}}};
        const CostBreakdown cb = step_cost(inst, 0, Point{2}, Point{2});
        CHECK(cb.total == 0.0);
    }
    CHECK_THROWS_AS(step_cost(inst, 5, Point{0}, Point{1}), std::out_of_range);
}

TEST_CASE("total_cost sums steps") {
    Instance inst = one_step_1d();
    SUBCASE("stationary on the requests is free") {
        Instance still = inst;
        still.batches = {RequestBatch{{Point{0}}}, RequestBatch{{Point{0}}}};
        const Trace tr = make_trace(still, {Point{0}, Point{0}, Point{0}}, still.move_limit);
        CHECK(total_cost(still, tr) == 0.0);
    }
    SUBCASE("single step") {
        const Trace tr = make_trace(inst, {Point{0}, Point{1}}, inst.move_limit);
        CHECK(total_cost(inst, tr) == doctest::Approx(9.0));
    }
    SUBCASE("there-and-back two-step trace") {
        Instance two = inst;
        two.batches.push_back(two.batches[0]);
        const Trace tr = make_trace(two, {Point{0}, Point{1}, Point{0}}, two.move_limit);
        CHECK(total_cost(two, tr) == doctest::Approx(18.0));
    }
    SUBCASE("length mismatch") {
        const Trace tr = make_trace(inst, {Point{0}, Point{1}}, inst.move_limit);
        Instance longer = inst;
        longer.batches.push_back(longer.batches[0]);
        CHECK_THROWS_AS(total_cost(longer, tr), std::invalid_argument);
    }
}

TEST_CASE("cost is translation invariant") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 50; ++i) {
        RandomInstanceOptions o;
        o.dim = 1 + static_cast<int>(rng() % 2);
        o.T = 6;
        o.variant = (i % 3 == 0) ? Variant::AnswerFirst : Variant::Standard;
        const Instance inst = random_instance(rng, o);
        const Trace tr = run_online(inst, Policy::Mtc, PolicyConfig{0.5, 1e-9});
        const Point shift = rand_point(rng, o.dim, -7, 7);
        const Instance inst2 = translated(inst, shift);
        const Trace tr2 = translated(tr, shift);
        CHECK(total_cost(inst2, tr2) == doctest::Approx(total_cost(inst, tr)).epsilon(1e-9));
    }
}

TEST_CASE("answer-first equals standard on a stationary trace") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 20; ++i) {
        RandomInstanceOptions o;
        o.dim = 2;
        o.T = 5;
        Instance std_inst = random_instance(rng, o);
        Instance af_inst = std_inst;
        af_inst.variant = Variant::AnswerFirst;
        const std::vector<Point> still(o.T + 1, std_inst.start);
        const Trace t1 = make_trace(std_inst, still, std_inst.move_limit);
        const Trace t2 = make_trace(af_inst, still, af_inst.move_limit);
        CHECK(total_cost(std_inst, t1) == total_cost(af_inst, t2));  // exactly equal
    }
}

TEST_CASE("collapse_to_centers") {
    SUBCASE("coincident batch is unchanged") {
        Instance inst = one_step_1d();
        inst.batches[0] = RequestBatch{{Point{3}, Point{3}}};
        const Trace anchor = make_trace(inst, {Point{0}, Point{0}}, inst.move_limit);
        const Instance out = collapse_to_centers(inst, anchor);
        CHECK(out.batches[0].requests == inst.batches[0].requests);
    }
    SUBCASE("1D tie-break toward the anchor") {
        Instance inst = one_step_1d();
        inst.batches[0] = RequestBatch{{Point{0}, Point{10}}};
        inst.start = Point{3};
        const Trace anchor = make_trace(inst, {Point{3}, Point{3}}, inst.move_limit);
        const Instance out = collapse_to_centers(inst, anchor);
        CHECK(out.batches[0].requests[0][0] == doctest::Approx(3.0));
        CHECK(out.batches[0].requests[1][0] == doctest::Approx(3.0));
    }
    SUBCASE("equilateral batch collapses onto the centroid") {
        Instance inst;
        inst.dimension = 2;
        inst.start = Point{0, 0};
        inst.move_limit = 1;
        inst.move_cost = 2;
        inst.batches.push_back(
            RequestBatch{{Point{0, 0}, Point{1, 0}, Point{0.5, 0.8660254}}});
        const Trace anchor = make_trace(inst, {inst.start, inst.start}, 1.0);
        const Instance out = collapse_to_centers(inst, anchor);
        CHECK(out.batches[0].size() == 3);
        for (const Point& v : out.batches[0].requests) {
            CHECK(v[0] == doctest::Approx(0.5).epsilon(1e-6));
            CHECK(v[1] == doctest::Approx(0.2886751).epsilon(1e-5));
        }
        CHECK(is_collapsed(out, 1e-9));
    }
    SUBCASE("batch sizes are preserved") {
        std::mt19937_64 rng(47);
        RandomInstanceOptions o;
        o.dim = 2;
        o.T = 8;
        const Instance inst = random_instance(rng, o);
        const Trace anchor = run_online(inst, Policy::Mtc, PolicyConfig{0.5, 1e-9});
        const Instance out = collapse_to_centers(inst, anchor);
        REQUIRE(out.horizon() == inst.horizon());
        for (std::size_t t = 0; t < inst.horizon(); ++t)
            CHECK(out.batches[t].size() == inst.batches[t].size());
    }
    SUBCASE("moving-client unsupported") {
        std::mt19937_64 rng(53);
        RandomInstanceOptions o;
        o.variant = Variant::MovingClient;
        const Instance inst = random_instance(rng, o);
        const Trace anchor = run_online(inst, Policy::MtcMovingClient, PolicyConfig{});
        CHECK_THROWS_AS(collapse_to_centers(inst, anchor), std::invalid_argument);
    }
}

TEST_CASE("prepend_dummy_requests") {
    Instance inst = one_step_1d();
    const Instance out = prepend_dummy_requests(inst);
    REQUIRE(out.horizon() == 2);
    CHECK(out.batches[0].size() == inst.batches[0].size());
    for (const Point& v : out.batches[0].requests) CHECK(v == inst.start);
    CHECK(out.batches[1].requests == inst.batches[0].requests);

    const Instance twice = prepend_dummy_requests(out);
    CHECK(twice.horizon() == 3);
    CHECK(twice.batches[0].requests[0] == inst.start);
}

TEST_CASE("dummy prefix raises the optimum by at most r*m") {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 10; ++i) {
        RandomInstanceOptions o;
        o.dim = 1;
        o.T = 6;
        o.max_r = 3;
        o.span = 4.0;
        const Instance inst = random_instance(rng, o);
        const Instance padded = prepend_dummy_requests(inst);
        const double radius = std::max(default_oracle_radius(inst), 1.0);
        const double opt_in = grid_dp_oracle_1d(inst, 1e-3, radius).objective;
        const double opt_out = grid_dp_oracle_1d(padded, 1e-3, radius).objective;
        const double r = static_cast<double>(inst.batches[0].size());
        CHECK(opt_out <= opt_in + r * inst.move_limit + 1e-6);
        CHECK(opt_out >= opt_in - 1e-6);  // extra requests never lower the optimum
    }
}

TEST_CASE("validate") {
    std::mt19937_64 rng(61);
    SUBCASE("well-formed instances pass") {
        RandomInstanceOptions o;
        CHECK(validate(random_instance(rng, o)).empty());
        o.variant = Variant::MovingClient;
        CHECK(validate(random_instance(rng, o)).empty());
    }
    SUBCASE("agent jump beyond m_a is reported with its step") {
        RandomInstanceOptions o;
        o.variant = Variant::MovingClient;
        Instance inst = random_instance(rng, o);
        inst.batches[4].requests[0][0] += 10.0;
        const auto violations = validate(inst);
        REQUIRE(!violations.empty());
        bool named = false;
        for (const auto& v : violations)
            if (v.find("step 5") != std::string::npos || v.find("step 6") != std::string::npos)
                named = true;
        CHECK(named);
    }
    SUBCASE("empty batch is reported") {
        Instance inst = one_step_1d();
        inst.batches.push_back(RequestBatch{});
        const auto violations = validate(inst);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].find("empty") != std::string::npos);
    }
    SUBCASE("dimension mismatch and bad parameters") {
        Instance inst = one_step_1d();
        inst.batches[0].requests[0] = Point{1, 2};
        CHECK(!validate(inst).empty());
        Instance inst2 = one_step_1d();
        inst2.move_cost = 0.5;
        CHECK(!validate(inst2).empty());
    }
}

TEST_CASE("instance JSON round-trip is lossless") {
    std::mt19937_64 rng(67);
    for (int i = 0; i < 30; ++i) {
        RandomInstanceOptions o;
        o.dim = 1 + static_cast<int>(rng() % 3);
        o.variant = (i % 3 == 0)   ? Variant::MovingClient
                    : (i % 3 == 1) ? Variant::AnswerFirst
                                   : Variant::Standard;
        const Instance inst = random_instance(rng, o);
        const nlohmann::json j = instance_to_json(inst);
        const Instance back = instance_from_json(j);
        CHECK(back.variant == inst.variant);
        CHECK(back.dimension == inst.dimension);
        CHECK(back.start == inst.start);  // bit-exact doubles
        CHECK(back.move_limit == inst.move_limit);
        CHECK(back.move_cost == inst.move_cost);
        CHECK(back.agent_limit == inst.agent_limit);
        REQUIRE(back.horizon() == inst.horizon());
        for (std::size_t t = 0; t < inst.horizon(); ++t)
            CHECK(back.batches[t].requests == inst.batches[t].requests);
        // and the dump itself is stable
        CHECK(instance_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("instance JSON errors name the offending field") {
    nlohmann::json j = instance_to_json(one_step_1d());
    j.erase("variant");
    try {
        instance_from_json(j);
        FAIL("expected a missing-field error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("variant") != std::string::npos);
    }
    nlohmann::json bad = instance_to_json(one_step_1d());
    bad["batches"][0][0] = "not a point";
    CHECK_THROWS_AS(instance_from_json(bad), std::invalid_argument);
}

TEST_CASE("validate_trace flags displacement beyond the recorded limit") {
    Instance inst = one_step_1d();
    inst.batches.push_back(inst.batches[0]);
    Trace tr = make_trace(inst, {Point{0}, Point{4}, Point{4}}, 5.0);
    CHECK(validate_trace(inst, tr).empty());
    tr.step_limit = 2.0;
    CHECK(!validate_trace(inst, tr).empty());
}
