// msl: experiment harness for the mobile-server simulation lab.
//
// Subcommands: gen, run, ratio, verify, sweep. Structured results are JSON,
// tables and ledgers are CSV. Exit codes: 0 ok, 1 usage or malformed input,
// 2 validation failure, 3 verification violation.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "msl/adversary.hpp"
#include "msl/algorithms.hpp"
#include "msl/analysis.hpp"
#include "msl/json_io.hpp"
#include "msl/model.hpp"
#include "msl/offline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;

struct CliError {
    int code;
    std::string message;
};

fs::path resolve_out(const std::string& path) {
    fs::path p(path);
    if (!p.is_absolute()) {
        const char* base = std::getenv("MSL_OUTPUT_DIR");
        p = fs::path(base && *base ? base : ".") / p;
    }
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
    }
    return p;
}

void require_valid(const msl::Instance& inst) {
    const auto violations = msl::validate(inst);
    if (!violations.empty()) {
        std::string msg = "invalid instance:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw CliError{kExitValidation, msg};
    }
}

msl::Instance load_checked(const std::string& path) {
    auto [inst, meta] = msl::load_instance(path);
    (void)meta;
    require_valid(inst);
    return inst;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

struct GenOptions {
    std::string generator;
    std::string out;
    std::string mode = "oblivious";
    std::uint64_t seed = 0;
    std::string ref_policy = "mtc";
    double ref_delta = 0.5;
    int dim = 2;
    double m = 1.0;
    double D = 2.0;
    // thm1 / moving_client
    std::size_t T = 100;
    std::size_t x = 0;
    // thm2 / thm3
    std::size_t cycles = 4;
    double lb_delta = 0.5;
    std::size_t r_min = 1;
    std::size_t r_max = 4;
    std::size_t r = 8;
    // moving_client
    double eps = 0.5;
};

msl::AdversaryMode make_mode(const GenOptions& o) {
    msl::AdversaryMode mode;
    if (o.mode == "oblivious") {
        mode.kind = msl::AdversaryMode::Kind::Oblivious;
    } else if (o.mode == "worst") {
        mode.kind = msl::AdversaryMode::Kind::WorstDirection;
    } else {
        throw CliError{kExitUsage, "unknown mode '" + o.mode + "' (oblivious|worst)"};
    }
    mode.seed = o.seed;
    mode.reference_policy = msl::policy_from_name(o.ref_policy);
    mode.reference_cfg.delta = o.ref_delta;
    return mode;
}

int cmd_gen(const GenOptions& o) {
    const msl::AdversaryMode mode = make_mode(o);
    msl::Generated g;
    if (o.generator == "thm1") {
        g = msl::gen_thm1({o.T, o.x, o.m, o.D, o.dim}, mode);
    } else if (o.generator == "thm2") {
        g = msl::gen_thm2({o.cycles, o.x == 0 ? 4 : o.x, o.lb_delta, o.r_min, o.r_max, o.m, o.D, o.dim},
                          mode);
    } else if (o.generator == "thm3") {
        g = msl::gen_thm3({o.cycles, o.r, o.m, o.D, o.dim}, mode);
    } else if (o.generator == "moving_client") {
        g = msl::gen_moving_client({o.T, o.x, o.eps, o.m, o.D, o.dim}, mode);
    } else {
        throw CliError{kExitUsage,
                       "unknown generator '" + o.generator + "' (thm1|thm2|thm3|moving_client)"};
    }
    require_valid(g.instance);
    const std::string out = o.out.empty() ? o.generator + ".json" : o.out;
    const fs::path path = resolve_out(out);
    msl::save_instance(g.instance, path.string(), g.meta);

    json summary;
    summary["file"] = path.string();
    summary["variant"] = msl::variant_name(g.instance.variant);
    summary["steps"] = g.instance.horizon();
    summary["adversary_cost"] = g.meta["adversary_cost"];
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

struct RunOptions {
    std::string instance;
    std::string policy = "mtc";
    double delta = 0.5;
    std::string out;
    std::string csv;
};

json run_summary(const msl::Instance& inst, const msl::Trace& trace) {
    double move = 0, serve = 0, total = 0;
    for (const auto& cb : trace.steps) {
        move += cb.move_cost;
        serve += cb.serve_cost;
        total += cb.total;
    }
    json j;
    j["variant"] = msl::variant_name(inst.variant);
    j["steps"] = inst.horizon();
    j["step_limit"] = trace.step_limit;
    j["totals"] = {{"move_cost", move}, {"serve_cost", serve}, {"total", total}};
    return j;
}

void write_steps_csv(const msl::Trace& trace, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError{kExitUsage, "cannot open '" + path.string() + "' for writing"};
    const std::size_t dim = trace.positions.front().dim();
    out << "step";
    for (std::size_t k = 0; k < dim; ++k) out << ",x" << k;
    out << ",move_cost,serve_cost,total\n";
    char buf[64];
    for (std::size_t t = 0; t < trace.steps.size(); ++t) {
        out << (t + 1);
        for (std::size_t k = 0; k < dim; ++k) {
            std::snprintf(buf, sizeof(buf), ",%.12g", trace.positions[t + 1][k]);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,%.12g\n", trace.steps[t].move_cost,
                      trace.steps[t].serve_cost, trace.steps[t].total);
        out << buf;
    }
}

int cmd_run(const RunOptions& o) {
    const msl::Instance inst = load_checked(o.instance);
    msl::PolicyConfig cfg;
    cfg.delta = o.delta;
    msl::Trace trace;
    try {
        trace = msl::run_online(inst, msl::policy_from_name(o.policy), cfg);
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitValidation, e.what()};
    }
    json summary = run_summary(inst, trace);
    summary["policy"] = o.policy;
    summary["delta"] = o.delta;
    if (o.delta == 0.0 && msl::policy_from_name(o.policy) != msl::Policy::MtcMovingClient) {
        summary["outside_analyzed_regime"] = true;  // un-augmented run
    }
    if (!o.out.empty()) {
        json full = summary;
        full["trace"] = msl::trace_to_json(trace);
        const fs::path path = resolve_out(o.out);
        msl::write_text_file(path.string(), full.dump(2) + "\n");
        summary["file"] = path.string();
    }
    if (!o.csv.empty()) write_steps_csv(trace, resolve_out(o.csv));
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// ratio
// ---------------------------------------------------------------------------

struct SolveOptions {
    int iterations = 50000;
    double tol = 1e-6;
};

json ratio_report(const msl::Instance& inst, msl::Policy policy, double delta,
                  const SolveOptions& so, bool certify = false) {
    msl::PolicyConfig cfg;
    cfg.delta = delta;
    msl::Trace alg;
    try {
        alg = msl::run_online(inst, policy, cfg);
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitValidation, e.what()};
    }
    double alg_cost = 0;
    for (const auto& cb : alg.steps) alg_cost += cb.total;

    msl::SolverSettings settings;
    settings.max_iterations = so.iterations;
    settings.warm_starts.push_back(alg);
    msl::SolverReport opt = msl::solve_offline(inst, so.tol, settings);
    if (certify) {
        if (inst.dimension != 1) {
            throw CliError{kExitValidation, "--certify requires a 1-dimensional instance"};
        }
        const double radius = std::max(msl::default_oracle_radius(inst), inst.move_limit);
        const msl::SolverReport oracle = msl::grid_dp_oracle_1d(inst, 1e-3, radius);
        opt.certified_gap = std::abs(opt.objective - oracle.objective);
    }

    json j;
    j["policy"] = std::string(msl::policy_name(policy));
    j["delta"] = delta;
    if (delta == 0.0 && policy != msl::Policy::MtcMovingClient) {
        j["outside_analyzed_regime"] = true;  // un-augmented run
    }
    j["alg_cost"] = alg_cost;
    j["opt_objective"] = opt.objective;
    j["ratio"] = msl::competitive_ratio(alg_cost, opt.objective);
    j["solver"] = {{"iterations", opt.iterations},
                   {"converged", opt.converged},
                   {"tol", so.tol}};
    if (opt.certified_gap) j["solver"]["certified_gap"] = *opt.certified_gap;
    return j;
}

struct RatioOptions {
    std::string instance;
    std::string policy = "mtc";
    double delta = 0.5;
    bool certify = false;
    SolveOptions solve;
    std::string out;
};

int cmd_ratio(const RatioOptions& o) {
    const msl::Instance inst = load_checked(o.instance);
    json report =
        ratio_report(inst, msl::policy_from_name(o.policy), o.delta, o.solve, o.certify);
    report["instance"] = o.instance;
    if (!o.out.empty()) {
        msl::write_text_file(resolve_out(o.out).string(), report.dump(2) + "\n");
    }
    std::cout << report.dump(2) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
    std::string instance;
    std::string policy = "mtc";
    double delta = 0.5;
    double K = 0;  // 0 -> default ceiling
    std::string regime = "auto";
    bool no_collapse = false;
    bool report_only = false;
    double slack_tol = 1e-9;
    std::string ledger = "ledger.csv";
    std::string out;
    SolveOptions solve;
};

int cmd_verify(const VerifyOptions& o) {
    msl::Instance inst = load_checked(o.instance);
    msl::PolicyConfig cfg;
    cfg.delta = o.delta;
    const msl::Policy policy = msl::policy_from_name(o.policy);

    msl::VerifySettings vs;
    vs.delta = o.delta;
    vs.slack_tol = o.slack_tol;
    if (o.K > 0) vs.K = o.K;
    if (o.regime == "high") {
        vs.regime = msl::PotentialRegime::HighR;
    } else if (o.regime == "low") {
        vs.regime = msl::PotentialRegime::LowR;
    } else if (o.regime != "auto") {
        throw CliError{kExitUsage, "unknown regime '" + o.regime + "' (auto|high|low)"};
    }

    try {
        bool collapsed_here = false;
        if (inst.variant != msl::Variant::MovingClient && !o.no_collapse &&
            !msl::is_collapsed(inst)) {
            const msl::Trace anchor = msl::run_online(inst, policy, cfg);
            inst = msl::collapse_to_centers(inst, anchor);
            collapsed_here = true;
        }
        const msl::Trace alg = msl::run_online(inst, policy, cfg);
        msl::SolverSettings settings;
        settings.max_iterations = o.solve.iterations;
        settings.warm_starts.push_back(alg);
        const msl::SolverReport opt = msl::solve_offline(inst, o.solve.tol, settings);

        const msl::PotentialLedger ledger = msl::verify_step_inequality(inst, alg, opt.trace, vs);

        const fs::path ledger_path = resolve_out(o.ledger);
        {
            std::ofstream csv(ledger_path, std::ios::binary);
            if (!csv) throw CliError{kExitUsage, "cannot open '" + ledger_path.string() + "'"};
            msl::write_ledger_csv(ledger, csv);
        }

        json summary;
        summary["instance"] = o.instance;
        summary["policy"] = o.policy;
        summary["delta"] = o.delta;
        summary["K"] = ledger.K;
        summary["regime"] = msl::regime_name(ledger.regime);
        summary["collapsed"] = ledger.collapsed_input;
        summary["collapse_applied"] = collapsed_here;
        summary["steps"] = ledger.rows.size();
        summary["min_slack"] = ledger.min_slack;
        summary["violations"] = ledger.violations;
        summary["opt_objective"] = opt.objective;
        summary["ledger"] = o.ledger;  // as requested, keeps summaries stable across dirs
        if (!o.out.empty()) {
            msl::write_text_file(resolve_out(o.out).string(), summary.dump(2) + "\n");
        }
        std::cout << summary.dump(2) << "\n";
        if (ledger.violations > 0 && !o.report_only) return kExitViolation;
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        throw CliError{kExitValidation, e.what()};
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

struct SweepCell {
    std::size_t index = 0;
    std::size_t rep = 0;
    json values;  // axis -> value
};

struct SweepRow {
    std::string kind;
    std::string axis;
    json values;
    std::size_t rep = 0;
    std::uint64_t seed = 0;
    double alg_cost = 0, opt_cost = 0, ratio = 0;
    int solver_iterations = 0;
    bool solver_converged = false;
    double min_slack = 0;
    int violations = 0;
    bool verified = false;
    double exponent = 0;
    bool has_exponent = false;
};

const std::vector<std::string> kAxes = {"T", "delta", "r", "x", "eps"};

json spec_field(const json& spec, const char* key, json fallback) {
    auto it = spec.find(key);
    return it == spec.end() ? fallback : *it;
}

int cmd_sweep(const std::string& spec_path, std::string out_path) {
    json spec;
    try {
        spec = json::parse(msl::read_text_file(spec_path));
    } catch (const json::parse_error& e) {
        throw CliError{kExitUsage, std::string("malformed sweep spec: ") + e.what()};
    }
    auto need = [&](const char* key) -> const json& {
        auto it = spec.find(key);
        if (it == spec.end()) {
            throw CliError{kExitUsage, std::string("sweep spec: missing field '") + key + "'"};
        }
        return *it;
    };

    const std::string generator = need("generator").get<std::string>();
    const std::string policy_name = spec_field(spec, "policy", "mtc").get<std::string>();
    const msl::Policy policy = msl::policy_from_name(policy_name);
    const double base_delta = spec_field(spec, "delta", 0.5).get<double>();
    const std::uint64_t base_seed = spec_field(spec, "seed", 0).get<std::uint64_t>();
    const std::size_t repetitions =
        spec_field(spec, "repetitions", 1).get<std::size_t>();
    const json params = spec_field(spec, "params", json::object());
    const std::string mode_name = spec_field(spec, "mode", "oblivious").get<std::string>();

    SolveOptions so;
    if (spec.contains("solver")) {
        const json& solver = spec["solver"];
        so.iterations = spec_field(solver, "iterations", so.iterations).get<int>();
        so.tol = spec_field(solver, "tol", so.tol).get<double>();
    }

    bool verify_cells = false;
    double verify_K = 0.0;
    double verify_slack_tol = 1e-9;
    if (spec.contains("verify")) {
        const json& v = spec["verify"];
        verify_cells = spec_field(v, "enabled", true).get<bool>();
        verify_K = spec_field(v, "K", 0.0).get<double>();
        verify_slack_tol = spec_field(v, "slack_tol", 1e-9).get<double>();
    }
    if (out_path.empty()) out_path = spec_field(spec, "out", "").get<std::string>();

    // cartesian grid in fixed axis order
    std::vector<std::pair<std::string, std::vector<json>>> axes;
    if (spec.contains("grid")) {
        const json& grid = spec["grid"];
        if (!grid.is_object()) throw CliError{kExitUsage, "sweep spec: 'grid' must be an object"};
        for (const auto& axis : kAxes) {
            if (grid.contains(axis)) {
                const json& vals = grid[axis];
                if (!vals.is_array() || vals.empty()) {
                    throw CliError{kExitUsage,
                                   "sweep spec: grid axis '" + axis + "' must be a non-empty array"};
                }
                axes.emplace_back(axis, std::vector<json>(vals.begin(), vals.end()));
            }
        }
        for (auto it = grid.begin(); it != grid.end(); ++it) {
            if (std::find(kAxes.begin(), kAxes.end(), it.key()) == kAxes.end()) {
                throw CliError{kExitUsage, "sweep spec: unknown grid axis '" + it.key() + "'"};
            }
        }
    }

    std::vector<SweepCell> cells;
    std::size_t n_cells = 1;
    for (const auto& [axis, vals] : axes) n_cells *= vals.size();
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        for (std::size_t i = 0; i < n_cells; ++i) {
            SweepCell cell;
            cell.index = cells.size();
            cell.rep = rep;
            std::size_t rem = i;
            for (const auto& [axis, vals] : axes) {
                cell.values[axis] = vals[rem % vals.size()];
                rem /= vals.size();
            }
            cells.push_back(std::move(cell));
        }
    }

    auto param = [&](const SweepCell& cell, const char* key, json fallback) {
        if (cell.values.contains(key)) return cell.values[key];
        if (params.contains(key)) return params[key];
        return fallback;
    };

    auto eval_cell = [&](const SweepCell& cell) -> SweepRow {
        GenOptions go;
        go.generator = generator;
        go.mode = mode_name;
        go.seed = base_seed + 1000003ull * cell.rep + cell.index;
        go.dim = param(cell, "dim", 1).get<int>();
        go.m = param(cell, "m", 1.0).get<double>();
        go.D = param(cell, "D", 2.0).get<double>();
        go.T = param(cell, "T", 100).get<std::size_t>();
        go.x = param(cell, "x", 0).get<std::size_t>();
        go.cycles = param(cell, "cycles", 4).get<std::size_t>();
        go.lb_delta = param(cell, "lb_delta", 0.5).get<double>();
        go.r_min = param(cell, "r_min", 1).get<std::size_t>();
        go.r_max = param(cell, "r_max", 4).get<std::size_t>();
        go.r = param(cell, "r", 8).get<std::size_t>();
        go.eps = param(cell, "eps", 0.5).get<double>();
        go.ref_policy = policy_name == "mtc_moving_client" ? "mtc_moving_client" : policy_name;
        const double delta =
            cell.values.contains("delta") ? cell.values["delta"].get<double>() : base_delta;
        go.ref_delta = delta;

        const msl::AdversaryMode mode = make_mode(go);
        msl::Generated g;
        if (generator == "thm1") {
            g = msl::gen_thm1({go.T, go.x, go.m, go.D, go.dim}, mode);
        } else if (generator == "thm2") {
            g = msl::gen_thm2(
                {go.cycles, go.x == 0 ? 4 : go.x, go.lb_delta, go.r_min, go.r_max, go.m, go.D, go.dim},
                mode);
        } else if (generator == "thm3") {
            g = msl::gen_thm3({go.cycles, go.r, go.m, go.D, go.dim}, mode);
        } else if (generator == "moving_client") {
            g = msl::gen_moving_client({go.T, go.x, go.eps, go.m, go.D, go.dim}, mode);
        } else {
            throw CliError{kExitUsage, "sweep spec: unknown generator '" + generator + "'"};
        }

        msl::PolicyConfig cfg;
        cfg.delta = delta;
        msl::Trace alg;
        try {
            alg = msl::run_online(g.instance, policy, cfg);
        } catch (const std::invalid_argument& e) {
            throw CliError{kExitValidation, e.what()};
        }
        double alg_cost = 0;
        for (const auto& cb : alg.steps) alg_cost += cb.total;
        msl::SolverSettings settings;
        settings.max_iterations = so.iterations;
        settings.warm_starts.push_back(alg);
        const msl::SolverReport opt = msl::solve_offline(g.instance, so.tol, settings);

        SweepRow row;
        row.kind = "cell";
        row.values = cell.values;
        row.rep = cell.rep;
        row.seed = go.seed;
        row.alg_cost = alg_cost;
        row.opt_cost = opt.objective;
        row.ratio = msl::competitive_ratio(alg_cost, opt.objective);
        row.solver_iterations = opt.iterations;
        row.solver_converged = opt.converged;
        if (verify_cells) {
            msl::VerifySettings vs;
            vs.delta = delta;
            vs.slack_tol = verify_slack_tol;
            if (verify_K > 0) vs.K = verify_K;
            const msl::PotentialLedger ledger =
                msl::verify_step_inequality(g.instance, alg, opt.trace, vs);
            row.min_slack = ledger.min_slack;
            row.violations = ledger.violations;
            row.verified = true;
        }
        return row;
    };

    // Cells are independent pure computations; evaluate them on a small pool
    // and emit rows in deterministic cell order.
    std::vector<SweepRow> rows(cells.size());
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                                                       cells.size()));
    {
        std::vector<std::future<void>> futs;
        futs.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            futs.push_back(std::async(std::launch::async, [&, w]() {
                for (std::size_t i = w; i < cells.size(); i += workers) {
                    rows[i] = eval_cell(cells[i]);
                }
            }));
        }
        for (auto& f : futs) f.get();  // rethrows cell errors
    }

    // growth-exponent summary per swept axis (single-axis numeric sweeps)
    std::vector<SweepRow> summary_rows;
    if (axes.size() == 1 && axes[0].second.size() >= 3) {
        const std::string& axis = axes[0].first;
        std::vector<std::pair<double, double>> series;
        for (std::size_t i = 0; i < axes[0].second.size(); ++i) {
            const double scale = axes[0].second[i].get<double>();
            double mean_ratio = 0;
            std::size_t count = 0;
            for (const SweepRow& row : rows) {
                if (row.values[axis].get<double>() == scale) {
                    mean_ratio += row.ratio;
                    ++count;
                }
            }
            if (count > 0) series.emplace_back(scale, mean_ratio / static_cast<double>(count));
        }
        std::sort(series.begin(), series.end());
        SweepRow srow;
        srow.kind = "growth_exponent";
        srow.axis = axis;
        srow.exponent = msl::growth_exponent(series);
        srow.has_exponent = true;
        summary_rows.push_back(std::move(srow));
    }

    if (out_path.empty()) out_path = "sweep.csv";
    const fs::path path = resolve_out(out_path);
    std::ofstream csv(path, std::ios::binary);
    if (!csv) throw CliError{kExitUsage, "cannot open '" + path.string() + "' for writing"};
    csv << "kind,axis,rep,seed,T,delta,r,x,eps,policy,alg_cost,opt_cost,ratio,"
           "solver_iterations,solver_converged,min_slack,violations,exponent\n";
    char buf[64];
    auto field = [&](const SweepRow& row, const std::string& axis) -> std::string {
        if (!row.values.contains(axis)) return "";
        std::snprintf(buf, sizeof(buf), "%.12g", row.values[axis].get<double>());
        return buf;
    };
    auto emit = [&](const SweepRow& row) {
        csv << row.kind << "," << row.axis << ",";
        if (row.kind == "cell") {
            csv << row.rep << "," << row.seed;
        } else {
            csv << ",";
        }
        for (const auto& axis : kAxes) csv << "," << field(row, axis);
        csv << "," << (row.kind == "cell" ? policy_name : "");
        if (row.kind == "cell") {
            std::snprintf(buf, sizeof(buf), ",%.12g,%.12g,%.12g,%d,%s", row.alg_cost, row.opt_cost,
                          row.ratio, row.solver_iterations, row.solver_converged ? "1" : "0");
            csv << buf;
            if (row.verified) {
                std::snprintf(buf, sizeof(buf), ",%.12g,%d", row.min_slack, row.violations);
                csv << buf;
            } else {
                csv << ",,";
            }
            csv << ",";
        } else {
            csv << ",,,,,,,";
            if (row.has_exponent) {
                std::snprintf(buf, sizeof(buf), ",%.12g", row.exponent);
                csv << buf;
            } else {
                csv << ",";
            }
        }
        csv << "\n";
    };
    for (const SweepRow& row : rows) emit(row);
    for (const SweepRow& row : summary_rows) emit(row);

    json summary;
    summary["file"] = path.string();
    summary["cells"] = rows.size();
    if (!summary_rows.empty()) {
        summary["growth_exponent"] = summary_rows.front().exponent;
        summary["axis"] = summary_rows.front().axis;
    }
    std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mobile-server simulation lab"};
    app.require_subcommand(1);

    GenOptions gen_opts;
    auto* gen = app.add_subcommand("gen", "generate a lower-bound instance");
    gen->add_option("generator", gen_opts.generator, "thm1|thm2|thm3|moving_client")->required();
    gen->add_option("--out", gen_opts.out, "output instance file (default <generator>.json)");
    gen->add_option("--mode", gen_opts.mode, "oblivious|worst (default oblivious)");
    gen->add_option("--seed", gen_opts.seed, "oblivious coin seed (default 0)");
    gen->add_option("--ref-policy", gen_opts.ref_policy, "reference policy for worst mode");
    gen->add_option("--ref-delta", gen_opts.ref_delta, "reference policy delta");
    gen->add_option("--dim", gen_opts.dim, "embedding dimension (default 2)");
    gen->add_option("--m", gen_opts.m, "offline move limit m (default 1)");
    gen->add_option("--D", gen_opts.D, "move cost weight D (default 2)");
    gen->add_option("--T", gen_opts.T, "sequence length (thm1, moving_client)");
    gen->add_option("--x", gen_opts.x, "phase length x (0 = generator default)");
    gen->add_option("--cycles", gen_opts.cycles, "number of cycles (thm2, thm3)");
    gen->add_option("--delta", gen_opts.lb_delta, "targeted augmentation delta (thm2)");
    gen->add_option("--rmin", gen_opts.r_min, "phase-1 batch size (thm2)");
    gen->add_option("--rmax", gen_opts.r_max, "phase-2 batch size (thm2)");
    gen->add_option("--r", gen_opts.r, "requests per step (thm3)");
    gen->add_option("--eps", gen_opts.eps, "agent speed surplus (moving_client)");

    RunOptions run_opts;
    auto* run = app.add_subcommand("run", "run an online policy over an instance");
    run->add_option("--instance", run_opts.instance, "instance file")->required();
    run->add_option("--policy", run_opts.policy, "mtc|mtc_moving_client|static|follow_center");
    run->add_option("--delta", run_opts.delta, "augmentation delta (default 0.5)");
    run->add_option("--out", run_opts.out, "write full trace JSON here");
    run->add_option("--csv", run_opts.csv, "write per-step CSV here");

    RatioOptions ratio_opts;
    auto* ratio = app.add_subcommand("ratio", "measure cost ratio vs the offline solver");
    ratio->add_option("--instance", ratio_opts.instance, "instance file")->required();
    ratio->add_option("--policy", ratio_opts.policy, "online policy (default mtc)");
    ratio->add_option("--delta", ratio_opts.delta, "augmentation delta (default 0.5)");
    ratio->add_flag("--certify", ratio_opts.certify,
                    "cross-check the solver against the 1D grid oracle");
    ratio->add_option("--iters", ratio_opts.solve.iterations, "solver iteration cap");
    ratio->add_option("--tol", ratio_opts.solve.tol, "solver tolerance");
    ratio->add_option("--out", ratio_opts.out, "write the report JSON here");

    VerifyOptions verify_opts;
    auto* verify = app.add_subcommand("verify", "check the per-step potential inequality");
    verify->add_option("--instance", verify_opts.instance, "instance file")->required();
    verify->add_option("--policy", verify_opts.policy, "online policy (default mtc)");
    verify->add_option("--delta", verify_opts.delta, "augmentation delta (default 0.5)");
    verify->add_option("--K", verify_opts.K, "inequality constant (default: verifier ceiling)");
    verify->add_option("--regime", verify_opts.regime, "auto|high|low");
    verify->add_flag("--no-collapse", verify_opts.no_collapse,
                     "verify the instance as-is instead of collapsing requests");
    verify->add_flag("--report-only", verify_opts.report_only,
                     "exit 0 even when violations are found");
    verify->add_option("--slack-tol", verify_opts.slack_tol, "violation tolerance");
    verify->add_option("--ledger", verify_opts.ledger, "ledger CSV path (default ledger.csv)");
    verify->add_option("--out", verify_opts.out, "write the summary JSON here");
    verify->add_option("--iters", verify_opts.solve.iterations, "solver iteration cap");
    verify->add_option("--tol", verify_opts.solve.tol, "solver tolerance");

    std::string sweep_spec, sweep_out;
    auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
    sweep->add_option("--spec", sweep_spec, "sweep spec JSON")->required();
    sweep->add_option("--out", sweep_out, "output CSV (default sweep.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_opts);
        if (run->parsed()) return cmd_run(run_opts);
        if (ratio->parsed()) return cmd_ratio(ratio_opts);
        if (verify->parsed()) return cmd_verify(verify_opts);
        if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_out);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
