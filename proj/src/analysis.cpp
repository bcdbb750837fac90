#include "msl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace msl {

GeoConfig make_geo_config(const Point& alg_before, const Point& alg_after,
                          const Point& opt_before, const Point& opt_after,
                          const Point& center) {
    GeoConfig g;
    g.a1 = distance(alg_before, alg_after);
    g.a2 = distance(alg_after, center);
    g.s1 = distance(opt_before, opt_after);
    g.s2 = distance(opt_after, center);
    g.p = distance(opt_before, alg_before);
    g.h = distance(opt_after, alg_before);
    g.h_prime = distance(opt_before, alg_after);
    g.q = distance(opt_after, alg_after);
    return g;
}

std::string regime_name(PotentialRegime r) {
    switch (r) {
        case PotentialRegime::HighR: return "high_r";
        case PotentialRegime::LowR: return "low_r";
        case PotentialRegime::MovingClient: return "moving_client";
    }
    throw std::logic_error("regime_name: bad enum");
}

double potential(double dist, PotentialRegime regime, double r_weight, double delta,
                 double m, double D) {
    if (regime == PotentialRegime::MovingClient) {
        return potential_moving_client(dist, D);
    }
    if (!(delta > 0.0) || delta > 1.0) {
        throw std::invalid_argument("potential: delta must lie in (0, 1]");
    }
    if (!(r_weight > 0.0) || !(m > 0.0) || !(D >= 1.0) || dist < 0.0) {
        throw std::invalid_argument("potential: bad parameters");
    }
    const double threshold = delta * D * m / (4.0 * r_weight);
    const double scale = (regime == PotentialRegime::LowR) ? 2.0 : 1.0;
    if (dist > threshold) {
        return scale * 8.0 * (r_weight / (delta * m)) * dist * dist;
    }
    return scale * 2.0 * D * dist;
}

double potential_moving_client(double dist, double D) {
    if (dist < 0.0 || !(D >= 1.0)) {
        throw std::invalid_argument("potential_moving_client: bad parameters");
    }
    return 2.0 * std::sqrt(2.0) * D * dist;
}

double default_verifier_K(const Instance& inst, double delta) {
    if (inst.variant == Variant::MovingClient) return 36.0;
    if (!(delta > 0.0) || delta > 1.0) {
        throw std::invalid_argument("default_verifier_K: delta must lie in (0, 1]");
    }
    std::size_t r_min = std::numeric_limits<std::size_t>::max(), r_max = 0;
    for (const RequestBatch& b : inst.batches) {
        r_min = std::min(r_min, b.size());
        r_max = std::max(r_max, b.size());
    }
    if (r_max == 0) throw std::invalid_argument("default_verifier_K: empty instance");
    const double base = (inst.dimension == 1) ? 300.0 / delta : 300.0 / std::pow(delta, 1.5);
    const double imbalance =
        std::max(1.0, static_cast<double>(r_max) / static_cast<double>(r_min));
    return base * imbalance;
}

PotentialLedger verify_step_inequality(const Instance& inst, const Trace& alg_trace,
                                       const Trace& ref_trace,
                                       const VerifySettings& settings) {
    const std::size_t T = inst.horizon();
    if (alg_trace.positions.size() != T + 1 || ref_trace.positions.size() != T + 1) {
        throw std::invalid_argument("verify_step_inequality: trace length mismatch");
    }

    std::size_t r_max = 0;
    for (const RequestBatch& b : inst.batches) r_max = std::max(r_max, b.size());

    PotentialLedger ledger;
    if (settings.regime) {
        ledger.regime = *settings.regime;
    } else if (inst.variant == Variant::MovingClient) {
        ledger.regime = PotentialRegime::MovingClient;
    } else {
        // the boundary r == D belongs to the low-request family
        ledger.regime = (static_cast<double>(r_max) > inst.move_cost) ? PotentialRegime::HighR
                                                                      : PotentialRegime::LowR;
    }
    const double r_weight =
        settings.r_weight > 0.0 ? settings.r_weight : static_cast<double>(r_max);
    ledger.K = settings.K ? *settings.K : default_verifier_K(inst, settings.delta);
    ledger.collapsed_input =
        inst.variant == Variant::MovingClient || is_collapsed(inst);

    auto phi = [&](double d) {
        return potential(d, ledger.regime, r_weight, settings.delta, inst.move_limit,
                         inst.move_cost);
    };

    ledger.rows.reserve(T);
    ledger.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < T; ++t) {
        LedgerRow row;
        row.step = static_cast<int>(t + 1);
        row.phi_before = phi(distance(ref_trace.positions[t], alg_trace.positions[t]));
        row.phi_after = phi(distance(ref_trace.positions[t + 1], alg_trace.positions[t + 1]));
        row.delta_phi = row.phi_after - row.phi_before;
        row.c_alg = step_cost(inst, t, alg_trace.positions[t], alg_trace.positions[t + 1]).total;
        row.c_opt = step_cost(inst, t, ref_trace.positions[t], ref_trace.positions[t + 1]).total;
        row.slack = ledger.K * row.c_opt - row.c_alg - row.delta_phi;
        ledger.min_slack = std::min(ledger.min_slack, row.slack);
        if (row.slack < -settings.slack_tol) ledger.violations++;
        ledger.rows.push_back(row);
    }
    if (ledger.rows.empty()) ledger.min_slack = 0.0;
    return ledger;
}

void write_ledger_csv(const PotentialLedger& ledger, std::ostream& out) {
    out << "step,phi_before,phi_after,delta_phi,c_alg,c_opt,slack,regime\n";
    char buf[256];
    const std::string regime = regime_name(ledger.regime);
    for (const LedgerRow& r : ledger.rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%s\n", r.step,
                      r.phi_before, r.phi_after, r.delta_phi, r.c_alg, r.c_opt, r.slack,
                      regime.c_str());
        out << buf;
    }
}

LemmaCheck check_geo_lemma(const GeoConfig& cfg, double delta) {
    if (!(delta > 0.0) || delta > 1.0) {
        throw std::invalid_argument("check_geo_lemma: delta must lie in (0, 1]");
    }
    LemmaCheck res;
    res.premise_margin = (std::sqrt(delta) / (1.0 + 0.5 * delta)) * cfg.a2 - cfg.s2;
    res.conclusion_margin =
        (cfg.h - cfg.q) - ((1.0 + 0.5 * delta) / (1.0 + delta)) * cfg.a1;
    res.premise_holds = res.premise_margin >= 0.0;
    res.conclusion_holds = res.conclusion_margin >= 0.0;
    return res;
}

double competitive_ratio(double alg_cost, double opt_cost) {
    if (alg_cost < 0.0 || opt_cost < 0.0) {
        throw std::invalid_argument("competitive_ratio: negative cost");
    }
    if (opt_cost == 0.0) {
        return alg_cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    return alg_cost / opt_cost;
}

double growth_exponent(std::span<const std::pair<double, double>> series) {
    if (series.size() < 3) {
        throw std::invalid_argument("growth_exponent: need at least 3 points");
    }
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [scale, ratio] : series) {
        if (!(scale > prev)) {
            throw std::invalid_argument("growth_exponent: scales must be strictly increasing");
        }
        if (!(ratio > 0.0) || !(scale > 0.0)) {
            throw std::invalid_argument("growth_exponent: scales and ratios must be positive");
        }
        prev = scale;
    }
    const double n = static_cast<double>(series.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [scale, ratio] : series) {
        const double lx = std::log(scale);
        const double ly = std::log(ratio);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace msl
