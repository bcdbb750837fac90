#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "msl/model.hpp"

namespace msl {

/// The six-distance configuration of one verification step: positions of the
/// algorithm's server (before/after moving), the reference server
/// (before/after moving) and the request center c.
struct GeoConfig {
    double a1 = 0;       // d(P_alg, P_alg')
    double a2 = 0;       // d(P_alg', c)
    double s1 = 0;       // d(P_opt, P_opt')
    double s2 = 0;       // d(P_opt', c)
    double p = 0;        // d(P_opt, P_alg)
    double h = 0;        // d(P_opt', P_alg)
    double h_prime = 0;  // d(P_opt, P_alg')
    double q = 0;        // d(P_opt', P_alg')
};

GeoConfig make_geo_config(const Point& alg_before, const Point& alg_after,
                          const Point& opt_before, const Point& opt_after,
                          const Point& center);

enum class PotentialRegime { HighR, LowR, MovingClient };

std::string regime_name(PotentialRegime r);

/// Piecewise potential of the server separation d:
///   HighR (r > D):  8 (r/(delta m)) d^2 above the threshold delta*D*m/(4r),
///                   2 D d below it.
///   LowR  (r <= D): twice the HighR values at every d.
/// r_weight stands in for r; with varying batch sizes pass R_max.
/// delta must lie in (0, 1]; delta = 0 has no defined potential.
double potential(double dist, PotentialRegime regime, double r_weight, double delta,
                 double m, double D);

/// Moving-client potential 2^(3/2) * D * d.
double potential_moving_client(double dist, double D);

struct LedgerRow {
    int step = 0;  // 1-based
    double phi_before = 0, phi_after = 0, delta_phi = 0;
    double c_alg = 0, c_opt = 0;
    double slack = 0;  // K*c_opt - c_alg - delta_phi
};

struct PotentialLedger {
    std::vector<LedgerRow> rows;
    PotentialRegime regime = PotentialRegime::HighR;
    double K = 0;
    double min_slack = 0;
    int violations = 0;        // rows with slack < -slack_tol
    bool collapsed_input = true;
};

struct VerifySettings {
    double delta = 0.5;                     // must match the online run
    std::optional<PotentialRegime> regime;  // default: by variant and R_max vs D
    std::optional<double> K;                // default: default_verifier_K(...)
    double r_weight = 0;                    // 0 -> R_max
    double slack_tol = 1e-9;
};

/// Ceiling dominating the per-step constants of the potential argument:
/// moving-client 36; otherwise 300/delta^(3/2) (or 300/delta in 1D) times
/// max(1, R_max/R_min).
double default_verifier_K(const Instance& inst, double delta);

/// Per-step check of c_alg + delta_phi <= K * c_opt for a pair of feasible
/// traces on the same instance. Non-collapsed input is accepted but flagged.
PotentialLedger verify_step_inequality(const Instance& inst, const Trace& alg_trace,
                                       const Trace& ref_trace, const VerifySettings& settings);

/// CSV with header step,phi_before,phi_after,delta_phi,c_alg,c_opt,slack,regime
void write_ledger_csv(const PotentialLedger& ledger, std::ostream& out);

struct LemmaCheck {
    bool premise_holds = false;
    bool conclusion_holds = false;
    double premise_margin = 0;     // (sqrt(d)/(1+d/2))*a2 - s2
    double conclusion_margin = 0;  // (h-q) - ((1+d/2)/(1+d))*a1
};

/// Evaluates the separation lemma on a configuration: premise
/// s2 <= (sqrt(delta)/(1+delta/2)) a2, conclusion h-q >= ((1+delta/2)/(1+delta)) a1.
LemmaCheck check_geo_lemma(const GeoConfig& cfg, double delta);

/// alg/opt with the degenerate cases 0/0 -> 1 and positive/0 -> +infinity.
double competitive_ratio(double alg_cost, double opt_cost);

/// Least-squares slope of log(ratio) against log(scale); needs >= 3 points,
/// strictly increasing scales and positive ratios.
double growth_exponent(std::span<const std::pair<double, double>> series);

}  // namespace msl
