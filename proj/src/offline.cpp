#include "msl/offline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "msl/algorithms.hpp"
#include "msl/kernels.hpp"

namespace msl {

namespace {

constexpr double kHuge = 1e300;

// ---------------------------------------------------------------------------
// Stacked trajectory problem: per-axis coordinate arrays of length T+1 with
// index 0 pinned to the start position. Batch b is served from position
// serve_owner(b): b+1 in the serve-after-move models, b in answer-first.
// ---------------------------------------------------------------------------

struct Stacked {
    const Instance* inst = nullptr;
    std::size_t T = 0;
    std::size_t dim = 0;
    bool answer_first = false;
    std::vector<std::vector<double>> axes;  // [dim][T+1]

    // flattened requests, grouped by owner position
    std::vector<std::vector<double>> req_axes;  // [dim][n_req]
    std::vector<std::int32_t> req_owner;        // [n_req], in [0, T]

    void load_positions(const std::vector<Point>& pos) {
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t t = 0; t <= T; ++t) axes[k][t] = pos[t][k];
    }

    std::vector<Point> to_points() const {
        std::vector<Point> pos(T + 1, Point{std::vector<double>(dim, 0.0)});
        for (std::size_t t = 0; t <= T; ++t)
            for (std::size_t k = 0; k < dim; ++k) pos[t][k] = axes[k][t];
        return pos;
    }
};

Stacked make_stacked(const Instance& inst) {
    Stacked s;
    s.inst = &inst;
    s.T = inst.horizon();
    s.dim = static_cast<std::size_t>(inst.dimension);
    s.answer_first = inst.variant == Variant::AnswerFirst;
    s.axes.assign(s.dim, std::vector<double>(s.T + 1, 0.0));
    s.req_axes.assign(s.dim, {});
    for (std::size_t b = 0; b < s.T; ++b) {
        const std::int32_t owner =
            static_cast<std::int32_t>(s.answer_first ? b : b + 1);
        for (const Point& v : inst.batches[b].requests) {
            for (std::size_t k = 0; k < s.dim; ++k) s.req_axes[k].push_back(v[k]);
            s.req_owner.push_back(owner);
        }
    }
    return s;
}

double objective(const Stacked& s) {
    const auto& K = kernels::active();
    const std::size_t T = s.T;
    double f = 0.0;
    if (s.dim == 1) {
        const double* X = s.axes[0].data();
        f += s.inst->move_cost * K.sum_abs_diff(X + 1, X, T);
        std::vector<double> P(s.req_owner.size());
        for (std::size_t i = 0; i < s.req_owner.size(); ++i) P[i] = X[s.req_owner[i]];
        f += K.sum_abs_diff(P.data(), s.req_axes[0].data(), P.size());
    } else if (s.dim == 2) {
        const double* X = s.axes[0].data();
        const double* Y = s.axes[1].data();
        f += s.inst->move_cost * K.sum_dist_2d(X + 1, Y + 1, X, Y, T);
        std::vector<double> PX(s.req_owner.size()), PY(s.req_owner.size());
        for (std::size_t i = 0; i < s.req_owner.size(); ++i) {
            PX[i] = X[s.req_owner[i]];
            PY[i] = Y[s.req_owner[i]];
        }
        f += K.sum_dist_2d(PX.data(), PY.data(), s.req_axes[0].data(), s.req_axes[1].data(),
                           PX.size());
    } else {
        for (std::size_t t = 1; t <= T; ++t) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < s.dim; ++k) {
                const double d = s.axes[k][t] - s.axes[k][t - 1];
                d2 += d * d;
            }
            f += s.inst->move_cost * std::sqrt(d2);
        }
        for (std::size_t i = 0; i < s.req_owner.size(); ++i) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < s.dim; ++k) {
                const double d = s.axes[k][s.req_owner[i]] - s.req_axes[k][i];
                d2 += d * d;
            }
            f += std::sqrt(d2);
        }
    }
    return f;
}

// The solver walks in displacement space: variables u_t = p_t - p_{t-1},
// one ball constraint ||u_t|| <= m per step. The feasible set is a product
// of balls, so the Euclidean projection is an independent per-step clamp,
// and the prefix-sum structure lets a single step move a whole trajectory
// suffix. vel[k][t-1] holds axis k of u_t.

void positions_from_vel(Stacked& s, const std::vector<std::vector<double>>& vel) {
    for (std::size_t k = 0; k < s.dim; ++k) {
        double acc = s.axes[k][0];
        for (std::size_t t = 1; t <= s.T; ++t) {
            acc += vel[k][t - 1];
            s.axes[k][t] = acc;
        }
    }
}

std::vector<std::vector<double>> vel_from_positions(const Stacked& s) {
    std::vector<std::vector<double>> vel(s.dim, std::vector<double>(s.T, 0.0));
    for (std::size_t k = 0; k < s.dim; ++k)
        for (std::size_t t = 1; t <= s.T; ++t) vel[k][t - 1] = s.axes[k][t] - s.axes[k][t - 1];
    return vel;
}

// Exact projection onto the per-step displacement balls.
void clamp_vel(std::vector<std::vector<double>>& vel, std::size_t T, std::size_t dim,
               double m) {
    for (std::size_t t = 0; t < T; ++t) {
        double n2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) n2 += vel[k][t] * vel[k][t];
        if (n2 > m * m) {
            const double sc = m / std::sqrt(n2);
            for (std::size_t k = 0; k < dim; ++k) vel[k][t] *= sc;
        }
    }
}

// Objective and displacement-space subgradient. The serve pull at position t
// acts on every displacement up to t, so the per-position pulls are suffix-
// summed into g. Norm kinks contribute the zero subgradient.
double subgradient_vel(Stacked& s, const std::vector<std::vector<double>>& vel,
                       std::vector<std::vector<double>>& g) {
    const std::size_t T = s.T;
    const double D = s.inst->move_cost;
    positions_from_vel(s, vel);
    double f = 0.0;
    // per-position serve pulls, accumulated into g as suffix sums below
    for (auto& gk : g) std::fill(gk.begin(), gk.end(), 0.0);
    std::vector<double> diff(s.dim);
    for (std::size_t i = 0; i < s.req_owner.size(); ++i) {
        const std::int32_t o = s.req_owner[i];
        double d2 = 0.0;
        for (std::size_t k = 0; k < s.dim; ++k) {
            diff[k] = s.axes[k][o] - s.req_axes[k][i];
            d2 += diff[k] * diff[k];
        }
        const double d = std::sqrt(d2);
        f += d;
        if (d > 1e-300 && o >= 1) {
            for (std::size_t k = 0; k < s.dim; ++k) g[k][o - 1] += diff[k] / d;
        }
    }
    for (std::size_t k = 0; k < s.dim; ++k) {
        double suffix = 0.0;
        for (std::size_t t = T; t >= 1; --t) {
            suffix += g[k][t - 1];
            g[k][t - 1] = suffix;
        }
    }
    for (std::size_t t = 0; t < T; ++t) {
        double n2 = 0.0;
        for (std::size_t k = 0; k < s.dim; ++k) n2 += vel[k][t] * vel[k][t];
        const double n = std::sqrt(n2);
        f += D * n;
        if (n > 1e-300) {
            for (std::size_t k = 0; k < s.dim; ++k) g[k][t] += D * vel[k][t] / n;
        }
    }
    return f;
}

// ---------------------------------------------------------------------------
// Coordinate polish: exact in 1D (clamped weighted median), local Weiszfeld
// with ball projection in 2D. Descent-only; positions stay feasible.
// ---------------------------------------------------------------------------

struct OwnedRequests {
    std::vector<std::vector<std::size_t>> by_owner;  // request indices per position
};

OwnedRequests group_by_owner(const Stacked& s) {
    OwnedRequests o;
    o.by_owner.assign(s.T + 1, {});
    for (std::size_t i = 0; i < s.req_owner.size(); ++i)
        o.by_owner[static_cast<std::size_t>(s.req_owner[i])].push_back(i);
    return o;
}

// Minimizer interval of sum_i w_i |p - v_i| clamped into [lo, hi]; the
// current value resolves ties (minimal movement).
double weighted_median_1d(std::vector<std::pair<double, double>>& vw, double lo,
                          double hi, double current) {
    std::sort(vw.begin(), vw.end());
    double total = 0.0;
    for (const auto& [v, w] : vw) total += w;
    const double half = 0.5 * total;
    double cum = 0.0;
    double opt_lo = vw.back().first, opt_hi = vw.back().first;
    for (std::size_t i = 0; i < vw.size(); ++i) {
        cum += vw[i].second;
        if (cum >= half - 1e-15) {
            opt_lo = vw[i].first;
            opt_hi = (std::abs(cum - half) <= 1e-15 && i + 1 < vw.size()) ? vw[i + 1].first
                                                                          : vw[i].first;
            break;
        }
    }
    const double a = std::max(lo, opt_lo);
    const double b = std::min(hi, opt_hi);
    if (a <= b) return std::clamp(current, a, b);
    return (opt_lo > hi) ? hi : lo;
}

bool polish_1d(Stacked& s, double m, const OwnedRequests& owned, int max_sweeps) {
    auto& X = s.axes[0];
    const double D = s.inst->move_cost;
    bool any = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (std::size_t t = 1; t <= s.T; ++t) {
            double lo = X[t - 1] - m, hi = X[t - 1] + m;
            std::vector<std::pair<double, double>> vw;
            vw.emplace_back(X[t - 1], D);
            if (t < s.T) {
                lo = std::max(lo, X[t + 1] - m);
                hi = std::min(hi, X[t + 1] + m);
                vw.emplace_back(X[t + 1], D);
            }
            for (std::size_t i : owned.by_owner[t]) vw.emplace_back(s.req_axes[0][i], 1.0);
            const double next = weighted_median_1d(vw, lo, hi, X[t]);
            moved = std::max(moved, std::abs(next - X[t]));
            X[t] = next;
        }
        any = any || moved > 1e-15;
        if (moved <= 1e-12) break;
    }
    return any;
}

double local_cost_2d(const Stacked& s, const OwnedRequests& owned, std::size_t t,
                     double px, double py) {
    const double D = s.inst->move_cost;
    const auto& X = s.axes[0];
    const auto& Y = s.axes[1];
    double f = D * std::hypot(px - X[t - 1], py - Y[t - 1]);
    if (t < s.T) f += D * std::hypot(px - X[t + 1], py - Y[t + 1]);
    for (std::size_t i : owned.by_owner[t])
        f += std::hypot(px - s.req_axes[0][i], py - s.req_axes[1][i]);
    return f;
}

bool polish_2d(Stacked& s, double m, const OwnedRequests& owned, int max_sweeps) {
    auto& X = s.axes[0];
    auto& Y = s.axes[1];
    const double D = s.inst->move_cost;
    bool any = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (std::size_t t = 1; t <= s.T; ++t) {
            std::vector<std::pair<std::pair<double, double>, double>> anchors;
            anchors.push_back({{X[t - 1], Y[t - 1]}, D});
            if (t < s.T) anchors.push_back({{X[t + 1], Y[t + 1]}, D});
            for (std::size_t i : owned.by_owner[t])
                anchors.push_back({{s.req_axes[0][i], s.req_axes[1][i]}, 1.0});

            double px = X[t], py = Y[t];
            for (int it = 0; it < 8; ++it) {
                double sx = 0.0, sy = 0.0, sw = 0.0;
                bool at_anchor = false;
                for (const auto& [a, w] : anchors) {
                    const double d = std::hypot(px - a.first, py - a.second);
                    if (d < 1e-13) { at_anchor = true; break; }
                    sx += w * a.first / d;
                    sy += w * a.second / d;
                    sw += w / d;
                }
                if (at_anchor || sw == 0.0) break;
                px = sx / sw;
                py = sy / sw;
            }
            // restore feasibility against both neighbors
            for (int it = 0; it < 6; ++it) {
                bool ok = true;
                double dx = px - X[t - 1], dy = py - Y[t - 1];
                double d = std::hypot(dx, dy);
                if (d > m) { px = X[t - 1] + dx * m / d; py = Y[t - 1] + dy * m / d; ok = false; }
                if (t < s.T) {
                    dx = px - X[t + 1]; dy = py - Y[t + 1];
                    d = std::hypot(dx, dy);
                    if (d > m) { px = X[t + 1] + dx * m / d; py = Y[t + 1] + dy * m / d; ok = false; }
                }
                if (ok) break;
            }
            const bool feas = std::hypot(px - X[t - 1], py - Y[t - 1]) <= m + 1e-12 &&
                              (t == s.T || std::hypot(px - X[t + 1], py - Y[t + 1]) <= m + 1e-12);
            if (feas && local_cost_2d(s, owned, t, px, py) <
                            local_cost_2d(s, owned, t, X[t], Y[t]) - 1e-15) {
                moved = std::max(moved, std::hypot(px - X[t], py - Y[t]));
                X[t] = px;
                Y[t] = py;
            }
        }
        any = any || moved > 1e-15;
        if (moved <= 1e-12) break;
    }
    return any;
}

void polish(Stacked& s, double m, const OwnedRequests& owned, int max_sweeps) {
    if (s.dim == 1) polish_1d(s, m, owned, max_sweeps);
    else if (s.dim == 2) polish_2d(s, m, owned, max_sweeps);
}

std::vector<Point> chase_agent_trace(const Instance& inst) {
    // full-speed pursuit of the current request center; feasible at limit m
    std::vector<Point> pos{inst.start};
    Point cur = inst.start;
    for (const RequestBatch& b : inst.batches) {
        const Point c = geometric_median(b.requests, cur, 1e-9).position;
        cur = clamp_move(cur, c, inst.move_limit);
        pos.push_back(cur);
    }
    return pos;
}

}  // namespace

SolverReport solve_offline(const Instance& inst, double tol, const SolverSettings& settings) {
    const auto violations = validate(inst);
    if (!violations.empty()) {
        throw std::invalid_argument("solve_offline: invalid instance: " + violations.front());
    }
    if (tol <= 0.0) throw std::invalid_argument("solve_offline: tol must be > 0");

    const double m = inst.move_limit;
    const std::size_t T = inst.horizon();
    Stacked s = make_stacked(inst);
    const OwnedRequests owned = group_by_owner(s);

    // Initial candidates: the online trace clamped to limit m, a stationary
    // trace, a full-speed pursuit trace, and caller-provided warm starts.
    std::vector<std::vector<Point>> candidates;
    {
        PolicyConfig cfg0{0.0, 1e-9};
        const Policy online_policy =
            inst.variant == Variant::MovingClient ? Policy::MtcMovingClient : Policy::Mtc;
        candidates.push_back(run_online(inst, online_policy, cfg0).positions);
        candidates.emplace_back(T + 1, inst.start);
        candidates.push_back(chase_agent_trace(inst));
        for (const Trace& w : settings.warm_starts) {
            if (w.positions.size() == T + 1) candidates.push_back(w.positions);
        }
    }

    double f_rec = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best_vel;
    double stationary_cost = 0.0;
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        s.load_positions(candidates[ci]);
        auto vel = vel_from_positions(s);
        clamp_vel(vel, T, s.dim, m);
        positions_from_vel(s, vel);
        const double f = objective(s);
        if (ci == 1) stationary_cost = f;
        if (f < f_rec) {
            f_rec = f;
            best_vel = std::move(vel);
        }
    }

    // Adaptive target level: aim for f_rec - level; halve the level once a
    // whole window of steps brings no level-sized progress. Stop when the
    // level drops under the requested accuracy.
    const double stop_level = tol * (1.0 + stationary_cost);
    double level = std::max(0.5 * f_rec, stop_level);
    const int window = 300;

    std::vector<std::vector<double>> vel = best_vel;
    std::vector<std::vector<double>> g(s.dim, std::vector<double>(T, 0.0));
    double stage_best = f_rec;
    int since_progress = 0;
    int k = 0;
    bool converged = f_rec <= stop_level;  // e.g. the all-requests-at-start case

    for (; k < settings.max_iterations && !converged; ++k) {
        const double f = subgradient_vel(s, vel, g);
        if (f < f_rec) {
            f_rec = f;
            best_vel = vel;
        }
        double gn2 = 0.0;
        for (const auto& gk : g)
            for (std::size_t t = 0; t < T; ++t) gn2 += gk[t] * gk[t];
        if (gn2 <= 1e-24) {
            converged = true;  // subgradient vanished: global minimum
            break;
        }
        const double target = std::max(f_rec - level, 0.0);
        const double alpha = (f - target) / gn2;
        const auto& K = kernels::active();
        for (std::size_t ax = 0; ax < s.dim; ++ax)
            K.axpy(vel[ax].data(), g[ax].data(), -alpha, T);
        clamp_vel(vel, T, s.dim, m);

        if (f_rec <= stage_best - 0.5 * level) {
            stage_best = f_rec;
            since_progress = 0;
        } else if (++since_progress >= window) {
            level *= 0.5;
            stage_best = f_rec;
            since_progress = 0;
            if (level <= stop_level) {
                converged = true;
                ++k;
                break;
            }
        }
        if (settings.polish_interval > 0 && (k + 1) % settings.polish_interval == 0) {
            positions_from_vel(s, best_vel);
            polish(s, m, owned, settings.polish_sweeps);
            const double fp = objective(s);
            if (fp < f_rec - 1e-12 * (1.0 + f_rec)) {
                f_rec = fp;
                best_vel = vel_from_positions(s);
                vel = best_vel;  // restart the walk from the polished point
            }
        }
    }

    positions_from_vel(s, best_vel);
    polish(s, m, owned, 4 * settings.polish_sweeps);
    if (objective(s) > f_rec) positions_from_vel(s, best_vel);

    SolverReport report;
    report.trace = make_trace(inst, s.to_points(), m);
    report.objective = total_cost(inst, report.trace);
    report.iterations = k;
    report.converged = converged;
    return report;
}

double default_oracle_radius(const Instance& inst) {
    double r = 0.0;
    for (const RequestBatch& b : inst.batches)
        for (const Point& v : b.requests)
            for (std::size_t k = 0; k < v.dim(); ++k)
                r = std::max(r, std::abs(v[k] - inst.start[k]));
    return r;
}

SolverReport grid_dp_oracle_1d(const Instance& inst, double grid_step, double radius) {
    if (inst.dimension != 1) {
        throw std::invalid_argument("grid_dp_oracle_1d: instance must be 1-dimensional");
    }
    if (grid_step <= 0.0 || radius < 0.0) {
        throw std::invalid_argument("grid_dp_oracle_1d: bad grid parameters");
    }
    const auto violations = validate(inst);
    if (!violations.empty()) {
        throw std::invalid_argument("grid_dp_oracle_1d: invalid instance: " + violations.front());
    }

    const double start = inst.start[0];
    const std::size_t K = static_cast<std::size_t>(std::ceil(radius / grid_step - 1e-9));
    const std::size_t N = 2 * K + 1;
    const std::size_t T = inst.horizon();
    // the backtracking table holds T*N predecessor indices
    if (N > 20'000'000 || static_cast<double>(N) * static_cast<double>(T) > 1e8) {
        throw std::invalid_argument("grid_dp_oracle_1d: grid too large for desk-scale memory");
    }
    for (const RequestBatch& b : inst.batches) {
        for (const Point& v : b.requests) {
            if (std::abs(v[0] - start) > radius + 1e-12) {
                throw std::invalid_argument("grid_dp_oracle_1d: request outside radius");
            }
        }
    }

    std::vector<double> xs(N);
    for (std::size_t i = 0; i < N; ++i)
        xs[i] = start + (static_cast<double>(i) - static_cast<double>(K)) * grid_step;
    const std::size_t window =
        static_cast<std::size_t>(std::floor(inst.move_limit / grid_step + 1e-9));

    const double D = inst.move_cost;
    const bool answer_first = inst.variant == Variant::AnswerFirst;
    const auto& Kops = kernels::active();

    std::vector<double> dp(N, kHuge), dp_next(N), serve(N), L(N), R(N), Lmin(N), Rmin(N);
    std::vector<std::int32_t> Lidx(N), Ridx(N);
    std::vector<std::vector<std::int32_t>> pred(T, std::vector<std::int32_t>(N));
    dp[K] = 0.0;

    for (std::size_t t = 0; t < T; ++t) {
        std::fill(serve.begin(), serve.end(), 0.0);
        for (const Point& v : inst.batches[t].requests)
            Kops.accum_abs_dev(serve.data(), xs.data(), N, v[0]);
        if (answer_first) {
            for (std::size_t i = 0; i < N; ++i) dp[i] += serve[i];
        }
        // dp_next[i] = min_{|i-j| <= window} dp[j] + D*|x_i - x_j| (+ serve[i])
        std::copy(dp.begin(), dp.end(), L.begin());
        Kops.axpy(L.data(), xs.data(), -D, N);
        std::copy(dp.begin(), dp.end(), R.begin());
        Kops.axpy(R.data(), xs.data(), D, N);
        kernels::sliding_min_backward(L.data(), N, window, Lmin.data(), Lidx.data());
        kernels::sliding_min_forward(R.data(), N, window, Rmin.data(), Ridx.data());
        for (std::size_t i = 0; i < N; ++i) {
            const double via_left = D * xs[i] + Lmin[i];
            const double via_right = -D * xs[i] + Rmin[i];
            if (via_left <= via_right) {
                dp_next[i] = via_left;
                pred[t][i] = Lidx[i];
            } else {
                dp_next[i] = via_right;
                pred[t][i] = Ridx[i];
            }
            if (!answer_first) dp_next[i] += serve[i];
        }
        dp.swap(dp_next);
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < N; ++i)
        if (dp[i] < dp[best]) best = i;

    std::vector<Point> positions(T + 1, Point{{0.0}});
    std::size_t idx = best;
    for (std::size_t t = T; t >= 1; --t) {
        positions[t][0] = xs[idx];
        idx = static_cast<std::size_t>(pred[t - 1][idx]);
    }
    positions[0][0] = xs[idx];  // always the start index

    SolverReport report;
    report.trace = make_trace(inst, std::move(positions), inst.move_limit);
    report.objective = dp[best];
    report.iterations = static_cast<int>(T);
    report.converged = true;
    report.grid = GridParams{grid_step, radius};
    return report;
}

}  // namespace msl
