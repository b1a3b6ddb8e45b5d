#include "dpack/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>

namespace dpack {

void check_connector(const Connector& c) {
    if (c.graph == nullptr) throw InputError("connector: missing graph");
    if (c.source.empty() || c.target.empty()) throw InputError("connector: source and target must be nonempty");
    int n = c.graph->vertex_count();
    std::vector<char> in_source(static_cast<std::size_t>(n), 0);
    for (int v : c.source) {
        if (v < 0 || v >= n) throw InputError("connector: source vertex out of range");
        in_source[static_cast<std::size_t>(v)] = 1;
    }
    for (int v : c.target) {
        if (v < 0 || v >= n) throw InputError("connector: target vertex out of range");
        if (in_source[static_cast<std::size_t>(v)])
            throw InputError("connector: source and target overlap at '" + c.graph->id_of(v) + "'");
    }
}

double path_length(const Graph& g, const VertexMetric& m, const std::vector<int>& path) {
    if (path.empty()) throw InputError("path_length: empty path");
    double total = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        int v = path[i];
        if (v < 0 || v >= g.vertex_count()) throw InputError("path_length: vertex out of range");
        if (i > 0 && !g.adjacent(path[i - 1], v))
            throw InputError("path_length: vertices '" + g.id_of(path[i - 1]) + "' and '" + g.id_of(v) +
                             "' are not adjacent");
        total += m[static_cast<std::size_t>(v)];
    }
    return total;
}

ShortestPathResult shortest_path(const Graph& g, const VertexMetric& m, const std::vector<int>& source,
                                 const std::vector<int>& target, const std::vector<char>* forbidden) {
    int n = g.vertex_count();
    if (static_cast<int>(m.size()) != n) throw InputError("shortest_path: metric size mismatch");
    for (double w : m)
        if (!(w >= 0.0) || !std::isfinite(w)) throw InputError("shortest_path: metric must be finite and >= 0");
    auto blocked = [&](int v) { return forbidden != nullptr && (*forbidden)[static_cast<std::size_t>(v)]; };

    std::vector<double> dist(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    std::vector<char> is_target(static_cast<std::size_t>(n), 0);
    for (int t : target)
        if (!blocked(t)) is_target[static_cast<std::size_t>(t)] = 1;

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (int s : source)
        if (!blocked(s) && m[static_cast<std::size_t>(s)] < dist[static_cast<std::size_t>(s)]) {
            dist[static_cast<std::size_t>(s)] = m[static_cast<std::size_t>(s)];
            heap.emplace(dist[static_cast<std::size_t>(s)], s);
        }
    ShortestPathResult out;
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        if (is_target[static_cast<std::size_t>(u)]) {
            out.connected = true;
            out.length = du;
            for (int v = u; v >= 0; v = parent[static_cast<std::size_t>(v)]) out.path.push_back(v);
            std::reverse(out.path.begin(), out.path.end());
            return out;
        }
        for (int v : g.neighbors(u)) {
            if (done[static_cast<std::size_t>(v)] || blocked(v)) continue;
            double nd = du + m[static_cast<std::size_t>(v)];
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                parent[static_cast<std::size_t>(v)] = u;
                heap.emplace(nd, v);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Restricted dual solver
//
// Primal: min sum_v m_v^p subject to sum_{v in path_j} m_v >= 1. The dual in
// lambda >= 0 is concave and smooth enough for projected gradient:
//
//   G(lambda) = sum_j lambda_j - (p-1) sum_v (mu_v / p)^{p/(p-1)},
//   mu_v = sum_{j : v in path_j} lambda_j,   m_v = (mu_v / p)^{1/(p-1)},
//   dG/dlambda_j = 1 - Length_j(m).
//
// The returned metric is the primal minimizer once the duality gap closes.
// ---------------------------------------------------------------------------

namespace {

struct DualWork {
    double p;
    int n_vertices;
    const std::vector<std::vector<int>>* paths;
    std::vector<double> mu, m;

    void metric_from(const std::vector<double>& lambda) {
        mu.assign(static_cast<std::size_t>(n_vertices), 0.0);
        for (std::size_t j = 0; j < paths->size(); ++j)
            for (int v : (*paths)[j]) mu[static_cast<std::size_t>(v)] += lambda[j];
        m.resize(static_cast<std::size_t>(n_vertices));
        double e = 1.0 / (p - 1.0);
        for (int v = 0; v < n_vertices; ++v)
            m[static_cast<std::size_t>(v)] = std::pow(mu[static_cast<std::size_t>(v)] / p, e);
    }

    // call after metric_from on the same lambda
    double dual_value(const std::vector<double>& lambda) const {
        double s = 0.0;
        for (double l : lambda) s += l;
        double q = p / (p - 1.0);
        double t = 0.0;
        for (int v = 0; v < n_vertices; ++v) t += std::pow(mu[static_cast<std::size_t>(v)] / p, q);
        return s - (p - 1.0) * t;
    }

    void gradient(std::vector<double>& grad) const {
        grad.resize(paths->size());
        for (std::size_t j = 0; j < paths->size(); ++j) {
            double len = 0.0;
            for (int v : (*paths)[j]) len += m[static_cast<std::size_t>(v)];
            grad[j] = 1.0 - len;
        }
    }

    double primal_sum() const {
        double q = p / (p - 1.0);
        double f = 0.0;
        for (int v = 0; v < n_vertices; ++v) f += std::pow(mu[static_cast<std::size_t>(v)] / p, q);
        return f;
    }

    double min_restricted_length() const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& path : *paths) {
            double len = 0.0;
            for (int v : path) len += m[static_cast<std::size_t>(v)];
            best = std::min(best, len);
        }
        return best;
    }
};

struct SolveStats {
    int inner_iterations = 0;
    bool gap_closed = false;
    double dual_value = 0.0;  // lower bound on the restricted (hence full) optimum
};

// Projected gradient ascent with momentum, backtracking steps, and a restart
// whenever the momentum point overshoots. `step` persists across calls so a
// warm-started solve keeps its scale.
SolveStats solve_restricted(DualWork& work, std::vector<double>& lambda, double gap_tol, int max_inner,
                            double& step) {
    SolveStats stats;
    if (work.paths->empty()) return stats;
    std::size_t k = work.paths->size();
    lambda.resize(k, 0.0);
    std::vector<double> y = lambda, grad(k), cand(k), prev(k);
    double theta = 1.0;
    bool at_base = true;  // y coincides with lambda, so a plain ascent step is monotone
    work.metric_from(lambda);
    double g_lambda = work.dual_value(lambda);

    auto try_gap = [&]() {
        // duality gap against the feasible rescaling of the current metric
        work.metric_from(lambda);
        double min_len = work.min_restricted_length();
        if (!(min_len > 0.0)) return false;
        double feas = work.primal_sum() / std::pow(min_len, work.p);
        double gap = feas - g_lambda;
        return gap <= gap_tol * std::max(feas, 1e-300);
    };

    for (int it = 0; it < max_inner; ++it) {
        ++stats.inner_iterations;
        work.metric_from(y);
        double g_y = work.dual_value(y);
        work.gradient(grad);
        double g_cand = 0.0;
        while (true) {
            double lin = 0.0, sq = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                cand[j] = std::max(0.0, y[j] + step * grad[j]);
                double d = cand[j] - y[j];
                lin += grad[j] * d;
                sq += d * d;
            }
            work.metric_from(cand);
            g_cand = work.dual_value(cand);
            if (g_cand + 1e-18 >= g_y + lin - sq / (2.0 * step)) break;
            step *= 0.5;
            if (step < 1e-18) break;
        }
        if (g_cand < g_lambda && !at_base) {
            // momentum overshot: restart from the last good point
            y = lambda;
            theta = 1.0;
            at_base = true;
            continue;
        }
        double theta_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        prev = lambda;
        lambda = cand;
        g_lambda = std::max(g_lambda, g_cand);
        for (std::size_t j = 0; j < k; ++j) y[j] = lambda[j] + ((theta - 1.0) / theta_new) * (lambda[j] - prev[j]);
        theta = theta_new;
        at_base = false;
        step *= 1.1;
        if ((it & 7) == 7 && try_gap()) {
            stats.gap_closed = true;
            break;
        }
    }
    if (!stats.gap_closed) stats.gap_closed = try_gap();
    work.metric_from(lambda);
    stats.dual_value = g_lambda;
    return stats;
}

void check_options(const ModulusOptions& opt) {
    if (opt.p < 1.0 + 1e-6) throw InputError("modulus: p must be at least 1 + 1e-6");
    if (!(opt.tol > 0.0) || opt.tol >= 0.5) throw InputError("modulus: tol must lie in (0, 0.5)");
    if (opt.max_iter < 1) throw InputError("modulus: max_iter must be >= 1");
    if (!(opt.length_bound > 0.0)) throw InputError("modulus: length_bound must be positive");
    if (opt.paths_per_round < 1) throw InputError("modulus: paths_per_round must be >= 1");
}

}  // namespace

ModulusResult modulus(const Connector& c, const ModulusOptions& opt) {
    check_connector(c);
    check_options(opt);
    const Graph& g = *c.graph;
    int n = g.vertex_count();

    ModulusResult res;
    res.p = opt.p;
    res.metric.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<std::vector<int>> paths;
    std::vector<double> lambda;
    std::set<std::vector<int>> seen;
    DualWork work{opt.p, n, &paths, {}, {}};
    double step = 1.0;
    double gap_tol = opt.tol * 0.1;
    const int budget_cap = 200000;
    int inner_budget = 2000;
    double last_dual = 0.0;
    // give up once full-budget rounds stop making headway, leaving
    // converged = false rather than burning max_iter rounds in place
    double best_width = std::numeric_limits<double>::infinity();
    double best_length = 0.0;
    int stalls = 0;
    std::vector<char> in_source(static_cast<std::size_t>(n), 0);
    for (int s : c.source) in_source[static_cast<std::size_t>(s)] = 1;

    for (int round = 0; round < opt.max_iter; ++round) {
        ++res.iterations;
        auto sp = shortest_path(g, res.metric, c.source, c.target);
        if (!sp.connected) {
            if (!paths.empty())
                throw InvariantError("modulus: connector lost connectivity mid-solve");
            res.value = 0.0;
            res.vel = std::numeric_limits<double>::infinity();
            res.disconnected = true;
            res.converged = true;
            res.min_path_length = std::numeric_limits<double>::infinity();
            return res;
        }
        res.min_path_length = sp.length;
        if (sp.length >= 1.0 - opt.tol) {
            // every path is near-admissible; certify the value by squeezing
            // the true optimum between the restricted dual bound and the
            // rescaled-to-feasible primal
            double value_now = 0.0;
            for (double mv : res.metric) value_now += std::pow(mv, opt.p);
            double upper = value_now / std::pow(sp.length, opt.p);
            double width = upper - last_dual;
            if (width <= opt.tol * std::max(upper, 1e-300)) {
                res.converged = true;
                break;
            }
            if (width < best_width * 0.99) {
                best_width = width;
                stalls = 0;
            } else if (inner_budget >= budget_cap && ++stalls >= 6) {
                break;
            }
            // feasible but not provably optimal yet: solve harder
            inner_budget = std::min(inner_budget * 2, budget_cap);
            last_dual = solve_restricted(work, lambda, gap_tol, inner_budget, step).dual_value;
            res.metric = work.m;
            continue;
        }
        if (seen.count(sp.path)) {
            // the violated path is already a constraint: the restricted
            // solve was not accurate enough, tighten and redo
            if (sp.length > best_length + opt.tol * 1e-3) {
                best_length = sp.length;
                stalls = 0;
            } else if (inner_budget >= budget_cap && ++stalls >= 6) {
                break;
            }
            gap_tol = std::max(gap_tol * 0.2, 1e-15);
            inner_budget = std::min(inner_budget * 2, budget_cap);
        } else {
            stalls = 0;
            seen.insert(sp.path);
            paths.push_back(sp.path);
            lambda.push_back(0.0);
            // grab further violated paths that reuse no interior vertex
            std::vector<char> forbidden(static_cast<std::size_t>(n), 0);
            auto mark = [&](const std::vector<int>& path) {
                for (int v : path)
                    if (!in_source[static_cast<std::size_t>(v)]) forbidden[static_cast<std::size_t>(v)] = 1;
            };
            mark(sp.path);
            for (int extra = 1; extra < opt.paths_per_round; ++extra) {
                auto more = shortest_path(g, res.metric, c.source, c.target, &forbidden);
                if (!more.connected || more.length >= 1.0 - opt.tol || seen.count(more.path)) break;
                seen.insert(more.path);
                paths.push_back(more.path);
                lambda.push_back(0.0);
                mark(more.path);
            }
        }
        last_dual = solve_restricted(work, lambda, gap_tol, inner_budget, step).dual_value;
        res.metric = work.m;
    }

    // normalize to exact admissibility: the certified value is that of the
    // metric rescaled so its shortest connecting path has length one
    if (res.min_path_length > 0.0 && std::isfinite(res.min_path_length)) {
        for (double& mv : res.metric) mv /= res.min_path_length;
        res.min_path_length = 1.0;
    }
    res.value = 0.0;
    for (double mv : res.metric) res.value += std::pow(mv, opt.p);
    res.vel = res.value > 0.0 ? 1.0 / res.value : std::numeric_limits<double>::infinity();
    for (const auto& path : paths) {
        double len = path_length(g, res.metric, path);
        if (len <= 1.0 + opt.tol) res.active_paths.push_back(path);
    }

    if (opt.length_bound != 1.0) {
        double b = opt.length_bound;
        for (double& mv : res.metric) mv *= b;
        res.value *= std::pow(b, opt.p);
        res.vel = res.value > 0.0 ? 1.0 / res.value : std::numeric_limits<double>::infinity();
        res.min_path_length *= b;
    }
    return res;
}

std::vector<std::vector<int>> enumerate_paths(const Graph& g, const std::vector<int>& source,
                                              const std::vector<int>& target, std::int64_t guard) {
    int n = g.vertex_count();
    std::vector<char> is_source(static_cast<std::size_t>(n), 0), is_target(static_cast<std::size_t>(n), 0);
    for (int s : source) is_source[static_cast<std::size_t>(s)] = 1;
    for (int t : target) is_target[static_cast<std::size_t>(t)] = 1;

    std::vector<std::vector<int>> out;
    std::vector<char> on_path(static_cast<std::size_t>(n), 0);
    std::vector<int> path;
    std::int64_t work = 0;

    // interior vertices avoid both terminals: any longer path through them
    // only adds vertices to an already-required constraint
    std::function<void(int)> dfs = [&](int u) {
        if (++work > guard * 64) throw InputError("enumerate_paths: search exceeded the path guard");
        path.push_back(u);
        on_path[static_cast<std::size_t>(u)] = 1;
        if (is_target[static_cast<std::size_t>(u)]) {
            out.push_back(path);
            if (static_cast<std::int64_t>(out.size()) > guard)
                throw InputError("enumerate_paths: more than " + std::to_string(guard) + " paths");
        } else {
            for (int v : g.neighbors(u)) {
                if (on_path[static_cast<std::size_t>(v)]) continue;
                if (is_source[static_cast<std::size_t>(v)]) continue;
                dfs(v);
            }
        }
        on_path[static_cast<std::size_t>(u)] = 0;
        path.pop_back();
    };
    std::vector<int> starts = source;
    std::sort(starts.begin(), starts.end());
    for (int s : starts)
        if (!is_target[static_cast<std::size_t>(s)]) dfs(s);
    return out;
}

double modulus_oracle(const Connector& c, double p, std::int64_t path_guard) {
    check_connector(c);
    if (p < 1.0 + 1e-6) throw InputError("modulus_oracle: p must be at least 1 + 1e-6");
    auto paths = enumerate_paths(*c.graph, c.source, c.target, path_guard);
    if (paths.empty()) return 0.0;

    int n = c.graph->vertex_count();
    DualWork work{p, n, &paths, {}, {}};
    std::vector<double> lambda(paths.size(), 0.0), grad(paths.size()), cand(paths.size());
    double step = 1.0;
    work.metric_from(lambda);
    double g_lambda = work.dual_value(lambda);
    double feas = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 1000000; ++it) {
        work.metric_from(lambda);
        work.gradient(grad);
        double g_cur = g_lambda;
        while (true) {
            double lin = 0.0, sq = 0.0;
            for (std::size_t j = 0; j < lambda.size(); ++j) {
                cand[j] = std::max(0.0, lambda[j] + step * grad[j]);
                double d = cand[j] - lambda[j];
                lin += grad[j] * d;
                sq += d * d;
            }
            work.metric_from(cand);
            double g_cand = work.dual_value(cand);
            if (g_cand + 1e-18 >= g_cur + lin - sq / (2.0 * step) || step < 1e-18) {
                lambda = cand;
                g_lambda = g_cand;
                break;
            }
            step *= 0.5;
        }
        step *= 1.1;
        if ((it & 15) == 15) {
            work.metric_from(lambda);
            double min_len = work.min_restricted_length();
            if (min_len > 0.0) {
                feas = work.primal_sum() / std::pow(min_len, p);
                if (feas - g_lambda <= 1e-8 * std::max(feas, 1e-300)) return feas;
            }
        }
    }
    if (!std::isfinite(feas)) throw InvariantError("modulus_oracle: gradient ascent failed to progress");
    return feas;
}

// ---------------------------------------------------------------------------
// Probes, certificate, divergence table
// ---------------------------------------------------------------------------

namespace {

struct LinearFit {
    double slope = 0.0, intercept = 0.0;
    bool ok = false;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit f;
    std::size_t n = x.size();
    if (n < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double det = static_cast<double>(n) * sxx - sx * sx;
    if (std::abs(det) < 1e-12) return f;
    f.slope = (static_cast<double>(n) * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / static_cast<double>(n);
    f.ok = true;
    return f;
}

}  // namespace

const char* vel_verdict_name(VelVerdict v) {
    switch (v) {
        case VelVerdict::ParabolicTrend: return "parabolic-trend";
        case VelVerdict::TransientTrend: return "transient-trend";
        default: return "inconclusive";
    }
}

VelProbeResult vel_probe(const Graph& g, int o, double p, const std::vector<int>& radii,
                         const ModulusOptions& opt, int threads) {
    if (radii.empty()) throw InputError("vel_probe: radii must be nonempty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] < 1) throw InputError("vel_probe: radii must be >= 1");
        if (i > 0 && radii[i] <= radii[i - 1]) throw InputError("vel_probe: radii must be strictly increasing");
    }
    auto dist = g.bfs_distances(o);
    int ecc = g.eccentricity(o);
    if (radii.back() >= ecc)
        throw InputError("vel_probe: radius " + std::to_string(radii.back()) +
                         " leaves no vertices beyond it (eccentricity " + std::to_string(ecc) + ")");

    VelProbeResult out;
    out.points.resize(radii.size());
    ModulusOptions local = opt;
    local.p = p;
    parallel_for(radii.size(), threads, [&](std::size_t i) {
        Connector c;
        c.graph = &g;
        c.source = {o};
        for (int v = 0; v < g.vertex_count(); ++v)
            if (dist[static_cast<std::size_t>(v)] > radii[i]) c.target.push_back(v);
        out.points[i].radius = radii[i];
        out.points[i].result = modulus(c, local);
    });

    for (std::size_t i = 1; i < out.points.size(); ++i) {
        double prev = out.points[i - 1].result.value;
        double cur = out.points[i].result.value;
        if (cur > prev * (1.0 + 100.0 * local.tol))
            throw InvariantError("vel_probe: modulus increased from radius " +
                                 std::to_string(out.points[i - 1].radius) + " to " +
                                 std::to_string(out.points[i].radius));
    }

    std::vector<double> mod, logR, invR;
    for (const auto& pt : out.points) {
        if (pt.result.value > 0.0 && pt.result.converged) {
            mod.push_back(pt.result.value);
            logR.push_back(std::log(static_cast<double>(pt.radius)));
            invR.push_back(1.0 / static_cast<double>(pt.radius));
        }
    }
    if (mod.size() < 3) return out;

    // parabolic shape: 1/Mod linear in log R
    std::vector<double> recip(mod.size());
    for (std::size_t i = 0; i < mod.size(); ++i) recip[i] = 1.0 / mod[i];
    auto fa = fit_line(logR, recip);
    double rss_a = std::numeric_limits<double>::infinity();
    if (fa.ok) {
        rss_a = 0.0;
        for (std::size_t i = 0; i < mod.size(); ++i) {
            double denom = fa.slope * logR[i] + fa.intercept;
            if (denom <= 1e-12) {
                rss_a = std::numeric_limits<double>::infinity();
                break;
            }
            double r = mod[i] - 1.0 / denom;
            rss_a += r * r;
        }
    }
    // transient shape: Mod linear in 1/R with a positive limit
    auto fb = fit_line(invR, mod);
    double rss_b = std::numeric_limits<double>::infinity();
    if (fb.ok) {
        rss_b = 0.0;
        for (std::size_t i = 0; i < mod.size(); ++i) {
            double r = mod[i] - (fb.intercept + fb.slope * invR[i]);
            rss_b += r * r;
        }
    }
    out.log_fit_rss = rss_a;
    out.limit_fit_rss = rss_b;
    out.limit_estimate = fb.ok ? fb.intercept : std::numeric_limits<double>::quiet_NaN();

    double first = mod.front(), last = mod.back(), peak = *std::max_element(mod.begin(), mod.end());
    if (last > 0.9 * first) {
        out.verdict = (fb.ok && fb.intercept > 0.02 * peak) ? VelVerdict::TransientTrend
                                                            : VelVerdict::Inconclusive;
    } else if (rss_a < rss_b && fa.ok && fa.slope > 0.0) {
        out.verdict = VelVerdict::ParabolicTrend;
    } else if (fb.ok && fb.intercept > 0.02 * peak) {
        out.verdict = VelVerdict::TransientTrend;
    } else if (fb.ok && fb.intercept <= 0.02 * peak && last <= 0.8 * first) {
        out.verdict = VelVerdict::ParabolicTrend;
    }
    return out;
}

VelCertificate vel_certificate(const Graph& g, int o, const Profile& growth, int N, double p) {
    if (N < 0) throw InputError("vel_certificate: N must be >= 0");
    if (p < 1.0 + 1e-6) throw InputError("vel_certificate: p must be at least 1 + 1e-6");
    auto hs = hull_sequence(g, o, N + 1);
    if (static_cast<int>(hs.layers.size()) < N + 2)
        throw InputError("vel_certificate: hull exhausts the graph before layer " + std::to_string(N + 1));

    VelCertificate cert;
    cert.metric.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
    double e = 1.0 / (p - 1.0);
    double denom = 0.0;
    for (int k = 0; k <= N; ++k) {
        std::int64_t nk = hs.n[static_cast<std::size_t>(k)];
        cert.n.push_back(nk);
        if (nk > static_cast<std::int64_t>(growth.size()))
            throw InputError("vel_certificate: profile shorter than hull size " + std::to_string(nk));
        double gk = growth.at_index(nk);
        double mk = std::pow(gk, -e);
        cert.length_bound += mk;
        for (int v : hs.layers[static_cast<std::size_t>(k + 1)]) cert.metric[static_cast<std::size_t>(v)] = mk;
        denom += static_cast<double>(hs.layers[static_cast<std::size_t>(k + 1)].size()) * std::pow(mk, p);
    }
    // the root contributes too: every admissible path starts at o
    double m0 = std::pow(growth.at_index(hs.n[0]), -e);
    cert.metric[static_cast<std::size_t>(o)] = m0;
    cert.length_bound += m0;
    denom += std::pow(m0, p);
    cert.lower_bound = std::pow(cert.length_bound, p) / denom;
    return cert;
}

DivergenceCheck divergence_check(const Profile& g, double q) {
    if (!(q > 0.0)) throw InputError("divergence_check: exponent must be positive");
    DivergenceCheck out;
    out.q = q;
    out.monotone = g.nondecreasing();
    std::int64_t n = static_cast<std::int64_t>(g.size());
    double sum = 0.0;
    std::int64_t next_mark = 1;
    std::vector<double> block_sums;  // over (2^{j-1}, 2^j]
    double block = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
        double term = std::pow(g.at_index(i), -q);
        sum += term;
        block += term;
        if (i == next_mark) {
            out.partial_sums.emplace_back(i, sum);
            block_sums.push_back(block);
            block = 0.0;
            next_mark *= 2;
        }
    }
    if (out.partial_sums.empty() || out.partial_sums.back().first != n) out.partial_sums.emplace_back(n, sum);
    // need complete blocks out to (4, 8] before the tail ratio says anything
    if (block_sums.size() >= 4) {
        double prev = block_sums[block_sums.size() - 2];
        double lastb = block_sums[block_sums.size() - 1];
        if (prev > 0.0) {
            out.tail_ratio = lastb / prev;
            if (out.tail_ratio >= 0.8)
                out.trend = "diverging-trend";
            else if (out.tail_ratio <= 0.7)
                out.trend = "converging-trend";
        }
    }
    return out;
}

}  // namespace dpack
