#include "dpack/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace dpack {

WetnessProcess wetness_process(const Graph& g, const VertexMetric& m, int o) {
    int n = g.vertex_count();
    if (static_cast<int>(m.size()) != n) throw InputError("wetness_process: metric size mismatch");
    if (o < 0 || o >= n) throw InputError("wetness_process: root out of range");
    for (double v : m)
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("wetness_process: metric must be finite and > 0");

    WetnessProcess w;
    w.graph = &g;
    w.metric = m;
    w.root = o;
    w.reach.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    w.reach[static_cast<std::size_t>(o)] = m[static_cast<std::size_t>(o)];
    heap.emplace(w.reach[static_cast<std::size_t>(o)], o);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    while (!heap.empty()) {
        auto [du, u] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        for (int v : g.neighbors(u)) {
            double nd = du + m[static_cast<std::size_t>(v)];
            if (nd < w.reach[static_cast<std::size_t>(v)]) {
                w.reach[static_cast<std::size_t>(v)] = nd;
                heap.emplace(nd, v);
            }
        }
    }
    w.start.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (!std::isfinite(w.reach[static_cast<std::size_t>(v)]))
            throw InputError("wetness_process: vertex '" + g.id_of(v) + "' is not reachable from the root");
        w.start[static_cast<std::size_t>(v)] = w.reach[static_cast<std::size_t>(v)] - m[static_cast<std::size_t>(v)];
        w.end_time = std::max(w.end_time, w.reach[static_cast<std::size_t>(v)]);
    }
    w.breakpoints.reserve(2 * static_cast<std::size_t>(n) + 1);
    w.breakpoints.push_back(0.0);
    for (int v = 0; v < n; ++v) {
        w.breakpoints.push_back(w.start[static_cast<std::size_t>(v)]);
        w.breakpoints.push_back(w.reach[static_cast<std::size_t>(v)]);
    }
    std::sort(w.breakpoints.begin(), w.breakpoints.end());
    w.breakpoints.erase(std::unique(w.breakpoints.begin(), w.breakpoints.end()), w.breakpoints.end());
    return w;
}

std::vector<int> wet_set(const WetnessProcess& w, double h) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(w.reach.size()); ++v)
        if (w.reach[static_cast<std::size_t>(v)] <= h) out.push_back(v);
    return out;
}

std::vector<int> wetting_set(const WetnessProcess& w, double h) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(w.reach.size()); ++v)
        if (w.start[static_cast<std::size_t>(v)] <= h && h < w.reach[static_cast<std::size_t>(v)]) out.push_back(v);
    return out;
}

double wetness_value(const WetnessProcess& w, double h) {
    double s = 0.0;
    for (std::size_t v = 0; v < w.reach.size(); ++v) {
        if (w.reach[v] <= h)
            s += 1.0;
        else if (w.start[v] < h)
            s += (h - w.start[v]) / w.metric[v];
    }
    return s;
}

double wetness_slope(const WetnessProcess& w, double h) {
    double slope = 0.0;
    for (std::size_t v = 0; v < w.reach.size(); ++v)
        if (w.start[v] <= h && h < w.reach[v]) slope += 1.0 / w.metric[v];
    return slope;
}

std::vector<std::pair<double, double>> s_curve(const WetnessProcess& w) {
    std::vector<std::pair<double, double>> out;
    out.reserve(w.breakpoints.size());
    for (double b : w.breakpoints) out.emplace_back(b, wetness_value(w, b));
    return out;
}

namespace {

std::int64_t boundary_size_of(const Graph& g, const std::vector<int>& wet) {
    if (wet.empty()) return 0;
    return static_cast<std::int64_t>(vertex_boundary(g, wet).size());
}

}  // namespace

Profile wetness_envelope(const WetnessProcess& w) {
    const Graph& g = *w.graph;
    std::vector<std::pair<std::int64_t, std::int64_t>> observed;  // (|W_h|, |boundary|)
    for (std::size_t i = 0; i + 1 < w.breakpoints.size(); ++i) {
        double h = 0.5 * (w.breakpoints[i] + w.breakpoints[i + 1]);
        auto wet = wet_set(w, h);
        if (wet.empty() || static_cast<int>(wet.size()) == g.vertex_count()) continue;
        observed.emplace_back(static_cast<std::int64_t>(wet.size()), boundary_size_of(g, wet));
    }
    if (observed.empty()) throw InputError("wetness_envelope: no time with a proper nonempty wet set");
    std::int64_t n_max = 0;
    for (auto& [nw, bw] : observed) n_max = std::max(n_max, nw);
    // g(n) = min boundary among observed sets with at least n vertices, the
    // largest nondecreasing profile below every observation; the suffix-min
    // pass fills every slot because the largest size is itself observed
    std::vector<double> values(static_cast<std::size_t>(n_max),
                               std::numeric_limits<double>::infinity());
    for (auto& [nw, bw] : observed) {
        auto i = static_cast<std::size_t>(nw - 1);
        values[i] = std::min(values[i], static_cast<double>(bw));
    }
    for (std::size_t i = values.size(); i-- > 1;) values[i - 1] = std::min(values[i - 1], values[i]);
    return Profile(values);
}

FlowReport verify_flow_inequalities(const WetnessProcess& w, const Profile& growth, double d) {
    if (d < 1.0 + 1e-6) throw InputError("verify_flow_inequalities: d must be at least 1 + 1e-6");
    const Graph& g = *w.graph;
    FlowReport rep;
    rep.d = d;
    rep.monotone_growth = growth.nondecreasing();
    rep.pass = true;

    double slack = 1e-9;
    for (std::size_t i = 0; i + 1 < w.breakpoints.size(); ++i) {
        double h = 0.5 * (w.breakpoints[i] + w.breakpoints[i + 1]);
        double width = w.breakpoints[i + 1] - w.breakpoints[i];
        auto wet = wet_set(w, h);
        auto wetting = wetting_set(w, h);
        double mass = 0.0;  // sum over G_h of m^{d-1}
        for (int v : wetting) mass += std::pow(w.metric[static_cast<std::size_t>(v)], d - 1.0);
        rep.integral_lhs += width * mass;
        if (h >= w.end_time) continue;

        FlowCheck chk;
        chk.h = h;
        chk.s = wetness_value(w, h);
        chk.slope = wetness_slope(w, h);
        chk.wet = static_cast<std::int64_t>(wet.size());
        chk.wetting = static_cast<std::int64_t>(wetting.size());
        if (!wet.empty()) {
            auto bnd = vertex_boundary(g, wet);
            std::sort(bnd.begin(), bnd.end());
            chk.boundary = static_cast<std::int64_t>(bnd.size());
            chk.boundary_match = bnd == wetting;
            chk.premise = static_cast<double>(chk.boundary) >= growth(static_cast<double>(chk.wet)) - slack;
        }
        chk.pass_a = chk.s <= static_cast<double>(chk.wet + chk.wetting) + slack;
        chk.pass_b = !(static_cast<double>(chk.wetting) < 0.5 * chk.s) ||
                     static_cast<double>(chk.wet) >= 0.5 * chk.s - slack;
        double fs = std::min(growth(0.5 * chk.s), 0.5 * chk.s);
        chk.pass_c = static_cast<double>(chk.wetting) >= fs - slack;
        double rhs = mass > 0.0 ? std::pow(fs, d / (d - 1.0)) / std::pow(mass, 1.0 / (d - 1.0)) : 0.0;
        chk.pass_d = chk.slope >= rhs * (1.0 - slack);

        bool required = chk.pass_a && chk.pass_b && chk.boundary_match;
        if (chk.premise && rep.monotone_growth) required = required && chk.pass_c && chk.pass_d;
        rep.pass = rep.pass && required;
        if (!wet.empty() && !chk.premise) rep.premise_all = false;
        rep.checks.push_back(chk);
    }

    for (double mv : w.metric) rep.integral_rhs += std::pow(mv, d);
    rep.integral_ok =
        std::abs(rep.integral_lhs - rep.integral_rhs) <= 1e-9 * std::max(rep.integral_rhs, 1e-300);
    rep.pass = rep.pass && rep.integral_ok;
    return rep;
}

}  // namespace dpack
