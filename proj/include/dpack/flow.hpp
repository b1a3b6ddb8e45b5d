#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dpack/common.hpp"
#include "dpack/graph.hpp"
#include "dpack/modulus.hpp"

namespace dpack {

// Water spreading over a graph with a positive vertex metric m: the root o
// starts absorbing at time 0, and each vertex v starts absorbing the moment
// a neighbor is saturated, taking m(v) time units to saturate in turn. So v
// absorbs exactly during I_v = [d(v) - m(v), d(v)], where d is the vertex-
// weighted shortest-path distance from o (both endpoints counted).
struct WetnessProcess {
    const Graph* graph = nullptr;  // not owned; must outlive the process
    VertexMetric metric;
    int root = 0;
    std::vector<double> reach;        // d(v), the saturation time
    std::vector<double> start;        // d(v) - m(v)
    double end_time = 0.0;            // max d(v); everything is wet after this
    std::vector<double> breakpoints;  // sorted distinct interval endpoints, with 0
};

// Throws InputError unless the metric is finite and strictly positive and
// every vertex is reachable from o.
WetnessProcess wetness_process(const Graph& g, const VertexMetric& m, int o);

// W_h: vertices already saturated at time h, i.e. d(v) <= h.
std::vector<int> wet_set(const WetnessProcess& w, double h);

// G_h: vertices absorbing at time h, i.e. d(v) - m(v) <= h < d(v). Away
// from breakpoints and while W_h is nonempty this equals boundary(W_h).
std::vector<int> wetting_set(const WetnessProcess& w, double h);

// s(h): total water absorbed by time h, counting each saturated vertex as 1
// and each absorbing vertex by its saturated fraction. Piecewise linear and
// nondecreasing, with slope sum over G_h of 1/m(v) between breakpoints.
double wetness_value(const WetnessProcess& w, double h);
double wetness_slope(const WetnessProcess& w, double h);

// The exact graph of s: (h, s(h)) at every breakpoint.
std::vector<std::pair<double, double>> s_curve(const WetnessProcess& w);

// The largest nondecreasing profile g with g(|W_h|) <= |boundary(W_h)| at
// every checked time, built from the process itself. Feeding it back into
// verify_flow_inequalities makes the growth premise hold by construction.
Profile wetness_envelope(const WetnessProcess& w);

// One checked time (the midpoint of one linearity interval of s).
struct FlowCheck {
    double h = 0.0;
    double s = 0.0;      // s(h)
    double slope = 0.0;  // ds/dh at h
    std::int64_t wet = 0, wetting = 0, boundary = 0;
    bool boundary_match = true;  // G_h == boundary(W_h), skipped while W_h is empty
    bool premise = true;         // |boundary(W_h)| >= g(|W_h|), skipped while W_h is empty
    bool pass_a = false;         // s <= |W_h| + |G_h|
    bool pass_b = false;         // |G_h| < s/2 implies |W_h| >= s/2
    bool pass_c = false;         // |G_h| >= f(s), f(x) = min(g(x/2), x/2)
    bool pass_d = false;         // ds/dh >= f(s)^{d/(d-1)} / (sum_{G_h} m^{d-1})^{1/(d-1)}
};

struct FlowReport {
    double d = 2.0;
    std::vector<FlowCheck> checks;
    bool monotone_growth = true;  // profile is nondecreasing (the c/d chain needs it)
    bool premise_all = true;      // premise held at every checked time with W_h nonempty
    // a, b, and the boundary identity must always hold; c and d count only at
    // times where the premise holds and the profile is monotone.
    bool pass = false;
    double integral_lhs = 0.0;  // integral of sum_{G_h} m^{d-1} dh, swept interval by interval
    double integral_rhs = 0.0;  // sum_v m^d
    bool integral_ok = false;   // relative agreement to 1e-9
};

// Sweeps every linearity interval of s and checks, at its midpoint, the
// counting inequalities relating s, the saturated set, the absorbing set,
// and the growth profile g, plus the exact area identity that the absorbing
// mass integrates to sum m^d. d plays the role of an exponent and must be
// at least 1 + 1e-6.
FlowReport verify_flow_inequalities(const WetnessProcess& w, const Profile& growth, double d);

}  // namespace dpack
