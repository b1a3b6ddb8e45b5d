#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dpack/common.hpp"
#include "dpack/graph.hpp"

namespace dpack {

// Nonnegative vertex weights, dense over a graph's vertex indices.
using VertexMetric = std::vector<double>;

// A family of paths: everything from the source set to the target set.
struct Connector {
    const Graph* graph = nullptr;
    std::vector<int> source;
    std::vector<int> target;
};

// Throws InputError unless sets are nonempty, disjoint, in range.
void check_connector(const Connector& c);

// Sum of m over all vertices of the path, both endpoints included.
// Consecutive vertices must be adjacent.
double path_length(const Graph& g, const VertexMetric& m, const std::vector<int>& path);

struct ShortestPathResult {
    bool connected = false;
    std::vector<int> path;  // source..target, empty when disconnected
    double length = std::numeric_limits<double>::infinity();
};

// Vertex-weighted Dijkstra from the source set to the nearest target.
// Vertices in `forbidden` (optional, dense flags) are impassable.
ShortestPathResult shortest_path(const Graph& g, const VertexMetric& m, const std::vector<int>& source,
                                 const std::vector<int>& target,
                                 const std::vector<char>* forbidden = nullptr);

struct ModulusOptions {
    double p = 2.0;          // strictly above 1; values below 1 + 1e-6 are rejected
    double tol = 1e-6;
    int max_iter = 10000;    // constraint-generation rounds
    double length_bound = 1.0;  // paths must have length >= this
    int paths_per_round = 8;    // vertex-disjoint violated paths added per round
};

struct ModulusResult {
    double p = 2.0;
    double value = 0.0;  // Mod_p
    double vel = std::numeric_limits<double>::infinity();  // 1 / value
    VertexMetric metric;
    std::vector<std::vector<int>> active_paths;  // length <= bound + tol
    int iterations = 0;
    double min_path_length = std::numeric_limits<double>::infinity();
    bool converged = false;
    bool disconnected = false;
};

// Discrete p-modulus of the connector's path family:
//
//   Mod_p = min sum_v m(v)^p   over m >= 0 with Length_m(path) >= 1
//                              for every source-to-target path.
//
// Solved by constraint generation: keep a working set of paths, solve the
// restricted convex program through its dual (projected gradient ascent with
// momentum, backtracking steps, and restarts on objective decrease), then ask
// a vertex-weighted Dijkstra for the globally shortest path and admit it if
// it is still short. On exit the restricted problem's duality gap is below
// tol and every path in the graph has length >= (1 - tol) * length_bound.
// A disconnected connector yields value 0, vel infinity, flag set.
ModulusResult modulus(const Connector& c, const ModulusOptions& opt = {});

// Same program with every simple source-to-target path materialized (refuses
// beyond `path_guard` paths) and solved by plain projected gradient to a 1e-8
// duality gap. Slow; meant as an independent cross-check.
double modulus_oracle(const Connector& c, double p, std::int64_t path_guard = 100000);

// Every simple path from the source set to the target set whose interior
// avoids both sets. Throws InputError past the guard.
std::vector<std::vector<int>> enumerate_paths(const Graph& g, const std::vector<int>& source,
                                              const std::vector<int>& target, std::int64_t guard);

enum class VelVerdict { ParabolicTrend, TransientTrend, Inconclusive };

struct VelProbePoint {
    int radius = 0;
    ModulusResult result;
};

struct VelProbeResult {
    std::vector<VelProbePoint> points;
    // reciprocal fit: 1/Mod against a + b log R, the parabolic shape
    double log_fit_rss = std::numeric_limits<double>::quiet_NaN();
    // limit fit: Mod against a + b / R, the transient shape; a is the limit
    double limit_fit_rss = std::numeric_limits<double>::quiet_NaN();
    double limit_estimate = std::numeric_limits<double>::quiet_NaN();
    VelVerdict verdict = VelVerdict::Inconclusive;
};

// Modulus of paths from o to everything outside the radius-R ball, for each
// R in `radii` (strictly increasing, below the eccentricity of o). The
// sequence must be non-increasing in R, which is asserted. The two fits and
// the verdict are trend diagnostics only, never a proof of (non-)parabolicity.
VelProbeResult vel_probe(const Graph& g, int o, double p, const std::vector<int>& radii,
                         const ModulusOptions& opt = {}, int threads = 1);

const char* vel_verdict_name(VelVerdict v);

struct VelCertificate {
    VertexMetric metric;
    double length_bound = 0.0;  // every admissible path is at least this long
    double lower_bound = 0.0;   // length_bound^p / sum m^p <= VEL
    std::vector<std::int64_t> n;  // hull sizes n_0 .. n_N
};

// Certificate metric built from a boundary-growth profile g on the hull
// sequence around o: layer ∂W_k gets m = g(n_k)^{-1/(p-1)} for k = 0..N, and
// the root gets g(n_0)^{-1/(p-1)}. Every path from o to the complement of
// W_N passes the root and one distinct vertex of each layer, so its length
// is at least the sum of those terms, and length^p / ||m||_p^p bounds the
// p-VEL of that connector from below.
VelCertificate vel_certificate(const Graph& g, int o, const Profile& growth, int N, double p);

struct DivergenceCheck {
    double q = 0.0;
    std::vector<std::pair<std::int64_t, double>> partial_sums;  // at 2^j and n_max
    double tail_ratio = std::numeric_limits<double>::quiet_NaN();
    bool monotone = true;
    // diverging-trend / converging-trend / inconclusive
    std::string trend = "inconclusive";
};

// Partial sums of sum_n g(n)^{-q}. Dyadic block increments that keep pace
// (last/previous >= 0.8) read as diverging, clearly shrinking ones
// (<= 0.7) as converging; in between is inconclusive. Desk-scale diagnostic.
DivergenceCheck divergence_check(const Profile& g, double q);

}  // namespace dpack
