#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dpack/common.hpp"

namespace dpack {

// Finite simple undirected graph. Vertices carry string identifiers that
// are stable across I/O; all algorithms work on dense indices.
class Graph {
  public:
    Graph() = default;

    // Adds a vertex and returns its index. Duplicate ids are an input error.
    int add_vertex(std::string id);

    // Adds an undirected edge by index. Loops are rejected, duplicates ignored.
    void add_edge(int u, int v);
    void add_edge_ids(const std::string& u, const std::string& v);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    std::int64_t edge_count() const { return edge_count_; }

    // Index of the given id, or -1.
    int index_of(const std::string& id) const;
    int require_index(const std::string& id) const;  // throws InputError if absent
    const std::string& id_of(int v) const { return ids_[static_cast<std::size_t>(v)]; }

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool adjacent(int u, int v) const;

    const std::vector<std::string>& vertex_ids() const { return ids_; }

    // BFS hop distances from root; unreachable vertices get -1.
    std::vector<int> bfs_distances(int root) const;

    bool connected() const;
    int eccentricity(int root) const;

  private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> adj_;  // each list kept sorted
    std::int64_t edge_count_ = 0;
};

struct RootedGraph {
    Graph graph;
    int root = 0;
};

// {v not in W : v has a neighbor in W}. W is given by indices and must be
// within range; the result is sorted.
std::vector<int> vertex_boundary(const Graph& g, const std::vector<int>& w);

// Induced subgraph on {v : dist(o, v) <= k}, rooted at o. Vertex ids are
// preserved.
RootedGraph ball(const Graph& g, int o, int k);

// Hull exploration W_0 = {o}, W_{k+1} = W_k union boundary(W_k), stopping
// early once W_k = V. layers[0] = {o} and layers[k+1] = boundary(W_k), so
// W_k is the union of layers[0..k] and sizes() gives |W_k|.
struct HullSequence {
    std::vector<std::vector<int>> layers;
    std::vector<std::int64_t> n;              // n[k] = |W_k|
    std::vector<std::int64_t> boundary_size;  // |boundary(W_k)|, 0 once W_k = V
    bool reached_all = false;
};
HullSequence hull_sequence(const Graph& g, int o, int k_max);

// Root-preserving graph isomorphism test. Backtracking search pruned by
// iterated color refinement seeded with distance-to-root and degree.
bool rooted_isomorphic(const RootedGraph& a, const RootedGraph& b);

// Canonical key of the rooted-isomorphism class: the lexicographically
// minimal adjacency encoding over orderings consistent with the refinement,
// found by individualization backtracking. Equal keys iff rooted-isomorphic.
std::string canonical_key(const RootedGraph& rg);

// Benjamini-Schramm distance between rooted graphs:
// 1 / (1 + sup{k : balls of radius k around the roots are isomorphic}),
// and 0 when the rooted graphs themselves are isomorphic.
struct BsDistance {
    double value = 1.0;     // exact value, or upper bound when truncated
    int agree_radius = -1;  // largest k with isomorphic balls (within k_max)
    bool truncated = false; // true when k_max was hit before a difference
};
BsDistance bs_distance(const RootedGraph& a, const RootedGraph& b, int k_max);

// Cheeger constant on a finite graph: min |boundary(W)| / |W| over connected
// W with 1 <= |W| <= |V|/2 (the standard finite surrogate; on finite graphs
// the unrestricted infimum is trivially 0 at W = V).
struct CheegerResult {
    double value = 0.0;
    std::vector<int> witness;  // attains value exactly
    bool exact = false;        // false => heuristic upper bound
};
enum class CheegerMode { Exact, Heuristic };
CheegerResult cheeger_constant(const Graph& g, CheegerMode mode, int exhaustive_threshold = 24);

// Isoperimetric profile along the hull sequence from o, with a log-log
// least-squares fit of |boundary| against |W| over the middle two quartiles
// of k (edge effects trimmed).
struct IsoProfile {
    std::vector<std::int64_t> n;          // |W_k|
    std::vector<std::int64_t> boundary;   // |boundary(W_k)|
    double alpha = 0.0;
    bool alpha_defined = false;
    int fit_lo = 0, fit_hi = 0;           // inclusive k-window used for the fit
};
IsoProfile iso_profile(const Graph& g, int o, int k_max);

// Empirical distribution of the rooted-isomorphism class of ball(G, v, k)
// with v uniform over vertices (exhaustive) or sampled with a seed. Masses
// are exact rationals count/denominator.
struct CensusClass {
    std::string key;
    std::int64_t count = 0;
};
struct CensusDistribution {
    std::vector<CensusClass> classes;  // sorted by key
    std::int64_t denominator = 0;
    std::optional<double> tv_to_previous;
};
struct CensusSampling {
    bool exhaustive = true;
    std::int64_t count = 0;
    std::uint64_t seed = 0;
};
std::vector<CensusDistribution> neighborhood_census(const std::vector<const Graph*>& graphs, int k,
                                                    const CensusSampling& sampling, int threads = 1);

// Total variation distance between two census distributions, computed in
// integer arithmetic on the rational masses.
double census_tv_distance(const CensusDistribution& a, const CensusDistribution& b);

}  // namespace dpack
