#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "dpack/common.hpp"
#include "dpack/graph.hpp"

namespace dpack {

// A closed round ball in R^d. The dimension lives on the Packing; a Ball is
// just its center coordinates and radius.
struct Ball {
    std::string id;
    std::vector<double> center;
    double radius = 0.0;
};

// A finite collection of balls meant to have pairwise disjoint interiors.
// Overlap and tangency are judged against the packing's relative tolerance,
// since iterated constructions carry rounding error in the low digits.
class Packing {
  public:
    Packing() = default;
    explicit Packing(int dimension, double tol_rel = 1e-9);

    int dimension() const { return dim_; }
    double tol_rel() const { return tol_rel_; }
    void set_tol_rel(double t);
    int size() const { return static_cast<int>(balls_.size()); }
    const Ball& ball(int i) const { return balls_[static_cast<std::size_t>(i)]; }
    const std::vector<Ball>& balls() const { return balls_; }

    // Appends a ball. The id must be new, the center must have dimension()
    // entries, the radius must be positive and finite.
    int add_ball(Ball b);

    int index_of(const std::string& id) const;
    int require_index(const std::string& id) const;

    double min_radius() const;
    double max_radius() const;

  private:
    int dim_ = 0;
    double tol_rel_ = 1e-9;
    std::vector<Ball> balls_;
    std::unordered_map<std::string, int> index_;
};

double distance(const std::vector<double>& a, const std::vector<double>& b);

// Visits every unordered pair {i, j} with |C_i - C_j| <= (r_i + r_j)(1 + pad).
// Cost is near-linear for bounded radius ratios: a uniform grid with cell
// side 2 * max_radius * (1 + pad). When radii spread over more than four
// orders of magnitude, balls are bucketed into power-of-two radius bands and
// each ball queries its own band and the coarser ones, so no scan degenerates.
// Small inputs (n <= 4096) use all pairs directly.
void for_each_near_pair(const Packing& p, double pad, const std::function<void(int, int)>& visit);

struct OverlapPair {
    int i = -1, j = -1;
    // (r_i + r_j - dist) / (r_i + r_j), positive inside the forbidden zone
    double depth = 0.0;
};

struct ValidationReport {
    bool pass = true;
    std::vector<OverlapPair> violations;  // every pair beyond tolerance
    // min over near pairs of dist - (r_i + r_j); +inf when no near pair
    double min_gap = std::numeric_limits<double>::infinity();
    std::int64_t pairs_checked = 0;
};

// Checks pairwise interior-disjointness: a pair fails when
// dist < (r_i + r_j)(1 - tol_rel).
ValidationReport validate_packing(const Packing& p);

// Tangency graph: one vertex per ball (same ids), an edge where
// |dist - (r_i + r_j)| <= tol_rel * (r_i + r_j). Throws InvariantError
// carrying the worst overlap when validation fails first.
Graph tangency_graph(const Packing& p, bool validate = true);

struct UniformityResult {
    bool has_tangency = false;
    double M = 0.0;   // max over tangent pairs of the radius ratio, >= 1
    int u = -1, v = -1;  // a pair attaining it
};

UniformityResult uniformity_constant(const Packing& p, const Graph& tangency);
UniformityResult uniformity_constant(const Packing& p);

struct DegreeBoundReport {
    double M = 1.0;
    double bound = 0.0;  // (M (1 + 2 M))^d
    int max_degree = 0;
    int argmax_vertex = -1;
    bool holds = true;
};

// Checks every tangency degree against the volume bound (M (1 + 2 M))^d:
// each neighbor of v has radius >= r_v / M and sits inside the ball of
// radius r_v (1 + 2 M) around C_v.
DegreeBoundReport degree_bound_check(const Packing& p, double M, const Graph* tangency = nullptr);

// Distance from point w to the nearest other point of the set.
double isolation_radius(const std::vector<std::vector<double>>& points, int w);
std::vector<double> isolation_radii(const std::vector<std::vector<double>>& points, int threads = 1);

enum class SupportMode {
    Candidate,  // deletion balls centered at the input points only
    Exact,      // deletion balls centered on a covering grid
};

struct SupportOptions {
    SupportMode mode = SupportMode::Candidate;
    int threads = 1;
};

// A point w of C is (delta, s)-supported when, within the window
// B(w, rho_w / delta), at least s points of C survive the deletion of any
// single ball of radius delta * rho_w, wherever it is placed:
//
//   inf over p of |C in B(w, rho_w/delta) minus B(p, delta rho_w)| >= s.
//
// support_quantity computes that infimum over the mode's test set.
// Candidate mode ranges p over the points of C themselves with the deletion
// radius doubled to 2 delta rho_w; by the triangle inequality every deletion
// ball that touches C is contained in one of these, so the candidate value
// never exceeds the true infimum. Exact mode ranges p over a grid of pitch
// delta rho_w / 4 with the deletion radius inflated by sqrt(d) delta rho_w/8,
// which also lower-bounds the infimum over all of R^d.
std::int64_t support_quantity(const std::vector<std::vector<double>>& points, int w,
                              double delta, const SupportOptions& opt = {});

bool is_supported(const std::vector<std::vector<double>>& points, int w, double delta,
                  std::int64_t s, const SupportOptions& opt = {});

struct SupportedCensus {
    double delta = 0.0;
    std::vector<std::int64_t> s_values;
    std::vector<std::int64_t> counts;  // per s, how many points are supported
    std::int64_t n = 0;
    SupportMode mode = SupportMode::Candidate;
    double c_hat = 0.0;  // max over s of counts[s] * s / n
    std::int64_t c_hat_s = 0;
};

// Census over every point of C. The per-point infimum is evaluated once and
// compared against each s, so counts are non-increasing in s by construction.
SupportedCensus supported_census(const std::vector<std::vector<double>>& points, double delta,
                                 const std::vector<std::int64_t>& s_values,
                                 const SupportOptions& opt = {});

std::vector<std::vector<double>> packing_centers(const Packing& p);

// Applies the similarity x -> (x - C_v) / r_v to every ball, so that ball v
// becomes the unit ball at the origin. Tangency is preserved.
Packing normalize_packing(const Packing& p, const std::string& v);

}  // namespace dpack
