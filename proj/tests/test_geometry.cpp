#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dpack/generators.hpp"
#include "dpack/geometry.hpp"

using namespace dpack;

namespace {

Ball mk(const std::string& id, std::vector<double> c, double r) {
    Ball b;
    b.id = id;
    b.center = std::move(c);
    b.radius = r;
    return b;
}

// Disjoint-by-construction random packing: one ball per grid cell, radius
// strictly under half the cell, so no two can touch.
Packing random_loose_packing(int d, int per_side, std::mt19937_64& rng) {
    Packing p(d);
    std::uniform_real_distribution<double> jitter(-0.1, 0.1);
    std::uniform_real_distribution<double> rad(0.05, 0.35);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    int id = 0;
    while (true) {
        std::vector<double> c(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k) c[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k)] + jitter(rng);
        p.add_ball(mk(std::to_string(id++), c, rad(rng)));
        int k = d - 1;
        while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == per_side) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return p;
}

// Chain of circles along the x axis, each exactly tangent to the previous.
// The tangency graph must be the path, and the uniformity constant the
// largest adjacent radius ratio.
Packing tangent_chain(const std::vector<double>& radii) {
    Packing p(2);
    double x = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (i > 0) x += radii[i - 1] + radii[i];
        p.add_ball(mk("b" + std::to_string(i), {x, 0.0}, radii[i]));
    }
    return p;
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

// Straight from the definition: the candidate-mode infimum, with the window
// closed and survivors strictly outside the doubled deletion ball.
std::int64_t support_oracle(const std::vector<std::vector<double>>& pts, int w, double delta) {
    double rho = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (i != w) rho = std::min(rho, dist2(pts[static_cast<std::size_t>(w)], pts[static_cast<std::size_t>(i)]));
    std::vector<int> window;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i)
        if (dist2(pts[static_cast<std::size_t>(w)], pts[static_cast<std::size_t>(i)]) <= rho / delta)
            window.push_back(i);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& p : pts) {
        std::int64_t survivors = 0;
        for (int i : window)
            if (dist2(pts[static_cast<std::size_t>(i)], p) > 2.0 * delta * rho) ++survivors;
        best = std::min(best, survivors);
    }
    return best;
}

}  // namespace

TEST_CASE("packing construction rejects bad balls") {
    Packing p(2);
    p.add_ball(mk("a", {0.0, 0.0}, 1.0));
    CHECK_THROWS_AS(p.add_ball(mk("a", {3.0, 0.0}, 1.0)), InputError);  // duplicate id
    CHECK_THROWS_AS(p.add_ball(mk("b", {3.0}, 1.0)), InputError);       // wrong dimension
    CHECK_THROWS_AS(p.add_ball(mk("c", {3.0, 0.0}, 0.0)), InputError);  // empty ball
    CHECK_THROWS_AS(p.add_ball(mk("d", {3.0, 0.0}, -1.0)), InputError);
    CHECK_EQ(p.size(), 1);
    CHECK_EQ(p.require_index("a"), 0);
    CHECK_THROWS_AS(p.require_index("z"), InputError);
    CHECK_EQ(p.index_of("z"), -1);
}

TEST_CASE("validate_packing flags overlaps and accepts tangencies") {
    Packing p(2);
    p.add_ball(mk("a", {0.0, 0.0}, 1.0));
    p.add_ball(mk("b", {2.0, 0.0}, 1.0));   // exactly tangent
    p.add_ball(mk("c", {10.0, 0.0}, 1.0));  // far away
    auto rep = validate_packing(p);
    CHECK(rep.pass);
    CHECK(rep.violations.empty());
    CHECK_EQ(rep.min_gap, doctest::Approx(0.0).epsilon(1e-12));

    p.add_ball(mk("d", {3.0, 0.0}, 1.0));  // overlaps b by half a radius
    rep = validate_packing(p);
    CHECK_FALSE(rep.pass);
    REQUIRE_EQ(rep.violations.size(), 1);
    CHECK_EQ(rep.violations[0].depth, doctest::Approx(0.5));
}

TEST_CASE("validate_packing agrees with the all-pairs recount") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        auto p = random_loose_packing(2, 4, rng);
        auto rep = validate_packing(p);
        CHECK(rep.pass);
        // recount: every pair must clear (r_i + r_j)(1 - tol)
        for (int i = 0; i < p.size(); ++i)
            for (int j = i + 1; j < p.size(); ++j) {
                double rr = p.ball(i).radius + p.ball(j).radius;
                CHECK(dist2(p.ball(i).center, p.ball(j).center) >= rr * (1.0 - p.tol_rel()));
            }
    }
}

TEST_CASE("tangency graph of a tangent chain is the path") {
    auto p = tangent_chain({1.0, 0.5, 2.0, 1.0, 0.25});
    auto g = tangency_graph(p);
    CHECK_EQ(g.vertex_count(), 5);
    CHECK_EQ(g.edge_count(), 4);
    for (int i = 0; i + 1 < 5; ++i) CHECK(g.adjacent(i, i + 1));
    CHECK_FALSE(g.adjacent(0, 2));
    // ids carry over
    CHECK_EQ(g.require_index("b3"), 3);
}

TEST_CASE("tangency graph matches the brute-force tolerance test") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rad(0.2, 2.0);
    std::vector<double> radii;
    for (int i = 0; i < 12; ++i) radii.push_back(rad(rng));
    auto p = tangent_chain(radii);
    auto g = tangency_graph(p);
    for (int i = 0; i < p.size(); ++i)
        for (int j = i + 1; j < p.size(); ++j) {
            double rr = p.ball(i).radius + p.ball(j).radius;
            bool tangent = std::abs(dist2(p.ball(i).center, p.ball(j).center) - rr) <= p.tol_rel() * rr;
            CHECK_EQ(g.adjacent(i, j), tangent);
        }
}

TEST_CASE("tangency_graph refuses overlapping input unless told otherwise") {
    Packing p(2);
    p.add_ball(mk("a", {0.0, 0.0}, 1.0));
    p.add_ball(mk("b", {1.0, 0.0}, 1.0));
    CHECK_THROWS_AS(tangency_graph(p), InvariantError);
    auto g = tangency_graph(p, false);  // skipping validation keeps the overlap out of the graph
    CHECK_EQ(g.vertex_count(), 2);
}

TEST_CASE("uniformity constant is the worst adjacent radius ratio") {
    auto p = tangent_chain({1.0, 0.5, 2.0});
    auto u = uniformity_constant(p);
    CHECK(u.has_tangency);
    CHECK_EQ(u.M, doctest::Approx(4.0));  // the 0.5 / 2.0 contact
    auto a = std::min(u.u, u.v), b = std::max(u.u, u.v);
    CHECK_EQ(a, 1);
    CHECK_EQ(b, 2);

    Packing lone(2);
    lone.add_ball(mk("a", {0.0, 0.0}, 1.0));
    CHECK_FALSE(uniformity_constant(lone).has_tangency);
}

TEST_CASE("degree bound holds on the hexagonal packing") {
    auto p = hexagonal_packing(6, 6);
    auto u = uniformity_constant(p);
    CHECK(u.has_tangency);
    CHECK_EQ(u.M, doctest::Approx(1.0));
    auto rep = degree_bound_check(p, u.M);
    CHECK(rep.holds);
    CHECK_EQ(rep.max_degree, 6);
    CHECK_EQ(rep.bound, doctest::Approx(9.0));  // (M(1+2M))^2 at M=1
}

TEST_CASE("isolation radii match brute force") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coord(0.0, 10.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 40; ++i) pts.push_back({coord(rng), coord(rng)});
    auto radii = isolation_radii(pts, 2);
    REQUIRE_EQ(radii.size(), pts.size());
    for (int w = 0; w < static_cast<int>(pts.size()); ++w) {
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < static_cast<int>(pts.size()); ++i)
            if (i != w) best = std::min(best, dist2(pts[static_cast<std::size_t>(w)], pts[static_cast<std::size_t>(i)]));
        CHECK_EQ(radii[static_cast<std::size_t>(w)], doctest::Approx(best).epsilon(1e-12));
        CHECK_EQ(isolation_radius(pts, w), doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("candidate support quantity matches the definition on random clouds") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> coord(0.0, 8.0);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 30; ++i) pts.push_back({coord(rng), coord(rng)});
        SupportOptions opt;
        opt.mode = SupportMode::Candidate;
        for (int w = 0; w < static_cast<int>(pts.size()); w += 7) {
            auto expected = support_oracle(pts, w, 0.5);
            CHECK_EQ(support_quantity(pts, w, 0.5, opt), expected);
            CHECK_EQ(is_supported(pts, w, 0.5, expected, opt), true);
            CHECK_EQ(is_supported(pts, w, 0.5, expected + 1, opt), false);
        }
    }
}

TEST_CASE("interior of the square lattice supports exactly 8 at delta 1/2") {
    // Integer coordinates keep every tie distance exactly representable, so
    // the count is stable: the window of radius 2 around an interior center
    // holds 13 lattice points, and the worst doubled deletion ball removes
    // the center and its 4 neighbors.
    auto p = cubic_lattice_packing(2, 9);
    auto pts = packing_centers(p);
    int w = p.require_index("4_4");
    SupportOptions opt;
    opt.mode = SupportMode::Candidate;
    CHECK_EQ(support_quantity(pts, w, 0.5, opt), 8);
}

TEST_CASE("exact mode stays at or below the candidate bound's scale and is consistent") {
    // Both modes lower-bound the true infimum; they need not be ordered
    // against each other, but is_supported must agree with the quantity.
    std::mt19937_64 rng(55);
    std::uniform_real_distribution<double> coord(0.0, 6.0);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({coord(rng), coord(rng)});
    SupportOptions ex;
    ex.mode = SupportMode::Exact;
    for (int w = 0; w < 20; w += 5) {
        auto q = support_quantity(pts, w, 0.5, ex);
        CHECK(q >= 0);
        CHECK(is_supported(pts, w, 0.5, q, ex));
        CHECK_FALSE(is_supported(pts, w, 0.5, q + 1, ex));
    }
}

TEST_CASE("census counts are non-increasing and c_hat is their scaled max") {
    auto p = hexagonal_packing(8, 8);
    auto pts = packing_centers(p);
    SupportOptions opt;
    opt.threads = 2;
    auto census = supported_census(pts, 0.5, {2, 4, 8, 16}, opt);
    CHECK_EQ(census.n, 64);
    REQUIRE_EQ(census.counts.size(), 4);
    for (std::size_t i = 1; i < census.counts.size(); ++i) CHECK(census.counts[i] <= census.counts[i - 1]);
    double best = 0.0;
    std::int64_t best_s = 0;
    for (std::size_t i = 0; i < census.counts.size(); ++i) {
        double r = static_cast<double>(census.counts[i]) * static_cast<double>(census.s_values[i]) / 64.0;
        if (r > best) {
            best = r;
            best_s = census.s_values[i];
        }
    }
    CHECK_EQ(census.c_hat, doctest::Approx(best));
    CHECK_EQ(census.c_hat_s, best_s);
    CHECK_THROWS_AS(supported_census(pts, 0.5, {1}, opt), InputError);
    CHECK_THROWS_AS(supported_census(pts, 1.5, {2}, opt), InputError);  // delta must be in (0, 1)
}

TEST_CASE("normalize_packing sends the chosen ball to the unit ball and keeps tangency") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        std::uniform_real_distribution<double> rad(0.2, 2.0);
        std::vector<double> radii;
        for (int i = 0; i < 8; ++i) radii.push_back(rad(rng));
        auto p = tangent_chain(radii);
        auto q = normalize_packing(p, "b3");
        int k = q.require_index("b3");
        CHECK_EQ(q.ball(k).radius, doctest::Approx(1.0));
        for (double c : q.ball(k).center) CHECK_EQ(c, doctest::Approx(0.0));
        auto before = tangency_graph(p);
        auto after = tangency_graph(q);
        REQUIRE_EQ(before.vertex_count(), after.vertex_count());
        CHECK_EQ(before.edge_count(), after.edge_count());
        for (int i = 0; i < before.vertex_count(); ++i)
            for (int j = i + 1; j < before.vertex_count(); ++j)
                CHECK_EQ(before.adjacent(i, j), after.adjacent(i, j));
    }
}
