#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "dpack/generators.hpp"
#include "dpack/modulus.hpp"

using namespace dpack;

namespace {

Graph path_graph(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph complete_graph(int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph random_connected(int n, int extra, std::mt19937_64& rng) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_vertex(std::to_string(i));
    for (int i = 1; i < n; ++i)
        g.add_edge(i, static_cast<int>(rng() % static_cast<std::uint64_t>(i)));
    for (int e = 0; e < extra; ++e) {
        int u = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (u != v) g.add_edge(u, v);
    }
    return g;
}

}  // namespace

TEST_CASE("connector validation") {
    auto g = path_graph(4);
    Connector c;
    c.graph = &g;
    c.source = {0};
    c.target = {3};
    check_connector(c);  // fine
    c.target = {0};
    CHECK_THROWS_AS(check_connector(c), InputError);  // overlap
    c.target = {};
    CHECK_THROWS_AS(check_connector(c), InputError);  // empty
    c.target = {99};
    CHECK_THROWS_AS(check_connector(c), InputError);  // out of range
}

TEST_CASE("path length counts both endpoints and checks adjacency") {
    auto g = path_graph(4);
    VertexMetric m{1.0, 2.0, 4.0, 8.0};
    CHECK_EQ(path_length(g, m, {0, 1, 2}), doctest::Approx(7.0));
    CHECK_EQ(path_length(g, m, {2}), doctest::Approx(4.0));
    CHECK_THROWS_AS(path_length(g, m, {0, 2}), InputError);  // not an edge
    CHECK_THROWS_AS(path_length(g, m, {}), InputError);
}

TEST_CASE("shortest path agrees with exhaustive path enumeration") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> weight(0.1, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
        auto g = random_connected(7, 4, rng);
        VertexMetric m(7);
        for (auto& x : m) x = weight(rng);
        std::vector<int> source{0}, target{6};
        auto sp = shortest_path(g, m, source, target);
        REQUIRE(sp.connected);
        CHECK_EQ(path_length(g, m, sp.path), doctest::Approx(sp.length));
        CHECK_EQ(sp.path.front(), 0);
        CHECK_EQ(sp.path.back(), 6);
        // the true minimum over every simple path
        double best = std::numeric_limits<double>::infinity();
        for (const auto& path : enumerate_paths(g, source, target, 100000))
            best = std::min(best, path_length(g, m, path));
        CHECK_EQ(sp.length, doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("shortest path respects forbidden vertices and reports disconnection") {
    auto g = path_graph(5);
    VertexMetric m(5, 1.0);
    std::vector<char> forbidden(5, 0);
    forbidden[2] = 1;
    auto sp = shortest_path(g, m, {0}, {4}, &forbidden);
    CHECK_FALSE(sp.connected);
    CHECK(sp.path.empty());
    CHECK_EQ(sp.length, std::numeric_limits<double>::infinity());
}

TEST_CASE("path enumeration counts on small graphs, with a working guard") {
    auto g = path_graph(3);
    CHECK_EQ(enumerate_paths(g, {0}, {2}, 100).size(), 1);

    Graph c4;
    for (int i = 0; i < 4; ++i) c4.add_vertex(std::to_string(i));
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    CHECK_EQ(enumerate_paths(c4, {0}, {2}, 100).size(), 2);

    // K_4 from one vertex to another: direct, via either third vertex, or
    // through both, and interiors avoid the terminals
    auto k4 = complete_graph(4);
    auto paths = enumerate_paths(k4, {0}, {1}, 100);
    CHECK_EQ(paths.size(), 5);
    for (const auto& path : paths) {
        CHECK_EQ(path.front(), 0);
        CHECK_EQ(path.back(), 1);
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
            CHECK(path[i] != 0);
            CHECK(path[i] != 1);
        }
    }
    CHECK_THROWS_AS(enumerate_paths(complete_graph(8), {0}, {1}, 10), InputError);
}

TEST_CASE("modulus of the path graph is the analytic value with a uniform metric") {
    for (double p : {1.5, 2.0, 3.0}) {
        for (int n : {2, 5, 9}) {
            auto g = path_graph(n);
            Connector c;
            c.graph = &g;
            c.source = {0};
            c.target = {n - 1};
            ModulusOptions opt;
            opt.p = p;
            opt.tol = 1e-8;
            auto res = modulus(c, opt);
            CHECK(res.converged);
            // the only path visits all n vertices, so m is uniform 1/n and
            // the value is n * (1/n)^p
            CHECK_EQ(res.value, doctest::Approx(std::pow(n, 1.0 - p)).epsilon(1e-6));
            CHECK_EQ(res.vel, doctest::Approx(std::pow(n, p - 1.0)).epsilon(1e-6));
            for (double m : res.metric) CHECK_EQ(m, doctest::Approx(1.0 / n).epsilon(1e-4));
            REQUIRE_EQ(res.active_paths.size(), 1);
            CHECK_EQ(res.active_paths[0].size(), static_cast<std::size_t>(n));
        }
    }
}

TEST_CASE("solver matches the enumerate-everything oracle on random graphs") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 12; ++trial) {
        auto g = random_connected(4 + static_cast<int>(trial % 5), 3, rng);
        int n = g.vertex_count();
        int s = 0, t = n - 1;
        Connector c;
        c.graph = &g;
        c.source = {s};
        c.target = {t};
        for (double p : {1.3, 2.0, 2.6}) {
            ModulusOptions opt;
            opt.p = p;
            opt.tol = 1e-7;
            auto res = modulus(c, opt);
            CHECK(res.converged);
            double oracle = modulus_oracle(c, p);
            CHECK_EQ(res.value, doctest::Approx(oracle).epsilon(1e-4));
        }
    }
}

TEST_CASE("multi-vertex terminals: opposite sides of a grid") {
    auto g = grid_graph(2, 4);
    Connector c;
    c.graph = &g;
    for (int j = 0; j < 4; ++j) {
        c.source.push_back(g.require_index("0_" + std::to_string(j)));
        c.target.push_back(g.require_index("3_" + std::to_string(j)));
    }
    ModulusOptions opt;
    opt.tol = 1e-7;
    auto res = modulus(c, opt);
    CHECK(res.converged);
    CHECK_EQ(res.value, doctest::Approx(modulus_oracle(c, 2.0)).epsilon(1e-4));
}

TEST_CASE("raising the length bound rescales the program") {
    auto g = grid_graph(2, 3);
    Connector c;
    c.graph = &g;
    c.source = {g.require_index("0_0")};
    c.target = {g.require_index("2_2")};
    ModulusOptions opt;
    opt.tol = 1e-8;
    auto base = modulus(c, opt);
    opt.length_bound = 2.0;
    auto scaled = modulus(c, opt);
    // admissible metrics scale linearly with the bound, values by its p-th power
    CHECK_EQ(scaled.value, doctest::Approx(base.value * 4.0).epsilon(1e-5));
    CHECK_EQ(scaled.min_path_length, doctest::Approx(base.min_path_length * 2.0).epsilon(1e-5));
    // the two solves approach the (unique) optimum independently, so allow
    // each its share of metric error on top of the exact rescaling law
    for (std::size_t v = 0; v < base.metric.size(); ++v)
        CHECK_EQ(scaled.metric[v], doctest::Approx(base.metric[v] * 2.0).epsilon(5e-3));
}

TEST_CASE("disconnected connectors get value zero and infinite extremal length") {
    Graph g;
    g.add_vertex("a");
    g.add_vertex("b");
    g.add_vertex("c");
    g.add_edge(0, 1);
    Connector c;
    c.graph = &g;
    c.source = {0};
    c.target = {2};
    auto res = modulus(c);
    CHECK(res.disconnected);
    CHECK(res.converged);
    CHECK_EQ(res.value, 0.0);
    CHECK(std::isinf(res.vel));
    CHECK_EQ(modulus_oracle(c, 2.0), 0.0);
}

TEST_CASE("option validation") {
    auto g = path_graph(3);
    Connector c;
    c.graph = &g;
    c.source = {0};
    c.target = {2};
    ModulusOptions opt;
    opt.p = 1.0;
    CHECK_THROWS_AS(modulus(c, opt), InputError);
    opt.p = 2.0;
    opt.tol = 0.0;
    CHECK_THROWS_AS(modulus(c, opt), InputError);
    opt.tol = 0.7;
    CHECK_THROWS_AS(modulus(c, opt), InputError);
    opt.tol = 1e-6;
    opt.length_bound = 0.0;
    CHECK_THROWS_AS(modulus(c, opt), InputError);
}

TEST_CASE("probe on a grid decreases and validates its input") {
    auto g = grid_graph(2, 9);
    int o = g.require_index("4_4");
    ModulusOptions opt;
    opt.tol = 1e-6;
    auto probe = vel_probe(g, o, 2.0, {1, 2, 3}, opt, 2);
    REQUIRE_EQ(probe.points.size(), 3);
    for (const auto& pt : probe.points) CHECK(pt.result.converged);
    CHECK(probe.points[0].result.value >= probe.points[1].result.value - 1e-9);
    CHECK(probe.points[1].result.value >= probe.points[2].result.value - 1e-9);

    CHECK_THROWS_AS(vel_probe(g, o, 2.0, {2, 2}, opt), InputError);   // not increasing
    CHECK_THROWS_AS(vel_probe(g, o, 2.0, {0, 2}, opt), InputError);   // radius below 1
    CHECK_THROWS_AS(vel_probe(g, o, 2.0, {1, 50}, opt), InputError);  // beyond eccentricity
    CHECK_THROWS_AS(vel_probe(g, o, 2.0, {}, opt), InputError);
}

TEST_CASE("certificate on the path graph is exactly the analytic extremal length") {
    for (double p : {2.0, 3.0}) {
        for (int n : {4, 7, 10}) {
            auto g = path_graph(n);
            // boundaries along a path all have size 1
            Profile ones(std::vector<double>(static_cast<std::size_t>(n), 1.0));
            auto cert = vel_certificate(g, 0, ones, n - 2, p);
            CHECK_EQ(cert.lower_bound, doctest::Approx(std::pow(n, p - 1.0)).epsilon(1e-9));
            CHECK_EQ(cert.length_bound, doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
            REQUIRE_EQ(cert.n.size(), static_cast<std::size_t>(n - 1));
        }
    }
}

TEST_CASE("certificate stays below the reciprocal of the solved modulus") {
    auto g = grid_graph(2, 9);
    int o = g.require_index("4_4");
    auto hs = hull_sequence(g, o, 3);
    // empirical profile: g(n_k) read off the hull boundary sizes
    std::vector<double> growth(static_cast<std::size_t>(hs.n.back()), 1.0);
    for (std::size_t k = 0; k + 1 < hs.n.size(); ++k)
        for (std::int64_t i = (k == 0 ? 1 : hs.n[k - 1] + 1); i <= hs.n[k]; ++i)
            growth[static_cast<std::size_t>(i - 1)] = static_cast<double>(hs.boundary_size[k]);
    auto cert = vel_certificate(g, o, Profile(growth), 2, 2.0);

    Connector c;
    c.graph = &g;
    c.source = {o};
    auto dist = g.bfs_distances(o);
    for (int v = 0; v < g.vertex_count(); ++v)
        if (dist[static_cast<std::size_t>(v)] > 3) c.target.push_back(v);
    ModulusOptions opt;
    opt.tol = 1e-6;
    auto res = modulus(c, opt);
    REQUIRE(res.converged);
    CHECK(cert.lower_bound <= 1.0 / res.value + 1e-6);
}

TEST_CASE("certificate input validation") {
    auto g = path_graph(5);
    Profile ones(std::vector<double>{1.0, 1.0, 1.0, 1.0, 1.0});
    CHECK_THROWS_AS(vel_certificate(g, 0, ones, 4, 2.0), InputError);   // hull exhausted
    CHECK_THROWS_AS(vel_certificate(g, 0, ones, -1, 2.0), InputError);  // negative depth
    CHECK_THROWS_AS(vel_certificate(g, 0, ones, 1, 1.0), InputError);   // p at the wall
    Profile shorter(std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(vel_certificate(g, 0, shorter, 3, 2.0), InputError);
}

TEST_CASE("divergence check classifies the classic series") {
    auto linear = [](int n) {
        std::vector<double> v;
        for (int i = 1; i <= n; ++i) v.push_back(static_cast<double>(i));
        return v;
    };
    // sum 1/n diverges, sum 1/n^2 converges
    CHECK_EQ(divergence_check(Profile(linear(4096)), 1.0).trend, "diverging-trend");
    CHECK_EQ(divergence_check(Profile(linear(4096)), 2.0).trend, "converging-trend");
    // geometric growth converges at every positive q
    std::vector<double> geo;
    for (int i = 0; i < 48; ++i) geo.push_back(std::pow(2.0, i / 2.0));
    CHECK_EQ(divergence_check(Profile(geo), 1.0).trend, "converging-trend");
    // too little data stays inconclusive
    CHECK_EQ(divergence_check(Profile(linear(6)), 1.0).trend, "inconclusive");
    CHECK_THROWS_AS(divergence_check(Profile(linear(16)), 0.0), InputError);

    auto chk = divergence_check(Profile(linear(4096)), 1.0);
    CHECK(chk.monotone);
    // partial sums recorded at powers of two, ending at n
    REQUIRE(!chk.partial_sums.empty());
    CHECK_EQ(chk.partial_sums.back().first, 4096);
    double harmonic = 0.0;
    for (int i = 1; i <= 4096; ++i) harmonic += 1.0 / i;
    CHECK_EQ(chk.partial_sums.back().second, doctest::Approx(harmonic));
}
