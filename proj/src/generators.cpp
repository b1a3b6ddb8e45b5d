#include "dpack/generators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace dpack {

namespace {

std::string joined_coords(const std::vector<int>& c) {
    std::string id;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) id += '_';
        id += std::to_string(c[i]);
    }
    return id;
}

// All points of {0..side-1}^d in row-major order (last coordinate fastest),
// so cubic_lattice_packing and grid_graph agree point for point.
std::vector<std::vector<int>> lattice_points(int d, int side) {
    if (d < 1) throw InputError("lattice: dimension must be >= 1");
    if (side < 2) throw InputError("lattice: side must be >= 2");
    double count = std::pow(static_cast<double>(side), d);
    if (count > 4e6) throw InputError("lattice: more than 4e6 points");
    std::vector<std::vector<int>> pts;
    pts.reserve(static_cast<std::size_t>(count));
    std::vector<int> c(static_cast<std::size_t>(d), 0);
    while (true) {
        pts.push_back(c);
        int i = d - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == side - 1) {
            c[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
    }
    return pts;
}

}  // namespace

Packing cubic_lattice_packing(int d, int side) {
    auto pts = lattice_points(d, side);
    Packing p(d);
    for (const auto& c : pts) {
        Ball b;
        b.id = joined_coords(c);
        b.center.assign(c.begin(), c.end());
        b.radius = 0.5;
        p.add_ball(std::move(b));
    }
    return p;
}

Graph grid_graph(int d, int side) {
    auto pts = lattice_points(d, side);
    Graph g;
    for (const auto& c : pts) g.add_vertex(joined_coords(c));
    for (const auto& c : pts) {
        for (int i = 0; i < d; ++i) {
            if (c[static_cast<std::size_t>(i)] + 1 >= side) continue;
            auto nb = c;
            ++nb[static_cast<std::size_t>(i)];
            g.add_edge_ids(joined_coords(c), joined_coords(nb));
        }
    }
    return g;
}

Packing hexagonal_packing(int rows, int cols) {
    if (rows < 1 || cols < 1) throw InputError("hexagonal_packing: rows and cols must be >= 1");
    if (static_cast<std::int64_t>(rows) * cols > 4000000)
        throw InputError("hexagonal_packing: more than 4e6 circles");
    Packing p(2);
    double root3 = std::sqrt(3.0);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            Ball b;
            b.id = std::to_string(i) + "_" + std::to_string(j);
            b.center = {static_cast<double>(2 * j + (i % 2)), root3 * i};
            b.radius = 1.0;
            p.add_ball(std::move(b));
        }
    return p;
}

Graph regular_tree(int k, int depth) {
    if (k < 2) throw InputError("regular_tree: degree must be >= 2");
    if (depth < 0) throw InputError("regular_tree: depth must be >= 0");
    double count = k == 2 ? 1.0 + 2.0 * depth
                          : 1.0 + k * (std::pow(static_cast<double>(k - 1), depth) - 1.0) / (k - 2);
    if (count > 4e6) throw InputError("regular_tree: more than 4e6 vertices");
    Graph g;
    g.add_vertex("0");
    std::vector<int> frontier{0};
    int next = 1;
    for (int level = 0; level < depth; ++level) {
        std::vector<int> grown;
        for (int v : frontier) {
            int children = level == 0 ? k : k - 1;
            for (int c = 0; c < children; ++c) {
                int u = g.add_vertex(std::to_string(next++));
                g.add_edge(v, u);
                grown.push_back(u);
            }
        }
        frontier = std::move(grown);
    }
    return g;
}

ApollonianGasket apollonian_gasket(int depth) {
    if (depth < 0) throw InputError("apollonian_gasket: depth must be >= 0");
    if (depth > 12) throw InputError("apollonian_gasket: depth must be <= 12");
    using C = std::complex<double>;
    ApollonianGasket g;
    g.packing = Packing(2, 1e-6);

    std::vector<C> kz;  // curvature-weighted centers, aligned with g.circles
    auto add_circle = [&](double k, C w) {
        ApollonianGasket::Circle c;
        c.curvature = k;
        C z = w / k;
        c.center = {z.real(), z.imag()};
        if (k > 0.0) {
            Ball b;
            b.id = "c" + std::to_string(g.packing.size());
            b.center = {z.real(), z.imag()};
            b.radius = 1.0 / k;
            c.ball = g.packing.add_ball(std::move(b));
        }
        g.circles.push_back(c);
        kz.push_back(w);
        return static_cast<int>(g.circles.size()) - 1;
    };

    // the integral root quadruple: outer unit circle plus radii 1/2, 1/2, 1/3
    add_circle(-1.0, C(0.0, 0.0));
    add_circle(2.0, C(-1.0, 0.0));
    add_circle(2.0, C(1.0, 0.0));
    add_circle(3.0, C(0.0, 2.0));

    struct Node {
        std::array<int, 4> q;
        int replaced;
        int level;
    };
    std::queue<Node> todo;
    todo.push({{0, 1, 2, 3}, -1, 0});
    g.quadruples.push_back({0, 1, 2, 3});
    while (!todo.empty()) {
        Node node = todo.front();
        todo.pop();
        if (node.level >= depth) continue;
        for (int i = 0; i < 4; ++i) {
            if (i == node.replaced) continue;  // would regenerate the parent circle
            double ks = 0.0;
            C ws(0.0, 0.0);
            for (int j = 0; j < 4; ++j)
                if (j != i) {
                    ks += g.circles[static_cast<std::size_t>(node.q[static_cast<std::size_t>(j)])].curvature;
                    ws += kz[static_cast<std::size_t>(node.q[static_cast<std::size_t>(j)])];
                }
            int old = node.q[static_cast<std::size_t>(i)];
            int fresh = add_circle(2.0 * ks - g.circles[static_cast<std::size_t>(old)].curvature,
                                   2.0 * ws - kz[static_cast<std::size_t>(old)]);
            Node child = node;
            child.q[static_cast<std::size_t>(i)] = fresh;
            child.replaced = i;
            child.level = node.level + 1;
            g.quadruples.push_back(child.q);
            todo.push(child);
        }
    }
    return g;
}

// ---------------------------------------------------------------------------
// Disk triangulations and the radius iteration
// ---------------------------------------------------------------------------

namespace {

using Edge = std::pair<int, int>;

Edge ordered(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// angle at the circle of radius rv inside a tangent triple (rv, ru, rw)
double corner_angle(double rv, double ru, double rw) {
    double x = std::sqrt((ru * rw) / ((rv + ru) * (rv + rw)));
    return 2.0 * std::asin(std::clamp(x, 0.0, 1.0));
}

}  // namespace

void check_triangulation(const Triangulation& t) {
    if (t.n < 3) throw InputError("triangulation: needs at least 3 vertices");
    if (t.faces.empty()) throw InputError("triangulation: needs at least one face");
    if (t.boundary.size() < 3) throw InputError("triangulation: boundary cycle needs at least 3 vertices");

    std::set<std::array<int, 3>> face_keys;
    std::map<Edge, int> edge_faces;
    for (const auto& f : t.faces) {
        for (int v : f)
            if (v < 0 || v >= t.n) throw InputError("triangulation: face vertex out of range");
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
            throw InputError("triangulation: degenerate face");
        std::array<int, 3> key = f;
        std::sort(key.begin(), key.end());
        if (!face_keys.insert(key).second) throw InputError("triangulation: repeated face");
        for (int e = 0; e < 3; ++e) {
            int cnt = ++edge_faces[ordered(f[static_cast<std::size_t>(e)], f[static_cast<std::size_t>((e + 1) % 3)])];
            if (cnt > 2) throw InputError("triangulation: edge in more than two faces");
        }
    }

    std::set<int> on_boundary(t.boundary.begin(), t.boundary.end());
    if (on_boundary.size() != t.boundary.size())
        throw InputError("triangulation: boundary cycle repeats a vertex");
    std::set<Edge> boundary_edges;
    for (std::size_t i = 0; i < t.boundary.size(); ++i)
        boundary_edges.insert(ordered(t.boundary[i], t.boundary[(i + 1) % t.boundary.size()]));
    for (const auto& [e, cnt] : edge_faces) {
        bool on = boundary_edges.count(e) > 0;
        if (on && cnt != 1)
            throw InputError("triangulation: boundary edge must lie in exactly one face");
        if (!on && cnt != 2)
            throw InputError("triangulation: interior edge must lie in exactly two faces");
    }
    for (const auto& e : boundary_edges)
        if (!edge_faces.count(e)) throw InputError("triangulation: boundary edge missing from faces");

    auto e_count = static_cast<std::int64_t>(edge_faces.size());
    if (e_count != 3LL * t.n - static_cast<std::int64_t>(t.boundary.size()) - 3)
        throw InputError("triangulation: edge count violates the disk relation E = 3V - B - 3");

    // each vertex's incident faces must chain into a single fan
    std::vector<std::vector<std::pair<int, int>>> corners(static_cast<std::size_t>(t.n));
    for (const auto& f : t.faces)
        for (int e = 0; e < 3; ++e)
            corners[static_cast<std::size_t>(f[static_cast<std::size_t>(e)])].emplace_back(
                f[static_cast<std::size_t>((e + 1) % 3)], f[static_cast<std::size_t>((e + 2) % 3)]);
    for (int v = 0; v < t.n; ++v) {
        const auto& cs = corners[static_cast<std::size_t>(v)];
        if (cs.empty()) throw InputError("triangulation: vertex " + std::to_string(v) + " lies in no face");
        std::map<int, int> mult;  // neighbor -> number of corners at v touching it
        for (auto& [a, b] : cs) {
            ++mult[a];
            ++mult[b];
        }
        bool interior = !on_boundary.count(v);
        int odd = 0;
        for (auto& [u, c] : mult) {
            if (c > 2) throw InputError("triangulation: fan at vertex " + std::to_string(v) + " branches");
            if (c == 1) ++odd;
        }
        if (interior && odd != 0)
            throw InputError("triangulation: interior vertex " + std::to_string(v) + " has an open fan");
        if (!interior && odd != 2)
            throw InputError("triangulation: boundary vertex " + std::to_string(v) + " has no open fan");
        // connected fan: walk corner edges as a path/cycle over neighbors
        std::map<int, std::vector<std::size_t>> by_nbr;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            by_nbr[cs[i].first].push_back(i);
            by_nbr[cs[i].second].push_back(i);
        }
        std::vector<char> seen(cs.size(), 0);
        std::queue<std::size_t> bfs;
        bfs.push(0);
        seen[0] = 1;
        std::size_t reached = 1;
        while (!bfs.empty()) {
            auto i = bfs.front();
            bfs.pop();
            for (int u : {cs[i].first, cs[i].second})
                for (std::size_t j : by_nbr[u])
                    if (!seen[j]) {
                        seen[j] = 1;
                        ++reached;
                        bfs.push(j);
                    }
        }
        if (reached != cs.size())
            throw InputError("triangulation: faces at vertex " + std::to_string(v) + " form several fans");
    }
}

DiskPackResult disk_triangulation_pack(const Triangulation& t, const std::vector<double>& boundary_radii) {
    check_triangulation(t);
    if (boundary_radii.size() != t.boundary.size())
        throw InputError("disk_triangulation_pack: need one radius per boundary vertex");
    for (double r : boundary_radii)
        if (!(r > 0.0) || !std::isfinite(r)) throw InputError("disk_triangulation_pack: radii must be > 0");

    DiskPackResult res;
    res.radii.assign(static_cast<std::size_t>(t.n), 0.0);
    std::vector<char> interior(static_cast<std::size_t>(t.n), 1);
    double mean = 0.0;
    for (std::size_t i = 0; i < t.boundary.size(); ++i) {
        res.radii[static_cast<std::size_t>(t.boundary[i])] = boundary_radii[i];
        interior[static_cast<std::size_t>(t.boundary[i])] = 0;
        mean += boundary_radii[i];
    }
    mean /= static_cast<double>(t.boundary.size());
    std::vector<int> inner;
    for (int v = 0; v < t.n; ++v)
        if (interior[static_cast<std::size_t>(v)]) {
            inner.push_back(v);
            res.radii[static_cast<std::size_t>(v)] = mean;
        }

    std::vector<std::vector<std::pair<int, int>>> corners(static_cast<std::size_t>(t.n));
    for (const auto& f : t.faces)
        for (int e = 0; e < 3; ++e)
            corners[static_cast<std::size_t>(f[static_cast<std::size_t>(e)])].emplace_back(
                f[static_cast<std::size_t>((e + 1) % 3)], f[static_cast<std::size_t>((e + 2) % 3)]);

    auto angle_sum = [&](int v) {
        double s = 0.0;
        for (auto& [u, w] : corners[static_cast<std::size_t>(v)])
            s += corner_angle(res.radii[static_cast<std::size_t>(v)], res.radii[static_cast<std::size_t>(u)],
                              res.radii[static_cast<std::size_t>(w)]);
        return s;
    };

    // damped uniform-neighbor updates; the damping relaxes while the defect
    // keeps shrinking and snaps back to 0.5 whenever it grows
    double pi = std::acos(-1.0);
    double lambda = 0.5;
    double prev_defect = std::numeric_limits<double>::infinity();
    res.converged = inner.empty();
    for (int round = 0; round < 100000 && !res.converged; ++round) {
        res.rounds = round + 1;
        double defect = 0.0;
        for (int v : inner) {
            double theta = angle_sum(v);
            auto k = static_cast<double>(corners[static_cast<std::size_t>(v)].size());
            double beta = std::sin(theta / (2.0 * k));
            double delta = std::sin(pi / k);
            double rv = res.radii[static_cast<std::size_t>(v)];
            double hat = rv * (beta / (1.0 - beta)) * ((1.0 - delta) / delta);
            double next = rv + lambda * (hat - rv);
            res.radii[static_cast<std::size_t>(v)] = std::max(next, 0.1 * rv);
        }
        for (int v : inner) defect = std::max(defect, std::abs(angle_sum(v) - 2.0 * pi));
        res.max_angle_defect = defect;
        if (defect <= 1e-10) res.converged = true;
        lambda = defect < prev_defect ? std::min(1.4, lambda * 1.1) : 0.5;
        prev_defect = defect;
    }

    // orient faces consistently by flipping across shared edges
    std::map<Edge, std::vector<std::size_t>> edge_faces;
    for (std::size_t i = 0; i < t.faces.size(); ++i)
        for (int e = 0; e < 3; ++e)
            edge_faces[ordered(t.faces[i][static_cast<std::size_t>(e)],
                               t.faces[i][static_cast<std::size_t>((e + 1) % 3)])]
                .push_back(i);
    std::vector<std::array<int, 3>> oriented = t.faces;
    std::vector<char> fixed(t.faces.size(), 0);
    std::queue<std::size_t> fq;
    fq.push(0);
    fixed[0] = 1;
    auto has_directed = [&](const std::array<int, 3>& f, int a, int b) {
        for (int e = 0; e < 3; ++e)
            if (f[static_cast<std::size_t>(e)] == a && f[static_cast<std::size_t>((e + 1) % 3)] == b) return true;
        return false;
    };
    while (!fq.empty()) {
        auto i = fq.front();
        fq.pop();
        for (int e = 0; e < 3; ++e) {
            int a = oriented[i][static_cast<std::size_t>(e)];
            int b = oriented[i][static_cast<std::size_t>((e + 1) % 3)];
            for (std::size_t j : edge_faces[ordered(a, b)]) {
                if (j == i || fixed[j]) continue;
                if (has_directed(oriented[j], a, b)) std::swap(oriented[j][0], oriented[j][1]);
                fixed[j] = 1;
                fq.push(j);
            }
        }
    }

    // lay out circle by circle: tangent circles sit at center distance
    // r_a + r_b, and a face's third vertex goes to the left of its oriented
    // placed edge
    std::vector<std::array<double, 2>> pos(static_cast<std::size_t>(t.n), {0.0, 0.0});
    std::vector<char> placed(static_cast<std::size_t>(t.n), 0);
    {
        const auto& f0 = oriented[0];
        double ra = res.radii[static_cast<std::size_t>(f0[0])];
        double rb = res.radii[static_cast<std::size_t>(f0[1])];
        pos[static_cast<std::size_t>(f0[0])] = {0.0, 0.0};
        pos[static_cast<std::size_t>(f0[1])] = {ra + rb, 0.0};
        placed[static_cast<std::size_t>(f0[0])] = placed[static_cast<std::size_t>(f0[1])] = 1;
    }
    std::vector<char> done_face(oriented.size(), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < oriented.size(); ++i) {
            if (done_face[i]) continue;
            const auto& f = oriented[i];
            int np = placed[static_cast<std::size_t>(f[0])] + placed[static_cast<std::size_t>(f[1])] +
                     placed[static_cast<std::size_t>(f[2])];
            if (np == 3) {
                done_face[i] = 1;
                progress = true;
                continue;
            }
            if (np != 2) continue;
            int e = 0;
            while (!(placed[static_cast<std::size_t>(f[static_cast<std::size_t>(e)])] &&
                     placed[static_cast<std::size_t>(f[static_cast<std::size_t>((e + 1) % 3)])]))
                ++e;
            int a = f[static_cast<std::size_t>(e)];
            int b = f[static_cast<std::size_t>((e + 1) % 3)];
            int c = f[static_cast<std::size_t>((e + 2) % 3)];
            double ra = res.radii[static_cast<std::size_t>(a)] + res.radii[static_cast<std::size_t>(c)];
            double rb = res.radii[static_cast<std::size_t>(b)] + res.radii[static_cast<std::size_t>(c)];
            double ax = pos[static_cast<std::size_t>(a)][0], ay = pos[static_cast<std::size_t>(a)][1];
            double bx = pos[static_cast<std::size_t>(b)][0], by = pos[static_cast<std::size_t>(b)][1];
            double dx = bx - ax, dy = by - ay;
            double d2 = dx * dx + dy * dy, d = std::sqrt(d2);
            if (!(d > 0.0)) {
                // collapsed edge in a non-converged layout; shove the circle
                // somewhere finite so the partial output stays well formed
                pos[static_cast<std::size_t>(c)] = {ax + ra, ay};
                placed[static_cast<std::size_t>(c)] = 1;
                done_face[i] = 1;
                progress = true;
                continue;
            }
            double along = (ra * ra - rb * rb + d2) / (2.0 * d);
            double off = std::sqrt(std::max(0.0, ra * ra - along * along));
            // left of a->b
            pos[static_cast<std::size_t>(c)] = {ax + along * dx / d - off * dy / d,
                                                ay + along * dy / d + off * dx / d};
            placed[static_cast<std::size_t>(c)] = 1;
            done_face[i] = 1;
            progress = true;
        }
    }

    res.packing = Packing(2, 1e-6);
    for (int v = 0; v < t.n; ++v) {
        Ball b;
        b.id = std::to_string(v);
        b.center = {pos[static_cast<std::size_t>(v)][0], pos[static_cast<std::size_t>(v)][1]};
        b.radius = res.radii[static_cast<std::size_t>(v)];
        res.packing.add_ball(std::move(b));
    }
    return res;
}

}  // namespace dpack
