#include "dpack/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

namespace dpack {

int Graph::add_vertex(std::string id) {
    auto [it, inserted] = index_.emplace(std::move(id), vertex_count());
    if (!inserted) throw InputError("graph: duplicate vertex id '" + it->first + "'");
    ids_.push_back(it->first);
    adj_.emplace_back();
    return static_cast<int>(ids_.size()) - 1;
}

void Graph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        throw InputError("graph: edge endpoint out of range");
    if (u == v) throw InputError("graph: loop at vertex '" + ids_[static_cast<std::size_t>(u)] + "'");
    auto& au = adj_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return;  // already present
    au.insert(it, v);
    auto& av = adj_[static_cast<std::size_t>(v)];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
}

void Graph::add_edge_ids(const std::string& u, const std::string& v) {
    add_edge(require_index(u), require_index(v));
}

int Graph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int Graph::require_index(const std::string& id) const {
    int v = index_of(id);
    if (v < 0) throw InputError("graph: unknown vertex id '" + id + "'");
    return v;
}

bool Graph::adjacent(int u, int v) const {
    const auto& au = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(au.begin(), au.end(), v);
}

std::vector<int> Graph::bfs_distances(int root) const {
    if (root < 0 || root >= vertex_count()) throw InputError("graph: root out of range");
    std::vector<int> dist(static_cast<std::size_t>(vertex_count()), -1);
    std::deque<int> q{root};
    dist[static_cast<std::size_t>(root)] = 0;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : neighbors(u))
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push_back(v);
            }
    }
    return dist;
}

bool Graph::connected() const {
    if (vertex_count() == 0) return true;
    auto d = bfs_distances(0);
    return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

int Graph::eccentricity(int root) const {
    auto d = bfs_distances(root);
    int ecc = 0;
    for (int x : d) {
        if (x < 0) throw InputError("graph: eccentricity undefined on a disconnected graph");
        ecc = std::max(ecc, x);
    }
    return ecc;
}

std::vector<int> vertex_boundary(const Graph& g, const std::vector<int>& w) {
    std::vector<char> in_w(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : w) {
        if (v < 0 || v >= g.vertex_count()) throw InputError("vertex_boundary: vertex out of range");
        in_w[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> out;
    for (int v : w)
        for (int u : g.neighbors(v))
            if (!in_w[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                out.push_back(u);
            }
    std::sort(out.begin(), out.end());
    return out;
}

RootedGraph ball(const Graph& g, int o, int k) {
    if (k < 0) throw InputError("ball: radius must be >= 0");
    auto dist = g.bfs_distances(o);
    std::vector<int> keep;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (dist[static_cast<std::size_t>(v)] >= 0 && dist[static_cast<std::size_t>(v)] <= k) keep.push_back(v);
    std::vector<int> remap(static_cast<std::size_t>(g.vertex_count()), -1);
    RootedGraph out;
    for (int v : keep) remap[static_cast<std::size_t>(v)] = out.graph.add_vertex(g.id_of(v));
    for (int v : keep)
        for (int u : g.neighbors(v))
            if (u > v && remap[static_cast<std::size_t>(u)] >= 0)
                out.graph.add_edge(remap[static_cast<std::size_t>(v)], remap[static_cast<std::size_t>(u)]);
    out.root = remap[static_cast<std::size_t>(o)];
    return out;
}

HullSequence hull_sequence(const Graph& g, int o, int k_max) {
    if (o < 0 || o >= g.vertex_count()) throw InputError("hull_sequence: root out of range");
    if (k_max < 0) throw InputError("hull_sequence: k_max must be >= 0");
    HullSequence hs;
    std::vector<char> in_w(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> current{o};
    in_w[static_cast<std::size_t>(o)] = 1;
    hs.layers.push_back(current);
    std::int64_t total = 1;
    hs.n.push_back(total);
    for (int k = 0; k < k_max; ++k) {
        std::vector<int> next;
        for (int v : hs.layers.back())
            for (int u : g.neighbors(v))
                if (!in_w[static_cast<std::size_t>(u)]) {
                    in_w[static_cast<std::size_t>(u)] = 1;
                    next.push_back(u);
                }
        std::sort(next.begin(), next.end());
        hs.boundary_size.push_back(static_cast<std::int64_t>(next.size()));
        if (next.empty()) {
            hs.reached_all = true;
            return hs;
        }
        total += static_cast<std::int64_t>(next.size());
        hs.layers.push_back(std::move(next));
        hs.n.push_back(total);
    }
    // report |boundary(W_K)| for the final set as well
    std::vector<int> w_all;
    for (const auto& layer : hs.layers) w_all.insert(w_all.end(), layer.begin(), layer.end());
    hs.boundary_size.push_back(static_cast<std::int64_t>(vertex_boundary(g, w_all).size()));
    hs.reached_all = total == g.vertex_count();
    return hs;
}

// ---------------------------------------------------------------------------
// Refinement, isomorphism, canonical keys
// ---------------------------------------------------------------------------

namespace {

// One round of color refinement over possibly two graphs sharing a color
// space: new color = rank of (old color, sorted multiset of neighbor colors).
// Returns false once stable.
struct RefineState {
    std::vector<int> colors;  // concatenated: a's vertices then b's
};

using Signature = std::pair<int, std::vector<int>>;

bool refine_round(const std::vector<const Graph*>& graphs, std::vector<std::vector<int>>& colors) {
    std::map<Signature, int> dict;
    std::vector<std::vector<Signature>> sigs(graphs.size());
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = *graphs[gi];
        sigs[gi].resize(static_cast<std::size_t>(g.vertex_count()));
        for (int v = 0; v < g.vertex_count(); ++v) {
            std::vector<int> nb;
            nb.reserve(g.neighbors(v).size());
            for (int u : g.neighbors(v)) nb.push_back(colors[gi][static_cast<std::size_t>(u)]);
            std::sort(nb.begin(), nb.end());
            sigs[gi][static_cast<std::size_t>(v)] = {colors[gi][static_cast<std::size_t>(v)], std::move(nb)};
        }
    }
    for (auto& s : sigs)
        for (auto& sig : s) dict.emplace(sig, 0);
    int next = 0;
    for (auto& [sig, c] : dict) c = next++;
    bool changed = false;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi)
        for (int v = 0; v < graphs[gi]->vertex_count(); ++v) {
            int nc = dict.at(sigs[gi][static_cast<std::size_t>(v)]);
            if (nc != colors[gi][static_cast<std::size_t>(v)]) changed = true;
            colors[gi][static_cast<std::size_t>(v)] = nc;
        }
    return changed;
}

void refine_to_stable(const std::vector<const Graph*>& graphs, std::vector<std::vector<int>>& colors) {
    while (refine_round(graphs, colors)) {
    }
}

std::vector<int> initial_colors(const Graph& g, int root) {
    // distance-to-root and degree, shared scale across graphs: encode as
    // dist * (max_deg+1) + deg would not be comparable across graphs, so we
    // use a pair rank computed per call site; here distances only, refinement
    // picks up degrees in the first round.
    auto dist = g.bfs_distances(root);
    for (int& d : dist)
        if (d < 0) d = g.vertex_count();  // disconnected part, same bucket
    return dist;
}

std::vector<std::vector<int>> color_histogram(const std::vector<int>& colors) {
    std::map<int, int> h;
    for (int c : colors) ++h[c];
    std::vector<std::vector<int>> out;
    for (auto [c, n] : h) out.push_back({c, n});
    return out;
}

// Backtracking extension of a partial vertex map from a to b, consistent with
// the stable coloring. Vertices are matched in an order that keeps the mapped
// region connected to maximize pruning.
struct IsoSearch {
    const Graph& a;
    const Graph& b;
    const std::vector<int>& ca;
    const std::vector<int>& cb;
    std::vector<int> map_ab;
    std::vector<int> map_ba;
    std::vector<int> order;  // match order over a's vertices

    IsoSearch(const Graph& a_, const Graph& b_, const std::vector<int>& ca_, const std::vector<int>& cb_)
        : a(a_), b(b_), ca(ca_), cb(cb_),
          map_ab(static_cast<std::size_t>(a_.vertex_count()), -1),
          map_ba(static_cast<std::size_t>(b_.vertex_count()), -1) {}

    bool feasible(int va, int vb) const {
        if (ca[static_cast<std::size_t>(va)] != cb[static_cast<std::size_t>(vb)]) return false;
        for (int u : a.neighbors(va)) {
            int mu = map_ab[static_cast<std::size_t>(u)];
            if (mu >= 0 && !b.adjacent(vb, mu)) return false;
        }
        for (int u : b.neighbors(vb)) {
            int mu = map_ba[static_cast<std::size_t>(u)];
            if (mu >= 0 && !a.adjacent(va, mu)) return false;
        }
        return true;
    }

    bool extend(std::size_t pos) {
        if (pos == order.size()) return true;
        int va = order[pos];
        for (int vb = 0; vb < b.vertex_count(); ++vb) {
            if (map_ba[static_cast<std::size_t>(vb)] >= 0) continue;
            if (!feasible(va, vb)) continue;
            map_ab[static_cast<std::size_t>(va)] = vb;
            map_ba[static_cast<std::size_t>(vb)] = va;
            if (extend(pos + 1)) return true;
            map_ab[static_cast<std::size_t>(va)] = -1;
            map_ba[static_cast<std::size_t>(vb)] = -1;
        }
        return false;
    }
};

std::string adjacency_certificate(const Graph& g, const std::vector<int>& perm_to_slot) {
    // upper-triangular adjacency bits in slot order, packed 8 per byte
    int n = g.vertex_count();
    std::vector<int> slot_to_vertex(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) slot_to_vertex[static_cast<std::size_t>(perm_to_slot[static_cast<std::size_t>(v)])] = v;
    std::string bits;
    bits.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 16 + 8);
    unsigned acc = 0;
    int nbits = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            acc = (acc << 1) | (g.adjacent(slot_to_vertex[static_cast<std::size_t>(i)],
                                           slot_to_vertex[static_cast<std::size_t>(j)])
                                    ? 1u
                                    : 0u);
            if (++nbits == 8) {
                bits.push_back(static_cast<char>(acc));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) bits.push_back(static_cast<char>(acc << (8 - nbits)));
    return bits;
}

struct CanonSearch {
    const Graph& g;
    std::string best;
    bool have_best = false;

    explicit CanonSearch(const Graph& g_) : g(g_) {}

    void run(std::vector<int> colors) {
        std::vector<const Graph*> gs{&g};
        std::vector<std::vector<int>> cs{std::move(colors)};
        refine_to_stable(gs, cs);
        auto& c = cs[0];
        // find smallest non-singleton color class
        std::map<int, std::vector<int>> classes;
        for (int v = 0; v < g.vertex_count(); ++v) classes[c[static_cast<std::size_t>(v)]].push_back(v);
        const std::vector<int>* branch_class = nullptr;
        for (auto& [col, vs] : classes)
            if (vs.size() > 1) {
                branch_class = &vs;
                break;
            }
        if (branch_class == nullptr) {
            // discrete: slot of v = rank of its color
            std::vector<int> slot(static_cast<std::size_t>(g.vertex_count()));
            int s = 0;
            for (auto& [col, vs] : classes) slot[static_cast<std::size_t>(vs[0])] = s++;
            std::string cert = adjacency_certificate(g, slot);
            if (!have_best || cert < best) {
                best = std::move(cert);
                have_best = true;
            }
            return;
        }
        // individualize every vertex of the class in turn
        int mx = 0;
        for (int x : c) mx = std::max(mx, x);
        for (int v : *branch_class) {
            auto c2 = c;
            c2[static_cast<std::size_t>(v)] = mx + 1;
            run(std::move(c2));
        }
    }
};

}  // namespace

bool rooted_isomorphic(const RootedGraph& a, const RootedGraph& b) {
    const Graph& ga = a.graph;
    const Graph& gb = b.graph;
    if (ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count()) return false;
    if (ga.vertex_count() == 0) return true;
    std::vector<std::vector<int>> colors{initial_colors(ga, a.root), initial_colors(gb, b.root)};
    std::vector<const Graph*> graphs{&ga, &gb};
    refine_to_stable(graphs, colors);
    if (color_histogram(colors[0]) != color_histogram(colors[1])) return false;
    IsoSearch search(ga, gb, colors[0], colors[1]);
    // match roots first, then the rest in BFS order from the root
    auto dist = ga.bfs_distances(a.root);
    search.order.resize(static_cast<std::size_t>(ga.vertex_count()));
    std::iota(search.order.begin(), search.order.end(), 0);
    std::sort(search.order.begin(), search.order.end(), [&](int x, int y) {
        int dx = dist[static_cast<std::size_t>(x)] < 0 ? ga.vertex_count() : dist[static_cast<std::size_t>(x)];
        int dy = dist[static_cast<std::size_t>(y)] < 0 ? ga.vertex_count() : dist[static_cast<std::size_t>(y)];
        if (dx != dy) return dx < dy;
        return x < y;
    });
    if (!search.feasible(a.root, b.root)) return false;
    search.map_ab[static_cast<std::size_t>(a.root)] = b.root;
    search.map_ba[static_cast<std::size_t>(b.root)] = a.root;
    std::size_t start = 0;
    // the root sits first in the order; skip it
    std::vector<int> rest;
    for (int v : search.order)
        if (v != a.root) rest.push_back(v);
    search.order = std::move(rest);
    return search.extend(start);
}

std::string canonical_key(const RootedGraph& rg) {
    const Graph& g = rg.graph;
    int n = g.vertex_count();
    std::string head = std::to_string(n) + ":" + std::to_string(g.edge_count()) + ":";
    if (n == 0) return head;
    CanonSearch cs(g);
    // the root is individualized up front so keys respect rootedness
    std::vector<int> init = initial_colors(g, rg.root);
    for (int& c : init) c += 1;
    init[static_cast<std::size_t>(rg.root)] = 0;
    cs.run(std::move(init));
    // hex-encode the certificate bits
    static const char* hex = "0123456789abcdef";
    std::string out = head;
    out.reserve(head.size() + cs.best.size() * 2);
    for (unsigned char byte : cs.best) {
        out.push_back(hex[byte >> 4]);
        out.push_back(hex[byte & 0xf]);
    }
    return out;
}

BsDistance bs_distance(const RootedGraph& a, const RootedGraph& b, int k_max) {
    if (k_max < 0) throw InputError("bs_distance: k_max must be >= 0");
    if (a.graph.vertex_count() == 0 || b.graph.vertex_count() == 0)
        throw InputError("bs_distance: graphs must be nonempty");
    BsDistance out;
    int saturate = std::max(a.graph.eccentricity(a.root), b.graph.eccentricity(b.root));
    int agree = -1;  // radius-0 balls always match, so this ends >= 0
    for (int k = 0; k <= std::min(k_max, saturate); ++k) {
        if (rooted_isomorphic(ball(a.graph, a.root, k), ball(b.graph, b.root, k)))
            agree = k;
        else
            break;
    }
    out.agree_radius = agree;
    if (agree == saturate && saturate <= k_max) {
        // balls saturated while still isomorphic: the rooted graphs agree
        out.value = 0.0;
        out.truncated = false;
        return out;
    }
    if (agree == k_max && k_max < saturate) {
        out.value = 1.0 / (1.0 + static_cast<double>(k_max));  // upper bound only
        out.truncated = true;
        return out;
    }
    out.value = agree < 0 ? 1.0 : 1.0 / (1.0 + static_cast<double>(agree));
    out.truncated = false;
    return out;
}

// ---------------------------------------------------------------------------
// Cheeger
// ---------------------------------------------------------------------------

namespace {

struct RatioTracker {
    std::int64_t num = -1, den = 1;  // |boundary| / |W|
    std::uint32_t witness = 0;

    void offer(std::int64_t bsize, std::int64_t wsize, std::uint32_t mask) {
        if (num < 0 || bsize * den < num * wsize) {
            num = bsize;
            den = wsize;
            witness = mask;
        }
    }
};

// enumerate all connected vertex sets S with min(S) = v, |S| <= cap,
// avoiding banned; classic extension scheme, each set visited once
void enumerate_connected(const std::vector<std::uint32_t>& adj, std::uint32_t s, std::uint32_t nbr,
                         std::uint32_t ext, std::uint32_t banned, int cap, RatioTracker& best) {
    std::int64_t wsize = std::popcount(s);
    best.offer(std::popcount(nbr & ~s), wsize, s);
    if (wsize >= cap) return;
    while (ext != 0) {
        std::uint32_t u_bit = ext & (~ext + 1);
        int u = std::countr_zero(u_bit);
        ext &= ext - 1;
        std::uint32_t s2 = s | u_bit;
        std::uint32_t nbr2 = nbr | adj[static_cast<std::size_t>(u)];
        std::uint32_t ext2 = ext | (adj[static_cast<std::size_t>(u)] & ~s2 & ~banned & ~ext);
        enumerate_connected(adj, s2, nbr2, ext2 & ~banned, banned, cap, best);
        banned |= u_bit;  // sets containing u are covered above
    }
}

CheegerResult cheeger_exact(const Graph& g, int threshold) {
    int n = g.vertex_count();
    if (n > threshold) throw InputError("cheeger_constant: exact mode limited to " + std::to_string(threshold) + " vertices");
    if (n > 31) throw InputError("cheeger_constant: exact mode limited to 31 vertices");
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int u : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= (1u << u);
    int cap = n / 2;
    if (cap < 1) throw InputError("cheeger_constant: graph too small");
    RatioTracker best;
    std::uint32_t banned = 0;
    for (int v = 0; v < n; ++v) {
        std::uint32_t v_bit = 1u << v;
        enumerate_connected(adj, v_bit, adj[static_cast<std::size_t>(v)],
                            adj[static_cast<std::size_t>(v)] & ~banned & ~v_bit, banned | v_bit, cap, best);
        banned |= v_bit;
    }
    CheegerResult out;
    out.value = static_cast<double>(best.num) / static_cast<double>(best.den);
    out.exact = true;
    for (int v = 0; v < n; ++v)
        if (best.witness & (1u << v)) out.witness.push_back(v);
    return out;
}

struct BoundaryCounter {
    const Graph& g;
    std::vector<int> nbrs_in_w;  // per vertex, neighbors inside W
    std::vector<char> in_w;
    std::int64_t boundary = 0;
    std::int64_t size = 0;

    explicit BoundaryCounter(const Graph& g_)
        : g(g_), nbrs_in_w(static_cast<std::size_t>(g_.vertex_count()), 0),
          in_w(static_cast<std::size_t>(g_.vertex_count()), 0) {}

    void add(int v) {
        in_w[static_cast<std::size_t>(v)] = 1;
        ++size;
        if (nbrs_in_w[static_cast<std::size_t>(v)] > 0) --boundary;  // v was boundary
        for (int u : g.neighbors(v)) {
            if (!in_w[static_cast<std::size_t>(u)] && nbrs_in_w[static_cast<std::size_t>(u)] == 0) ++boundary;
            ++nbrs_in_w[static_cast<std::size_t>(u)];
        }
    }

    void remove(int v) {
        in_w[static_cast<std::size_t>(v)] = 0;
        --size;
        for (int u : g.neighbors(v)) {
            --nbrs_in_w[static_cast<std::size_t>(u)];
            if (!in_w[static_cast<std::size_t>(u)] && nbrs_in_w[static_cast<std::size_t>(u)] == 0) --boundary;
        }
        if (nbrs_in_w[static_cast<std::size_t>(v)] > 0) ++boundary;
    }

    double ratio() const { return static_cast<double>(boundary) / static_cast<double>(size); }
};

bool connected_without(const Graph& g, const std::set<int>& w, int without) {
    std::set<int> rest = w;
    rest.erase(without);
    if (rest.empty()) return false;
    std::deque<int> q{*rest.begin()};
    std::set<int> seen{*rest.begin()};
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int x : g.neighbors(u))
            if (rest.count(x) && !seen.count(x)) {
                seen.insert(x);
                q.push_back(x);
            }
    }
    return seen.size() == rest.size();
}

CheegerResult cheeger_heuristic(const Graph& g) {
    int n = g.vertex_count();
    int cap = n / 2;
    if (cap < 1) throw InputError("cheeger_constant: graph too small");
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_w;

    // (a) BFS sweep from every vertex: every prefix of the BFS order is a
    // candidate W
    for (int s = 0; s < n; ++s) {
        BoundaryCounter bc(g);
        std::vector<int> order;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::deque<int> q{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            order.push_back(u);
            for (int v : g.neighbors(u))
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    q.push_back(v);
                }
        }
        std::vector<int> w;
        for (int u : order) {
            if (static_cast<int>(w.size()) >= cap) break;
            bc.add(u);
            w.push_back(u);
            if (bc.ratio() < best) {
                best = bc.ratio();
                best_w = w;
            }
        }
    }

    // (b) local search: grow/shrink the best sweep set while the ratio drops
    if (!best_w.empty()) {
        std::set<int> w(best_w.begin(), best_w.end());
        BoundaryCounter bc(g);
        for (int v : w) bc.add(v);
        bool improved = true;
        int passes = 0;
        while (improved && passes++ < 32) {
            improved = false;
            auto bd = vertex_boundary(g, std::vector<int>(w.begin(), w.end()));
            for (int v : bd) {
                if (static_cast<int>(w.size()) >= cap) break;
                bc.add(v);
                if (bc.ratio() < best) {
                    best = bc.ratio();
                    w.insert(v);
                    best_w.assign(w.begin(), w.end());
                    improved = true;
                } else {
                    bc.remove(v);
                }
            }
            std::vector<int> members(w.begin(), w.end());
            for (int v : members) {
                if (w.size() <= 1) break;
                if (!connected_without(g, w, v)) continue;
                bc.remove(v);
                if (bc.ratio() < best) {
                    best = bc.ratio();
                    w.erase(v);
                    best_w.assign(w.begin(), w.end());
                    improved = true;
                } else {
                    bc.add(v);
                }
            }
        }
    }

    CheegerResult out;
    out.value = best;
    out.witness = best_w;
    out.exact = false;
    std::sort(out.witness.begin(), out.witness.end());
    return out;
}

}  // namespace

CheegerResult cheeger_constant(const Graph& g, CheegerMode mode, int exhaustive_threshold) {
    if (g.vertex_count() == 0) throw InputError("cheeger_constant: empty graph");
    if (mode == CheegerMode::Exact) return cheeger_exact(g, exhaustive_threshold);
    return cheeger_heuristic(g);
}

// ---------------------------------------------------------------------------
// Isoperimetric profile
// ---------------------------------------------------------------------------

IsoProfile iso_profile(const Graph& g, int o, int k_max) {
    auto hs = hull_sequence(g, o, k_max);
    IsoProfile out;
    out.n = hs.n;
    out.boundary = hs.boundary_size;
    int kk = static_cast<int>(hs.n.size()) - 1;  // largest k with data
    out.fit_lo = (kk + 3) / 4;
    out.fit_hi = (3 * kk) / 4;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int k = out.fit_lo; k <= out.fit_hi; ++k) {
        if (k >= static_cast<int>(out.boundary.size())) break;
        if (out.boundary[static_cast<std::size_t>(k)] <= 0) continue;
        double x = std::log(static_cast<double>(out.n[static_cast<std::size_t>(k)]));
        double y = std::log(static_cast<double>(out.boundary[static_cast<std::size_t>(k)]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    double det = cnt * sxx - sx * sx;
    if (cnt >= 2 && std::abs(det) > 1e-12) {
        out.alpha = (cnt * sxy - sx * sy) / det;
        out.alpha_defined = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Neighborhood census
// ---------------------------------------------------------------------------

std::vector<CensusDistribution> neighborhood_census(const std::vector<const Graph*>& graphs, int k,
                                                    const CensusSampling& sampling, int threads) {
    if (k < 0) throw InputError("neighborhood_census: k must be >= 0");
    std::vector<CensusDistribution> out;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const Graph& g = *graphs[gi];
        std::vector<int> roots;
        if (sampling.exhaustive) {
            roots.resize(static_cast<std::size_t>(g.vertex_count()));
            std::iota(roots.begin(), roots.end(), 0);
        } else {
            if (sampling.count <= 0) throw InputError("neighborhood_census: sample count must be positive");
            std::mt19937_64 rng(sampling.seed + gi);  // per-graph stream
            std::uniform_int_distribution<int> pick(0, g.vertex_count() - 1);
            roots.reserve(static_cast<std::size_t>(sampling.count));
            for (std::int64_t i = 0; i < sampling.count; ++i) roots.push_back(pick(rng));
        }
        std::vector<std::string> keys(roots.size());
        parallel_for(roots.size(), threads,
                     [&](std::size_t i) { keys[i] = canonical_key(ball(g, roots[i], k)); });
        std::map<std::string, std::int64_t> counts;
        for (auto& key : keys) ++counts[key];
        CensusDistribution dist;
        dist.denominator = static_cast<std::int64_t>(roots.size());
        for (auto& [key, cnt] : counts) dist.classes.push_back({key, cnt});
        if (!out.empty()) dist.tv_to_previous = census_tv_distance(out.back(), dist);
        out.push_back(std::move(dist));
    }
    return out;
}

double census_tv_distance(const CensusDistribution& a, const CensusDistribution& b) {
    // TV = (1/2) sum |p_i - q_i| over the union of class keys, with the
    // rational masses cross-multiplied exactly
    std::int64_t num = 0;
    std::size_t i = 0, j = 0;
    auto abs64 = [](std::int64_t x) { return x < 0 ? -x : x; };
    while (i < a.classes.size() || j < b.classes.size()) {
        if (j >= b.classes.size() || (i < a.classes.size() && a.classes[i].key < b.classes[j].key)) {
            num += abs64(a.classes[i].count * b.denominator);
            ++i;
        } else if (i >= a.classes.size() || b.classes[j].key < a.classes[i].key) {
            num += abs64(b.classes[j].count * a.denominator);
            ++j;
        } else {
            num += abs64(a.classes[i].count * b.denominator - b.classes[j].count * a.denominator);
            ++i;
            ++j;
        }
    }
    return 0.5 * static_cast<double>(num) / (static_cast<double>(a.denominator) * static_cast<double>(b.denominator));
}

}  // namespace dpack
