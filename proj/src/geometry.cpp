#include "dpack/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>

namespace dpack {

Packing::Packing(int dimension, double tol_rel) : dim_(dimension), tol_rel_(tol_rel) {
    if (dimension < 1) throw InputError("packing: dimension must be >= 1");
    set_tol_rel(tol_rel);
}

void Packing::set_tol_rel(double t) {
    if (!(t >= 0.0) || !(t < 1.0)) throw InputError("packing: tol_rel must lie in [0, 1)");
    tol_rel_ = t;
}

int Packing::add_ball(Ball b) {
    if (static_cast<int>(b.center.size()) != dim_)
        throw InputError("packing: ball '" + b.id + "' has " + std::to_string(b.center.size()) +
                         " coordinates, expected " + std::to_string(dim_));
    if (!std::isfinite(b.radius) || b.radius <= 0.0)
        throw InputError("packing: ball '" + b.id + "' needs a positive finite radius");
    for (double x : b.center)
        if (!std::isfinite(x)) throw InputError("packing: ball '" + b.id + "' has a non-finite coordinate");
    auto [it, inserted] = index_.emplace(b.id, size());
    if (!inserted) throw InputError("packing: duplicate ball id '" + b.id + "'");
    balls_.push_back(std::move(b));
    return size() - 1;
}

int Packing::index_of(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int Packing::require_index(const std::string& id) const {
    int i = index_of(id);
    if (i < 0) throw InputError("packing: unknown ball id '" + id + "'");
    return i;
}

double Packing::min_radius() const {
    if (balls_.empty()) throw InputError("packing: empty");
    double m = balls_[0].radius;
    for (const auto& b : balls_) m = std::min(m, b.radius);
    return m;
}

double Packing::max_radius() const {
    if (balls_.empty()) throw InputError("packing: empty");
    double m = balls_[0].radius;
    for (const auto& b : balls_) m = std::max(m, b.radius);
    return m;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw InputError("distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Near-pair enumeration
// ---------------------------------------------------------------------------

namespace {

std::uint64_t cell_hash(const std::vector<std::int64_t>& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t x : c) {
        h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

// Hash collisions merge buckets, which only adds candidates; every caller
// filters by true distance afterwards.
struct CellGrid {
    double cell = 1.0;
    int dim = 1;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;

    std::vector<std::int64_t> coords(const std::vector<double>& x) const {
        std::vector<std::int64_t> c(x.size());
        for (std::size_t k = 0; k < x.size(); ++k)
            c[k] = static_cast<std::int64_t>(std::floor(x[k] / cell));
        return c;
    }

    void insert(const std::vector<double>& x, int idx) { buckets[cell_hash(coords(x))].push_back(idx); }

    template <typename Fn>
    void for_each_in_box(const std::vector<double>& center, double radius, Fn&& fn) const {
        std::vector<std::int64_t> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim)),
            cur(static_cast<std::size_t>(dim));
        for (int k = 0; k < dim; ++k) {
            lo[static_cast<std::size_t>(k)] =
                static_cast<std::int64_t>(std::floor((center[static_cast<std::size_t>(k)] - radius) / cell));
            hi[static_cast<std::size_t>(k)] =
                static_cast<std::int64_t>(std::floor((center[static_cast<std::size_t>(k)] + radius) / cell));
            cur[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
        }
        while (true) {
            auto it = buckets.find(cell_hash(cur));
            if (it != buckets.end())
                for (int idx : it->second) fn(idx);
            int k = 0;
            for (; k < dim; ++k) {
                if (++cur[static_cast<std::size_t>(k)] <= hi[static_cast<std::size_t>(k)]) break;
                cur[static_cast<std::size_t>(k)] = lo[static_cast<std::size_t>(k)];
            }
            if (k == dim) break;
        }
    }
};

}  // namespace

void for_each_near_pair(const Packing& p, double pad, const std::function<void(int, int)>& visit) {
    int n = p.size();
    if (n < 2) return;
    auto near = [&](int i, int j) {
        double sum = p.ball(i).radius + p.ball(j).radius;
        return distance(p.ball(i).center, p.ball(j).center) <= sum * (1.0 + pad);
    };
    if (n <= 4096) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (near(i, j)) visit(i, j);
        return;
    }

    double rmin = p.min_radius(), rmax = p.max_radius();
    if (rmax / rmin <= 1e4) {
        CellGrid grid;
        grid.dim = p.dimension();
        grid.cell = 2.0 * rmax * (1.0 + pad);
        for (int i = 0; i < n; ++i) grid.insert(p.ball(i).center, i);
        for (int i = 0; i < n; ++i) {
            double reach = (p.ball(i).radius + rmax) * (1.0 + pad);
            grid.for_each_in_box(p.ball(i).center, reach, [&](int j) {
                if (j > i && near(i, j)) visit(i, j);
            });
        }
        return;
    }

    // wide radius spread: one grid per power-of-two radius band, each ball
    // queries its own band and every coarser one
    std::map<int, CellGrid> levels;
    std::vector<int> level_of(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int l = static_cast<int>(std::floor(std::log2(p.ball(i).radius)));
        level_of[static_cast<std::size_t>(i)] = l;
        auto [it, fresh] = levels.try_emplace(l);
        if (fresh) {
            it->second.dim = p.dimension();
            it->second.cell = 2.0 * std::ldexp(1.0, l + 1) * (1.0 + pad);
        }
        it->second.insert(p.ball(i).center, i);
    }
    for (int i = 0; i < n; ++i) {
        int li = level_of[static_cast<std::size_t>(i)];
        for (auto it = levels.lower_bound(li); it != levels.end(); ++it) {
            double cap = std::ldexp(1.0, it->first + 1);
            double reach = (p.ball(i).radius + cap) * (1.0 + pad);
            bool same = it->first == li;
            it->second.for_each_in_box(p.ball(i).center, reach, [&](int j) {
                if (same && j <= i) return;
                if (!same && level_of[static_cast<std::size_t>(j)] == li && j <= i) return;
                if (near(i, j)) visit(i, j);
            });
        }
    }
}

ValidationReport validate_packing(const Packing& p) {
    if (p.size() == 0) throw InputError("validate_packing: empty packing");
    ValidationReport rep;
    double tol = p.tol_rel();
    for_each_near_pair(p, tol, [&](int i, int j) {
        ++rep.pairs_checked;
        double sum = p.ball(i).radius + p.ball(j).radius;
        double d = distance(p.ball(i).center, p.ball(j).center);
        rep.min_gap = std::min(rep.min_gap, d - sum);
        if (d < sum * (1.0 - tol)) rep.violations.push_back({i, j, (sum - d) / sum});
    });
    std::sort(rep.violations.begin(), rep.violations.end(), [](const OverlapPair& a, const OverlapPair& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    rep.pass = rep.violations.empty();
    return rep;
}

Graph tangency_graph(const Packing& p, bool validate) {
    if (validate) {
        auto rep = validate_packing(p);
        if (!rep.pass) {
            const auto& worst = *std::max_element(
                rep.violations.begin(), rep.violations.end(),
                [](const OverlapPair& a, const OverlapPair& b) { return a.depth < b.depth; });
            throw InvariantError("tangency_graph: packing has " + std::to_string(rep.violations.size()) +
                                 " overlapping pair(s); worst is '" + p.ball(worst.i).id + "'/'" +
                                 p.ball(worst.j).id + "' at relative depth " + std::to_string(worst.depth));
        }
    }
    Graph g;
    for (const auto& b : p.balls()) g.add_vertex(b.id);
    double tol = p.tol_rel();
    for_each_near_pair(p, tol, [&](int i, int j) {
        double sum = p.ball(i).radius + p.ball(j).radius;
        double d = distance(p.ball(i).center, p.ball(j).center);
        if (std::abs(d - sum) <= tol * sum) g.add_edge(i, j);
    });
    return g;
}

UniformityResult uniformity_constant(const Packing& p, const Graph& tangency) {
    if (tangency.vertex_count() != p.size())
        throw InputError("uniformity_constant: graph does not match packing");
    UniformityResult out;
    for (int u = 0; u < tangency.vertex_count(); ++u)
        for (int v : tangency.neighbors(u)) {
            if (v <= u) continue;
            double ru = p.ball(u).radius, rv = p.ball(v).radius;
            double ratio = std::max(ru / rv, rv / ru);
            if (!out.has_tangency || ratio > out.M) {
                out.has_tangency = true;
                out.M = ratio;
                out.u = u;
                out.v = v;
            }
        }
    return out;
}

UniformityResult uniformity_constant(const Packing& p) { return uniformity_constant(p, tangency_graph(p)); }

DegreeBoundReport degree_bound_check(const Packing& p, double M, const Graph* tangency) {
    if (M < 1.0) throw InputError("degree_bound_check: M must be >= 1");
    Graph local;
    if (tangency == nullptr) {
        local = tangency_graph(p);
        tangency = &local;
    }
    auto uni = uniformity_constant(p, *tangency);
    if (uni.has_tangency && M < uni.M * (1.0 - 1e-12))
        throw InputError("degree_bound_check: M below the packing's uniformity constant");
    DegreeBoundReport rep;
    rep.M = M;
    rep.bound = std::pow(M * (1.0 + 2.0 * M), p.dimension());
    for (int v = 0; v < tangency->vertex_count(); ++v)
        if (tangency->degree(v) > rep.max_degree) {
            rep.max_degree = tangency->degree(v);
            rep.argmax_vertex = v;
        }
    rep.holds = static_cast<double>(rep.max_degree) <= rep.bound * (1.0 + 1e-12);
    return rep;
}

// ---------------------------------------------------------------------------
// Isolation radii and the supported-point census
// ---------------------------------------------------------------------------

namespace {

void check_points(const std::vector<std::vector<double>>& pts) {
    if (pts.size() < 2) throw InputError("point set must contain at least 2 points");
    std::size_t d = pts[0].size();
    if (d == 0) throw InputError("points must have dimension >= 1");
    for (const auto& x : pts) {
        if (x.size() != d) throw InputError("points must share one dimension");
        for (double v : x)
            if (!std::isfinite(v)) throw InputError("points must be finite");
    }
}

struct PointContext {
    const std::vector<std::vector<double>>& pts;
    CellGrid grid;

    explicit PointContext(const std::vector<std::vector<double>>& points) : pts(points) {
        int d = static_cast<int>(points[0].size());
        double lo = points[0][0], hi = points[0][0];
        for (const auto& x : points)
            for (double v : x) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        double side = hi - lo;
        double cells_per_axis = std::ceil(std::pow(static_cast<double>(points.size()), 1.0 / d));
        grid.dim = d;
        grid.cell = side > 0 ? std::max(side / cells_per_axis, side * 1e-12) : 1.0;
        for (std::size_t i = 0; i < points.size(); ++i) grid.insert(points[i], static_cast<int>(i));
    }

    // nearest other point, by expanding ring search with brute-force fallback
    double isolation(int w) const {
        const auto& cw = pts[static_cast<std::size_t>(w)];
        double best = std::numeric_limits<double>::infinity();
        for (int ring = 0; ring < 64; ++ring) {
            // every point not yet visited sits farther than (ring - 1) cells
            if (static_cast<double>(ring - 1) * grid.cell >= best) return best;
            // scan the full box and keep only the new shell; boxes are small
            grid.for_each_in_box(cw, (static_cast<double>(ring) + 0.5) * grid.cell, [&](int j) {
                if (j == w) return;
                const auto& cj = pts[static_cast<std::size_t>(j)];
                bool on_shell = true;
                if (ring > 0) {
                    // skip points already inside the previous box
                    on_shell = false;
                    for (std::size_t k = 0; k < cw.size(); ++k)
                        if (std::abs(cj[k] - cw[k]) > (static_cast<double>(ring) - 0.5) * grid.cell) {
                            on_shell = true;
                            break;
                        }
                }
                if (on_shell) best = std::min(best, distance(cw, cj));
            });
        }
        // ring budget exhausted without a confirmed minimum
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (static_cast<int>(j) != w) best = std::min(best, distance(cw, pts[j]));
        return best;
    }

    std::vector<int> within(const std::vector<double>& center, double radius) const {
        std::vector<int> out;
        grid.for_each_in_box(center, radius, [&](int j) {
            if (distance(center, pts[static_cast<std::size_t>(j)]) <= radius) out.push_back(j);
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    std::int64_t quantity(int w, double delta, double rho, SupportMode mode) const {
        const auto& cw = pts[static_cast<std::size_t>(w)];
        auto window = within(cw, rho / delta);
        std::int64_t best = static_cast<std::int64_t>(window.size());
        auto surviving = [&](const std::vector<double>& q, double del_radius) {
            std::int64_t s = 0;
            for (int x : window)
                if (distance(pts[static_cast<std::size_t>(x)], q) > del_radius) ++s;
            return s;
        };
        if (mode == SupportMode::Candidate) {
            double del = 2.0 * delta * rho;
            for (int q : within(cw, rho / delta + del))
                best = std::min(best, surviving(pts[static_cast<std::size_t>(q)], del));
            return best;
        }
        int d = static_cast<int>(cw.size());
        double pitch = delta * rho / 4.0;
        double del = delta * rho * (1.0 + std::sqrt(static_cast<double>(d)) / 8.0);
        double span = rho / delta + del;
        std::int64_t steps = static_cast<std::int64_t>(std::ceil(span / pitch));
        std::vector<std::int64_t> cur(static_cast<std::size_t>(d), -steps);
        std::vector<double> q(static_cast<std::size_t>(d));
        while (true) {
            for (int k = 0; k < d; ++k)
                q[static_cast<std::size_t>(k)] =
                    cw[static_cast<std::size_t>(k)] + static_cast<double>(cur[static_cast<std::size_t>(k)]) * pitch;
            best = std::min(best, surviving(q, del));
            int k = 0;
            for (; k < d; ++k) {
                if (++cur[static_cast<std::size_t>(k)] <= steps) break;
                cur[static_cast<std::size_t>(k)] = -steps;
            }
            if (k == d) break;
        }
        return best;
    }
};

void check_delta(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0)) throw InputError("delta must lie in (0, 1)");
}

}  // namespace

double isolation_radius(const std::vector<std::vector<double>>& points, int w) {
    check_points(points);
    if (w < 0 || w >= static_cast<int>(points.size())) throw InputError("isolation_radius: index out of range");
    PointContext ctx(points);
    double rho = ctx.isolation(w);
    if (rho <= 0.0) throw InputError("isolation_radius: points must be distinct");
    return rho;
}

std::vector<double> isolation_radii(const std::vector<std::vector<double>>& points, int threads) {
    check_points(points);
    PointContext ctx(points);
    std::vector<double> rho(points.size());
    std::atomic<bool> dup{false};
    parallel_for(points.size(), threads, [&](std::size_t i) {
        rho[i] = ctx.isolation(static_cast<int>(i));
        if (rho[i] <= 0.0) dup.store(true);
    });
    if (dup.load()) throw InputError("isolation_radii: points must be distinct");
    return rho;
}

std::int64_t support_quantity(const std::vector<std::vector<double>>& points, int w, double delta,
                              const SupportOptions& opt) {
    check_points(points);
    check_delta(delta);
    if (w < 0 || w >= static_cast<int>(points.size())) throw InputError("support_quantity: index out of range");
    PointContext ctx(points);
    double rho = ctx.isolation(w);
    if (rho <= 0.0) throw InputError("support_quantity: points must be distinct");
    return ctx.quantity(w, delta, rho, opt.mode);
}

bool is_supported(const std::vector<std::vector<double>>& points, int w, double delta, std::int64_t s,
                  const SupportOptions& opt) {
    return support_quantity(points, w, delta, opt) >= s;
}

SupportedCensus supported_census(const std::vector<std::vector<double>>& points, double delta,
                                 const std::vector<std::int64_t>& s_values, const SupportOptions& opt) {
    check_points(points);
    check_delta(delta);
    if (s_values.empty()) throw InputError("supported_census: s_values must be nonempty");
    for (std::size_t i = 0; i < s_values.size(); ++i) {
        if (s_values[i] < 2) throw InputError("supported_census: s_values must be >= 2");
        if (i > 0 && s_values[i] <= s_values[i - 1])
            throw InputError("supported_census: s_values must be strictly increasing");
    }
    PointContext ctx(points);
    std::vector<std::int64_t> q(points.size());
    std::atomic<bool> dup{false};
    parallel_for(points.size(), opt.threads, [&](std::size_t i) {
        double rho = ctx.isolation(static_cast<int>(i));
        if (rho <= 0.0) {
            dup.store(true);
            return;
        }
        q[i] = ctx.quantity(static_cast<int>(i), delta, rho, opt.mode);
    });
    if (dup.load()) throw InputError("supported_census: points must be distinct");

    SupportedCensus out;
    out.delta = delta;
    out.s_values = s_values;
    out.n = static_cast<std::int64_t>(points.size());
    out.mode = opt.mode;
    out.counts.resize(s_values.size(), 0);
    for (std::int64_t qi : q)
        for (std::size_t k = 0; k < s_values.size(); ++k)
            if (qi >= s_values[k]) ++out.counts[k];
    for (std::size_t k = 0; k < s_values.size(); ++k) {
        double ratio = static_cast<double>(out.counts[k]) * static_cast<double>(s_values[k]) /
                       static_cast<double>(out.n);
        if (ratio > out.c_hat) {
            out.c_hat = ratio;
            out.c_hat_s = s_values[k];
        }
    }
    return out;
}

std::vector<std::vector<double>> packing_centers(const Packing& p) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(p.size()));
    for (const auto& b : p.balls()) out.push_back(b.center);
    return out;
}

Packing normalize_packing(const Packing& p, const std::string& v) {
    int pivot = p.require_index(v);
    const Ball& pv = p.ball(pivot);
    Packing out(p.dimension(), p.tol_rel());
    for (const auto& b : p.balls()) {
        Ball nb;
        nb.id = b.id;
        nb.radius = b.radius / pv.radius;
        nb.center.resize(b.center.size());
        for (std::size_t k = 0; k < b.center.size(); ++k)
            nb.center[k] = (b.center[k] - pv.center[k]) / pv.radius;
        out.add_ball(std::move(nb));
    }
    return out;
}

}  // namespace dpack
