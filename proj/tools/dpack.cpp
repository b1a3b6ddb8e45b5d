// Command-line front end: generators, packing checks, graph statistics,
// modulus solves, and the water-flow process, all emitting versioned JSON
// documents that embed the run configuration for reproducibility.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "dpack/flow.hpp"
#include "dpack/generators.hpp"
#include "dpack/geometry.hpp"
#include "dpack/graph.hpp"
#include "dpack/io.hpp"
#include "dpack/modulus.hpp"

namespace {

using dpack::Json;

struct Ctx {
    bool canonical = false;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = resolve from DPACK_THREADS, else 1
    int rc = 0;       // sticky exit code, set to 2 on non-convergence
};

int resolve_threads(const Ctx& ctx) {
    if (ctx.threads >= 1) return ctx.threads;
    if (const char* env = std::getenv("DPACK_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

std::string now_iso() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit(Json doc, const Ctx& ctx, const std::string& command, Json config, const std::string& out) {
    Json run;
    run["command"] = command;
    run["config"] = std::move(config);
    run["seed"] = ctx.seed;
    if (!ctx.canonical) run["timestamp"] = now_iso();
    doc["run"] = std::move(run);
    dpack::write_document(doc, out);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<int> split_ints(const std::string& s, const std::string& where) {
    std::vector<int> out;
    for (const auto& part : split_list(s)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw dpack::InputError(where + ": '" + part + "' is not an integer");
        }
    }
    return out;
}

std::vector<double> split_doubles(const std::string& s, const std::string& where) {
    std::vector<double> out;
    for (const auto& part : split_list(s)) out.push_back(dpack::double_from_string(part, where));
    return out;
}

std::vector<int> resolve_ids(const dpack::Graph& g, const std::string& csv, const std::string& where) {
    if (csv.empty()) throw dpack::InputError(where + ": empty id list");
    std::vector<int> out;
    for (const auto& id : split_list(csv)) out.push_back(g.require_index(id));
    return out;
}

dpack::Profile load_profile(const std::string& growth, const std::string& growth_file) {
    if (!growth.empty() && !growth_file.empty())
        throw dpack::InputError("give either --growth or --growth-file, not both");
    if (!growth.empty()) return dpack::Profile(split_doubles(growth, "--growth"));
    if (growth_file.empty())
        throw dpack::InputError("a growth profile is required (--growth or --growth-file)");
    Json doc = dpack::read_result(growth_file, "dpack-profile/1");
    if (!doc.contains("values") || !doc["values"].is_array())
        throw dpack::InputError(growth_file + ": missing 'values' array");
    std::vector<double> values;
    for (const Json& v : doc["values"]) {
        if (!v.is_number()) throw dpack::InputError(growth_file + ": values must be numbers");
        values.push_back(v.get<double>());
    }
    return dpack::Profile(values);
}

Json metric_json(const dpack::Graph& g, const dpack::VertexMetric& m) {
    Json arr = Json::array();
    for (int v = 0; v < g.vertex_count(); ++v) {
        Json e;
        e["vertex"] = g.id_of(v);
        e["m"] = m[static_cast<std::size_t>(v)];
        arr.push_back(std::move(e));
    }
    return arr;
}

dpack::VertexMetric metric_from_doc(const dpack::Graph& g, const std::string& path) {
    Json doc = dpack::read_result(path, "dpack-modulus/1");
    if (!doc.contains("metric") || !doc["metric"].is_array())
        throw dpack::InputError(path + ": missing 'metric' array");
    dpack::VertexMetric m(static_cast<std::size_t>(g.vertex_count()), 0.0);
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const Json& e : doc["metric"]) {
        if (!e.is_object() || !e.contains("vertex") || !e.contains("m"))
            throw dpack::InputError(path + ": metric entries need 'vertex' and 'm'");
        int v = g.require_index(e["vertex"].get<std::string>());
        m[static_cast<std::size_t>(v)] = dpack::real_from_json(e["m"], path + ": m");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!seen[static_cast<std::size_t>(v)])
            throw dpack::InputError(path + ": metric is missing vertex '" + g.id_of(v) + "'");
    return m;
}

Json id_list(const dpack::Graph& g, const std::vector<int>& vs) {
    Json arr = Json::array();
    for (int v : vs) arr.push_back(g.id_of(v));
    return arr;
}

void write_plot(const std::string& path, const std::string& header, const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw dpack::InputError(path + ": cannot open for writing");
    out << header << '\n';
    for (const auto& r : rows) out << r << '\n';
    if (!out) throw dpack::InputError(path + ": write failed");
}

bool is_csv(const std::string& path, const std::string& format) {
    if (format == "csv") return true;
    if (format == "document") return false;
    return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

void save_packing(const dpack::Packing& p, const Ctx& ctx, const std::string& command, Json config,
                  const std::string& out, const std::string& format) {
    if (is_csv(out, format)) {
        std::ofstream os(out, std::ios::binary);
        if (!os) throw dpack::InputError(out + ": cannot open for writing");
        dpack::packing_to_csv(p, os);
        if (!os) throw dpack::InputError(out + ": write failed");
        return;
    }
    emit(dpack::packing_to_json(p), ctx, command, std::move(config), out);
}

dpack::VertexMetric flow_metric(const dpack::Graph& g, const std::string& metric_path, double uniform,
                                double floor_value) {
    dpack::VertexMetric m;
    if (!metric_path.empty() && uniform > 0.0)
        throw dpack::InputError("give either --metric or --uniform, not both");
    if (!metric_path.empty())
        m = metric_from_doc(g, metric_path);
    else if (uniform > 0.0)
        m.assign(static_cast<std::size_t>(g.vertex_count()), uniform);
    else
        throw dpack::InputError("a metric is required (--metric or --uniform)");
    if (floor_value > 0.0)
        for (double& x : m) x = std::max(x, floor_value);
    return m;
}

Json flow_doc(const dpack::WetnessProcess& w, const dpack::FlowReport* rep, const dpack::Graph& g) {
    Json doc;
    doc["format"] = "dpack-flow/1";
    doc["root"] = g.id_of(w.root);
    doc["breakpoints"] = w.breakpoints;
    Json sv = Json::array();
    for (auto& [h, s] : dpack::s_curve(w)) sv.push_back(s);
    doc["s_values"] = std::move(sv);
    Json checks = Json::array();
    if (rep != nullptr) {
        doc["d"] = rep->d;
        for (const auto& c : rep->checks) {
            Json jc;
            jc["h"] = c.h;
            jc["sWh"] = c.s;
            jc["Gh_size"] = c.wetting;
            jc["Wh_size"] = c.wet;
            jc["pass_a"] = c.pass_a;
            jc["pass_b"] = c.pass_b;
            jc["pass_c"] = c.pass_c;
            jc["pass_d"] = c.pass_d;
            jc["boundary_match"] = c.boundary_match;
            jc["premise"] = c.premise;
            checks.push_back(std::move(jc));
        }
    }
    doc["checks"] = std::move(checks);
    if (rep != nullptr) {
        doc["monotone_growth"] = rep->monotone_growth;
        doc["premise_all"] = rep->premise_all;
        doc["integral_lhs"] = rep->integral_lhs;
        doc["integral_rhs"] = rep->integral_rhs;
        doc["integral_ok"] = rep->integral_ok;
        doc["pass"] = rep->pass;
    }
    return doc;
}

dpack::Triangulation triangulation_from_doc(const Json& doc, const std::string& source,
                                            std::vector<double>* radii) {
    dpack::Triangulation t;
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw dpack::InputError(source + ": missing integer field 'n'");
    t.n = doc["n"].get<int>();
    if (!doc.contains("faces") || !doc["faces"].is_array())
        throw dpack::InputError(source + ": missing 'faces' array");
    for (const Json& f : doc["faces"]) {
        if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() || !f[1].is_number_integer() ||
            !f[2].is_number_integer())
            throw dpack::InputError(source + ": faces must be triples of vertex indices");
        t.faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    }
    if (!doc.contains("boundary") || !doc["boundary"].is_array())
        throw dpack::InputError(source + ": missing 'boundary' array");
    for (const Json& v : doc["boundary"]) {
        if (!v.is_number_integer()) throw dpack::InputError(source + ": boundary must hold vertex indices");
        t.boundary.push_back(v.get<int>());
    }
    if (radii != nullptr) {
        if (!doc.contains("boundary_radii") || !doc["boundary_radii"].is_array())
            throw dpack::InputError(source + ": missing 'boundary_radii' array");
        for (const Json& r : doc["boundary_radii"]) {
            if (!r.is_number()) throw dpack::InputError(source + ": boundary_radii must be numbers");
            radii->push_back(r.get<double>());
        }
    }
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale sphere packings, tangency graphs, and vertex extremal length"};
    app.require_subcommand(1);
    Ctx ctx;
    app.add_flag("--canonical", ctx.canonical, "strip nondeterministic metadata from documents");
    auto* seed_opt = app.add_option("--seed", ctx.seed, "seed for sampling subcommands");
    app.add_option("--threads", ctx.threads, "worker threads (default: DPACK_THREADS or 1)");

    // ---------------------------------------------------------------- gen --
    auto* gen = app.add_subcommand("gen", "generate packings and graphs with known structure");
    gen->require_subcommand(1);

    struct {
        int d = 2, side = 4;
        std::string out, format = "auto";
    } g_cube;
    {
        auto* c = gen->add_subcommand("cubic-lattice", "radius-1/2 balls on {0..side-1}^d");
        c->add_option("--d", g_cube.d)->required();
        c->add_option("--side", g_cube.side)->required();
        c->add_option("--out", g_cube.out)->required();
        c->add_option("--format", g_cube.format)->check(CLI::IsMember({"auto", "document", "csv"}));
        c->callback([&] {
            save_packing(dpack::cubic_lattice_packing(g_cube.d, g_cube.side), ctx, "gen cubic-lattice",
                         Json{{"d", g_cube.d}, {"side", g_cube.side}, {"format", g_cube.format}}, g_cube.out,
                         g_cube.format);
        });
    }

    struct {
        int rows = 1, cols = 1;
        std::string out, format = "auto";
    } g_hex;
    {
        auto* c = gen->add_subcommand("hexagonal", "unit circles on a triangular lattice");
        c->add_option("--rows", g_hex.rows)->required();
        c->add_option("--cols", g_hex.cols)->required();
        c->add_option("--out", g_hex.out)->required();
        c->add_option("--format", g_hex.format)->check(CLI::IsMember({"auto", "document", "csv"}));
        c->callback([&] {
            save_packing(dpack::hexagonal_packing(g_hex.rows, g_hex.cols), ctx, "gen hexagonal",
                         Json{{"rows", g_hex.rows}, {"cols", g_hex.cols}, {"format", g_hex.format}}, g_hex.out,
                         g_hex.format);
        });
    }

    struct {
        int depth = 0;
        std::string out, format = "auto";
    } g_apo;
    {
        auto* c = gen->add_subcommand("apollonian", "Descartes-reflection circle packing");
        c->add_option("--depth", g_apo.depth)->required();
        c->add_option("--out", g_apo.out)->required();
        c->add_option("--format", g_apo.format)->check(CLI::IsMember({"auto", "document", "csv"}));
        c->callback([&] {
            auto gasket = dpack::apollonian_gasket(g_apo.depth);
            save_packing(gasket.packing, ctx, "gen apollonian",
                         Json{{"depth", g_apo.depth}, {"format", g_apo.format}}, g_apo.out, g_apo.format);
        });
    }

    struct {
        int k = 3, depth = 2;
        std::string out;
    } g_tree;
    {
        auto* c = gen->add_subcommand("regular-tree", "rooted tree, root and internal degree k");
        c->add_option("--k", g_tree.k)->required();
        c->add_option("--depth", g_tree.depth)->required();
        c->add_option("--out", g_tree.out)->required();
        c->callback([&] {
            auto g = dpack::regular_tree(g_tree.k, g_tree.depth);
            std::string root = "0";
            emit(dpack::graph_to_json(g, &root), ctx, "gen regular-tree",
                 Json{{"k", g_tree.k}, {"depth", g_tree.depth}}, g_tree.out);
        });
    }

    struct {
        int d = 2, side = 4;
        std::string out;
    } g_grid;
    {
        auto* c = gen->add_subcommand("grid-graph", "grid graph on {0..side-1}^d");
        c->add_option("--d", g_grid.d)->required();
        c->add_option("--side", g_grid.side)->required();
        c->add_option("--out", g_grid.out)->required();
        c->callback([&] {
            emit(dpack::graph_to_json(dpack::grid_graph(g_grid.d, g_grid.side)), ctx, "gen grid-graph",
                 Json{{"d", g_grid.d}, {"side", g_grid.side}}, g_grid.out);
        });
    }

    struct {
        std::string in, out, format = "auto";
    } g_disk;
    {
        auto* c = gen->add_subcommand("disk-pack", "circle packing of a disk triangulation");
        c->add_option("--in", g_disk.in, "dpack-triangulation/1 document")->required();
        c->add_option("--out", g_disk.out)->required();
        c->add_option("--format", g_disk.format)->check(CLI::IsMember({"auto", "document", "csv"}));
        c->callback([&] {
            Json doc = dpack::read_result(g_disk.in, "dpack-triangulation/1");
            std::vector<double> radii;
            auto t = triangulation_from_doc(doc, g_disk.in, &radii);
            auto res = dpack::disk_triangulation_pack(t, radii);
            if (!res.converged) {
                std::cerr << "warning: radius iteration stopped at defect " << res.max_angle_defect << "\n";
                ctx.rc = 2;
            }
            save_packing(res.packing, ctx, "gen disk-pack",
                         Json{{"in", g_disk.in}, {"format", g_disk.format}, {"converged", res.converged},
                              {"rounds", res.rounds}},
                         g_disk.out, g_disk.format);
        });
    }

    // --------------------------------------------------------------- pack --
    auto* pack = app.add_subcommand("pack", "validate and analyze packings");
    pack->require_subcommand(1);

    struct {
        std::string in, out;
        double tol = -1.0;
    } p_verify;
    {
        auto* c = pack->add_subcommand("verify", "check pairwise separation");
        c->add_option("--in", p_verify.in)->required();
        c->add_option("--out", p_verify.out, "validation report document");
        c->add_option("--tol", p_verify.tol, "override the packing's relative tolerance");
        c->callback([&] {
            auto p = dpack::read_packing(p_verify.in);
            if (p_verify.tol > 0.0) p.set_tol_rel(p_verify.tol);
            auto rep = dpack::validate_packing(p);
            Json doc;
            doc["format"] = "dpack-validate/1";
            doc["pass"] = rep.pass;
            doc["pairs_checked"] = rep.pairs_checked;
            doc["min_gap"] = dpack::json_real(rep.min_gap);
            Json viol = Json::array();
            for (const auto& v : rep.violations) {
                Json jv;
                jv["a"] = p.ball(v.i).id;
                jv["b"] = p.ball(v.j).id;
                jv["depth"] = v.depth;
                viol.push_back(std::move(jv));
            }
            doc["violations"] = std::move(viol);
            if (!p_verify.out.empty())
                emit(std::move(doc), ctx, "pack verify",
                     Json{{"in", p_verify.in}, {"tol", p_verify.tol}}, p_verify.out);
            std::cout << (rep.pass ? "pass" : "fail") << " (" << rep.pairs_checked << " pairs checked)\n";
            if (!rep.pass) throw dpack::InputError("packing has overlapping balls");
        });
    }

    struct {
        std::string in, out;
        bool no_validate = false;
    } p_tan;
    {
        auto* c = pack->add_subcommand("tangency", "extract the tangency graph");
        c->add_option("--in", p_tan.in)->required();
        c->add_option("--out", p_tan.out)->required();
        c->add_flag("--no-validate", p_tan.no_validate, "skip the overlap check");
        c->callback([&] {
            auto p = dpack::read_packing(p_tan.in);
            auto g = dpack::tangency_graph(p, !p_tan.no_validate);
            emit(dpack::graph_to_json(g), ctx, "pack tangency",
                 Json{{"in", p_tan.in}, {"validate", !p_tan.no_validate}}, p_tan.out);
        });
    }

    struct {
        std::string in, out;
    } p_uni;
    {
        auto* c = pack->add_subcommand("uniformity", "tangent-pair radius ratio and degree bound");
        c->add_option("--in", p_uni.in)->required();
        c->add_option("--out", p_uni.out)->required();
        c->callback([&] {
            auto p = dpack::read_packing(p_uni.in);
            auto tg = dpack::tangency_graph(p);
            auto u = dpack::uniformity_constant(p, tg);
            Json doc;
            doc["format"] = "dpack-uniformity/1";
            doc["has_tangency"] = u.has_tangency;
            if (u.has_tangency) {
                doc["M"] = u.M;
                doc["pair"] = Json::array({p.ball(u.u).id, p.ball(u.v).id});
                auto db = dpack::degree_bound_check(p, u.M, &tg);
                Json jd;
                jd["M"] = db.M;
                jd["bound"] = db.bound;
                jd["max_degree"] = db.max_degree;
                jd["argmax_vertex"] = db.argmax_vertex >= 0 ? Json(p.ball(db.argmax_vertex).id) : Json();
                jd["holds"] = db.holds;
                doc["degree_bound"] = std::move(jd);
            }
            emit(std::move(doc), ctx, "pack uniformity", Json{{"in", p_uni.in}}, p_uni.out);
        });
    }

    struct {
        std::string in, out, s = "2,4,8,16,32,64,128", mode = "candidate", plot;
        double delta = 0.5;
    } p_census;
    {
        auto* c = pack->add_subcommand("census", "supported-point census over ball centers");
        c->add_option("--in", p_census.in)->required();
        c->add_option("--out", p_census.out)->required();
        c->add_option("--delta", p_census.delta)->required();
        c->add_option("--s", p_census.s, "comma list of support levels");
        c->add_option("--mode", p_census.mode)->check(CLI::IsMember({"candidate", "exact"}));
        c->add_option("--plot", p_census.plot, "census-vs-s CSV series");
        c->callback([&] {
            auto p = dpack::read_packing(p_census.in);
            auto pts = dpack::packing_centers(p);
            dpack::SupportOptions opt;
            opt.mode = p_census.mode == "exact" ? dpack::SupportMode::Exact : dpack::SupportMode::Candidate;
            opt.threads = resolve_threads(ctx);
            std::vector<std::int64_t> svals;
            for (int s : split_ints(p_census.s, "--s")) svals.push_back(s);
            auto census = dpack::supported_census(pts, p_census.delta, svals, opt);
            Json doc;
            doc["format"] = "dpack-census/1";
            doc["delta"] = census.delta;
            doc["mode"] = p_census.mode;
            doc["n"] = census.n;
            doc["s_values"] = census.s_values;
            doc["counts"] = census.counts;
            doc["c_hat"] = census.c_hat;
            doc["c_hat_s"] = census.c_hat_s;
            emit(std::move(doc), ctx, "pack census",
                 Json{{"in", p_census.in},
                      {"delta", p_census.delta},
                      {"s", p_census.s},
                      {"mode", p_census.mode}},
                 p_census.out);
            if (!p_census.plot.empty()) {
                std::vector<std::string> rows;
                for (std::size_t i = 0; i < census.s_values.size(); ++i) {
                    double ratio = static_cast<double>(census.counts[i]) *
                                   static_cast<double>(census.s_values[i]) / static_cast<double>(census.n);
                    rows.push_back(std::to_string(census.s_values[i]) + "," +
                                   std::to_string(census.counts[i]) + "," + dpack::double_to_string(ratio));
                }
                write_plot(p_census.plot, "s,count,ratio", rows);
            }
        });
    }

    struct {
        std::string in, out, ball, format = "auto";
    } p_norm;
    {
        auto* c = pack->add_subcommand("normalize", "map a chosen ball to the unit ball at the origin");
        c->add_option("--in", p_norm.in)->required();
        c->add_option("--out", p_norm.out)->required();
        c->add_option("--ball", p_norm.ball, "id of the ball to normalize by")->required();
        c->add_option("--format", p_norm.format)->check(CLI::IsMember({"auto", "document", "csv"}));
        c->callback([&] {
            auto p = dpack::read_packing(p_norm.in);
            auto q = dpack::normalize_packing(p, p_norm.ball);
            save_packing(q, ctx, "pack normalize",
                         Json{{"in", p_norm.in}, {"ball", p_norm.ball}, {"format", p_norm.format}}, p_norm.out,
                         p_norm.format);
        });
    }

    // -------------------------------------------------------------- graph --
    auto* graph = app.add_subcommand("graph", "graph statistics");
    graph->require_subcommand(1);

    struct {
        std::string in, out, root;
        int radius = 1;
    } gr_ball;
    {
        auto* c = graph->add_subcommand("ball", "induced ball around a root");
        c->add_option("--in", gr_ball.in)->required();
        c->add_option("--out", gr_ball.out)->required();
        c->add_option("--root", gr_ball.root)->required();
        c->add_option("--radius", gr_ball.radius)->required();
        c->callback([&] {
            auto g = dpack::read_graph(gr_ball.in);
            auto b = dpack::ball(g, g.require_index(gr_ball.root), gr_ball.radius);
            std::string root_id = b.graph.id_of(b.root);
            emit(dpack::graph_to_json(b.graph, &root_id), ctx, "graph ball",
                 Json{{"in", gr_ball.in}, {"root", gr_ball.root}, {"radius", gr_ball.radius}}, gr_ball.out);
        });
    }

    struct {
        std::string a, b, out;
        int k_max = 64;
    } gr_bs;
    {
        auto* c = graph->add_subcommand("bs-distance", "rooted-graph distance");
        c->add_option("--a", gr_bs.a, "rooted graph document")->required();
        c->add_option("--b", gr_bs.b, "rooted graph document")->required();
        c->add_option("--out", gr_bs.out)->required();
        c->add_option("--k-max", gr_bs.k_max, "largest ball radius compared");
        c->callback([&] {
            std::string root_a, root_b;
            auto ga = dpack::read_graph(gr_bs.a, &root_a);
            auto gb = dpack::read_graph(gr_bs.b, &root_b);
            if (root_a.empty()) throw dpack::InputError(gr_bs.a + ": document has no root");
            if (root_b.empty()) throw dpack::InputError(gr_bs.b + ": document has no root");
            auto d = dpack::bs_distance({ga, ga.require_index(root_a)}, {gb, gb.require_index(root_b)},
                                        gr_bs.k_max);
            Json doc;
            doc["format"] = "dpack-bs/1";
            doc["value"] = d.value;
            doc["agree_radius"] = d.agree_radius;
            doc["truncated"] = d.truncated;
            emit(std::move(doc), ctx, "graph bs-distance",
                 Json{{"a", gr_bs.a}, {"b", gr_bs.b}, {"k_max", gr_bs.k_max}}, gr_bs.out);
        });
    }

    struct {
        std::string in, out, set;
    } gr_bnd;
    {
        auto* c = graph->add_subcommand("boundary", "vertex boundary of a set");
        c->add_option("--in", gr_bnd.in)->required();
        c->add_option("--out", gr_bnd.out)->required();
        c->add_option("--set", gr_bnd.set, "comma list of vertex ids")->required();
        c->callback([&] {
            auto g = dpack::read_graph(gr_bnd.in);
            auto w = resolve_ids(g, gr_bnd.set, "--set");
            auto bnd = dpack::vertex_boundary(g, w);
            std::sort(bnd.begin(), bnd.end());
            Json doc;
            doc["format"] = "dpack-boundary/1";
            doc["set"] = id_list(g, w);
            doc["boundary"] = id_list(g, bnd);
            emit(std::move(doc), ctx, "graph boundary", Json{{"in", gr_bnd.in}, {"set", gr_bnd.set}},
                 gr_bnd.out);
        });
    }

    struct {
        std::string in, out, root;
        int layers = -1;
    } gr_hull;
    {
        auto* c = graph->add_subcommand("hull", "hull exploration sizes from a root");
        c->add_option("--in", gr_hull.in)->required();
        c->add_option("--out", gr_hull.out)->required();
        c->add_option("--root", gr_hull.root)->required();
        c->add_option("--layers", gr_hull.layers, "layer budget (default: until exhausted)");
        c->callback([&] {
            auto g = dpack::read_graph(gr_hull.in);
            int k_max = gr_hull.layers >= 0 ? gr_hull.layers : g.vertex_count();
            auto hs = dpack::hull_sequence(g, g.require_index(gr_hull.root), k_max);
            Json doc;
            doc["format"] = "dpack-hull/1";
            doc["root"] = gr_hull.root;
            doc["n"] = hs.n;
            doc["boundary_size"] = hs.boundary_size;
            doc["reached_all"] = hs.reached_all;
            emit(std::move(doc), ctx, "graph hull",
                 Json{{"in", gr_hull.in}, {"root", gr_hull.root}, {"layers", gr_hull.layers}}, gr_hull.out);
        });
    }

    struct {
        std::string in, out, mode = "auto";
        int threshold = 24;
    } gr_ch;
    {
        auto* c = graph->add_subcommand("cheeger", "isoperimetric constant");
        c->add_option("--in", gr_ch.in)->required();
        c->add_option("--out", gr_ch.out)->required();
        c->add_option("--mode", gr_ch.mode)->check(CLI::IsMember({"auto", "exact", "heuristic"}));
        c->add_option("--exhaustive-threshold", gr_ch.threshold);
        c->callback([&] {
            auto g = dpack::read_graph(gr_ch.in);
            dpack::CheegerMode mode;
            if (gr_ch.mode == "exact")
                mode = dpack::CheegerMode::Exact;
            else if (gr_ch.mode == "heuristic")
                mode = dpack::CheegerMode::Heuristic;
            else
                mode = g.vertex_count() <= gr_ch.threshold ? dpack::CheegerMode::Exact
                                                           : dpack::CheegerMode::Heuristic;
            auto res = dpack::cheeger_constant(g, mode, gr_ch.threshold);
            Json doc;
            doc["format"] = "dpack-cheeger/1";
            doc["value"] = res.value;
            doc["exact"] = res.exact;
            doc["witness"] = id_list(g, res.witness);
            emit(std::move(doc), ctx, "graph cheeger",
                 Json{{"in", gr_ch.in}, {"mode", gr_ch.mode}, {"exhaustive_threshold", gr_ch.threshold}},
                 gr_ch.out);
        });
    }

    struct {
        std::string in, out, root, plot;
        int k = 8;
    } gr_iso;
    {
        auto* c = graph->add_subcommand("iso-profile", "boundary growth along the hull sequence");
        c->add_option("--in", gr_iso.in)->required();
        c->add_option("--out", gr_iso.out)->required();
        c->add_option("--root", gr_iso.root)->required();
        c->add_option("--k", gr_iso.k, "hull layers to explore")->required();
        c->add_option("--plot", gr_iso.plot, "iso-profile CSV series");
        c->callback([&] {
            auto g = dpack::read_graph(gr_iso.in);
            auto prof = dpack::iso_profile(g, g.require_index(gr_iso.root), gr_iso.k);
            Json doc;
            doc["format"] = "dpack-iso/1";
            doc["root"] = gr_iso.root;
            doc["n"] = prof.n;
            doc["boundary"] = prof.boundary;
            doc["alpha"] = prof.alpha_defined ? Json(prof.alpha) : Json();
            doc["fit_lo"] = prof.fit_lo;
            doc["fit_hi"] = prof.fit_hi;
            emit(std::move(doc), ctx, "graph iso-profile",
                 Json{{"in", gr_iso.in}, {"root", gr_iso.root}, {"k", gr_iso.k}}, gr_iso.out);
            if (!gr_iso.plot.empty()) {
                std::vector<std::string> rows;
                for (std::size_t i = 0; i < prof.n.size(); ++i)
                    rows.push_back(std::to_string(prof.n[i]) + "," + std::to_string(prof.boundary[i]));
                write_plot(gr_iso.plot, "n,boundary", rows);
            }
        });
    }

    struct {
        std::vector<std::string> in;
        std::string out;
        int k = 1;
        std::int64_t samples = 0;
    } gr_cen;
    {
        auto* c = graph->add_subcommand("census", "rooted ball isomorphism census");
        c->add_option("--in", gr_cen.in, "graph documents (repeatable)")->required();
        c->add_option("--out", gr_cen.out)->required();
        c->add_option("--k", gr_cen.k, "ball radius")->required();
        c->add_option("--samples", gr_cen.samples, "sample size (default: exhaustive)");
        c->callback([&] {
            std::vector<dpack::Graph> graphs;
            graphs.reserve(gr_cen.in.size());
            for (const auto& path : gr_cen.in) graphs.push_back(dpack::read_graph(path));
            std::vector<const dpack::Graph*> ptrs;
            for (const auto& g : graphs) ptrs.push_back(&g);
            dpack::CensusSampling sampling;
            if (gr_cen.samples > 0) {
                if (seed_opt->count() == 0)
                    throw dpack::InputError("graph census: --seed is required when sampling");
                sampling.exhaustive = false;
                sampling.count = gr_cen.samples;
                sampling.seed = ctx.seed;
            }
            auto censuses = dpack::neighborhood_census(ptrs, gr_cen.k, sampling, resolve_threads(ctx));
            Json doc;
            doc["format"] = "dpack-graph-census/1";
            doc["k"] = gr_cen.k;
            Json list = Json::array();
            for (std::size_t i = 0; i < censuses.size(); ++i) {
                Json jc;
                jc["graph"] = gr_cen.in[i];
                Json classes = Json::array();
                for (const auto& cl : censuses[i].classes) {
                    Json e;
                    e["canonical_key"] = cl.key;
                    e["mass_numerator"] = cl.count;
                    e["mass_denominator"] = censuses[i].denominator;
                    classes.push_back(std::move(e));
                }
                jc["classes"] = std::move(classes);
                if (censuses[i].tv_to_previous) jc["tv_to_previous"] = *censuses[i].tv_to_previous;
                list.push_back(std::move(jc));
            }
            doc["censuses"] = std::move(list);
            emit(std::move(doc), ctx, "graph census",
                 Json{{"in", gr_cen.in}, {"k", gr_cen.k}, {"samples", gr_cen.samples}}, gr_cen.out);
        });
    }

    // ---------------------------------------------------------------- mod --
    auto* mod = app.add_subcommand("mod", "vertex extremal length");
    mod->require_subcommand(1);

    struct {
        std::string graph, out, source, target;
        double p = 2.0, tol = 1e-6, length_bound = 1.0;
        int max_iter = 10000, paths_per_round = 8;
    } m_solve;
    {
        auto* c = mod->add_subcommand("solve", "p-modulus of a source-target connector");
        c->add_option("--graph", m_solve.graph)->required();
        c->add_option("--out", m_solve.out)->required();
        c->add_option("--source", m_solve.source, "comma list of vertex ids")->required();
        c->add_option("--target", m_solve.target, "comma list of vertex ids")->required();
        c->add_option("--p", m_solve.p);
        c->add_option("--tol", m_solve.tol);
        c->add_option("--max-iter", m_solve.max_iter);
        c->add_option("--length-bound", m_solve.length_bound);
        c->add_option("--paths-per-round", m_solve.paths_per_round);
        c->callback([&] {
            auto g = dpack::read_graph(m_solve.graph);
            dpack::Connector con;
            con.graph = &g;
            con.source = resolve_ids(g, m_solve.source, "--source");
            con.target = resolve_ids(g, m_solve.target, "--target");
            dpack::ModulusOptions opt;
            opt.p = m_solve.p;
            opt.tol = m_solve.tol;
            opt.max_iter = m_solve.max_iter;
            opt.length_bound = m_solve.length_bound;
            opt.paths_per_round = m_solve.paths_per_round;
            auto res = dpack::modulus(con, opt);
            Json doc;
            doc["format"] = "dpack-modulus/1";
            doc["p"] = res.p;
            doc["value"] = res.value;
            doc["vel"] = dpack::json_real(res.vel);
            doc["metric"] = metric_json(g, res.metric);
            Json paths = Json::array();
            for (const auto& path : res.active_paths) paths.push_back(id_list(g, path));
            doc["active_paths"] = std::move(paths);
            doc["iterations"] = res.iterations;
            doc["converged"] = res.converged;
            doc["tol"] = opt.tol;
            emit(std::move(doc), ctx, "mod solve",
                 Json{{"graph", m_solve.graph},
                      {"source", m_solve.source},
                      {"target", m_solve.target},
                      {"p", m_solve.p},
                      {"tol", m_solve.tol},
                      {"max_iter", m_solve.max_iter},
                      {"length_bound", m_solve.length_bound},
                      {"paths_per_round", m_solve.paths_per_round}},
                 m_solve.out);
            if (!res.converged) {
                std::cerr << "warning: constraint generation hit max-iter\n";
                ctx.rc = 2;
            }
        });
    }

    struct {
        std::string graph, out, root, radii = "4,8,16", plot;
        double p = 2.0, tol = 1e-6;
    } m_probe;
    {
        auto* c = mod->add_subcommand("probe", "modulus decay across growing shells");
        c->add_option("--graph", m_probe.graph)->required();
        c->add_option("--out", m_probe.out)->required();
        c->add_option("--root", m_probe.root)->required();
        c->add_option("--radii", m_probe.radii, "comma list, strictly increasing");
        c->add_option("--p", m_probe.p);
        c->add_option("--tol", m_probe.tol);
        c->add_option("--plot", m_probe.plot, "modulus-vs-R CSV series");
        c->callback([&] {
            auto g = dpack::read_graph(m_probe.graph);
            dpack::ModulusOptions opt;
            opt.p = m_probe.p;
            opt.tol = m_probe.tol;
            auto radii = split_ints(m_probe.radii, "--radii");
            auto probe = dpack::vel_probe(g, g.require_index(m_probe.root), m_probe.p, radii, opt,
                                          resolve_threads(ctx));
            Json doc;
            doc["format"] = "dpack-probe/1";
            doc["p"] = m_probe.p;
            Json pts = Json::array();
            bool all_converged = true;
            for (const auto& pt : probe.points) {
                Json jp;
                jp["radius"] = pt.radius;
                jp["value"] = pt.result.value;
                jp["vel"] = dpack::json_real(pt.result.vel);
                jp["converged"] = pt.result.converged;
                all_converged = all_converged && pt.result.converged;
                pts.push_back(std::move(jp));
            }
            doc["points"] = std::move(pts);
            doc["log_fit_rss"] = dpack::json_real(probe.log_fit_rss);
            doc["limit_fit_rss"] = dpack::json_real(probe.limit_fit_rss);
            doc["limit_estimate"] = dpack::json_real(probe.limit_estimate);
            doc["verdict"] = dpack::vel_verdict_name(probe.verdict);
            emit(std::move(doc), ctx, "mod probe",
                 Json{{"graph", m_probe.graph},
                      {"root", m_probe.root},
                      {"radii", m_probe.radii},
                      {"p", m_probe.p},
                      {"tol", m_probe.tol}},
                 m_probe.out);
            if (!m_probe.plot.empty()) {
                std::vector<std::string> rows;
                for (const auto& pt : probe.points)
                    rows.push_back(std::to_string(pt.radius) + "," + dpack::double_to_string(pt.result.value) +
                                   "," + dpack::double_to_string(pt.result.vel));
                write_plot(m_probe.plot, "R,value,vel", rows);
            }
            if (!all_converged) {
                std::cerr << "warning: some probe radii did not converge\n";
                ctx.rc = 2;
            }
        });
    }

    struct {
        std::string graph, out, root, growth, growth_file;
        int n = 1;
        double p = 2.0;
    } m_cert;
    {
        auto* c = mod->add_subcommand("certificate", "growth-profile lower bound on extremal length");
        c->add_option("--graph", m_cert.graph)->required();
        c->add_option("--out", m_cert.out)->required();
        c->add_option("--root", m_cert.root)->required();
        c->add_option("--n", m_cert.n, "deepest hull layer used")->required();
        c->add_option("--p", m_cert.p);
        c->add_option("--growth", m_cert.growth, "comma list g(1),g(2),...");
        c->add_option("--growth-file", m_cert.growth_file, "dpack-profile/1 document");
        c->callback([&] {
            auto g = dpack::read_graph(m_cert.graph);
            auto growth = load_profile(m_cert.growth, m_cert.growth_file);
            auto cert = dpack::vel_certificate(g, g.require_index(m_cert.root), growth, m_cert.n, m_cert.p);
            Json doc;
            doc["format"] = "dpack-certificate/1";
            doc["p"] = m_cert.p;
            doc["N"] = m_cert.n;
            doc["n"] = cert.n;
            doc["length_bound"] = cert.length_bound;
            doc["lower_bound"] = cert.lower_bound;
            doc["metric"] = metric_json(g, cert.metric);
            emit(std::move(doc), ctx, "mod certificate",
                 Json{{"graph", m_cert.graph},
                      {"root", m_cert.root},
                      {"n", m_cert.n},
                      {"p", m_cert.p},
                      {"growth", m_cert.growth},
                      {"growth_file", m_cert.growth_file}},
                 m_cert.out);
        });
    }

    struct {
        std::string out, growth, growth_file;
        double q = 1.0;
    } m_div;
    {
        auto* c = mod->add_subcommand("divergence", "partial sums of sum g(n)^{-q}");
        c->add_option("--out", m_div.out)->required();
        c->add_option("--q", m_div.q)->required();
        c->add_option("--growth", m_div.growth, "comma list g(1),g(2),...");
        c->add_option("--growth-file", m_div.growth_file, "dpack-profile/1 document");
        c->callback([&] {
            auto growth = load_profile(m_div.growth, m_div.growth_file);
            auto chk = dpack::divergence_check(growth, m_div.q);
            Json doc;
            doc["format"] = "dpack-divergence/1";
            doc["q"] = chk.q;
            doc["monotone"] = chk.monotone;
            Json sums = Json::array();
            for (auto& [n, s] : chk.partial_sums) sums.push_back(Json::array({n, s}));
            doc["partial_sums"] = std::move(sums);
            doc["tail_ratio"] = dpack::json_real(chk.tail_ratio);
            doc["trend"] = chk.trend;
            emit(std::move(doc), ctx, "mod divergence",
                 Json{{"q", m_div.q}, {"growth", m_div.growth}, {"growth_file", m_div.growth_file}},
                 m_div.out);
        });
    }

    // --------------------------------------------------------------- flow --
    auto* flow = app.add_subcommand("flow", "water spreading over a metric");
    flow->require_subcommand(1);

    struct {
        std::string graph, out, root, metric;
        double uniform = 0.0, floor_value = 0.0;
    } f_exp;
    {
        auto* c = flow->add_subcommand("explore", "run the process and export the s-curve");
        c->add_option("--graph", f_exp.graph)->required();
        c->add_option("--out", f_exp.out)->required();
        c->add_option("--root", f_exp.root)->required();
        c->add_option("--metric", f_exp.metric, "dpack-modulus/1 document with the metric");
        c->add_option("--uniform", f_exp.uniform, "constant metric value");
        c->add_option("--floor", f_exp.floor_value, "clamp the metric from below");
        c->callback([&] {
            auto g = dpack::read_graph(f_exp.graph);
            auto m = flow_metric(g, f_exp.metric, f_exp.uniform, f_exp.floor_value);
            auto w = dpack::wetness_process(g, m, g.require_index(f_exp.root));
            emit(flow_doc(w, nullptr, g), ctx, "flow explore",
                 Json{{"graph", f_exp.graph},
                      {"root", f_exp.root},
                      {"metric", f_exp.metric},
                      {"uniform", f_exp.uniform},
                      {"floor", f_exp.floor_value}},
                 f_exp.out);
        });
    }

    struct {
        std::string graph, out, root, metric, growth, growth_file;
        double uniform = 0.0, floor_value = 0.0, d = 2.0;
        bool envelope = false;
    } f_ver;
    {
        auto* c = flow->add_subcommand("verify", "check the counting inequalities along the process");
        c->add_option("--graph", f_ver.graph)->required();
        c->add_option("--out", f_ver.out)->required();
        c->add_option("--root", f_ver.root)->required();
        c->add_option("--metric", f_ver.metric, "dpack-modulus/1 document with the metric");
        c->add_option("--uniform", f_ver.uniform, "constant metric value");
        c->add_option("--floor", f_ver.floor_value, "clamp the metric from below");
        c->add_option("--d", f_ver.d, "exponent");
        c->add_option("--growth", f_ver.growth, "comma list g(1),g(2),...");
        c->add_option("--growth-file", f_ver.growth_file, "dpack-profile/1 document");
        c->add_flag("--envelope", f_ver.envelope, "use the process's own boundary envelope as growth");
        c->callback([&] {
            auto g = dpack::read_graph(f_ver.graph);
            auto m = flow_metric(g, f_ver.metric, f_ver.uniform, f_ver.floor_value);
            auto w = dpack::wetness_process(g, m, g.require_index(f_ver.root));
            dpack::Profile growth = f_ver.envelope ? dpack::wetness_envelope(w)
                                                   : load_profile(f_ver.growth, f_ver.growth_file);
            auto rep = dpack::verify_flow_inequalities(w, growth, f_ver.d);
            emit(flow_doc(w, &rep, g), ctx, "flow verify",
                 Json{{"graph", f_ver.graph},
                      {"root", f_ver.root},
                      {"metric", f_ver.metric},
                      {"uniform", f_ver.uniform},
                      {"floor", f_ver.floor_value},
                      {"d", f_ver.d},
                      {"growth", f_ver.growth},
                      {"growth_file", f_ver.growth_file},
                      {"envelope", f_ver.envelope}},
                 f_ver.out);
            std::cout << (rep.pass ? "pass" : "fail") << " (" << rep.checks.size() << " intervals)\n";
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const dpack::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const dpack::InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return ctx.rc;
}
