#include "dpack/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dpack {

std::string double_to_string(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw InvariantError("double_to_string: conversion failed");
    return std::string(buf, ptr);
}

double double_from_string(const std::string& s, const std::string& where) {
    double x = 0.0;
    auto first = s.data();
    auto last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc() || ptr != last)
        throw InputError(where + ": '" + s + "' is not a number");
    return x;
}

Json json_real(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double real_from_json(const Json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw InputError(where + ": expected a number");
}

Json read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw InputError(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

Json read_result(const std::string& path, const std::string& expected_format) {
    Json doc = read_document(path);
    if (!doc.is_object() || !doc.contains("format") || !doc["format"].is_string())
        throw InputError(path + ": missing format tag");
    if (doc["format"].get<std::string>() != expected_format)
        throw InputError(path + ": format is '" + doc["format"].get<std::string>() + "', expected '" +
                         expected_format + "'");
    return doc;
}

void write_document(const Json& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path + ": cannot open for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw InputError(path + ": write failed");
}

namespace {

const Json& field(const Json& obj, const char* name, const std::string& where) {
    if (!obj.is_object()) throw InputError(where + ": expected an object");
    auto it = obj.find(name);
    if (it == obj.end()) throw InputError(where + ": missing field '" + name + "'");
    return *it;
}

double num_field(const Json& obj, const char* name, const std::string& where) {
    const Json& v = field(obj, name, where);
    if (!v.is_number()) throw InputError(where + ": field '" + name + "' must be a number");
    return v.get<double>();
}

std::string str_field(const Json& obj, const char* name, const std::string& where) {
    const Json& v = field(obj, name, where);
    if (!v.is_string()) throw InputError(where + ": field '" + name + "' must be a string");
    return v.get<std::string>();
}

int int_field(const Json& obj, const char* name, const std::string& where) {
    const Json& v = field(obj, name, where);
    if (!v.is_number_integer()) throw InputError(where + ": field '" + name + "' must be an integer");
    return v.get<int>();
}

void check_id(const std::string& id, const std::string& where) {
    if (id.empty()) throw InputError(where + ": empty id");
    for (char c : id)
        if (c == ',' || c == '"' || c == '\n' || c == '\r')
            throw InputError(where + ": id '" + id + "' contains a delimiter character");
}

}  // namespace

Json packing_to_json(const Packing& p) {
    Json doc;
    doc["format"] = "dpack-packing/1";
    doc["dimension"] = p.dimension();
    doc["tol_rel"] = p.tol_rel();
    Json balls = Json::array();
    for (const Ball& b : p.balls()) {
        check_id(b.id, "packing");
        Json jb;
        jb["id"] = b.id;
        jb["center"] = b.center;
        jb["radius"] = b.radius;
        balls.push_back(std::move(jb));
    }
    doc["balls"] = std::move(balls);
    return doc;
}

Packing packing_from_json(const Json& doc, const std::string& source) {
    if (str_field(doc, "format", source) != "dpack-packing/1")
        throw InputError(source + ": format is not dpack-packing/1");
    int dim = int_field(doc, "dimension", source);
    double tol = num_field(doc, "tol_rel", source);
    Packing p(dim, tol);
    const Json& balls = field(doc, "balls", source);
    if (!balls.is_array()) throw InputError(source + ": field 'balls' must be an array");
    int i = 0;
    for (const Json& jb : balls) {
        std::string where = source + ": balls[" + std::to_string(i) + "]";
        Ball b;
        b.id = str_field(jb, "id", where);
        const Json& c = field(jb, "center", where);
        if (!c.is_array()) throw InputError(where + ".center: expected an array");
        for (const Json& x : c) {
            if (!x.is_number()) throw InputError(where + ".center: expected numbers");
            b.center.push_back(x.get<double>());
        }
        b.radius = num_field(jb, "radius", where);
        try {
            p.add_ball(std::move(b));
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
        ++i;
    }
    return p;
}

void packing_to_csv(const Packing& p, std::ostream& out) {
    out << "id";
    for (int i = 1; i <= p.dimension(); ++i) out << ",x" << i;
    out << ",r\n";
    for (const Ball& b : p.balls()) {
        check_id(b.id, "packing");
        out << b.id;
        for (double x : b.center) out << ',' << double_to_string(x);
        out << ',' << double_to_string(b.radius) << '\n';
    }
}

Packing packing_from_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) throw InputError(source + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto split = [](const std::string& s) {
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
    };
    auto header = split(line);
    if (header.size() < 3 || header.front() != "id" || header.back() != "r")
        throw InputError(source + ":1: header must be id,x1,...,xd,r");
    int dim = static_cast<int>(header.size()) - 2;
    for (int i = 0; i < dim; ++i)
        if (header[static_cast<std::size_t>(i + 1)] != "x" + std::to_string(i + 1))
            throw InputError(source + ":1: header must be id,x1,...,xd,r");
    Packing p(dim);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto parts = split(line);
        std::string where = source + ":" + std::to_string(lineno);
        if (parts.size() != header.size())
            throw InputError(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                             std::to_string(parts.size()));
        Ball b;
        b.id = parts[0];
        for (int i = 0; i < dim; ++i)
            b.center.push_back(double_from_string(parts[static_cast<std::size_t>(i + 1)], where));
        b.radius = double_from_string(parts.back(), where);
        try {
            p.add_ball(std::move(b));
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    return p;
}

namespace {

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Packing read_packing(const std::string& path) {
    if (has_suffix(path, ".csv")) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError(path + ": cannot open for reading");
        return packing_from_csv(in, path);
    }
    return packing_from_json(read_document(path), path);
}

void write_packing(const Packing& p, const std::string& path) {
    if (has_suffix(path, ".csv")) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError(path + ": cannot open for writing");
        packing_to_csv(p, out);
        if (!out) throw InputError(path + ": write failed");
        return;
    }
    write_document(packing_to_json(p), path);
}

Json graph_to_json(const Graph& g, const std::string* root_id) {
    Json doc;
    doc["format"] = "dpack-graph/1";
    Json vertices = Json::array();
    for (int v = 0; v < g.vertex_count(); ++v) vertices.push_back(g.id_of(v));
    doc["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.neighbors(u))
            if (u < v) edges.push_back(Json::array({g.id_of(u), g.id_of(v)}));
    doc["edges"] = std::move(edges);
    if (root_id != nullptr) doc["root"] = *root_id;
    return doc;
}

Graph graph_from_json(const Json& doc, const std::string& source, std::string* root_id) {
    if (str_field(doc, "format", source) != "dpack-graph/1")
        throw InputError(source + ": format is not dpack-graph/1");
    Graph g;
    const Json& vertices = field(doc, "vertices", source);
    if (!vertices.is_array()) throw InputError(source + ": field 'vertices' must be an array");
    for (const Json& v : vertices) {
        if (!v.is_string()) throw InputError(source + ": vertex ids must be strings");
        try {
            g.add_vertex(v.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(source + ": " + e.what());
        }
    }
    const Json& edges = field(doc, "edges", source);
    if (!edges.is_array()) throw InputError(source + ": field 'edges' must be an array");
    int i = 0;
    for (const Json& e : edges) {
        std::string where = source + ": edges[" + std::to_string(i) + "]";
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw InputError(where + ": expected a pair of vertex ids");
        try {
            g.add_edge_ids(e[0].get<std::string>(), e[1].get<std::string>());
        } catch (const InputError& err) {
            throw InputError(where + ": " + err.what());
        }
        ++i;
    }
    if (root_id != nullptr) {
        if (doc.contains("root")) {
            const Json& r = doc["root"];
            if (!r.is_string()) throw InputError(source + ": field 'root' must be a string");
            *root_id = r.get<std::string>();
            if (g.index_of(*root_id) < 0)
                throw InputError(source + ": root '" + *root_id + "' is not a vertex");
        } else {
            root_id->clear();
        }
    }
    return g;
}

Graph read_graph(const std::string& path, std::string* root_id) {
    return graph_from_json(read_document(path), path, root_id);
}

void write_graph(const Graph& g, const std::string& path, const std::string* root_id) {
    write_document(graph_to_json(g, root_id), path);
}

}  // namespace dpack
