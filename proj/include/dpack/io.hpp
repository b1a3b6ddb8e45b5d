#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "dpack/geometry.hpp"
#include "dpack/graph.hpp"

namespace dpack {

// Field order is preserved so identical inputs serialize byte for byte.
using Json = nlohmann::ordered_json;

// Shortest decimal form that parses back to exactly the same double.
std::string double_to_string(double x);
double double_from_string(const std::string& s, const std::string& where);

// JSON values for possibly non-finite reals: finite numbers stay numbers,
// while inf/nan become the strings "inf", "-inf", "nan".
Json json_real(double x);
double real_from_json(const Json& v, const std::string& where);

// Reads a JSON document; parse failures cite path, line, and message.
Json read_document(const std::string& path);
// Reads a result document and checks its format tag ("dpack-modulus/1", ...).
Json read_result(const std::string& path, const std::string& expected_format);
void write_document(const Json& doc, const std::string& path);

// {format: "dpack-packing/1", dimension, tol_rel, balls: [{id, center, radius}]}
Json packing_to_json(const Packing& p);
Packing packing_from_json(const Json& doc, const std::string& source);

// CSV with header "id,x1,...,xd,r". Ids must be free of commas and quotes.
void packing_to_csv(const Packing& p, std::ostream& out);
Packing packing_from_csv(std::istream& in, const std::string& source);

// Dispatch on extension: .csv goes through the CSV form, anything else JSON.
Packing read_packing(const std::string& path);
void write_packing(const Packing& p, const std::string& path);

// {format: "dpack-graph/1", vertices: [ids], edges: [[u, v], ...], root?: id}
Json graph_to_json(const Graph& g, const std::string* root_id = nullptr);
Graph graph_from_json(const Json& doc, const std::string& source, std::string* root_id = nullptr);
Graph read_graph(const std::string& path, std::string* root_id = nullptr);
void write_graph(const Graph& g, const std::string& path, const std::string* root_id = nullptr);

}  // namespace dpack
