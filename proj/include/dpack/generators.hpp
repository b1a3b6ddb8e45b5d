#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dpack/geometry.hpp"
#include "dpack/graph.hpp"

namespace dpack {

// Parameters a generator run was invoked with, embedded in emitted documents
// so results stay reproducible.
struct GenSpec {
    std::string family;
    std::map<std::string, std::int64_t> params;
    std::uint64_t seed = 0;
};

// Balls of radius 1/2 at every integer point of {0..side-1}^d, ids the
// underscore-joined coordinates ("2_0_1"). Tangency graph is grid_graph(d,
// side) with identical vertex ids and ordering.
Packing cubic_lattice_packing(int d, int side);

// Unit circles at triangular-lattice points, rows x cols, ids "i_j".
// Interior circles have six tangencies.
Packing hexagonal_packing(int rows, int cols);

// Grid graph on {0..side-1}^d with the same ids as cubic_lattice_packing.
Graph grid_graph(int d, int side);

// Tree rooted at id "0" with root degree k and internal degree k, truncated
// at the given depth (so leaves sit at distance depth from the root).
Graph regular_tree(int k, int depth);

// Apollonian circle packing grown from the integral quadruple with
// curvatures (-1, 2, 2, 3) by Descartes reflection: replacing one member of
// a tangent quadruple by its mirror k' = 2(k_a + k_b + k_c) - k, and the
// same linear rule for curvature-weighted centers. depth counts reflection
// generations; depth 0 is the three inner circles alone.
//
// The bounding circle has negative curvature and is not a ball of the
// packing (balls have disjoint interiors), but it participates in every
// identity check, so the full circle list and quadruple list are kept.
struct ApollonianGasket {
    struct Circle {
        double curvature = 0.0;
        std::array<double, 2> center{0.0, 0.0};
        int ball = -1;  // index into packing, -1 for the outer circle
    };
    Packing packing;
    std::vector<Circle> circles;                 // index 0 is the outer circle
    std::vector<std::array<int, 4>> quadruples;  // indices into circles
};
ApollonianGasket apollonian_gasket(int depth);

// Triangulated disk given by its face list and outer cycle. Vertices are
// 0..n-1; ids in derived packings are the decimal indices.
struct Triangulation {
    int n = 0;
    std::vector<std::array<int, 3>> faces;
    std::vector<int> boundary;  // outer cycle in order
};

// Throws InputError unless: faces are valid triangles, every edge lies in
// one or two of them, the single-face edges are exactly the boundary cycle,
// each vertex's incident faces form one fan (closed for interior vertices,
// open for boundary ones), and the Euler count E = 3V - B - 3 holds.
void check_triangulation(const Triangulation& t);

// Circle packing realizing a disk triangulation: boundary radii are
// prescribed, interior radii are iterated until every interior angle sum is
// 2*pi (tolerance 1e-10, at most 1e5 rounds), then circles are placed face
// by face. A run that exhausts its rounds still returns the layout, with
// converged = false.
struct DiskPackResult {
    Packing packing;            // one circle per vertex, ids "0".."n-1"
    std::vector<double> radii;  // by vertex
    bool converged = false;
    double max_angle_defect = 0.0;
    int rounds = 0;
};
DiskPackResult disk_triangulation_pack(const Triangulation& t, const std::vector<double>& boundary_radii);

}  // namespace dpack
