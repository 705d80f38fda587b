// Simplicial meshes for the unit cell and the perforated macroscopic domain.
//
// All meshes come from one structured pattern (two triangles per grid square,
// alternating diagonals) with nodes near the hole boundary snapped onto the
// circle, so the hole is a union of element edges. The full-cell mesh keeps
// the hole elements (tagged) and the restricted mesh drops them; both share
// node coordinates.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "perfhom/geometry.hpp"

namespace perfhom {

class MeshError : public std::runtime_error {
  public:
    explicit MeshError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class EdgeTag : std::uint8_t {
    dirichlet_outer,
    neumann_hole,
    periodic_master,
    periodic_slave,
};

struct BoundaryEdge {
    int a = -1;
    int b = -1;
    EdgeTag tag = EdgeTag::dirichlet_outer;
};

struct TriMesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> tris;  // CCW
    std::vector<std::uint8_t> tri_in_hole;  // per-element l+ complement; empty if no holes kept
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<std::array<int, 2>> periodic_pairs;  // {slave, master}
    double period = 0.0;                             // periodic cell size, 0 if none

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_tris() const { return static_cast<int>(tris.size()); }
    bool in_hole(int t) const { return !tri_in_hole.empty() && tri_in_hole[t] != 0; }

    double tri_area(int t) const {
        const auto& v = tris[t];
        return 0.5 * cross(nodes[v[1]] - nodes[v[0]], nodes[v[2]] - nodes[v[0]]);
    }
    Vec2 centroid(int t) const {
        const auto& v = tris[t];
        return (nodes[v[0]] + nodes[v[1]] + nodes[v[2]]) / 3.0;
    }
    // total area; with skip_holes, hole elements are excluded
    double area(bool skip_holes) const;
    double min_angle_deg() const;

    // gradients of the three barycentric basis functions on element t
    std::array<Vec2, 3> shape_gradients(int t) const;

    // --- point location -------------------------------------------------
    // Locate the element containing p (barycentric tolerance), or -1.
    // build_locator() must be called once after construction.
    void build_locator();
    int locate(const Vec2& p) const;
    // barycentric coordinates of p in element t
    std::array<double, 3> barycentric(int t, const Vec2& p) const;

    // deterministic plain-text cache format (see save/load below)
    void save(const std::string& path_prefix) const;
    static TriMesh load(const std::string& path_prefix);

  private:
    // background bins for locate()
    double bin_x0_ = 0, bin_y0_ = 0, bin_h_ = 0;
    int bin_nx_ = 0, bin_ny_ = 0;
    std::vector<std::vector<int>> bins_;
};

// Mesh of the unit cell Y = [-1/2,1/2)^2 at grid spacing h = 1/m.
// full_cell = true keeps hole elements (tagged via tri_in_hole) for the
// auxiliary solves on all of Y; false restricts to Y cap omega.
// Periodic pairs identify opposite faces of dY; hole boundary edges are
// tagged neumann_hole.
TriMesh mesh_unit_cell(const PerforationSpec& spec, double h, bool full_cell);

// Mesh of Omega_eps = (0,1)^2 cap eps*omega at spacing h (h must divide eps
// with at least 8 subdivisions per cell: the resolution gate h <= eps/8).
// include_holes keeps hole elements tagged (used by the hole-extension
// operator); the outer boundary is dirichlet_outer, hole boundaries
// neumann_hole.
TriMesh mesh_macro(const MacroDomain& domain, double h, bool include_holes);

// Drop hole elements and orphaned nodes; node_map[i] = index in `full`.
TriMesh restrict_to_domain(const TriMesh& full, std::vector<int>* node_map);

}  // namespace perfhom
