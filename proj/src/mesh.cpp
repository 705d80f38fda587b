#include "perfhom/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace perfhom {

namespace {

// Structured pattern of the unit cell in Y coordinates: (m+1)^2 grid nodes,
// two triangles per square with alternating diagonals, nodes near the hole
// boundary snapped radially onto the circle and the neighbourhood relaxed.
struct CellPattern {
    int m = 0;
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> tris;
    std::vector<std::uint8_t> tri_in_hole;
    std::vector<std::uint8_t> node_moved;  // snapped or smoothed away from the grid
    std::vector<std::array<int, 2>> periodic_pairs;
};

int grid_id(int m, int i, int j) { return j * (m + 1) + i; }

double tri_min_angle(const Vec2& a, const Vec2& b, const Vec2& c) {
    const Vec2 e0 = b - a, e1 = c - b, e2 = a - c;
    const double l0 = e0.norm(), l1 = e1.norm(), l2 = e2.norm();
    if (l0 <= 0 || l1 <= 0 || l2 <= 0) return 0.0;
    auto ang = [](const Vec2& u, const Vec2& v) {
        return std::acos(std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0));
    };
    const double a0 = ang(b - a, c - a);
    const double a1 = ang(a - b, c - b);
    const double a2 = M_PI - a0 - a1;
    return std::min({a0, a1, a2}) * 180.0 / M_PI;
}

// Cut the structured grid against the circle: crossing edges either snap the
// nearby endpoint onto the circle (crossing parameter close to a vertex) or
// get the exact intersection point inserted, after which crossed triangles
// are subdivided conformingly. A guarded smoothing pass then relaxes the
// neighbourhood without letting any node change sides or any angle degrade.
CellPattern build_cell_pattern(const PerforationSpec& spec, double h) {
    spec.validate();
    const int m = static_cast<int>(std::lround(1.0 / h));
    if (m < 2 || std::abs(1.0 / m - h) > 1e-12)
        throw MeshError("cell spacing h must be 1/m for an integer m >= 2");
    if (spec.perforated()) {
        if (h >= 0.5 * spec.gap())
            throw MeshError("hole under-resolved: h must be < g/2");
        if (h > spec.radius)
            throw MeshError("hole under-resolved: h exceeds the hole radius");
        const double clearance = 0.5 - (std::max(std::abs(spec.center.x), std::abs(spec.center.y)) + spec.radius);
        if (1.5 * h >= clearance)
            throw MeshError("hole too close to the cell boundary for this h");
    }

    CellPattern pat;
    pat.m = m;
    pat.nodes.resize((m + 1) * (m + 1));
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= m; ++i)
            pat.nodes[grid_id(m, i, j)] = Vec2(double(i) / m - 0.5, double(j) / m - 0.5);
    pat.node_moved.assign(pat.nodes.size(), 0);

    pat.tris.reserve(2 * m * m);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const int v00 = grid_id(m, i, j), v10 = grid_id(m, i + 1, j);
            const int v01 = grid_id(m, i, j + 1), v11 = grid_id(m, i + 1, j + 1);
            if ((i + j) % 2 == 0) {
                pat.tris.push_back({v00, v10, v11});
                pat.tris.push_back({v00, v11, v01});
            } else {
                pat.tris.push_back({v00, v10, v01});
                pat.tris.push_back({v10, v11, v01});
            }
        }
    }

    // periodic identification of opposite faces (grid nodes only; boundary
    // nodes are never moved, so pairs are exact unit translates)
    for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= m; ++i)
            if (i == m || j == m)
                pat.periodic_pairs.push_back({grid_id(m, i, j), grid_id(m, i % m, j % m)});

    if (!spec.perforated()) {
        pat.tri_in_hole.assign(pat.tris.size(), 0);
        return pat;
    }

    const int n_grid = (int)pat.nodes.size();
    auto on_cell_boundary = [&](int id) {
        if (id >= n_grid) return false;
        const int i = id % (m + 1), j = id / (m + 1);
        return i == 0 || i == m || j == 0 || j == m;
    };
    std::vector<std::uint8_t> on_circle(pat.nodes.size(), 0);
    auto sdist = [&](int id) {
        return on_circle[id] ? 0.0 : spec.signed_distance(pat.nodes[id]);
    };
    auto snap = [&](int id) {
        const Vec2 dir = pat.nodes[id] - spec.center;
        pat.nodes[id] = spec.center + dir * (spec.radius / dir.norm());
        pat.node_moved[id] = 1;
        on_circle[id] = 1;
    };
    // crossing parameter of segment [a, b] with the circle (exactly one root
    // in (0,1) when the endpoint signs differ strictly)
    auto crossing = [&](const Vec2& a, const Vec2& b) {
        const Vec2 d = b - a, ca = a - spec.center;
        const double A = d.norm2(), B = 2.0 * ca.dot(d);
        const double C = ca.norm2() - spec.radius * spec.radius;
        const double disc = std::sqrt(std::max(0.0, B * B - 4 * A * C));
        for (double t : {(-B - disc) / (2 * A), (-B + disc) / (2 * A)})
            if (t > 0.0 && t < 1.0) return t;
        return 0.5;  // unreachable for strict sign changes
    };

    auto unique_edges = [&]() {
        std::vector<std::array<int, 2>> edges;
        for (const auto& t : pat.tris)
            for (int e = 0; e < 3; ++e) {
                int a = t[e], b = t[(e + 1) % 3];
                if (a > b) std::swap(a, b);
                edges.push_back({a, b});
            }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return edges;
    };

    // pass 1: snap vertices that sit close to the crossing point
    for (const auto& e : unique_edges()) {
        const double da = sdist(e[0]), db = sdist(e[1]);
        if (da == 0.0 || db == 0.0 || da * db > 0.0) continue;
        const double t = crossing(pat.nodes[e[0]], pat.nodes[e[1]]);
        if (t < 0.3 && !on_cell_boundary(e[0]))
            snap(e[0]);
        else if (t > 0.7 && !on_cell_boundary(e[1]))
            snap(e[1]);
    }
    // pass 2: insert intersection points on the remaining crossing edges
    std::unordered_map<std::int64_t, int> edge_point;
    const std::int64_t NK = n_grid + 1;
    for (const auto& e : unique_edges()) {
        const double da = sdist(e[0]), db = sdist(e[1]);
        if (da == 0.0 || db == 0.0 || da * db > 0.0) continue;
        const double t = crossing(pat.nodes[e[0]], pat.nodes[e[1]]);
        Vec2 p = pat.nodes[e[0]] + (pat.nodes[e[1]] - pat.nodes[e[0]]) * t;
        p = spec.center + (p - spec.center) * (spec.radius / (p - spec.center).norm());
        const int id = (int)pat.nodes.size();
        pat.nodes.push_back(p);
        pat.node_moved.push_back(1);
        on_circle.push_back(1);
        edge_point[(std::int64_t)e[0] * NK + e[1]] = id;
    }
    // pass 3: conforming subdivision of crossed triangles
    if (!edge_point.empty()) {
        std::vector<std::array<int, 3>> out;
        out.reserve(pat.tris.size() + 2 * edge_point.size());
        auto cut_of = [&](int a, int b) -> int {
            if (a > b) std::swap(a, b);
            auto it = edge_point.find((std::int64_t)a * NK + b);
            return it == edge_point.end() ? -1 : it->second;
        };
        for (const auto& tri : pat.tris) {
            int cuts[3];
            int ncut = 0;
            for (int e = 0; e < 3; ++e) {
                cuts[e] = cut_of(tri[e], tri[(e + 1) % 3]);
                if (cuts[e] >= 0) ++ncut;
            }
            if (ncut == 0) {
                out.push_back(tri);
            } else if (ncut == 1) {
                // the opposite vertex lies on the circle
                int e = 0;
                while (cuts[e] < 0) ++e;
                const int a = tri[e], b = tri[(e + 1) % 3], c = tri[(e + 2) % 3], p = cuts[e];
                out.push_back({a, p, c});
                out.push_back({p, b, c});
            } else if (ncut == 2) {
                int e = 0;
                while (cuts[e] < 0) ++e;  // first cut edge
                // rotate so the two cut edges are (v0,v1) and (v1,v2)
                int rot;
                if (cuts[(e + 1) % 3] >= 0)
                    rot = e;
                else
                    rot = (e + 2) % 3;
                const int v0 = tri[rot], v1 = tri[(rot + 1) % 3], v2 = tri[(rot + 2) % 3];
                const int p01 = cut_of(v0, v1), p12 = cut_of(v1, v2);
                out.push_back({p01, v1, p12});  // the lone-vertex cap
                // split the quad (v0, p01, p12, v2) along its shorter diagonal
                if ((pat.nodes[v0] - pat.nodes[p12]).norm2() <=
                    (pat.nodes[p01] - pat.nodes[v2]).norm2()) {
                    out.push_back({v0, p01, p12});
                    out.push_back({v0, p12, v2});
                } else {
                    out.push_back({v0, p01, v2});
                    out.push_back({p01, p12, v2});
                }
            } else {
                throw MeshError("triangle cut by the circle on all three edges");
            }
        }
        pat.tris = std::move(out);
    }

    // pass 4: guarded Laplacian smoothing near the interface; nodes keep
    // their side of the circle and moves are accepted only if the local
    // minimum angle does not get worse
    {
        std::vector<std::vector<int>> star(pat.nodes.size());
        for (int t = 0; t < (int)pat.tris.size(); ++t)
            for (int k = 0; k < 3; ++k) star[pat.tris[t][k]].push_back(t);
        auto local_quality = [&](int id) {
            double q = 180.0;
            for (int t : star[id]) {
                const auto& v = pat.tris[t];
                const double area = 0.5 * cross(pat.nodes[v[1]] - pat.nodes[v[0]],
                                                pat.nodes[v[2]] - pat.nodes[v[0]]);
                if (area <= 0.0) return -1.0;
                q = std::min(q, tri_min_angle(pat.nodes[v[0]], pat.nodes[v[1]], pat.nodes[v[2]]));
            }
            return q;
        };
        std::vector<std::vector<int>> nbr(pat.nodes.size());
        for (const auto& e : unique_edges()) {
            nbr[e[0]].push_back(e[1]);
            nbr[e[1]].push_back(e[0]);
        }
        for (int sweep = 0; sweep < 4; ++sweep) {
            for (int id = 0; id < (int)pat.nodes.size(); ++id) {
                if (on_circle[id] || on_cell_boundary(id) || nbr[id].empty()) continue;
                const double d0 = spec.signed_distance(pat.nodes[id]);
                if (std::abs(d0) > 2.0 * h) continue;
                Vec2 avg{0, 0};
                for (int v : nbr[id]) avg += pat.nodes[v];
                avg = avg / double(nbr[id].size());
                const Vec2 candidate = pat.nodes[id] * 0.5 + avg * 0.5;
                if (spec.signed_distance(candidate) * d0 <= 0.0) continue;
                const double before = local_quality(id);
                const Vec2 keep = pat.nodes[id];
                pat.nodes[id] = candidate;
                if (local_quality(id) < before) {
                    pat.nodes[id] = keep;
                } else {
                    pat.node_moved[id] = 1;
                }
            }
        }
    }

    pat.tri_in_hole.resize(pat.tris.size());
    int inside = 0;
    for (int t = 0; t < (int)pat.tris.size(); ++t) {
        const Vec2 c = (pat.nodes[pat.tris[t][0]] + pat.nodes[pat.tris[t][1]] +
                        pat.nodes[pat.tris[t][2]]) / 3.0;
        pat.tri_in_hole[t] = spec.signed_distance(c) < 0.0 ? 1 : 0;
        inside += pat.tri_in_hole[t];
    }
    if (inside == 0) throw MeshError("hole under-resolved: no element inside the hole");

    for (int t = 0; t < (int)pat.tris.size(); ++t) {
        const auto& v = pat.tris[t];
        const double area = 0.5 * cross(pat.nodes[v[1]] - pat.nodes[v[0]],
                                        pat.nodes[v[2]] - pat.nodes[v[0]]);
        if (area <= 0.0) throw MeshError("degenerate element after cutting");
        if (tri_min_angle(pat.nodes[v[0]], pat.nodes[v[1]], pat.nodes[v[2]]) < 20.0)
            throw MeshError("mesh quality gate violated: min angle < 20 deg");
    }
    return pat;
}

// Edges incident to exactly one element become boundary edges; the tag is
// decided by whether both endpoints lie on the outer boundary.
void rebuild_boundary(TriMesh& mesh, bool outer_is_periodic, double lo, double hi) {
    std::unordered_map<std::int64_t, std::array<int, 3>> count;  // edge -> {n, a, b}
    const std::int64_t N = mesh.num_nodes();
    for (const auto& t : mesh.tris)
        for (int e = 0; e < 3; ++e) {
            const int a = t[e], b = t[(e + 1) % 3];
            const std::int64_t key = std::min(a, b) * N + std::max(a, b);
            auto it = count.find(key);
            if (it == count.end())
                count[key] = {1, a, b};
            else
                it->second[0]++;
        }
    const double tol = 1e-12;
    auto on_outer = [&](const Vec2& p) {
        return std::abs(p.x - lo) < tol || std::abs(p.x - hi) < tol ||
               std::abs(p.y - lo) < tol || std::abs(p.y - hi) < tol;
    };
    std::vector<BoundaryEdge> out;
    for (const auto& [key, rec] : count) {
        if (rec[0] != 1) continue;
        BoundaryEdge be;
        be.a = rec[1];
        be.b = rec[2];
        if (on_outer(mesh.nodes[be.a]) && on_outer(mesh.nodes[be.b])) {
            if (outer_is_periodic) {
                // master faces: left and bottom
                const bool slave = mesh.nodes[be.a].x > hi - tol || mesh.nodes[be.a].y > hi - tol ||
                                   mesh.nodes[be.b].x > hi - tol || mesh.nodes[be.b].y > hi - tol;
                be.tag = slave ? EdgeTag::periodic_slave : EdgeTag::periodic_master;
            } else {
                be.tag = EdgeTag::dirichlet_outer;
            }
        } else {
            be.tag = EdgeTag::neumann_hole;
        }
        out.push_back(be);
    }
    std::sort(out.begin(), out.end(), [](const BoundaryEdge& x, const BoundaryEdge& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    mesh.boundary_edges = std::move(out);
}

}  // namespace

double TriMesh::area(bool skip_holes) const {
    double s = 0.0;
    for (int t = 0; t < num_tris(); ++t) {
        if (skip_holes && in_hole(t)) continue;
        s += tri_area(t);
    }
    return s;
}

double TriMesh::min_angle_deg() const {
    double worst = 180.0;
    for (const auto& t : tris)
        worst = std::min(worst, tri_min_angle(nodes[t[0]], nodes[t[1]], nodes[t[2]]));
    return worst;
}

std::array<Vec2, 3> TriMesh::shape_gradients(int t) const {
    const auto& v = tris[t];
    const Vec2 p0 = nodes[v[0]], p1 = nodes[v[1]], p2 = nodes[v[2]];
    const double inv2A = 1.0 / (2.0 * tri_area(t));
    // grad lambda_k is the inward normal of the opposite edge over 2|T|
    return {Vec2(p1.y - p2.y, p2.x - p1.x) * inv2A,
            Vec2(p2.y - p0.y, p0.x - p2.x) * inv2A,
            Vec2(p0.y - p1.y, p1.x - p0.x) * inv2A};
}

std::array<double, 3> TriMesh::barycentric(int t, const Vec2& p) const {
    const auto& v = tris[t];
    const Vec2 p0 = nodes[v[0]], p1 = nodes[v[1]], p2 = nodes[v[2]];
    const double inv2A = 1.0 / (2.0 * tri_area(t));
    const double l0 = cross(p1 - p, p2 - p) * inv2A;
    const double l1 = cross(p2 - p, p0 - p) * inv2A;
    return {l0, l1, 1.0 - l0 - l1};
}

void TriMesh::build_locator() {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& p : nodes) {
        x0 = std::min(x0, p.x);
        y0 = std::min(y0, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    const double target = std::sqrt((x1 - x0) * (y1 - y0) / std::max(1, num_tris()) * 2.0);
    bin_nx_ = std::max(1, (int)std::floor((x1 - x0) / target));
    bin_ny_ = std::max(1, (int)std::floor((y1 - y0) / target));
    bin_x0_ = x0;
    bin_y0_ = y0;
    bin_h_ = std::max((x1 - x0) / bin_nx_, (y1 - y0) / bin_ny_) * (1.0 + 1e-12);
    bins_.assign((size_t)bin_nx_ * bin_ny_, {});
    for (int t = 0; t < num_tris(); ++t) {
        double tx0 = 1e300, ty0 = 1e300, tx1 = -1e300, ty1 = -1e300;
        for (int k = 0; k < 3; ++k) {
            const Vec2& p = nodes[tris[t][k]];
            tx0 = std::min(tx0, p.x);
            ty0 = std::min(ty0, p.y);
            tx1 = std::max(tx1, p.x);
            ty1 = std::max(ty1, p.y);
        }
        const int ix0 = std::clamp((int)((tx0 - bin_x0_) / bin_h_), 0, bin_nx_ - 1);
        const int ix1 = std::clamp((int)((tx1 - bin_x0_) / bin_h_), 0, bin_nx_ - 1);
        const int iy0 = std::clamp((int)((ty0 - bin_y0_) / bin_h_), 0, bin_ny_ - 1);
        const int iy1 = std::clamp((int)((ty1 - bin_y0_) / bin_h_), 0, bin_ny_ - 1);
        for (int iy = iy0; iy <= iy1; ++iy)
            for (int ix = ix0; ix <= ix1; ++ix)
                bins_[(size_t)iy * bin_nx_ + ix].push_back(t);
    }
}

int TriMesh::locate(const Vec2& p) const {
    if (bins_.empty()) throw MeshError("locate() called before build_locator()");
    const int ix = std::clamp((int)((p.x - bin_x0_) / bin_h_), 0, bin_nx_ - 1);
    const int iy = std::clamp((int)((p.y - bin_y0_) / bin_h_), 0, bin_ny_ - 1);
    for (double tol : {1e-12, 1e-9}) {
        for (int t : bins_[(size_t)iy * bin_nx_ + ix]) {
            const auto l = barycentric(t, p);
            if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol) return t;
        }
    }
    return -1;
}

TriMesh mesh_unit_cell(const PerforationSpec& spec, double h, bool full_cell) {
    const CellPattern pat = build_cell_pattern(spec, h);
    TriMesh mesh;
    mesh.nodes = pat.nodes;
    mesh.period = 1.0;
    if (full_cell || !spec.perforated()) {
        mesh.tris = pat.tris;
        mesh.tri_in_hole = spec.perforated() ? pat.tri_in_hole : std::vector<std::uint8_t>{};
        mesh.periodic_pairs = pat.periodic_pairs;
        rebuild_boundary(mesh, /*outer_is_periodic=*/true, -0.5, 0.5);
        return mesh;
    }
    // restricted cell mesh: drop the hole
    TriMesh full;
    full.nodes = pat.nodes;
    full.tris = pat.tris;
    full.tri_in_hole = pat.tri_in_hole;
    full.periodic_pairs = pat.periodic_pairs;
    full.period = 1.0;
    TriMesh rest = restrict_to_domain(full, nullptr);
    rebuild_boundary(rest, /*outer_is_periodic=*/true, -0.5, 0.5);
    return rest;
}

TriMesh mesh_macro(const MacroDomain& domain, double h, bool include_holes) {
    const double eps = domain.epsilon();
    const int m = (int)std::lround(eps / h);
    if (m < 8 || std::abs(eps / m - h) > 1e-12)
        throw MeshError("resolution gate: h must equal eps/m with m >= 8");
    const CellPattern pat = build_cell_pattern(domain.perforation, 1.0 / m);

    const int n = domain.n;
    const int gm = n * m;  // global grid subdivisions per side
    TriMesh mesh;
    mesh.period = 0.0;

    std::unordered_map<std::int64_t, int> grid_nodes;  // global grid key -> node id
    auto add_node = [&](const Vec2& p) {
        mesh.nodes.push_back(p);
        return (int)mesh.nodes.size() - 1;
    };

    std::vector<int> local2global(pat.nodes.size());
    const bool keep_holes = include_holes && domain.perforation.perforated();
    for (int b = 0; b < n; ++b) {
        for (int a = 0; a < n; ++a) {
            for (int id = 0; id < (int)pat.nodes.size(); ++id) {
                if (!pat.node_moved.empty() && pat.node_moved[id]) {
                    // cell-interior node, unique to this tile
                    const Vec2 p = pat.nodes[id];
                    local2global[id] = add_node(Vec2((a + 0.5 + p.x) * eps, (b + 0.5 + p.y) * eps));
                } else {
                    const int i = id % (pat.m + 1), j = id / (pat.m + 1);
                    const std::int64_t key = (std::int64_t)(b * m + j) * (gm + 1) + (a * m + i);
                    auto it = grid_nodes.find(key);
                    if (it != grid_nodes.end()) {
                        local2global[id] = it->second;
                    } else {
                        const int gid = add_node(Vec2(double(a * m + i) / gm, double(b * m + j) / gm));
                        grid_nodes.emplace(key, gid);
                        local2global[id] = gid;
                    }
                }
            }
            for (int t = 0; t < (int)pat.tris.size(); ++t) {
                const bool hole = !pat.tri_in_hole.empty() && pat.tri_in_hole[t];
                if (hole && !keep_holes) continue;
                mesh.tris.push_back({local2global[pat.tris[t][0]],
                                     local2global[pat.tris[t][1]],
                                     local2global[pat.tris[t][2]]});
                if (keep_holes) mesh.tri_in_hole.push_back(hole ? 1 : 0);
            }
        }
    }
    rebuild_boundary(mesh, /*outer_is_periodic=*/false, 0.0, 1.0);
    return mesh;
}

TriMesh restrict_to_domain(const TriMesh& full, std::vector<int>* node_map) {
    if (full.tri_in_hole.empty()) {
        TriMesh copy = full;
        if (node_map) {
            node_map->resize(full.num_nodes());
            for (int i = 0; i < full.num_nodes(); ++i) (*node_map)[i] = i;
        }
        return copy;
    }
    TriMesh out;
    out.period = full.period;
    std::vector<int> old2new(full.num_nodes(), -1);
    std::vector<int> new2old;
    for (int t = 0; t < full.num_tris(); ++t) {
        if (full.in_hole(t)) continue;
        std::array<int, 3> tri;
        for (int k = 0; k < 3; ++k) {
            const int v = full.tris[t][k];
            if (old2new[v] < 0) {
                old2new[v] = (int)out.nodes.size();
                out.nodes.push_back(full.nodes[v]);
                new2old.push_back(v);
            }
            tri[k] = old2new[v];
        }
        out.tris.push_back(tri);
    }
    for (const auto& pp : full.periodic_pairs) {
        const int s = old2new[pp[0]], mast = old2new[pp[1]];
        if (s >= 0 && mast >= 0) out.periodic_pairs.push_back({s, mast});
    }
    const bool periodic = full.period > 0.0;
    const double lo = periodic ? -0.5 : 0.0, hi = periodic ? 0.5 : 1.0;
    rebuild_boundary(out, periodic, lo, hi);
    if (node_map) *node_map = std::move(new2old);
    return out;
}

void TriMesh::save(const std::string& path_prefix) const {
    {
        std::FILE* f = std::fopen((path_prefix + ".nodes.txt").c_str(), "w");
        if (!f) throw MeshError("cannot write " + path_prefix + ".nodes.txt");
        for (int i = 0; i < num_nodes(); ++i)
            std::fprintf(f, "%d %.17g %.17g\n", i, nodes[i].x, nodes[i].y);
        std::fclose(f);
    }
    {
        std::FILE* f = std::fopen((path_prefix + ".elems.txt").c_str(), "w");
        if (!f) throw MeshError("cannot write " + path_prefix + ".elems.txt");
        for (int t = 0; t < num_tris(); ++t)
            std::fprintf(f, "%d %d %d %d %d\n", t, tris[t][0], tris[t][1], tris[t][2],
                         in_hole(t) ? 1 : 0);
        std::fclose(f);
    }
    nlohmann::json meta;
    meta["period"] = period;
    meta["has_hole_tags"] = !tri_in_hole.empty();
    auto& be = meta["boundary_edges"] = nlohmann::json::array();
    for (const auto& e : boundary_edges) be.push_back({e.a, e.b, (int)e.tag});
    auto& pp = meta["periodic_pairs"] = nlohmann::json::array();
    for (const auto& p : periodic_pairs) pp.push_back({p[0], p[1]});
    std::ofstream os(path_prefix + ".meta.json");
    os << meta.dump(0) << "\n";
}

TriMesh TriMesh::load(const std::string& path_prefix) {
    TriMesh mesh;
    {
        std::ifstream is(path_prefix + ".nodes.txt");
        if (!is) throw MeshError("cannot read " + path_prefix + ".nodes.txt");
        int idx;
        double x, y;
        while (is >> idx >> x >> y) mesh.nodes.push_back({x, y});
    }
    bool any_hole = false;
    {
        std::ifstream is(path_prefix + ".elems.txt");
        if (!is) throw MeshError("cannot read " + path_prefix + ".elems.txt");
        int idx, v0, v1, v2, tag;
        while (is >> idx >> v0 >> v1 >> v2 >> tag) {
            mesh.tris.push_back({v0, v1, v2});
            mesh.tri_in_hole.push_back((std::uint8_t)tag);
            any_hole = any_hole || tag != 0;
        }
    }
    std::ifstream is(path_prefix + ".meta.json");
    if (!is) throw MeshError("cannot read " + path_prefix + ".meta.json");
    nlohmann::json meta;
    is >> meta;
    mesh.period = meta["period"].get<double>();
    if (!meta["has_hole_tags"].get<bool>()) mesh.tri_in_hole.clear();
    for (const auto& e : meta["boundary_edges"])
        mesh.boundary_edges.push_back({e[0].get<int>(), e[1].get<int>(), (EdgeTag)e[2].get<int>()});
    for (const auto& p : meta["periodic_pairs"])
        mesh.periodic_pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    return mesh;
}

}  // namespace perfhom
