// Piecewise-linear fields on a TriMesh: nodal storage, point evaluation,
// per-element gradients.
#pragma once

#include <Eigen/Dense>

#include "perfhom/mesh.hpp"

namespace perfhom {

struct FieldOnMesh {
    const TriMesh* mesh = nullptr;
    int comps = 1;
    Eigen::VectorXd values;  // node * comps + c

    FieldOnMesh() = default;
    FieldOnMesh(const TriMesh* m, int c)
        : mesh(m), comps(c), values(Eigen::VectorXd::Zero((Eigen::Index)m->num_nodes() * c)) {}

    double node_value(int node, int c) const { return values[(Eigen::Index)node * comps + c]; }
    double& node_value(int node, int c) { return values[(Eigen::Index)node * comps + c]; }

    // value at a point of element t with barycentric coords l
    double value_in(int t, const std::array<double, 3>& l, int c) const {
        const auto& v = mesh->tris[t];
        return l[0] * node_value(v[0], c) + l[1] * node_value(v[1], c) +
               l[2] * node_value(v[2], c);
    }

    // scalar gradient on element t
    Vec2 grad_scalar(int t) const {
        const auto g = mesh->shape_gradients(t);
        const auto& v = mesh->tris[t];
        Vec2 r{0, 0};
        for (int k = 0; k < 3; ++k) r += g[k] * node_value(v[k], 0);
        return r;
    }

    // vector gradient on element t: G(j, beta) = d_j u^beta
    Mat2 grad_vec(int t) const {
        const auto g = mesh->shape_gradients(t);
        const auto& v = mesh->tris[t];
        Mat2 G;
        for (int k = 0; k < 3; ++k)
            for (int be = 0; be < 2; ++be) {
                const double u = node_value(v[k], be);
                G(0, be) += g[k].x * u;
                G(1, be) += g[k].y * u;
            }
        return G;
    }

    // point evaluation via the mesh locator; zero outside the mesh
    double eval_scalar(const Vec2& p) const {
        const int t = mesh->locate(p);
        if (t < 0) return 0.0;
        return value_in(t, mesh->barycentric(t, p), 0);
    }
    Vec2 eval_vec(const Vec2& p) const {
        const int t = mesh->locate(p);
        if (t < 0) return {0, 0};
        const auto l = mesh->barycentric(t, p);
        return {value_in(t, l, 0), value_in(t, l, 1)};
    }
};

}  // namespace perfhom
