// Quadrature rules: triangle rules up to degree 4, Gauss-Legendre on segments.
#pragma once

#include <array>
#include <vector>

#include "perfhom/geometry.hpp"

namespace perfhom {

struct QuadPoint {
    Vec2 p;         // physical point
    double w = 0.0; // weight including the element area
};

// Barycentric rules on the reference triangle; weights sum to 1.
struct TriRule {
    std::vector<std::array<double, 3>> bary;
    std::vector<double> w;

    static const TriRule& degree1();  // centroid
    static const TriRule& degree2();  // 3 edge midpoints
    static const TriRule& degree4();  // 6-point Dunavant
};

// physical quadrature points of `rule` on element t, weights scaled by area
template <class Mesh>
inline std::vector<QuadPoint> tri_quadrature(const Mesh& mesh, int t, const TriRule& rule) {
    const auto& v = mesh.tris[t];
    const Vec2 p0 = mesh.nodes[v[0]], p1 = mesh.nodes[v[1]], p2 = mesh.nodes[v[2]];
    const double area = mesh.tri_area(t);
    std::vector<QuadPoint> out(rule.w.size());
    for (size_t q = 0; q < rule.w.size(); ++q) {
        const auto& l = rule.bary[q];
        out[q].p = p0 * l[0] + p1 * l[1] + p2 * l[2];
        out[q].w = rule.w[q] * area;
    }
    return out;
}

// n-point Gauss-Legendre nodes/weights on [a, b]
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

}  // namespace perfhom
