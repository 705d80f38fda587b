// Perforated reference geometry: unit cell Y with a hole, the macroscopic
// domain, layer sets, distance weights and cut-off ramps.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace perfhom {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// cross product z-component
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

struct Mat2 {
    double m[2][2] = {{0, 0}, {0, 0}};

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }
    double frob2() const {
        return m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1];
    }
};

class GeometryError : public std::runtime_error {
  public:
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class HoleShape { none, disk };

// One hole per unit cell Y = [-1/2, 1/2)^2, strictly inside Y.
struct PerforationSpec {
    HoleShape shape = HoleShape::none;
    double radius = 0.0;
    Vec2 center{0.0, 0.0};

    // gap between neighbouring holes, in cell units
    double gap() const {
        return shape == HoleShape::disk ? 1.0 - 2.0 * radius : 1.0;
    }

    bool perforated() const { return shape == HoleShape::disk && radius > 0.0; }

    // signed distance to the hole boundary in cell coordinates
    // (negative inside the hole); +inf convention for the unperforated case
    double signed_distance(const Vec2& y) const {
        if (!perforated()) return 1e300;
        return (y - center).norm() - radius;
    }

    void validate() const;
    std::string cache_key() const;
};

// Macroscopic domain: unit square, epsilon = 1/n, periodic perforation.
struct MacroDomain {
    int n = 2;  // epsilon = 1/n
    PerforationSpec perforation;

    double epsilon() const { return 1.0 / n; }
    int hole_count() const { return perforation.perforated() ? n * n : 0; }

    // center of the hole in lattice cell (ix, iy), in macroscopic coordinates
    Vec2 hole_center(int ix, int iy) const {
        const double eps = epsilon();
        return {eps * (ix + 0.5 + perforation.center.x),
                eps * (iy + 0.5 + perforation.center.y)};
    }

    // wrap x/epsilon into the reference cell Y = [-1/2, 1/2)^2
    Vec2 wrap_to_cell(const Vec2& x) const {
        const double eps = epsilon();
        const auto wrap1 = [](double t) { return t - std::floor(t + 0.5); };
        return {wrap1(x.x / eps), wrap1(x.y / eps)};
    }

    bool point_in_hole(const Vec2& x) const {
        if (!perforation.perforated()) return false;
        return perforation.signed_distance(wrap_to_cell(x)) < 0.0;
    }
};

MacroDomain build_macro_domain(int n, const PerforationSpec& perforation);

// dist(x, boundary of the unit square), for x in the closed square
inline double dist_to_outer_boundary(const Vec2& x) {
    return std::min(std::min(x.x, 1.0 - x.x), std::min(x.y, 1.0 - x.y));
}

// Layer sets O_{n eps}, the extended domain Omega_0 (concentric square,
// offset = offset_multiplier * eps) and the weight delta = dist(., dOmega_0).
struct LayerGeometry {
    MacroDomain domain;
    double offset_multiplier = 10.0;

    double offset() const { return offset_multiplier * domain.epsilon(); }

    // delta(x) = dist(x, boundary of Omega_0); >= offset on the closed square
    double delta(const Vec2& x) const { return dist_to_outer_boundary(x) + offset(); }

    bool in_layer(const Vec2& x, double band_cells) const {
        return dist_to_outer_boundary(x) < band_cells * domain.epsilon();
    }
};

// Piecewise-linear ramp in dist(., dOmega): 0 below a, 1 above b.
struct CutoffRamp {
    double a = 0.0;
    double b = 1.0;

    double operator()(const Vec2& x) const {
        const double d = dist_to_outer_boundary(x);
        if (d <= a) return 0.0;
        if (d >= b) return 1.0;
        return (d - a) / (b - a);
    }
    double grad_bound() const { return 1.0 / (b - a); }
};

CutoffRamp cutoff_psi(const LayerGeometry& layer, double inner_band, double outer_band);

// rho = delta^beta; positive on the closed square since delta >= 10 eps there
struct DistanceWeight {
    LayerGeometry layer;
    double beta = 0.0;

    double operator()(const Vec2& x) const {
        if (beta == 0.0) return 1.0;
        return std::pow(layer.delta(x), beta);
    }
    // A_2 membership requires |beta| < 1 (flagged, not rejected)
    bool a2_range() const { return beta > -1.0 && beta < 1.0; }
};

DistanceWeight distance_weight(const LayerGeometry& layer, double beta);

}  // namespace perfhom
