// Periodic elasticity tensors A(y) with the symmetry and ellipticity
// structure a_ij^ab = a_ji^ba = a_aj^ib,  mu0 |xi|^2 <= A xi xi <= mu1 |xi|^2
// on symmetric xi.
#pragma once

#include <array>
#include <string>

#include "perfhom/geometry.hpp"

namespace perfhom {

// Rank-4 tensor in d = 2, indexed a(i, alpha, j, beta) = a_ij^{alpha beta}.
struct Tensor4 {
    std::array<double, 16> v{};

    double& operator()(int i, int al, int j, int be) {
        return v[((i * 2 + al) * 2 + j) * 2 + be];
    }
    double operator()(int i, int al, int j, int be) const {
        return v[((i * 2 + al) * 2 + j) * 2 + be];
    }
    Tensor4 operator*(double s) const {
        Tensor4 r;
        for (int k = 0; k < 16; ++k) r.v[k] = v[k] * s;
        return r;
    }
    // max |a_ij^ab - a_ji^ba| etc. over all indices (elasticity symmetries)
    double symmetry_defect() const;
    // quadratic form A xi xi on the symmetric matrix xi
    double quad_form(const std::array<double, 4>& xi) const;  // xi = {x11, x12, x21, x22}
    // eigenvalue bounds of the quadratic form restricted to symmetric xi
    void ellipticity_bounds(double& lo, double& hi) const;
};

Tensor4 isotropic_tensor(double lambda, double mu);

class CoefficientField {
  public:
    enum class Kind { isotropic, periodic_isotropic };

    static CoefficientField isotropic(double lambda, double mu);
    // lambda(y) = lambda0 (1 + amp sin(2 pi y1) sin(2 pi y2)),
    // mu(y)     = mu0     (1 + amp cos(2 pi y1) cos(2 pi y2)),  0 <= amp < 1
    static CoefficientField periodic_isotropic(double lambda0, double mu0, double amp);

    Tensor4 at(const Vec2& y) const;
    bool constant() const { return kind_ == Kind::isotropic; }
    double mu0() const { return mu0_; }
    double mu1() const { return mu1_; }
    std::string cache_key() const;

  private:
    Kind kind_ = Kind::isotropic;
    double lambda_ = 1.0, mu_ = 1.0, amp_ = 0.0;
    double mu0_ = 0.0, mu1_ = 0.0;
};

}  // namespace perfhom
