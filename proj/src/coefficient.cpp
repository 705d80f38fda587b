#include "perfhom/coefficient.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Dense>

namespace perfhom {

double Tensor4::symmetry_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int al = 0; al < 2; ++al)
            for (int j = 0; j < 2; ++j)
                for (int be = 0; be < 2; ++be) {
                    const double a = (*this)(i, al, j, be);
                    worst = std::max(worst, std::abs(a - (*this)(j, be, i, al)));
                    worst = std::max(worst, std::abs(a - (*this)(al, i, j, be)));
                }
    return worst;
}

double Tensor4::quad_form(const std::array<double, 4>& xi) const {
    auto x = [&](int i, int al) { return xi[i * 2 + al]; };
    double s = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int al = 0; al < 2; ++al)
            for (int j = 0; j < 2; ++j)
                for (int be = 0; be < 2; ++be)
                    s += (*this)(i, al, j, be) * x(i, al) * x(j, be);
    return s;
}

void Tensor4::ellipticity_bounds(double& lo, double& hi) const {
    // orthonormal basis of symmetric 2x2 matrices (Frobenius)
    const double s = 1.0 / std::sqrt(2.0);
    const std::array<std::array<double, 4>, 3> basis = {{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, s, s, 0}}};
    Eigen::Matrix3d G;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double sum = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int al = 0; al < 2; ++al)
                    for (int j = 0; j < 2; ++j)
                        for (int be = 0; be < 2; ++be)
                            sum += (*this)(i, al, j, be) * basis[a][i * 2 + al] * basis[b][j * 2 + be];
            G(a, b) = sum;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (G + G.transpose()));
    lo = es.eigenvalues().minCoeff();
    hi = es.eigenvalues().maxCoeff();
}

Tensor4 isotropic_tensor(double lambda, double mu) {
    Tensor4 a;
    for (int i = 0; i < 2; ++i)
        for (int al = 0; al < 2; ++al)
            for (int j = 0; j < 2; ++j)
                for (int be = 0; be < 2; ++be)
                    a(i, al, j, be) = lambda * (i == al) * (j == be) +
                                      mu * ((i == j) * (al == be) + (i == be) * (j == al));
    return a;
}

CoefficientField CoefficientField::isotropic(double lambda, double mu) {
    if (lambda < 0.0 || mu <= 0.0) throw GeometryError("need lambda >= 0, mu > 0");
    CoefficientField c;
    c.kind_ = Kind::isotropic;
    c.lambda_ = lambda;
    c.mu_ = mu;
    // on symmetric xi: A xi xi = lambda (tr xi)^2 + 2 mu |xi|^2
    c.mu0_ = 2.0 * mu;
    c.mu1_ = 2.0 * mu + 2.0 * lambda;
    return c;
}

CoefficientField CoefficientField::periodic_isotropic(double lambda0, double mu0, double amp) {
    if (lambda0 < 0.0 || mu0 <= 0.0 || amp < 0.0 || amp >= 1.0)
        throw GeometryError("need lambda0 >= 0, mu0 > 0, 0 <= amp < 1");
    CoefficientField c;
    c.kind_ = Kind::periodic_isotropic;
    c.lambda_ = lambda0;
    c.mu_ = mu0;
    c.amp_ = amp;
    c.mu0_ = 2.0 * mu0 * (1.0 - amp);
    c.mu1_ = 2.0 * mu0 * (1.0 + amp) + 2.0 * lambda0 * (1.0 + amp);
    return c;
}

Tensor4 CoefficientField::at(const Vec2& y) const {
    if (kind_ == Kind::isotropic) return isotropic_tensor(lambda_, mu_);
    const double la = lambda_ * (1.0 + amp_ * std::sin(2 * M_PI * y.x) * std::sin(2 * M_PI * y.y));
    const double mu = mu_ * (1.0 + amp_ * std::cos(2 * M_PI * y.x) * std::cos(2 * M_PI * y.y));
    return isotropic_tensor(la, mu);
}

std::string CoefficientField::cache_key() const {
    std::ostringstream os;
    os.precision(17);
    if (kind_ == Kind::isotropic)
        os << "iso:l=" << lambda_ << ":m=" << mu_;
    else
        os << "per:l=" << lambda_ << ":m=" << mu_ << ":a=" << amp_;
    return os.str();
}

}  // namespace perfhom
